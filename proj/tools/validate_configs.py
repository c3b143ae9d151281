#!/usr/bin/env python3
"""Validate run configs against schema/config.schema.json."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(__file__).resolve().parent.parent
schema = json.loads((root / "schema" / "config.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)
paths = [pathlib.Path(p) for p in sys.argv[1:]] or sorted((root / "configs").glob("*.json"))
bad = 0
for p in paths:
    errors = sorted(validator.iter_errors(json.loads(p.read_text())), key=lambda e: list(e.path))
    for e in errors:
        print(f"{p.name}: {'/'.join(map(str, e.path)) or '<root>'}: {e.message}")
    bad += bool(errors)
print(f"{len(paths) - bad}/{len(paths)} configs valid")
sys.exit(1 if bad else 0)
