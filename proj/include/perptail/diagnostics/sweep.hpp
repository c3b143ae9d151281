#pragma once

#include <string>
#include <vector>

#include "perptail/common/csv.hpp"

namespace perptail {

enum class Verdict { Consistent, Inconsistent, Inconclusive };

std::string to_string(Verdict v);

struct SweepRow {
  std::string quantity;
  double x;
  // Second ladder coordinate (delta, probe shift t, ...); NaN when unused.
  double param;
  double value;
  // Confidence band when the value is an estimate; NaN otherwise.
  double lower;
  double upper;
};

struct SweepReport {
  std::string check;
  std::vector<SweepRow> rows;
  double last_value = 0.0;
  double slope = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

// True when max / min of the ladder is at least 100.
bool spans_two_decades(const std::vector<double>& ladder);

// Columns: quantity, x, param, value, lower, upper.
csv::Table to_table(const SweepReport& report);

// One line: "<check>: <VERDICT> (last=..., slope=...) <note>".
std::string summary_line(const SweepReport& report);

}  // namespace perptail
