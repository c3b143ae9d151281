#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "perptail/model/blaw.hpp"
#include "perptail/model/kappa.hpp"
#include "perptail/model/tilted_law.hpp"

namespace perptail {

using Json = nlohmann::json;

// Every reader rejects unknown keys and wrong types with ConfigInvalid; `where`
// is the dotted path used in the message.
void require_object(const Json& j, const std::string& where, const std::vector<std::string>& allowed);
double json_number(const Json& j, const std::string& key, const std::string& where, std::optional<double> fallback = {});
std::string json_string(const Json& j, const std::string& key, const std::string& where,
                        std::optional<std::string> fallback = {});
std::vector<double> json_numbers(const Json& j, const std::string& key, const std::string& where,
                                 std::optional<std::vector<double>> fallback = {});

RightPart right_from_json(const Json& j, const std::string& where);
LeftPart left_from_json(const Json& j, const std::string& where);
TailSpec spec_from_json(const Json& j, const std::string& where);
BLaw blaw_from_json(const Json& j, const std::string& where);

// A model is exactly one of
//   {"catalog": name}
//   {"tilted": {"kappa", "right", "left"?, "theta"?}}   theta tunes a reflected_exp weight
//   {"base": {"kind": "normal" | "discrete", ...}, "kappa_bracket"?: [lo, hi]}
//   {"spec": {"right", "left"?}}                          a bare law, no A structure
struct ModelDesc {
  std::string source;
  std::optional<TiltedLaw> law;
  std::optional<TailSpec> spec;
  std::optional<BaseFamily> base;
  std::optional<BLaw> default_b;
  double kappa_lo = 1e-6;
  double kappa_hi = 50.0;

  // The law a spec-level check should use: F_kappa of the model or the bare spec.
  const TailSpec& tail() const;
};

ModelDesc model_from_json(const Json& j, const std::string& where = "model");

}  // namespace perptail
