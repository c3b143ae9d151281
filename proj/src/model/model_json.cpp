#include "perptail/model/model_json.hpp"

#include <algorithm>

#include "perptail/common/error.hpp"
#include "perptail/model/catalog.hpp"

namespace perptail {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  fail(ErrorCode::ConfigInvalid, where + ": " + what);
}

}  // namespace

void require_object(const Json& j, const std::string& where, const std::vector<std::string>& allowed) {
  if (!j.is_object()) invalid(where, "expected an object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) invalid(where, "unknown field '" + key + "'");
}

double json_number(const Json& j, const std::string& key, const std::string& where, std::optional<double> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    invalid(where, "missing number '" + key + "'");
  }
  if (!it->is_number()) invalid(where + "." + key, "expected a number");
  return it->get<double>();
}

std::string json_string(const Json& j, const std::string& key, const std::string& where,
                        std::optional<std::string> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    invalid(where, "missing string '" + key + "'");
  }
  if (!it->is_string()) invalid(where + "." + key, "expected a string");
  return it->get<std::string>();
}

std::vector<double> json_numbers(const Json& j, const std::string& key, const std::string& where,
                                 std::optional<std::vector<double>> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    invalid(where, "missing array '" + key + "'");
  }
  if (!it->is_array()) invalid(where + "." + key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) invalid(where + "." + key, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

RightPart right_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  const std::string kind = json_string(j, "kind", where);
  RightPart out;
  if (kind == "pareto") {
    require_object(j, where, {"kind", "alpha", "c", "x0"});
    out = ParetoRight{json_number(j, "alpha", where), json_number(j, "c", where, 1.0), json_number(j, "x0", where, 0.0)};
  } else if (kind == "lognormal") {
    require_object(j, where, {"kind", "mu", "sigma"});
    out = LognormalRight{json_number(j, "mu", where, 0.0), json_number(j, "sigma", where, 1.0)};
  } else if (kind == "weibull") {
    require_object(j, where, {"kind", "beta"});
    out = WeibullRight{json_number(j, "beta", where)};
  } else if (kind == "exponential") {
    require_object(j, where, {"kind", "rate"});
    out = ExponentialRight{json_number(j, "rate", where, 1.0)};
  } else if (kind == "normal") {
    require_object(j, where, {"kind", "mean", "sd"});
    out = NormalLaw{json_number(j, "mean", where, 0.0), json_number(j, "sd", where, 1.0)};
  } else if (kind == "point") {
    require_object(j, where, {"kind", "location"});
    out = PointMassRight{json_number(j, "location", where)};
  } else {
    invalid(where + ".kind", "unknown right part '" + kind + "'");
  }
  return out;
}

LeftPart left_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  const std::string kind = json_string(j, "kind", where);
  if (kind == "none") {
    require_object(j, where, {"kind"});
    return NoLeft{};
  }
  if (kind == "reflected_exp") {
    require_object(j, where, {"kind", "rate", "weight"});
    return ReflectedExpLeft{json_number(j, "rate", where), json_number(j, "weight", where, 0.0)};
  }
  if (kind == "point") {
    require_object(j, where, {"kind", "location", "weight"});
    return PointMassLeft{json_number(j, "location", where), json_number(j, "weight", where)};
  }
  invalid(where + ".kind", "unknown left part '" + kind + "'");
}

TailSpec spec_from_json(const Json& j, const std::string& where) {
  require_object(j, where, {"right", "left"});
  if (!j.contains("right")) invalid(where, "missing 'right'");
  const RightPart right = right_from_json(j.at("right"), where + ".right");
  const LeftPart left = j.contains("left") ? left_from_json(j.at("left"), where + ".left") : LeftPart{NoLeft{}};
  return TailSpec(right, left);
}

BLaw blaw_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  const std::string kind = json_string(j, "kind", where);
  BLaw b;
  if (kind == "constant") {
    require_object(j, where, {"kind", "b", "nu"});
    b.kind = BConstant{json_number(j, "b", where)};
  } else if (kind == "two_point") {
    require_object(j, where, {"kind", "b1", "p", "b2", "nu"});
    b.kind = BTwoPoint{json_number(j, "b1", where), json_number(j, "p", where), json_number(j, "b2", where)};
  } else if (kind == "exponential") {
    require_object(j, where, {"kind", "rate", "nu"});
    b.kind = BExponential{json_number(j, "rate", where, 1.0)};
  } else if (kind == "uniform") {
    require_object(j, where, {"kind", "lo", "hi", "nu"});
    b.kind = BUniform{json_number(j, "lo", where), json_number(j, "hi", where)};
  } else if (kind == "affine_in_a") {
    require_object(j, where, {"kind", "x0", "nu"});
    b.kind = BAffineInA{json_number(j, "x0", where)};
  } else {
    invalid(where + ".kind", "unknown B law '" + kind + "'");
  }
  b.nu = json_number(j, "nu", where, 2.0);
  return b;
}

const TailSpec& ModelDesc::tail() const {
  if (law) return law->fkappa;
  if (spec) return *spec;
  fail(ErrorCode::ConfigInvalid, "model has no law to evaluate");
}

ModelDesc model_from_json(const Json& j, const std::string& where) {
  require_object(j, where, {"catalog", "tilted", "base", "kappa_bracket", "spec"});
  const int kinds = static_cast<int>(j.contains("catalog")) + static_cast<int>(j.contains("tilted")) +
                    static_cast<int>(j.contains("base")) + static_cast<int>(j.contains("spec"));
  if (kinds != 1) invalid(where, "give exactly one of catalog, tilted, base, spec");
  if (j.contains("kappa_bracket") && !j.contains("base")) invalid(where, "kappa_bracket only applies to base");
  ModelDesc m;
  if (j.contains("catalog")) {
    if (!j.at("catalog").is_string()) invalid(where + ".catalog", "expected a string");
    const std::string name = j.at("catalog").get<std::string>();
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      invalid(where + ".catalog", "unknown catalog model '" + name + "'");
    const CatalogModel c = catalog(name);
    m.source = "catalog:" + name;
    m.law = c.law;
    m.default_b = c.b;
  } else if (j.contains("tilted")) {
    const Json& t = j.at("tilted");
    const std::string w = where + ".tilted";
    require_object(t, w, {"kappa", "right", "left", "theta"});
    const double kappa = json_number(t, "kappa", w);
    if (!t.contains("right")) invalid(w, "missing 'right'");
    const RightPart right = right_from_json(t.at("right"), w + ".right");
    LeftPart left = t.contains("left") ? left_from_json(t.at("left"), w + ".left") : LeftPart{NoLeft{}};
    if (t.contains("theta")) {
      const auto* re = std::get_if<ReflectedExpLeft>(&left);
      if (!re) invalid(w, "theta needs a reflected_exp left part whose weight is tuned");
      const double q = tune_weight(re->rate, right, kappa, json_number(t, "theta", w));
      left = ReflectedExpLeft{re->rate, q};
    }
    m.source = "tilted";
    m.law = base_from_tilted(TailSpec(right, left), kappa);
  } else if (j.contains("base")) {
    const Json& b = j.at("base");
    const std::string w = where + ".base";
    const std::string kind = json_string(b, "kind", w);
    if (kind == "normal") {
      require_object(b, w, {"kind", "mu", "sigma"});
      m.base = NormalLogA{json_number(b, "mu", w), json_number(b, "sigma", w)};
    } else if (kind == "discrete") {
      require_object(b, w, {"kind", "values", "probs"});
      m.base = DiscreteLogA{json_numbers(b, "values", w), json_numbers(b, "probs", w)};
    } else {
      invalid(w + ".kind", "unknown base family '" + kind + "'");
    }
    if (j.contains("kappa_bracket")) {
      const auto br = json_numbers(j, "kappa_bracket", where);
      if (br.size() != 2 || !(br[0] < br[1])) invalid(where + ".kappa_bracket", "expected [lo, hi] with lo < hi");
      m.kappa_lo = br[0];
      m.kappa_hi = br[1];
    }
    m.source = "base:" + kind;
    const double kappa = solve_kappa(*m.base, m.kappa_lo, m.kappa_hi);
    std::visit(
        [&](const auto& f) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(f)>, DensityLogA>) m.law = tilt(f, kappa);
        },
        *m.base);
  } else {
    m.source = "spec";
    m.spec = spec_from_json(j.at("spec"), where + ".spec");
  }
  return m;
}

}  // namespace perptail
