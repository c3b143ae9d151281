#include "perptail/diagnostics/sweep.hpp"

#include <algorithm>

namespace perptail {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool spans_two_decades(const std::vector<double>& ladder) {
  if (ladder.empty()) return false;
  const auto [lo, hi] = std::minmax_element(ladder.begin(), ladder.end());
  return *lo > 0.0 && *hi >= 100.0 * *lo * (1.0 - 1e-12);
}

csv::Table to_table(const SweepReport& report) {
  csv::Table t({"quantity", "x", "param", "value", "lower", "upper"});
  for (const auto& r : report.rows)
    t.add_text({r.quantity, csv::fmt(r.x), csv::fmt(r.param), csv::fmt(r.value), csv::fmt(r.lower), csv::fmt(r.upper)});
  return t;
}

std::string summary_line(const SweepReport& report) {
  std::string s = report.check + ": " + to_string(report.verdict) + " (last=" + csv::fmt(report.last_value) +
                  ", slope=" + csv::fmt(report.slope) + ")";
  if (!report.note.empty()) s += " " + report.note;
  return s;
}

}  // namespace perptail
