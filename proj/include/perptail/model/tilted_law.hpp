#pragma once

#include <optional>
#include <string>

#include "perptail/model/blaw.hpp"
#include "perptail/model/tail_spec.hpp"

namespace perptail {

enum class CaseKind { CaseI, CaseII, Classical, Unclassified };

struct CaseTag {
  CaseKind kind = CaseKind::Unclassified;
  // Case I only: index of regular variation and a description of the slowly
  // varying factor.
  double alpha = 0.0;
  std::string slowly_varying;
};

std::string to_string(CaseKind kind);

// Law of log A given through its tilted version: F_kappa(dy) = e^{kappa y} F(dy) / theta.
struct TiltedLaw {
  double kappa;
  TailSpec fkappa;
  double theta;
  CaseTag tag;

  bool critical() const { return theta == 1.0; }

  // Base law F(dy) = theta e^{-kappa y} F_kappa(dy).
  double base_df(double x) const;
  double base_sf(double x) const;
  double base_density(double x) const;
  std::vector<Atom> base_atoms() const;
  // E phi(log A) under P over [lo, hi].
  double expect_base(const num::RealFn& phi, double lo = -num::kInf, double hi = num::kInf) const;
  // Numeric inverse of base_df to absolute tolerance 1e-10.
  double base_quantile(double u) const;
  // Re-tilts the base law by kappa: (1/theta) int_{(-inf, x]} e^{kappa y} F(dy).
  double retilted_df(double x) const;
  // E log A under P.
  double mean_log_a() const;
};

// theta = 1 / int e^{-kappa y} F_kappa(dy).
TiltedLaw base_from_tilted(const TailSpec& fkappa, double kappa);

// Left weight q such that the mixture q ReflectedExp(lambda) + (1-q) right
// has E A^kappa = theta_target.
double tune_weight(double lambda, const RightPart& right, double kappa, double theta_target);
double tune_case_i(double lambda, const RightPart& right, double kappa);

struct MomentValue {
  double value;
  bool diverged;
};

// int_{-T}^{T} e^{t y} F(dy), with a Cauchy flag comparing T against 2T.
MomentValue moments(const TiltedLaw& law, double t, double T = 200.0);

struct CaseReport {
  CaseTag tag;
  double theta;
  // E_kappa log+ A and E A^kappa log+ A = theta * E_kappa log+ A.
  MomentValue e_kappa_log_plus;
  double e_a_kappa_log_plus;
  bool classical_kgg;
  // Alternative B conditions: E|B|^k (log+|B|)^max(1,k), E|B|^k log+ A,
  // E|B| A^{k-1} log+ A.
  std::optional<MomentValue> b_log_moment;
  std::optional<MomentValue> b_kappa_log_a;
  std::optional<MomentValue> b_a_kappa_minus1_log_a;
};

CaseReport check_case(const TiltedLaw& law, const BLaw* b = nullptr);

}  // namespace perptail
