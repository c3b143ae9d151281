#include "perptail/model/blaw.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "perptail/common/error.hpp"

namespace perptail {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

double BLaw::sample(Rng& rng, double log_a) const {
  return std::visit(overloaded{
                        [](const BConstant& k) { return k.b; },
                        [&](const BTwoPoint& k) { return rng.uniform() < k.p ? k.b1 : k.b2; },
                        [&](const BExponential& k) { return rng.exponential() / k.rate; },
                        [&](const BUniform& k) { return k.lo + (k.hi - k.lo) * rng.uniform(); },
                        [&](const BAffineInA& k) { return -k.x0 * std::expm1(log_a); },
                    },
                    kind);
}

bool BLaw::nonnegative() const {
  return std::visit(overloaded{
                        [](const BConstant& k) { return k.b >= 0.0; },
                        [](const BTwoPoint& k) { return k.b1 >= 0.0 && k.b2 >= 0.0; },
                        [](const BExponential&) { return true; },
                        [](const BUniform& k) { return k.lo >= 0.0; },
                        [](const BAffineInA&) { return false; },
                    },
                    kind);
}

double BLaw::abs_moment(double p) const {
  return std::visit(overloaded{
                        [p](const BConstant& k) { return std::pow(std::abs(k.b), p); },
                        [p](const BTwoPoint& k) {
                          return k.p * std::pow(std::abs(k.b1), p) + (1.0 - k.p) * std::pow(std::abs(k.b2), p);
                        },
                        [p](const BExponential& k) { return std::tgamma(p + 1.0) / std::pow(k.rate, p); },
                        [p](const BUniform& k) {
                          auto g = [p](double b) { return std::copysign(std::pow(std::abs(b), p + 1.0), b) / (p + 1.0); };
                          return (g(k.hi) - g(k.lo)) / (k.hi - k.lo);
                        },
                        [](const BAffineInA&) { return std::numeric_limits<double>::quiet_NaN(); },
                    },
                    kind);
}

double BLaw::expect(const num::RealFn& phi) const {
  return std::visit(overloaded{
                        [&](const BConstant& k) { return phi(k.b); },
                        [&](const BTwoPoint& k) { return k.p * phi(k.b1) + (1.0 - k.p) * phi(k.b2); },
                        [&](const BExponential& k) {
                          return num::integrate_line([&](double b) { return phi(b) * k.rate * std::exp(-k.rate * b); },
                                                     0.0, num::kInf, {0.0, 1.0 / k.rate});
                        },
                        [&](const BUniform& k) {
                          return num::integrate_line(phi, k.lo, k.hi, {0.0}) / (k.hi - k.lo);
                        },
                        [](const BAffineInA&) -> double {
                          fail(ErrorCode::InvalidModel, "expectation of a coupled B needs the law of A");
                        },
                    },
                    kind);
}

std::string BLaw::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const BConstant& k) { os << "Constant(" << k.b << ")"; },
                 [&](const BTwoPoint& k) { os << "TwoPoint(" << k.b1 << ", p=" << k.p << ", " << k.b2 << ")"; },
                 [&](const BExponential& k) { os << "Exponential(rate=" << k.rate << ")"; },
                 [&](const BUniform& k) { os << "Uniform(" << k.lo << ", " << k.hi << ")"; },
                 [&](const BAffineInA& k) { os << "AffineInA(x0=" << k.x0 << ")"; },
             },
             kind);
  os << " nu=" << nu;
  return os.str();
}

void BLaw::validate(double kappa) const {
  std::visit(overloaded{
                 [](const BConstant&) {},
                 [](const BTwoPoint& k) {
                   if (!(k.p >= 0.0 && k.p <= 1.0)) fail(ErrorCode::InvalidModel, "two-point B needs p in [0,1]");
                 },
                 [](const BExponential& k) {
                   if (!(k.rate > 0.0)) fail(ErrorCode::InvalidModel, "exponential B needs rate > 0");
                 },
                 [](const BUniform& k) {
                   if (!(k.hi > k.lo)) fail(ErrorCode::InvalidModel, "uniform B needs lo < hi");
                 },
                 [](const BAffineInA&) {},
             },
             kind);
  if (!(nu > kappa)) fail(ErrorCode::InvalidModel, "B moment order nu must exceed kappa");
  if (!coupled() && !std::isfinite(abs_moment(nu))) fail(ErrorCode::InvalidModel, "E|B|^nu is infinite");
}

}  // namespace perptail
