#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>

#include "perptail/common/error.hpp"

namespace perptail::test {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Throws with the expected error code, or fails the test.
template <class F>
void check_code(F&& f, ErrorCode code) {
  bool thrown = false;
  try {
    f();
  } catch (const Error& e) {
    thrown = true;
    CHECK_MESSAGE(e.code() == code, "got ", to_string(e.code()), ": ", e.what());
  }
  CHECK_MESSAGE(thrown, "expected ", to_string(code));
}

// Composite Simpson on [a, b] with n (even) panels; used as an oracle independent of the library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace perptail::test
