#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>

#include "curvegeo/errors.hpp"

namespace testutil {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Kind of the GeometryError thrown by `f`, or nullopt-like sentinel when nothing is thrown.
inline int error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const curvegeo::GeometryError& e) {
    return static_cast<int>(e.kind());
  }
  return -1;
}

inline int kind(curvegeo::ErrorKind k) { return static_cast<int>(k); }

}  // namespace testutil
