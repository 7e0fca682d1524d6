#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace curvegeo::ode {

enum class RhsStatus { Ok, OutOfDomain, Umbilic, Singular };

template <int N>
using State = Eigen::Matrix<double, N, 1>;

template <int N>
struct RhsResult {
  RhsStatus status = RhsStatus::Ok;
  State<N> dy = State<N>::Zero();
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double initial_step = 1e-2;
  // Smallest step tried after a failed right-hand side before giving up;
  // this is how close a trace lands to a domain edge.
  double min_step = 1e-10;
  long max_steps = 2'000'000;
};

enum class StopReason { Completed, Boundary, Umbilic, Singular, SolverFailure };

template <int N>
struct Result {
  StopReason reason = StopReason::Completed;
  double s_stop = 0;
  // Solution at the leading grid points that were reached.
  std::vector<State<N>> values;
  long accepted = 0, rejected = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension of order four.
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

inline StopReason reason_for(RhsStatus s) {
  switch (s) {
    case RhsStatus::OutOfDomain: return StopReason::Boundary;
    case RhsStatus::Umbilic: return StopReason::Umbilic;
    case RhsStatus::Singular: return StopReason::Singular;
    case RhsStatus::Ok: break;
  }
  return StopReason::SolverFailure;
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) from s0 towards s_end (either direction).
/// `grid` lists output abscissae ordered from s0 towards s_end; values are
/// produced by the dense interpolant. A failing right-hand side shrinks the
/// step by bisection until min_step, then stops with the matching reason.
/// `on_accept(s, y)` runs after each accepted step.
template <int N, class Rhs, class OnAccept>
Result<N> integrate(Rhs&& rhs, double s0, const State<N>& y0, double s_end, std::span<const double> grid,
                    const Options& opt, OnAccept&& on_accept) {
  using namespace detail;
  using S = State<N>;
  Result<N> out;
  out.s_stop = s0;
  const double dir = s_end >= s0 ? 1.0 : -1.0;
  std::size_t next = 0;
  auto emit_start = [&] {
    while (next < grid.size() && std::abs(grid[next] - s0) <= 1e-14 * std::max(1.0, std::abs(s0))) {
      out.values.push_back(y0);
      ++next;
    }
  };

  RhsResult<N> first = rhs(s0, y0);
  if (first.status != RhsStatus::Ok) {
    out.reason = reason_for(first.status);
    return out;
  }
  emit_start();

  double s = s0;
  S y = y0;
  S k1 = first.dy;
  double h = dir * std::min(opt.initial_step, std::abs(s_end - s0));
  double cap = std::numeric_limits<double>::infinity();  // step bound after RHS failures
  RhsStatus last_failure = RhsStatus::Ok;

  const double span_scale = std::max({1.0, std::abs(s0), std::abs(s_end)});
  for (long step = 0; step < opt.max_steps; ++step) {
    const double remaining = s_end - s;
    if (std::abs(remaining) <= 1e-14 * span_scale) {
      out.reason = StopReason::Completed;
      out.s_stop = s_end;
      return out;
    }
    if (std::abs(h) > cap) h = dir * cap;
    if (std::abs(h) >= std::abs(remaining)) h = remaining;

    auto fail_step = [&](RhsStatus status) {
      last_failure = status;
      cap = 0.5 * std::abs(h);
      h = 0.5 * h;
      ++out.rejected;
    };

    RhsResult<N> r2 = rhs(s + c2 * h, S(y + h * a21 * k1));
    if (r2.status != RhsStatus::Ok) { fail_step(r2.status); goto check_min; }
    {
      const S k2 = r2.dy;
      RhsResult<N> r3 = rhs(s + c3 * h, S(y + h * (a31 * k1 + a32 * k2)));
      if (r3.status != RhsStatus::Ok) { fail_step(r3.status); goto check_min; }
      const S k3 = r3.dy;
      RhsResult<N> r4 = rhs(s + c4 * h, S(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
      if (r4.status != RhsStatus::Ok) { fail_step(r4.status); goto check_min; }
      const S k4 = r4.dy;
      RhsResult<N> r5 = rhs(s + c5 * h, S(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
      if (r5.status != RhsStatus::Ok) { fail_step(r5.status); goto check_min; }
      const S k5 = r5.dy;
      RhsResult<N> r6 = rhs(s + h, S(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
      if (r6.status != RhsStatus::Ok) { fail_step(r6.status); goto check_min; }
      const S k6 = r6.dy;
      const S y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      RhsResult<N> r7 = rhs(s + h, y_new);
      if (r7.status != RhsStatus::Ok) { fail_step(r7.status); goto check_min; }
      const S k7 = r7.dy;

      const S err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double err = 0;
      for (int i = 0; i < N; ++i) {
        const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err = std::max(err, std::abs(err_vec[i]) / sc);
      }
      const double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err > 1.0) {
        h *= std::min(1.0, factor);
        ++out.rejected;
        goto check_min;
      }

      // Dense output on (s, s + h].
      const double s_new = s + h;
      while (next < grid.size() && dir * (grid[next] - s_new) <= 1e-14 * span_scale) {
        const double th = (grid[next] - s) / h;
        const S rc2 = y_new - y;
        const S rc3 = h * k1 - rc2;
        const S rc4 = rc2 - h * k7 - rc3;
        const S rc5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        const double th1 = 1.0 - th;
        out.values.push_back(y + th * (rc2 + th1 * (rc3 + th * (rc4 + th1 * rc5))));
        ++next;
      }
      s = s_new;
      y = y_new;
      k1 = k7;
      ++out.accepted;
      out.s_stop = s;
      on_accept(s, y);
      h *= factor;
      continue;
    }
  check_min:
    if (std::abs(h) < opt.min_step) {
      out.reason = last_failure == RhsStatus::Ok ? StopReason::SolverFailure : reason_for(last_failure);
      out.s_stop = s;
      return out;
    }
  }
  out.reason = StopReason::SolverFailure;
  out.s_stop = s;
  return out;
}

}  // namespace curvegeo::ode
