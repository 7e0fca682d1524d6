#include "curvegeo/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "curvegeo/errors.hpp"

namespace curvegeo::numerics {

std::vector<double> fd_weights(double x0, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = c[j][m];
  return w;
}

namespace {

template <class T>
std::vector<T> derivative_impl(std::span<const T> v, double h, int order, T zero) {
  if (order < 1 || order > 3) throw GeometryError(ErrorKind::InvalidArgument, "derivative order must be 1..3");
  const int n = static_cast<int>(v.size());
  const int edge_width = order + 4;
  // Smallest odd symmetric stencil reaching fourth order.
  const int central_width = order == 3 ? 7 : 5;
  if (n < edge_width) throw GeometryError(ErrorKind::TooFewSamples, "not enough samples for the stencil");

  const int half = central_width / 2;
  std::vector<double> nodes;
  auto weights_for = [&](int first, int width, int at) {
    nodes.resize(width);
    for (int k = 0; k < width; ++k) nodes[k] = first + k;
    return fd_weights(at, nodes, order);
  };
  const std::vector<double> central = weights_for(-half, central_width, 0);
  const double scale = std::pow(h, -order);

  std::vector<T> out(n, zero);
  for (int i = 0; i < n; ++i) {
    int first, width;
    const std::vector<double>* w;
    std::vector<double> local;
    if (i - half >= 0 && i + half < n) {
      first = i - half;
      width = central_width;
      w = &central;
    } else {
      width = edge_width;
      first = std::clamp(i - width / 2, 0, n - width);
      local = weights_for(first, width, i);
      w = &local;
    }
    T acc = zero;
    for (int k = 0; k < width; ++k) acc += (*w)[k] * v[first + k];
    out[i] = acc * scale;
  }
  return out;
}

}  // namespace

std::vector<double> uniform_derivative(std::span<const double> values, double h, int order) {
  return derivative_impl<double>(values, h, order, 0.0);
}

std::vector<Vec3> uniform_derivative(std::span<const Vec3> values, double h, int order) {
  return derivative_impl<Vec3>(values, h, order, Vec3::Zero());
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2 * kPi);
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

std::vector<double> unwrap(std::span<const double> angles) {
  std::vector<double> out(angles.begin(), angles.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = out[i - 1] + wrap_angle(angles[i] - out[i - 1]);
  }
  return out;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

}  // namespace curvegeo::numerics
