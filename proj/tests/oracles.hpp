#pragma once

// Helpers shared by the unit tests and the acceptance binary. Everything here
// is built from plain finite differences or closed forms, never from the
// series engine.

#include <cmath>
#include <functional>
#include <vector>

#include "finsler/catalog.hpp"
#include "finsler/jets.hpp"
#include "finsler/tensor.hpp"

namespace oracle {

using finsler::EvalPoint;
using finsler::JetTable;
using finsler::RealTensor;

/// max over entries of the given order of |a - b| / max(1, max |a| of that order).
inline double jet_rel_error(const JetTable& exact, const JetTable& approx, int order) {
  double scale = 1.0, worst = 0.0;
  for (const auto& [idx, v] : exact.entries())
    if (idx.order() == order) scale = std::max(scale, std::abs(v));
  for (const auto& [idx, v] : exact.entries()) {
    if (idx.order() != order) continue;
    worst = std::max(worst, std::abs(v - approx.entries().at(idx)));
  }
  return worst / scale;
}

/// F^2 along the fiber, as a plain function of y.
inline std::function<double(const std::vector<double>&)> energy(const finsler::MetricSpec& spec,
                                                                 const std::vector<double>& x) {
  return [spec, x](const std::vector<double>& y) {
    const double f = finsler::finsler_norm<double>(spec, x, y);
    return f * f;
  };
}

/// g_ij = 1/2 d^2 F^2 / dy^i dy^j by central differences.
inline RealTensor fd_fundamental(const finsler::MetricSpec& spec, const EvalPoint& pt, double h = 1e-4) {
  const int n = pt.dim();
  auto E = energy(spec, pt.x);
  RealTensor g(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto at = [&](double si, double sj) {
        std::vector<double> y = pt.y;
        y[static_cast<std::size_t>(i)] += si * h;
        y[static_cast<std::size_t>(j)] += sj * h;
        return E(y);
      };
      g(i, j) = 0.5 * (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  return g;
}

/// A_ijk = F/2 * dg_ij/dy^k with g from fd_fundamental, differenced once more.
inline RealTensor fd_cartan(const finsler::MetricSpec& spec, const EvalPoint& pt, double h = 1e-3) {
  const int n = pt.dim();
  const double F = finsler::finsler_norm<double>(spec, pt.x, pt.y);
  RealTensor A(n, 3);
  for (int k = 0; k < n; ++k) {
    EvalPoint p = pt, m = pt;
    p.y[static_cast<std::size_t>(k)] += h;
    m.y[static_cast<std::size_t>(k)] -= h;
    const RealTensor gp = fd_fundamental(spec, p, 1e-3), gm = fd_fundamental(spec, m, 1e-3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j, k) = 0.5 * F * (gp(i, j) - gm(i, j)) / (2 * h);
  }
  return A;
}

/// Christoffel symbols of the conformal metric 4 r^2 / (1 + |x|^2)^2 delta:
/// gamma^k_ij = delta^k_i s_j + delta^k_j s_i - delta_ij s_k, s_i = -2 x_i / (1 + |x|^2).
inline RealTensor sphere_christoffel(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  double xx = 0;
  for (double v : x) xx += v * v;
  std::vector<double> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = -2.0 * x[i] / (1.0 + xx);
  RealTensor G(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto K = static_cast<std::size_t>(k), I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
        G(k, i, j) = (k == i ? s[J] : 0.0) + (k == j ? s[I] : 0.0) - (i == j ? s[K] : 0.0);
      }
  return G;
}

/// Inverse stereographic projection onto the sphere of radius 1 in R^{n+1}.
inline std::vector<double> to_sphere(const std::vector<double>& x) {
  double xx = 0;
  for (double v : x) xx += v * v;
  std::vector<double> P;
  for (double v : x) P.push_back(2 * v / (1 + xx));
  P.push_back((xx - 1) / (1 + xx));
  return P;
}

/// Differential of to_sphere at x applied to v.
inline std::vector<double> to_sphere_velocity(const std::vector<double>& x, const std::vector<double>& v) {
  const double h = 1e-6;
  std::vector<double> xp = x, xm = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] += h * v[i];
    xm[i] -= h * v[i];
  }
  auto a = to_sphere(xp), b = to_sphere(xm);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] - b[i]) / (2 * h);
  return a;
}

}  // namespace oracle
