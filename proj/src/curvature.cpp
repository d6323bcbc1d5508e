#include "finsler/curvature.hpp"

#include <cmath>

namespace finsler {

RealTensor hh_curvature(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  const int n = geo.dim();
  const SeriesTensor dG = delta_x(conn.Gamma_series, geo.N);  // dG(i,j,l,k) = d_k Gamma^i_jl
  const RealTensor dGv = values(dG);
  const RealTensor& G = conn.Gamma;
  RealTensor R(n, 4, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = dGv(i, j, l, k) - dGv(i, j, k, l);
          for (int m = 0; m < n; ++m) v += G(i, k, m) * G(m, j, l) - G(i, l, m) * G(m, j, k);
          R(i, j, k, l) = v;
        }
  return R;
}

RealTensor hv_curvature(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  const int n = geo.dim();
  const double F = geo.F.value();
  RealTensor P(n, 4, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          P(i, j, k, l) = -F * conn.Gamma_series(i, j, k).derivative(n + l).value();
  return P;
}

RealTensor vv_curvature(const ConnectionData& conn) {
  // Q^i_{j kl} = F^2 (d_y^k V^i_jl - d_y^l V^i_jk + V^i_km V^m_jl - V^i_lm V^m_jk) with the
  // vertical coefficients V of the connection (zero for every family member).
  const auto& geo = *conn.geometry;
  const int n = geo.dim();
  const double F = geo.F.value();
  SeriesTensor V(n, 3, Series(geo.basis(), geo.basis().max_degree()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) V(i, j, k) += conn.F_vert(i, j, k);
  RealTensor Q(n, 4, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = V(i, j, l).derivative(n + k).value() - V(i, j, k).derivative(n + l).value();
          for (int m = 0; m < n; ++m)
            v += conn.F_vert(i, k, m) * conn.F_vert(m, j, l) -
                 conn.F_vert(i, l, m) * conn.F_vert(m, j, k);
          Q(i, j, k, l) = F * F * v;
        }
  return Q;
}

namespace {

RealTensor lower_second(const RealTensor& T, const RealTensor& g) {
  const int n = T.dim();
  RealTensor out(n, 4, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int s = 0; s < n; ++s) v += g(i, s) * T(s, j, k, l);
          out(j, i, k, l) = v;
        }
  return out;
}

}  // namespace

CurvatureData curvature(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  const RealTensor g = values(geo.g);
  const RealTensor ell = values(geo.ell);
  CurvatureData c;
  c.R = hh_curvature(conn);
  c.P = hv_curvature(conn);
  c.Q = vv_curvature(conn);
  c.R_low = lower_second(c.R, g);
  c.P_low = lower_second(c.P, g);
  c.P_n = contract(c.P_low, 0, ell);
  return c;
}

PnSlice pn_slice(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  const int n = geo.dim();
  const RealTensor g = values(geo.g);
  const RealTensor ell = values(geo.ell);
  PnSlice s;
  s.P_n = contract(lower_second(hv_curvature(conn), g), 0, ell);
  const RealTensor w = values(weighted_adot(conn));
  const RealTensor& adot = conn.cartan.adot.at(0);
  for (std::size_t p = 0; p < s.P_n.size(); ++p)
    s.residual = std::max(s.residual, std::abs(s.P_n.flat(p) - (w.flat(p) - adot.flat(p))));
  // P_{n j n l}: contract the second remaining slot (k) with ell.
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += s.P_n(j, k, l) * ell(k);
      s.diagonal = std::max(s.diagonal, std::abs(v));
    }
  return s;
}

double flag_curvature(const CurvatureData& curv, const RealTensor& g, std::span<const double> y,
                      std::span<const double> V) {
  const int n = g.dim();
  double gyy = 0.0, gvv = 0.0, gyv = 0.0, num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto iu = static_cast<std::size_t>(i);
      const auto ju = static_cast<std::size_t>(j);
      gyy += g(i, j) * y[iu] * y[ju];
      gvv += g(i, j) * V[iu] * V[ju];
      gyv += g(i, j) * y[iu] * V[ju];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          num += V[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
                 curv.R_low(j, i, k, l) * y[static_cast<std::size_t>(l)] *
                 V[static_cast<std::size_t>(k)];
  const double denom = gyy * gvv - gyv * gyv;
  if (!(denom > 1e-12 * gyy * gvv)) throw FlagError("degenerate flag: V is parallel to y");
  return num / denom;
}

double flag_curvature(const MetricSpec& spec, const EvalPoint& pt, std::span<const double> V) {
  const ConnectionData conn = chern(spec, pt);
  const CurvatureData curv = curvature(conn);
  return flag_curvature(curv, values(conn.geometry->g), pt.y, V);
}

}  // namespace finsler
