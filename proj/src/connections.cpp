#include "finsler/connections.hpp"

#include <cmath>
#include <sstream>

namespace finsler {

void FamilyParams::validate() const {
  for (double v : k)
    if (!std::isfinite(v)) throw std::invalid_argument("family coefficients must be finite");
}

FamilyParams FamilyParams::parse(const std::string& text) {
  FamilyParams p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse family coefficient '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("cannot parse family coefficient '" + item + "'");
    p.k.push_back(v);
  }
  p.validate();
  return p;
}

int family_m_max(const FamilyParams& params) { return std::max(1, params.m()); }
int family_extra_order(int m_max) { return std::max(1, 2 - m_max); }

namespace {

Series zero_like(const MonomialBasis& basis) { return Series(basis, basis.max_degree()); }

}  // namespace

SeriesTensor weighted_adot(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  SeriesTensor out(geo.dim(), 3, zero_like(geo.basis()));
  for (int m = 1; m <= conn.params.m(); ++m) {
    const double km = conn.params.k[static_cast<std::size_t>(m - 1)];
    if (km == 0.0) continue;
    const auto& a = geo.adot[static_cast<std::size_t>(m - 1)];
    for (std::size_t p = 0; p < out.size(); ++p) out.flat(p) += km * a.flat(p);
  }
  return out;
}

ConnectionData family(std::shared_ptr<const LocalGeometry> geo, const FamilyParams& params) {
  params.validate();
  if (params.m() > geo->m_max)
    throw std::invalid_argument("family: more coefficients than iterated tensors available");
  const int n = geo->dim();
  ConnectionData conn;
  conn.params = params;
  conn.geometry = geo;
  conn.Gamma_series = geo->chern;
  for (int m = 1; m <= params.m(); ++m) {
    const double km = params.k[static_cast<std::size_t>(m - 1)];
    if (km == 0.0) continue;
    const SeriesTensor raised = raise_first(geo->adot[static_cast<std::size_t>(m - 1)], geo->g_inv);
    for (std::size_t p = 0; p < raised.size(); ++p) conn.Gamma_series.flat(p) += km * raised.flat(p);
  }
  // Every term is symmetric in (j, k); keep the j <= k evaluation so rounding
  // cannot introduce torsion.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < j; ++k) conn.Gamma_series(i, j, k) = conn.Gamma_series(i, k, j);
  conn.Gamma = values(conn.Gamma_series);
  conn.F_vert = RealTensor(n, 3, 0.0);
  conn.N = values(geo->N);
  conn.spray = spray_data(*geo);
  conn.cartan = derived_cartan(*geo);
  return conn;
}

ConnectionData family(const MetricSpec& spec, const EvalPoint& pt, const FamilyParams& params) {
  const int m_max = family_m_max(params);
  return family(expand_geometry(spec, pt, m_max, family_extra_order(m_max)), params);
}

ConnectionData chern(const MetricSpec& spec, const EvalPoint& pt) { return family(spec, pt, {}); }

ConnectionData berwald(const MetricSpec& spec, const EvalPoint& pt) {
  return family(spec, pt, FamilyParams{{1.0}});
}

RealTensor berwald_from_spray_values(const ConnectionData& conn) {
  return values(berwald_from_spray(*conn.geometry));
}

double torsion_defect(const ConnectionData& conn) {
  const int n = conn.dim();
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        asym = std::max(asym, std::abs(conn.Gamma(i, j, k) - conn.Gamma(i, k, j)));
  return asym + max_abs(conn.F_vert);
}

SeriesTensor cov_h(const SeriesTensor& field, const ConnectionData& conn) {
  return cov_h(field, conn.Gamma_series, conn.geometry->N);
}

SeriesTensor cov_v(const SeriesTensor& field, const ConnectionData& conn) {
  return cov_v(field, *conn.geometry);
}

CompatibilityDefect compatibility_defect(const ConnectionData& conn) {
  const auto& geo = *conn.geometry;
  const RealTensor gh = values(cov_h(geo.g, conn));
  const RealTensor gv = values(cov_v(geo.g, conn));
  const RealTensor w = values(weighted_adot(conn));
  const RealTensor A = values(geo.A);
  CompatibilityDefect d;
  for (std::size_t p = 0; p < gh.size(); ++p) {
    d.horizontal = std::max(d.horizontal, std::abs(gh.flat(p) + 2.0 * w.flat(p)));
    d.vertical = std::max(d.vertical, std::abs(gv.flat(p) - 2.0 * A.flat(p)));
  }
  return d;
}

}  // namespace finsler
