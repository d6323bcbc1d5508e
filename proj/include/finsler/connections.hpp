#pragma once

// The Berwald-type connection family
//   Gamma^i_jk(k_1..k_m) = Gamma*^i_jk + sum_m k_m g^is Adot^(m)_sjk,
// its Chern (k = ()) and Berwald (k = (1)) members, and the torsion and
// almost-compatibility defects that certify a member.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finsler/tensors.hpp"

namespace finsler {

struct FamilyParams {
  std::vector<double> k;  ///< (k_1, ..., k_m); empty means Chern

  int m() const { return static_cast<int>(k.size()); }
  /// Throws std::invalid_argument on non-finite entries.
  void validate() const;
  /// Parses "0.3,-0.2"; an empty string or "0" alone is not special-cased.
  static FamilyParams parse(const std::string& text);
};

struct ConnectionData {
  FamilyParams params;
  RealTensor Gamma;   ///< Gamma^i_jk
  RealTensor F_vert;  ///< vertical coefficients F^i_jk, identically zero
  RealTensor N;
  SprayData spray;
  DerivedCartan cartan;

  std::shared_ptr<const LocalGeometry> geometry;
  SeriesTensor Gamma_series;

  int dim() const { return Gamma.dim(); }
  const EvalPoint& point() const { return geometry->point; }
};

/// Expansion depth that supports curvature of the member with m terms and
/// the Landsberg cross-check.
int family_m_max(const FamilyParams& params);
int family_extra_order(int m_max);

/// Builds the member on an existing expansion. Requires params.m() <= geo->m_max
/// and enough order left for one more derivative of Gamma.
ConnectionData family(std::shared_ptr<const LocalGeometry> geo, const FamilyParams& params);
ConnectionData family(const MetricSpec& spec, const EvalPoint& pt, const FamilyParams& params);
ConnectionData chern(const MetricSpec& spec, const EvalPoint& pt);
ConnectionData berwald(const MetricSpec& spec, const EvalPoint& pt);

/// d^2 G^i / dy^j dy^k at the connection's point: the Berwald connection built
/// independently of the family formula.
RealTensor berwald_from_spray_values(const ConnectionData& conn);

/// max |Gamma^i_jk - Gamma^i_kj| + max |F_vert|.
double torsion_defect(const ConnectionData& conn);

struct CompatibilityDefect {
  double horizontal = 0.0;  ///< max |g_ij|k + 2 sum_m k_m Adot^(m)_ijk|
  double vertical = 0.0;    ///< max |g_ij.k - 2 A_ijk|
};
CompatibilityDefect compatibility_defect(const ConnectionData& conn);

/// Covariant derivatives with respect to a family member.
SeriesTensor cov_h(const SeriesTensor& field, const ConnectionData& conn);
SeriesTensor cov_v(const SeriesTensor& field, const ConnectionData& conn);

/// sum_m k_m Adot^(m)_ijk as series (zero tensor for Chern).
SeriesTensor weighted_adot(const ConnectionData& conn);

}  // namespace finsler
