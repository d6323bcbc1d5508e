#pragma once

// Pointwise Finsler tensors: fundamental and Cartan tensors, formal
// Christoffel symbols, spray, nonlinear connection, the delta/delta x
// operator, horizontal and vertical covariant derivatives, and the iterated
// Landsberg-type tensors Adot^(m).
//
// Index conventions for stored components:
//   g(i,j) = g_ij, g_inv(i,j) = g^ij, A(i,j,k) = A_ijk
//   gamma(i,j,k) = gamma^i_jk, N(i,j) = N^i_j, Gamma(i,j,k) = Gamma^i_jk
// Derivative slots are appended last: delta_x(T)(..., l) = delta T / delta x^l.

#include <memory>
#include <vector>

#include "finsler/catalog.hpp"
#include "finsler/jets.hpp"
#include "finsler/series.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Taylor expansions of the basic geometric objects around one point. Every
/// member is truncated at the order that survives the derivatives taken to
/// build it: with expansion degree D, g has degree D-2, A and the spray D-3,
/// and Adot^(m) degree D-3-m.
struct LocalGeometry {
  MetricSpec spec;
  EvalPoint point;
  int degree = 0;
  int m_max = 0;

  std::vector<Series> x;  ///< coordinate variables
  std::vector<Series> y;  ///< fiber variables
  Series F;
  Series F2;
  SeriesTensor g;
  SeriesTensor g_inv;
  SeriesTensor ell;      ///< ell^i = y^i / F
  SeriesTensor ell_low;  ///< ell_i = F_{y^i}
  SeriesTensor A;
  SeriesTensor C;
  SeriesTensor gamma;
  SeriesTensor G;
  SeriesTensor N;
  SeriesTensor chern;              ///< Gamma*^i_jk
  std::vector<SeriesTensor> adot;  ///< adot[m-1] = Adot^(m)_ijk, m = 1..m_max

  int dim() const { return point.dim(); }
  const MonomialBasis& basis() const { return F.basis(); }
};

/// Builds the expansion with enough order for Adot^(1..m_max) plus
/// `extra_order` further derivatives of the deepest one.
/// Throws ConvexityError if g fails to be positive definite at the point.
std::shared_ptr<const LocalGeometry> expand_geometry(const MetricSpec& spec, const EvalPoint& pt,
                                                     int m_max, int extra_order = 1);

struct MetricData {
  double F = 0.0;
  RealTensor g;
  RealTensor g_inv;
  RealTensor ell;
  RealTensor ell_low;
  RealTensor A;
  RealTensor C;
};

struct SprayData {
  RealTensor gamma;
  RealTensor G;
  RealTensor N;
};

struct DerivedCartan {
  RealTensor A_h;                 ///< A_ijk|l (Chern)
  RealTensor A_v;                 ///< A_ijk.l
  std::vector<RealTensor> adot;   ///< Adot^(m)_ijk, m = 1..m_max
  RealTensor L;                   ///< L^i_jk = d^2 G^i / dy^j dy^k - Gamma*^i_jk
};

MetricData metric_data(const MetricSpec& spec, const EvalPoint& pt);
MetricData metric_data(const LocalGeometry& geo);
SprayData spray_data(const MetricSpec& spec, const EvalPoint& pt);
SprayData spray_data(const LocalGeometry& geo);

/// Cheap spray coefficients G^i = 1/4 g^il ([F^2]_{x^k y^l} y^k - [F^2]_{x^l});
/// used by the geodesic integrator.
std::vector<double> spray_coefficients(const MetricSpec& spec, std::span<const double> x,
                                       std::span<const double> y);
/// Nonlinear connection N^i_j = dG^i/dy^j from the same cheap formula.
RealTensor nonlinear_connection(const MetricSpec& spec, std::span<const double> x,
                                std::span<const double> y);

/// delta T / delta x^l = dT/dx^l - N^i_l dT/dy^i, appended as a last slot.
SeriesTensor delta_x(const SeriesTensor& field, const SeriesTensor& N);
SeriesTensor delta_x(const SeriesTensor& field, const LocalGeometry& geo);
Series delta_x(const Series& field, const SeriesTensor& N, int l);

/// Horizontal covariant derivative of a covariant tensor of any rank with
/// connection coefficients Gamma(i,j,k) = Gamma^i_jk:
///   T_{i..|l} = delta_l T_{i..} - sum over slots T_{..s..} Gamma^s_{i_a l}.
SeriesTensor cov_h(const SeriesTensor& field, const SeriesTensor& Gamma, const SeriesTensor& N);

/// ell^l T_{i..|l}, computed without forming the full derivative.
SeriesTensor cov_h_along_ell(const SeriesTensor& field, const SeriesTensor& Gamma,
                             const LocalGeometry& geo);

/// Vertical covariant derivative T_{i...l} of a covariant tensor; the family
/// has no vertical connection coefficients.
SeriesTensor cov_v(const SeriesTensor& field, const LocalGeometry& geo);

/// T^i_{jk..} = g^is T_{sjk..}
SeriesTensor raise_first(const SeriesTensor& field, const SeriesTensor& g_inv);

/// Contracts slot `slot` with the vector v.
SeriesTensor contract(const SeriesTensor& field, int slot, const SeriesTensor& v);
RealTensor contract(const RealTensor& field, int slot, const RealTensor& v);

/// Inverse of a symmetric series matrix (Gauss-Jordan, no pivoting; valid for
/// positive definite leading values).
SeriesTensor inverse(const SeriesTensor& m);

/// Iterated tensors with the Chern connection as base, plus the Landsberg
/// tensor from jets of the spray.
DerivedCartan adot_iterated(const MetricSpec& spec, const EvalPoint& pt, int m_max = 3);
DerivedCartan derived_cartan(const LocalGeometry& geo);

/// Landsberg tensor L^i_jk = d^2 G^i/dy^j dy^k - Gamma*^i_jk as series.
SeriesTensor landsberg(const LocalGeometry& geo);
/// Berwald coefficients d^2 G^i / dy^j dy^k as series.
SeriesTensor berwald_from_spray(const LocalGeometry& geo);

/// The iterated tensors built with the Berwald connection as base instead of
/// Chern; used to confirm that the choice of base does not matter.
std::vector<SeriesTensor> adot_with_berwald_base(const LocalGeometry& geo);

}  // namespace finsler
