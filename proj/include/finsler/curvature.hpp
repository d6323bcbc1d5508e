#pragma once

// hh-, hv- and vv-curvature of a family member in coordinates, and flag
// curvature.
//
//   R^i_{j kl} = d_k Gamma^i_jl - d_l Gamma^i_jk + Gamma^i_km Gamma^m_jl - Gamma^i_lm Gamma^m_jk
//   P^i_{j kl} = -F dGamma^i_jk / dy^l
// with d_k = delta / delta x^k. Storage: R(i,j,k,l) = R^i_{j kl}, and the
// lowered forms R_low(j,i,k,l) = g_is R^s_{j kl}.

#include <vector>

#include "finsler/connections.hpp"

namespace finsler {

struct CurvatureData {
  RealTensor R;
  RealTensor P;
  RealTensor Q;      ///< vv-curvature, zero for the torsion-free family
  RealTensor R_low;  ///< R_low(j,i,k,l) = g_is R^s_{j kl}
  RealTensor P_low;  ///< P_low(j,i,k,l) = g_is P^s_{j kl}
  RealTensor P_n;    ///< P_n(i,k,l) = ell^j P_low(j,i,k,l)
};

RealTensor hh_curvature(const ConnectionData& conn);
RealTensor hv_curvature(const ConnectionData& conn);
RealTensor vv_curvature(const ConnectionData& conn);
CurvatureData curvature(const ConnectionData& conn);

struct PnSlice {
  RealTensor P_n;
  double residual = 0.0;    ///< max |P_n - (sum_m k_m Adot^(m) - Adot)|
  double diagonal = 0.0;    ///< max |P_{n j n l}|
};
PnSlice pn_slice(const ConnectionData& conn);

struct FlagSample {
  EvalPoint pt;           ///< base point and flagpole y
  std::vector<double> V;  ///< transverse edge
  double K = 0.0;
};

/// K(y, V) from a precomputed curvature at the flagpole's base point. Throws
/// FlagError when the flag is degenerate: g(y,y) g(V,V) - g(y,V)^2 at most
/// 1e-12 times g(y,y) g(V,V).
double flag_curvature(const CurvatureData& curv, const RealTensor& g, std::span<const double> y,
                      std::span<const double> V);
/// Flag curvature at pt with flagpole pt.y (Chern connection; all family
/// members give the same value).
double flag_curvature(const MetricSpec& spec, const EvalPoint& pt, std::span<const double> V);

}  // namespace finsler
