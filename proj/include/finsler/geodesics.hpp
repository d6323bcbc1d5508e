#pragma once

// Unit-speed geodesics x'' + 2G(x, x') = 0, parallel transport along them,
// and time series of the Cartan tensor and its iterates on transported
// frames.

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "finsler/connections.hpp"
#include "finsler/sampling.hpp"

namespace finsler {

struct GeodesicOptions {
  double t_max = 10.0;
  double dt = 1e-3;
  double unit_tolerance = 1e-9;  ///< |F(x0, y0) - 1| allowed on input
};

struct GeodesicPath {
  MetricSpec spec;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> v;  ///< x'(t)
  std::vector<double> speed;           ///< F(x(t), x'(t))
  double speed_drift = 0.0;            ///< max_t |F(x, x') - F(x0, x0')|
  bool exited = false;                 ///< stopped early at the domain or chart boundary
  std::string exit_reason;

  std::size_t size() const { return times.size(); }
};

/// Largest |x| the integrator accepts for this metric: the open unit ball for
/// Funk, a bound keeping the stereographic sphere chart away from the pole,
/// unbounded otherwise.
double chart_radius(const MetricSpec& spec);

/// Classical RK4 with fixed step. Throws DomainError if (x0, y0) is outside
/// the domain and std::invalid_argument if F(x0, y0) != 1 or dt <= 0.
GeodesicPath integrate_geodesic(const MetricSpec& spec, std::span<const double> x0,
                                std::span<const double> y0, const GeodesicOptions& opts = {});

/// y scaled to unit F at x.
std::vector<double> normalize_direction(const MetricSpec& spec, std::span<const double> x,
                                        std::span<const double> y);

struct TransportedFrame {
  GeodesicPath path;
  FamilyParams params;
  std::vector<std::vector<std::vector<double>>> vectors;  ///< vectors[t][a]
  double norm_drift = 0.0;  ///< max over t, a, b of |g(X_a, X_b)(t) - g(X_a, X_b)(0)|
};

/// Integrates X'^i + Gamma^i_jk(x, x') x'^j X^k = 0 alongside the geodesic.
/// Along a unit-speed geodesic Gamma^i_jk x'^j = N^i_k for every family
/// member (the correction tensors are annihilated by ell), so the transport
/// uses N and `params` only labels the frame; `transport_rhs_reference`
/// evaluates the full member for cross-checks.
TransportedFrame parallel_transport(const MetricSpec& spec, std::span<const double> x0,
                                    std::span<const double> y0,
                                    const std::vector<std::vector<double>>& initial,
                                    const FamilyParams& params = {},
                                    const GeodesicOptions& opts = {});

/// -Gamma^i_jk(x, v) v^j X^k from the assembled family member.
std::vector<double> transport_rhs_reference(const MetricSpec& spec, std::span<const double> x,
                                            std::span<const double> v, std::span<const double> X,
                                            const FamilyParams& params);
/// -N^i_k(x, v) X^k, the form used by the integrator.
std::vector<double> transport_rhs(const MetricSpec& spec, std::span<const double> x,
                                  std::span<const double> v, std::span<const double> X);

struct CartanSeries {
  std::vector<double> times;
  std::vector<double> A;      ///< A(X, Y, Z)
  std::vector<double> Adot;   ///< Adot(X, Y, Z)
  std::vector<double> Addot;  ///< Adot^(2)(X, Y, Z)
  /// Fourth-order central differences, defined at interior samples only
  /// (NaN within two samples of either end).
  std::vector<double> dA;
  std::vector<double> dAdot;
  double residual_first = 0.0;   ///< max |dA/dt - Adot|
  double residual_second = 0.0;  ///< max |dAdot/dt - Addot|
  double max_A = 0.0;
  double max_Adot = 0.0;
  double max_Addot = 0.0;
};

/// Samples every `stride`-th state of the frame. With one transported vector
/// it is used for all three arguments; otherwise the first three are used.
/// Throws std::invalid_argument if fewer than 5 samples result.
CartanSeries cartan_series(const TransportedFrame& frame, std::size_t stride);

struct GeodesicStart {
  std::vector<double> x0;
  std::vector<double> y0;  ///< F(x0, y0) = 1
  std::vector<double> V0;  ///< g-orthogonal to y0, g(V0, V0) = 1
};

/// Deterministic initial data from the sample sequence. On the sphere the
/// direction is tangent to the circle |x| = const through a point with
/// |x| in [0.3, 0.8], so the great circle stays inside |x| <= 1/0.3 and the
/// path never reaches the chart guard.
std::vector<GeodesicStart> geodesic_starts(const MetricSpec& spec, std::size_t count,
                                           std::size_t offset = 0);

void write_csv(std::ostream& os, const GeodesicPath& path);

}  // namespace finsler
