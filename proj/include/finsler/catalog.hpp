#pragma once

// Built-in Finsler metrics and their strong-convexity validation.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/jets.hpp"
#include "finsler/series.hpp"

namespace finsler {

enum class MetricKind { euclidean, riemannian_sphere, quartic, randers, funk_ball };

struct EuclideanParams {};

/// Round sphere of the given radius in the stereographic chart:
/// g_ij = 4 r^2 delta_ij / (1 + |x|^2)^2.
struct SphereParams {
  double radius = 1.0;
};

/// Locally Minkowski F = (|y|^4 + epsilon * sum_i (y^i)^4)^(1/4).
struct QuarticParams {
  double epsilon = 0.5;
};

/// F = sqrt(a_ij y^i y^j) + b_i(x) y^i with constant a and
/// b_i(x) = beta_const_i + beta_sin_i * sin(x^1).
struct RandersParams {
  std::vector<double> alpha;  ///< n*n row-major, symmetric positive definite
  std::vector<double> beta_const;
  std::vector<double> beta_sin;

  bool beta_is_constant() const;
};

/// Funk metric of the open unit ball.
struct FunkParams {};

using MetricParams =
    std::variant<EuclideanParams, SphereParams, QuarticParams, RandersParams, FunkParams>;

/// Classification ground truth carried by catalog entries. The analysis module
/// re-derives every label numerically.
struct ExpectedLabels {
  bool riemannian = false;
  bool berwald = false;
  bool landsberg = false;
};

struct MetricSpec {
  std::string name;
  int dim = 2;
  MetricParams params;

  MetricKind kind() const { return static_cast<MetricKind>(params.index()); }
  ExpectedLabels expected() const;
  /// Throws std::invalid_argument on malformed parameters (dimension
  /// mismatch, non-finite values, non-symmetric alpha).
  void check_parameters() const;
};

std::string kind_name(MetricKind kind);
MetricKind kind_from_name(const std::string& name);

/// Radius of the sampling guard for the Funk ball; points with |x| beyond it
/// are valid but kept out of sampled checks.
inline constexpr double kFunkGuardRadius = 0.9;

/// Throws DomainError if x is outside the metric's chart domain.
void check_domain(const MetricSpec& spec, std::span<const double> x);

namespace detail {

template <class S>
S sum_squares(std::span<const S> v) {
  S acc = v[0] * v[0];
  for (std::size_t i = 1; i < v.size(); ++i) acc += v[i] * v[i];
  return acc;
}

template <class S>
S dot(std::span<const S> a, std::span<const S> b) {
  S acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace detail

/// F(x, y) for scalar types double and Series.
template <class S>
S finsler_norm(const MetricSpec& spec, std::span<const S> x, std::span<const S> y) {
  using std::pow;
  using std::sin;
  using std::sqrt;
  if (static_cast<int>(x.size()) != spec.dim || static_cast<int>(y.size()) != spec.dim)
    throw std::invalid_argument("metric '" + spec.name + "': point dimension mismatch");
  {
    std::vector<double> xv(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xv[i] = value_of(x[i]);
    check_domain(spec, xv);
  }
  double yy0 = 0.0;
  for (const S& v : y) yy0 += value_of(v) * value_of(v);
  if (!(yy0 > 0.0)) throw SlitBundleError("point not on the slit tangent bundle: y = 0");

  return std::visit(
      [&](const auto& p) -> S {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, EuclideanParams>) {
          return sqrt(detail::sum_squares(y));
        } else if constexpr (std::is_same_v<P, SphereParams>) {
          const S xx = detail::sum_squares(x);
          return 2.0 * p.radius * sqrt(detail::sum_squares(y)) / (xx + 1.0);
        } else if constexpr (std::is_same_v<P, QuarticParams>) {
          const S yy = detail::sum_squares(y);
          S quartic = y[0] * y[0] * y[0] * y[0];
          for (std::size_t i = 1; i < y.size(); ++i) quartic += y[i] * y[i] * y[i] * y[i];
          return pow(yy * yy + p.epsilon * quartic, 0.25);
        } else if constexpr (std::is_same_v<P, RandersParams>) {
          const std::size_t n = y.size();
          S aa = p.alpha[0] * y[0] * y[0];
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (i + j > 0) aa += p.alpha[i * n + j] * y[i] * y[j];
          const S s1 = sin(x[0]);
          S beta = (p.beta_const[0] + p.beta_sin[0] * s1) * y[0];
          for (std::size_t i = 1; i < n; ++i) beta += (p.beta_const[i] + p.beta_sin[i] * s1) * y[i];
          return sqrt(aa) + beta;
        } else {
          const S xx = detail::sum_squares(x);
          const S xy = detail::dot(x, y);
          const S yy = detail::sum_squares(y);
          const S one_minus = 1.0 - xx;
          return (sqrt(one_minus * yy + xy * xy) + xy) / one_minus;
        }
      },
      spec.params);
}

/// F as a ScalarField, for the jet engine.
ScalarField norm_field(const MetricSpec& spec);
/// F^2 as a ScalarField.
ScalarField squared_norm_field(const MetricSpec& spec);

/// F(x, y); throws DomainError outside the chart domain.
double evaluate_F(const MetricSpec& spec, const EvalPoint& pt);

struct ValidationReport {
  MetricSpec spec;
  int samples = 0;  ///< samples actually evaluated (validation fails fast)
  double min_eigenvalue = 0.0;
  double positivity = 0.0;  ///< min F over samples
  bool pass = false;
  std::optional<EvalPoint> failing_point;
  std::string failure;  ///< empty on pass
};

/// Checks F > 0 and positive definiteness of g on a deterministic sample set,
/// stopping at the first violating point.
ValidationReport validate(const MetricSpec& spec, int n_samples);

/// The built-in families with default parameters (all in dimension 2).
std::vector<MetricSpec> list_catalog();
/// Constant-beta Randers metric (Berwald, non-Riemannian); not part of
/// list_catalog but addressable by name.
MetricSpec randers_constant_preset();
/// list_catalog() plus randers_constant_preset().
std::vector<MetricSpec> extended_catalog();
/// Looks up a catalog entry or preset by name, kind name, or alias.
/// Throws std::invalid_argument for unknown names.
MetricSpec lookup_metric(const std::string& name);

/// Default-parameter spec of a family in dimension n.
MetricSpec make_default(MetricKind kind, int dim, std::string name = "");

}  // namespace finsler
