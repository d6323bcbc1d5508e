#include "finsler/catalog.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <sstream>

#include "finsler/sampling.hpp"

namespace finsler {

bool RandersParams::beta_is_constant() const {
  return std::all_of(beta_sin.begin(), beta_sin.end(), [](double s) { return s == 0.0; });
}

std::string kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::riemannian_sphere: return "riemannian-sphere";
    case MetricKind::quartic: return "locally-minkowski-quartic";
    case MetricKind::randers: return "randers";
    case MetricKind::funk_ball: return "funk-ball";
  }
  throw std::logic_error("unknown metric kind");
}

MetricKind kind_from_name(const std::string& name) {
  for (auto k : {MetricKind::euclidean, MetricKind::riemannian_sphere, MetricKind::quartic,
                 MetricKind::randers, MetricKind::funk_ball})
    if (kind_name(k) == name) return k;
  if (name == "sphere") return MetricKind::riemannian_sphere;
  if (name == "quartic") return MetricKind::quartic;
  if (name == "funk") return MetricKind::funk_ball;
  throw std::invalid_argument("unknown metric kind '" + name + "'");
}

ExpectedLabels MetricSpec::expected() const {
  switch (kind()) {
    case MetricKind::euclidean:
    case MetricKind::riemannian_sphere: return {true, true, true};
    case MetricKind::quartic: {
      const bool round = std::get<QuarticParams>(params).epsilon == 0.0;
      return {round, true, true};
    }
    case MetricKind::randers: {
      const auto& p = std::get<RandersParams>(params);
      const bool beta_zero = p.beta_is_constant() &&
                             std::all_of(p.beta_const.begin(), p.beta_const.end(),
                                         [](double b) { return b == 0.0; });
      if (beta_zero) return {true, true, true};
      // A Randers metric with flat alpha and constant beta is locally
      // Minkowski; a non-parallel beta is neither Berwald nor Landsberg.
      if (p.beta_is_constant()) return {false, true, true};
      return {false, false, false};
    }
    case MetricKind::funk_ball: return {false, false, false};
  }
  throw std::logic_error("unknown metric kind");
}

void MetricSpec::check_parameters() const {
  if (dim < 2) throw std::invalid_argument("metric '" + name + "': dimension must be >= 2");
  const auto n = static_cast<std::size_t>(dim);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SphereParams>) {
          if (!(p.radius > 0.0) || !std::isfinite(p.radius))
            throw std::invalid_argument("sphere radius must be positive");
        } else if constexpr (std::is_same_v<P, QuarticParams>) {
          if (!std::isfinite(p.epsilon) || !(p.epsilon > -1.0))
            throw std::invalid_argument("quartic epsilon must be finite and > -1");
        } else if constexpr (std::is_same_v<P, RandersParams>) {
          if (p.alpha.size() != n * n || p.beta_const.size() != n || p.beta_sin.size() != n)
            throw std::invalid_argument("randers parameters do not match dimension");
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (p.alpha[i * n + j] != p.alpha[j * n + i])
                throw std::invalid_argument("randers alpha must be symmetric");
          auto finite = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
          };
          if (!finite(p.alpha) || !finite(p.beta_const) || !finite(p.beta_sin))
            throw std::invalid_argument("randers parameters must be finite");
        }
      },
      params);
}

void check_domain(const MetricSpec& spec, std::span<const double> x) {
  if (spec.kind() != MetricKind::funk_ball) return;
  double xx = 0.0;
  for (double v : x) xx += v * v;
  if (!(xx < 1.0)) {
    std::ostringstream os;
    os << "metric '" << spec.name << "': Funk metric requires |x| < 1 (got |x| = "
       << std::sqrt(xx) << ")";
    throw DomainError(os.str());
  }
}

ScalarField norm_field(const MetricSpec& spec) {
  return ScalarField::from_generic([spec](auto x, auto y) { return finsler_norm(spec, x, y); });
}

ScalarField squared_norm_field(const MetricSpec& spec) {
  return ScalarField::from_generic([spec](auto x, auto y) {
    auto f = finsler_norm(spec, x, y);
    return f * f;
  });
}

double evaluate_F(const MetricSpec& spec, const EvalPoint& pt) {
  pt.validate();
  return finsler_norm<double>(spec, pt.x, pt.y);
}

ValidationReport validate(const MetricSpec& spec, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("validate: n_samples must be >= 1");
  spec.check_parameters();
  ValidationReport report;
  report.spec = spec;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  report.positivity = std::numeric_limits<double>::infinity();
  report.pass = true;
  const int n = spec.dim;
  const auto f2 = squared_norm_field(spec);
  for (int s = 0; s < n_samples; ++s) {
    const EvalPoint pt = sample_point(spec, static_cast<std::size_t>(s));
    ++report.samples;
    const double F = evaluate_F(spec, pt);
    report.positivity = std::min(report.positivity, F);

    const JetTable jet = eval_jet(f2, pt, {0, 2});
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = 0.5 * jet.at({}, {i, j});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
    const double lambda = eig.eigenvalues().minCoeff();
    report.min_eigenvalue = std::min(report.min_eigenvalue, lambda);

    if (!(F > 0.0) || !(lambda > 0.0)) {
      report.pass = false;
      report.failing_point = pt;
      std::ostringstream os;
      os << (F > 0.0 ? "fundamental tensor not positive definite" : "F not positive")
         << " at sample " << s << " (F = " << F << ", min eigenvalue = " << lambda << ")";
      report.failure = os.str();
      break;
    }
  }
  return report;
}

MetricSpec make_default(MetricKind kind, int dim, std::string name) {
  MetricSpec spec;
  spec.dim = dim;
  const auto n = static_cast<std::size_t>(dim);
  switch (kind) {
    case MetricKind::euclidean:
      spec.name = "euclidean";
      spec.params = EuclideanParams{};
      break;
    case MetricKind::riemannian_sphere:
      spec.name = "riemannian-sphere";
      spec.params = SphereParams{};
      break;
    case MetricKind::quartic:
      spec.name = "quartic";
      spec.params = QuarticParams{};
      break;
    case MetricKind::randers: {
      spec.name = "randers-nonconst";
      RandersParams p;
      p.alpha.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) p.alpha[i * n + i] = 1.0;
      p.beta_const.assign(n, 0.0);
      p.beta_sin.assign(n, 0.0);
      p.beta_const[0] = 0.2;
      p.beta_sin[0] = 0.1;
      spec.params = p;
      break;
    }
    case MetricKind::funk_ball:
      spec.name = "funk";
      spec.params = FunkParams{};
      break;
  }
  if (!name.empty()) spec.name = std::move(name);
  return spec;
}

std::vector<MetricSpec> list_catalog() {
  return {make_default(MetricKind::euclidean, 2), make_default(MetricKind::riemannian_sphere, 2),
          make_default(MetricKind::quartic, 2), make_default(MetricKind::randers, 2),
          make_default(MetricKind::funk_ball, 2)};
}

MetricSpec randers_constant_preset() {
  MetricSpec spec = make_default(MetricKind::randers, 2, "randers-const");
  auto& p = std::get<RandersParams>(spec.params);
  p.beta_const = {0.3, 0.0};
  p.beta_sin = {0.0, 0.0};
  return spec;
}

std::vector<MetricSpec> extended_catalog() {
  auto all = list_catalog();
  all.push_back(randers_constant_preset());
  return all;
}

MetricSpec lookup_metric(const std::string& name) {
  for (const auto& spec : extended_catalog()) {
    if (spec.name == name) return spec;
  }
  if (name == "funk-ball") return make_default(MetricKind::funk_ball, 2);
  if (name == "sphere") return make_default(MetricKind::riemannian_sphere, 2);
  if (name == "locally-minkowski-quartic") return make_default(MetricKind::quartic, 2);
  if (name == "randers") return make_default(MetricKind::randers, 2);
  throw std::invalid_argument("unknown metric '" + name + "'");
}

}  // namespace finsler
