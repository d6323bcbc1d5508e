#include "finsler/geodesics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace finsler {

namespace {

using Vec = std::vector<double>;

double norm_at(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
  return finsler_norm<double>(spec, x, y);
}

// State layout: x (n), v (n), then the transported vectors (n each).
struct State {
  int n = 0;
  Vec data;

  std::span<const double> x() const { return {data.data(), static_cast<std::size_t>(n)}; }
  std::span<const double> v() const { return {data.data() + n, static_cast<std::size_t>(n)}; }
  std::span<const double> vec(int a) const {
    return {data.data() + 2 * n + a * n, static_cast<std::size_t>(n)};
  }
  int vectors() const { return static_cast<int>(data.size()) / n - 2; }
};

void check_chart(const MetricSpec& spec, std::span<const double> x) {
  check_domain(spec, x);
  const double limit = chart_radius(spec);
  if (std::isfinite(limit)) {
    double xx = 0.0;
    for (double c : x) xx += c * c;
    if (!(std::sqrt(xx) <= limit)) {
      std::ostringstream os;
      os << "metric '" << spec.name << "': path leaves the chart region |x| <= " << limit;
      throw DomainError(os.str());
    }
  }
}

Vec rhs(const MetricSpec& spec, const State& s) {
  const int n = s.n;
  check_chart(spec, s.x());
  Vec out(s.data.size(), 0.0);
  const Vec G = spray_coefficients(spec, s.x(), s.v());
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = s.v()[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(n + i)] = -2.0 * G[static_cast<std::size_t>(i)];
  }
  if (s.vectors() > 0) {
    const RealTensor N = nonlinear_connection(spec, s.x(), s.v());
    for (int a = 0; a < s.vectors(); ++a) {
      const auto X = s.vec(a);
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc -= N(i, k) * X[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(2 * n + a * n + i)] = acc;
      }
    }
  }
  return out;
}

State axpy(const State& s, double h, const Vec& k) {
  State t = s;
  for (std::size_t i = 0; i < t.data.size(); ++i) t.data[i] += h * k[i];
  return t;
}

struct RawPath {
  GeodesicPath path;
  std::vector<std::vector<Vec>> vectors;
};

RawPath integrate(const MetricSpec& spec, std::span<const double> x0, std::span<const double> y0,
                  const std::vector<Vec>& initial, const GeodesicOptions& opts) {
  const int n = spec.dim;
  if (static_cast<int>(x0.size()) != n || static_cast<int>(y0.size()) != n)
    throw std::invalid_argument("geodesic: initial point dimension does not match the metric");
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw std::invalid_argument("geodesic: dt must be positive");
  if (!(opts.t_max >= 0.0) || !std::isfinite(opts.t_max))
    throw std::invalid_argument("geodesic: t_max must be nonnegative");
  check_chart(spec, x0);
  const double F0 = norm_at(spec, x0, y0);
  if (std::abs(F0 - 1.0) > opts.unit_tolerance) {
    std::ostringstream os;
    os << std::setprecision(12) << "geodesic: initial direction must have F(x0, y0) = 1 (got " << F0 << ")";
    throw std::invalid_argument(os.str());
  }
  for (const auto& X : initial)
    if (static_cast<int>(X.size()) != n) throw std::invalid_argument("transport: vector dimension mismatch");

  State s{n, {}};
  s.data.assign(x0.begin(), x0.end());
  s.data.insert(s.data.end(), y0.begin(), y0.end());
  for (const auto& X : initial) s.data.insert(s.data.end(), X.begin(), X.end());

  RawPath raw;
  auto& p = raw.path;
  p.spec = spec;
  p.dt = opts.dt;
  auto record = [&](double t, const State& st) {
    p.times.push_back(t);
    p.x.emplace_back(st.x().begin(), st.x().end());
    p.v.emplace_back(st.v().begin(), st.v().end());
    const double F = norm_at(spec, st.x(), st.v());
    p.speed.push_back(F);
    p.speed_drift = std::max(p.speed_drift, std::abs(F - F0));
    std::vector<Vec> vs;
    for (int a = 0; a < st.vectors(); ++a) vs.emplace_back(st.vec(a).begin(), st.vec(a).end());
    raw.vectors.push_back(std::move(vs));
  };
  record(0.0, s);

  const auto steps = static_cast<std::size_t>(std::llround(opts.t_max / opts.dt));
  const double h = opts.dt;
  for (std::size_t step = 1; step <= steps; ++step) {
    State next;
    try {
      const Vec k1 = rhs(spec, s);
      const Vec k2 = rhs(spec, axpy(s, 0.5 * h, k1));
      const Vec k3 = rhs(spec, axpy(s, 0.5 * h, k2));
      const Vec k4 = rhs(spec, axpy(s, h, k3));
      next = s;
      for (std::size_t i = 0; i < next.data.size(); ++i)
        next.data[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      check_chart(spec, next.x());
    } catch (const DomainError& e) {
      p.exited = true;
      p.exit_reason = e.what();
      break;
    }
    s = std::move(next);
    record(static_cast<double>(step) * h, s);
  }
  return raw;
}

}  // namespace

double chart_radius(const MetricSpec& spec) {
  switch (spec.kind()) {
    case MetricKind::funk_ball: return 1.0;
    case MetricKind::riemannian_sphere: return 10.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> normalize_direction(const MetricSpec& spec, std::span<const double> x,
                                        std::span<const double> y) {
  const double F = norm_at(spec, x, y);
  Vec out(y.begin(), y.end());
  for (double& c : out) c /= F;
  return out;
}

GeodesicPath integrate_geodesic(const MetricSpec& spec, std::span<const double> x0,
                                std::span<const double> y0, const GeodesicOptions& opts) {
  return integrate(spec, x0, y0, {}, opts).path;
}

TransportedFrame parallel_transport(const MetricSpec& spec, std::span<const double> x0,
                                    std::span<const double> y0,
                                    const std::vector<std::vector<double>>& initial,
                                    const FamilyParams& params, const GeodesicOptions& opts) {
  params.validate();
  if (initial.empty()) throw std::invalid_argument("transport: no vectors given");
  RawPath raw = integrate(spec, x0, y0, initial, opts);
  TransportedFrame f;
  f.params = params;
  f.vectors = std::move(raw.vectors);
  f.path = std::move(raw.path);

  // g(X_a, X_b) along the path against its initial value.
  const int n = spec.dim;
  std::vector<double> g0;
  for (std::size_t t = 0; t < f.path.size(); ++t) {
    const EvalPoint pt{f.path.x[t], f.path.v[t]};
    const RealTensor g = metric_data(spec, pt).g;
    std::size_t idx = 0;
    for (std::size_t a = 0; a < initial.size(); ++a)
      for (std::size_t b = a; b < initial.size(); ++b, ++idx) {
        double val = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            val += g(i, j) * f.vectors[t][a][static_cast<std::size_t>(i)] *
                   f.vectors[t][b][static_cast<std::size_t>(j)];
        if (t == 0)
          g0.push_back(val);
        else
          f.norm_drift = std::max(f.norm_drift, std::abs(val - g0[idx]));
      }
  }
  return f;
}

std::vector<double> transport_rhs_reference(const MetricSpec& spec, std::span<const double> x,
                                            std::span<const double> v, std::span<const double> X,
                                            const FamilyParams& params) {
  const EvalPoint pt{Vec(x.begin(), x.end()), Vec(v.begin(), v.end())};
  const ConnectionData conn = family(spec, pt, params);
  const int n = spec.dim;
  Vec out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(i)] -=
            conn.Gamma(i, j, k) * v[static_cast<std::size_t>(j)] * X[static_cast<std::size_t>(k)];
  return out;
}

std::vector<double> transport_rhs(const MetricSpec& spec, std::span<const double> x,
                                  std::span<const double> v, std::span<const double> X) {
  const RealTensor N = nonlinear_connection(spec, x, v);
  const int n = spec.dim;
  Vec out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(i)] -= N(i, k) * X[static_cast<std::size_t>(k)];
  return out;
}

namespace {

double evaluate_on(const RealTensor& T, std::span<const double> X, std::span<const double> Y,
                   std::span<const double> Z) {
  const int n = T.dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        acc += T(i, j, k) * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)] *
               Z[static_cast<std::size_t>(k)];
  return acc;
}

// Fourth-order central first derivative at interior samples.
std::vector<double> central_diff(const std::vector<double>& f, double h) {
  std::vector<double> d(f.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 2; i + 2 < f.size(); ++i)
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  return d;
}

}  // namespace

CartanSeries cartan_series(const TransportedFrame& frame, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("cartan series: stride must be positive");
  const auto& path = frame.path;
  const std::size_t count = path.size() == 0 ? 0 : (path.size() - 1) / stride + 1;
  if (count < 5) throw std::invalid_argument("cartan series: path too short (fewer than 5 samples)");
  const std::size_t nv = frame.vectors.empty() ? 0 : frame.vectors[0].size();
  if (nv == 0) throw std::invalid_argument("cartan series: frame has no vectors");

  CartanSeries cs;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t t = s * stride;
    const EvalPoint pt{path.x[t], path.v[t]};
    // Adot^(2) needs degree 5: m_max = 2 with no extra order.
    const auto geo = expand_geometry(path.spec, pt, 2, 0);
    const auto& vs = frame.vectors[t];
    const std::span<const double> X = vs[0];
    const std::span<const double> Y = vs[std::min<std::size_t>(1, nv - 1)];
    const std::span<const double> Z = vs[std::min<std::size_t>(2, nv - 1)];
    cs.times.push_back(path.times[t]);
    cs.A.push_back(evaluate_on(values(geo->A), X, Y, Z));
    cs.Adot.push_back(evaluate_on(values(geo->adot[0]), X, Y, Z));
    cs.Addot.push_back(evaluate_on(values(geo->adot[1]), X, Y, Z));
  }
  const double h = path.dt * static_cast<double>(stride);
  cs.dA = central_diff(cs.A, h);
  cs.dAdot = central_diff(cs.Adot, h);
  for (std::size_t i = 0; i < count; ++i) {
    cs.max_A = std::max(cs.max_A, std::abs(cs.A[i]));
    cs.max_Adot = std::max(cs.max_Adot, std::abs(cs.Adot[i]));
    cs.max_Addot = std::max(cs.max_Addot, std::abs(cs.Addot[i]));
    if (std::isnan(cs.dA[i])) continue;
    cs.residual_first = std::max(cs.residual_first, std::abs(cs.dA[i] - cs.Adot[i]));
    cs.residual_second = std::max(cs.residual_second, std::abs(cs.dAdot[i] - cs.Addot[i]));
  }
  return cs;
}

std::vector<GeodesicStart> geodesic_starts(const MetricSpec& spec, std::size_t count,
                                           std::size_t offset) {
  const int n = spec.dim;
  std::vector<GeodesicStart> out;
  for (std::size_t s = 0; s < count; ++s) {
    EvalPoint pt = sample_point(spec, s, offset);
    if (spec.kind() == MetricKind::riemannian_sphere) {
      double r = 0.0;
      for (double c : pt.x) r += c * c;
      r = std::sqrt(r);
      const double target = 0.3 + 0.5 * radical_inverse(s + offset + 1, 7);
      if (r < 1e-12) {
        pt.x.assign(static_cast<std::size_t>(n), 0.0);
        pt.x[0] = 1.0;
        r = 1.0;
      }
      for (double& c : pt.x) c *= target / r;
      // Rotate x in the (0, 1) plane for the tangential direction.
      pt.y.assign(static_cast<std::size_t>(n), 0.0);
      pt.y[0] = -pt.x[1];
      pt.y[1] = pt.x[0];
    }
    GeodesicStart st;
    st.x0 = pt.x;
    st.y0 = normalize_direction(spec, pt.x, pt.y);
    const RealTensor g = metric_data(spec, EvalPoint{st.x0, st.y0}).g;
    auto inner = [&](std::span<const double> a, std::span<const double> b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += g(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
      return acc;
    };
    // Transverse edge: a sampled direction, g-orthogonalized against y0.
    for (int attempt = 0;; ++attempt) {
      const int prime = std::min(3 * n + 7, 24 - 2 * ((n + 1) / 2));
      Vec V = sample_direction(n, s + offset + 17 * static_cast<std::size_t>(attempt), prime);
      const double c = inner(V, st.y0) / inner(st.y0, st.y0);
      for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(i)] -= c * st.y0[static_cast<std::size_t>(i)];
      const double vv = inner(V, V);
      if (vv > 1e-6) {
        for (double& v : V) v /= std::sqrt(vv);
        st.V0 = std::move(V);
        break;
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

void write_csv(std::ostream& os, const GeodesicPath& path) {
  const int n = path.spec.dim;
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << i;
  for (int i = 0; i < n; ++i) os << ",v" << i;
  os << ",F_minus_1\n";
  const auto old = os.precision(17);
  for (std::size_t t = 0; t < path.size(); ++t) {
    os << path.times[t];
    for (double c : path.x[t]) os << ',' << c;
    for (double c : path.v[t]) os << ',' << c;
    os << ',' << path.speed[t] - 1.0 << '\n';
  }
  os.precision(old);
}

}  // namespace finsler
