#include <doctest.h>

#include <cmath>

#include "finsler/sampling.hpp"
#include "finsler/tensors.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

EvalPoint scaled(EvalPoint pt, double s) {
  for (double& v : pt.y) v *= s;
  return pt;
}

double rel(double diff, const RealTensor& ref) { return diff / (1.0 + max_abs(ref)); }

}  // namespace

TEST_CASE("fundamental and Cartan tensors match finite differences of F^2") {
  for (const auto& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const auto& pt : sample_points(spec, 6)) {
      const MetricData md = metric_data(spec, pt);
      CHECK(rel(max_abs_diff(md.g, oracle::fd_fundamental(spec, pt)), md.g) < 1e-6);
      CHECK(rel(max_abs_diff(md.A, oracle::fd_cartan(spec, pt)), md.A) < 1e-5);
    }
  }
}

TEST_CASE("Randers fundamental tensor closed form") {
  const MetricSpec spec = lookup_metric("randers-nonconst");
  const auto& p = std::get<RandersParams>(spec.params);
  for (const auto& pt : sample_points(spec, 10)) {
    const int n = pt.dim();
    const auto N = static_cast<std::size_t>(n);
    double aa = 0;
    std::vector<double> ay(N, 0.0), b(N);
    for (std::size_t i = 0; i < N; ++i) {
      b[i] = p.beta_const[i] + p.beta_sin[i] * std::sin(pt.x[0]);
      for (std::size_t j = 0; j < N; ++j) ay[i] += p.alpha[i * N + j] * pt.y[j];
      aa += ay[i] * pt.y[i];
    }
    const double alpha = std::sqrt(aa);
    double beta = 0;
    for (std::size_t i = 0; i < N; ++i) beta += b[i] * pt.y[i];
    const double F = alpha + beta;
    const MetricData md = metric_data(spec, pt);
    CHECK(md.F == doctest::Approx(F));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        const double ai = ay[i] / alpha, aj = ay[j] / alpha;
        const double g = F / alpha * (p.alpha[i * N + j] - ai * aj) + (ai + b[i]) * (aj + b[j]);
        CHECK(md.g(static_cast<int>(i), static_cast<int>(j)) == doctest::Approx(g).epsilon(1e-12));
      }
  }
}

TEST_CASE("Euler relation and homogeneity degrees") {
  for (const auto& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const auto& pt : sample_points(spec, 5)) {
      const MetricData md = metric_data(spec, pt);
      double euler = 0;
      for (int i = 0; i < pt.dim(); ++i) euler += md.ell_low(i) * pt.y[static_cast<std::size_t>(i)];
      CHECK(euler == doctest::Approx(md.F).epsilon(1e-12));
      const SprayData sd = spray_data(spec, pt);
      const double s = 2.7;
      const EvalPoint q = scaled(pt, s);
      const MetricData mq = metric_data(spec, q);
      const SprayData sq = spray_data(spec, q);
      CHECK(mq.F == doctest::Approx(s * md.F).epsilon(1e-12));
      CHECK(rel(max_abs_diff(mq.g, md.g), md.g) < 1e-12);
      CHECK(rel(max_abs_diff(mq.A, md.A), md.A) < 1e-12);
      CHECK(rel(max_abs_diff(sq.G, sd.G.map([&](double v) { return s * s * v; })), sq.G) < 1e-12);
      CHECK(rel(max_abs_diff(sq.N, sd.N.map([&](double v) { return s * v; })), sq.N) < 1e-12);
    }
  }
}

TEST_CASE("Cartan tensor is symmetric and annihilated by ell") {
  const MetricSpec spec = lookup_metric("funk");
  for (const auto& pt : sample_points(spec, 5)) {
    const MetricData md = metric_data(spec, pt);
    const int n = pt.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          CHECK(md.A(i, j, k) == doctest::Approx(md.A(j, i, k)));
          CHECK(md.A(i, j, k) == doctest::Approx(md.A(k, j, i)));
        }
    CHECK(max_abs(contract(md.A, 0, md.ell)) < 1e-13);
  }
}

TEST_CASE("sphere Christoffel symbols and spray in closed form") {
  const MetricSpec spec = lookup_metric("riemannian-sphere");
  for (const auto& pt : sample_points(spec, 8)) {
    const SprayData sd = spray_data(spec, pt);
    const RealTensor ref = oracle::sphere_christoffel(pt.x);
    CHECK(max_abs_diff(sd.gamma, ref) < 1e-12);
    for (int i = 0; i < pt.dim(); ++i) {
      double G = 0;
      for (int j = 0; j < pt.dim(); ++j)
        for (int k = 0; k < pt.dim(); ++k)
          G += 0.5 * ref(i, j, k) * pt.y[static_cast<std::size_t>(j)] * pt.y[static_cast<std::size_t>(k)];
      CHECK(sd.G(i) == doctest::Approx(G).epsilon(1e-12));
    }
  }
}

TEST_CASE("Funk spray is F y / 2 and quartic spray vanishes") {
  const MetricSpec funk = lookup_metric("funk");
  for (const auto& pt : sample_points(funk, 8)) {
    const auto G = spray_coefficients(funk, pt.x, pt.y);
    const double F = evaluate_F(funk, pt);
    for (int i = 0; i < pt.dim(); ++i)
      CHECK(G[static_cast<std::size_t>(i)] == doctest::Approx(0.5 * F * pt.y[static_cast<std::size_t>(i)]).epsilon(1e-11));
  }
  const MetricSpec quartic = lookup_metric("quartic");
  for (const auto& pt : sample_points(quartic, 4)) CHECK(max_abs(spray_data(quartic, pt).G) < 1e-14);
}

TEST_CASE("cheap spray and nonlinear connection agree with the expansion") {
  for (const auto& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const auto& pt : sample_points(spec, 4)) {
      const SprayData sd = spray_data(spec, pt);
      const auto G = spray_coefficients(spec, pt.x, pt.y);
      for (int i = 0; i < pt.dim(); ++i) CHECK(G[static_cast<std::size_t>(i)] == doctest::Approx(sd.G(i)).epsilon(1e-10));
      CHECK(max_abs_diff(nonlinear_connection(spec, pt.x, pt.y), sd.N) < 1e-10 * (1 + max_abs(sd.N)));
    }
  }
}

TEST_CASE("Funk Landsberg tensor is -A/2 and raised Adot equals L") {
  const MetricSpec funk = lookup_metric("funk");
  for (const auto& pt : sample_points(funk, 6)) {
    const DerivedCartan dc = adot_iterated(funk, pt, 2);
    const MetricData md = metric_data(funk, pt);
    CHECK(max_abs_diff(dc.adot[0], md.A.map([](double v) { return -0.5 * v; })) < 1e-10);
    const int n = pt.dim();
    RealTensor raised(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int s = 0; s < n; ++s) raised(i, j, k) += md.g_inv(i, s) * dc.adot[0](s, j, k);
    CHECK(rel(max_abs_diff(raised, dc.L), dc.L) < 1e-10);
  }
}

TEST_CASE("iterates vanish on Berwald metrics") {
  for (const char* name : {"quartic", "randers-const", "riemannian-sphere"}) {
    const MetricSpec spec = lookup_metric(name);
    CAPTURE(name);
    for (const auto& pt : sample_points(spec, 4)) {
      const DerivedCartan dc = adot_iterated(spec, pt, 3);
      for (const auto& t : dc.adot) CHECK(max_abs(t) < 1e-10);
      CHECK(max_abs(dc.A_h) < 1e-10);
    }
  }
}

TEST_CASE("convexity failure raises ConvexityError") {
  MetricSpec q = lookup_metric("quartic");
  std::get<QuarticParams>(q.params).epsilon = -0.9;
  // The -0.9 quartic term makes F^2 non-convex near the diagonals.
  bool threw = false;
  for (const auto& pt : sample_points(q, 50)) {
    try {
      metric_data(q, pt);
    } catch (const ConvexityError&) {
      threw = true;
    }
  }
  CHECK(threw);
}
