#include <doctest.h>

#include "finsler/connections.hpp"
#include "finsler/sampling.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

const std::vector<FamilyParams> kParams{{{}}, {{1.0}}, {{0.3, -0.2}}, {{0.0, 0.4}}};

}  // namespace

TEST_CASE("parameter parsing") {
  CHECK(FamilyParams::parse("0.3,-0.2").k == std::vector<double>{0.3, -0.2});
  CHECK(FamilyParams::parse("").k.empty());
  CHECK(FamilyParams::parse("1").k == std::vector<double>{1.0});
  CHECK_THROWS_AS(FamilyParams::parse("0.3,abc"), std::invalid_argument);
  CHECK_THROWS_AS(FamilyParams::parse("nan"), std::invalid_argument);
}

TEST_CASE("k = () is the Chern connection and k = (1) is Berwald") {
  for (const auto& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const auto& pt : sample_points(spec, 4)) {
      const ConnectionData c = chern(spec, pt);
      CHECK(max_abs_diff(family(spec, pt, FamilyParams{}).Gamma, c.Gamma) == 0.0);
      const ConnectionData b = berwald(spec, pt);
      const RealTensor ref = berwald_from_spray_values(b);
      CHECK(max_abs_diff(b.Gamma, ref) / (1 + max_abs(ref)) < 1e-10);
    }
  }
}

TEST_CASE("Berwald coefficients against finite differences of the spray") {
  const MetricSpec spec = lookup_metric("randers-nonconst");
  const double h = 1e-3;
  for (const auto& pt : sample_points(spec, 4)) {
    const ConnectionData b = berwald(spec, pt);
    const int n = pt.dim();
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto G = [&](double sj, double sk) {
          std::vector<double> y = pt.y;
          y[static_cast<std::size_t>(j)] += sj * h;
          y[static_cast<std::size_t>(k)] += sk * h;
          return spray_coefficients(spec, pt.x, y);
        };
        const auto pp = G(1, 1), pm = G(1, -1), mp = G(-1, 1), mm = G(-1, -1);
        for (int i = 0; i < n; ++i) {
          const auto I = static_cast<std::size_t>(i);
          CHECK(b.Gamma(i, j, k) == doctest::Approx((pp[I] - pm[I] - mp[I] + mm[I]) / (4 * h * h)).epsilon(1e-5));
        }
      }
  }
}

TEST_CASE("Riemannian members coincide with the Levi-Civita connection") {
  const MetricSpec spec = lookup_metric("riemannian-sphere");
  for (const auto& pt : sample_points(spec, 4))
    for (const auto& k : kParams) CHECK(max_abs_diff(family(spec, pt, k).Gamma, oracle::sphere_christoffel(pt.x)) < 1e-12);
}

TEST_CASE("torsion-free, almost compatible, and ell-contraction independent of k") {
  for (const auto& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const auto& pt : sample_points(spec, 5)) {
      const auto geo = expand_geometry(spec, pt, 2, family_extra_order(2));
      for (const auto& k : kParams) {
        const ConnectionData c = family(geo, k);
        CHECK(torsion_defect(c) < 1e-12);
        const auto d = compatibility_defect(c);
        CHECK(d.horizontal < 1e-7);
        CHECK(d.vertical < 1e-7);
        // Gamma^i_jk y^j = N^i_k for every member
        const int n = pt.dim();
        for (int i = 0; i < n; ++i)
          for (int kk = 0; kk < n; ++kk) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += c.Gamma(i, j, kk) * pt.y[static_cast<std::size_t>(j)];
            CHECK(s == doctest::Approx(c.N(i, kk)).epsilon(1e-10));
          }
      }
    }
  }
}

TEST_CASE("torsion defect detects a corrupted connection") {
  const MetricSpec spec = lookup_metric("funk");
  ConnectionData c = chern(spec, sample_point(spec, 0));
  c.Gamma(0, 0, 1) += 1.0;
  CHECK(torsion_defect(c) == doctest::Approx(1.0));
}

TEST_CASE("Berwald coefficients are y-independent exactly on Berwald metrics") {
  auto spread = [](const MetricSpec& spec) {
    const std::vector<double> x = sample_point(spec, 1).x;
    const RealTensor a = berwald(spec, EvalPoint{x, {1.0, 0.2}}).Gamma;
    const RealTensor b = berwald(spec, EvalPoint{x, {-0.3, 0.9}}).Gamma;
    return max_abs_diff(a, b);
  };
  CHECK(spread(lookup_metric("riemannian-sphere")) < 1e-12);
  CHECK(spread(lookup_metric("quartic")) < 1e-12);
  CHECK(spread(lookup_metric("randers-const")) < 1e-12);
  CHECK(spread(lookup_metric("randers-nonconst")) > 1e-3);
  CHECK(spread(lookup_metric("funk")) > 1e-3);
}

TEST_CASE("members beyond the expansion depth are rejected") {
  const MetricSpec spec = lookup_metric("funk");
  const auto geo = expand_geometry(spec, sample_point(spec, 0), 1, 1);
  CHECK_THROWS_AS(family(geo, FamilyParams{{0.1, 0.2}}), std::invalid_argument);
}
