#include <doctest.h>

#include <cmath>

#include "finsler/catalog.hpp"
#include "finsler/sampling.hpp"
#include "oracles.hpp"

using namespace finsler;

TEST_CASE("eval_jet reproduces hand-computed derivatives of a polynomial field") {
  // phi = x0^2 * y1^3 + x1 * y0
  auto phi = ScalarField::from_generic([](auto x, auto y) { return x[0] * x[0] * y[1] * y[1] * y[1] + x[1] * y[0]; });
  const EvalPoint pt{{0.5, -2.0}, {1.5, 0.7}};
  const JetTable jet = eval_jet(phi, pt, {2, 3});
  CHECK(jet.value() == doctest::Approx(0.25 * 0.343 - 2.0 * 1.5));
  CHECK(jet.at({0}, {}) == doctest::Approx(2 * 0.5 * 0.343));
  CHECK(jet.at({1}, {0}) == doctest::Approx(1.0));
  CHECK(jet.at({0, 0}, {1, 1, 1}) == doctest::Approx(12.0));
  CHECK(jet.at({0}, {1, 1}) == doctest::Approx(2 * 0.5 * 6 * 0.7));
  CHECK(jet.at({}, {0, 0}) == doctest::Approx(0.0));
  // slot order does not matter
  CHECK(jet.at({}, {1, 0}) == jet.at({}, {0, 1}));
}

TEST_CASE("jet index enumeration counts symmetric multi-indices") {
  // dim 2: x-orders 0..1 times y-orders 0..2 -> (1 + 2) * (1 + 2 + 3)
  CHECK(jet_indices(2, {1, 2}).size() == 18);
  CHECK(jet_indices(3, {0, 1}).size() == 4);
}

TEST_CASE("invalid requests and points are rejected") {
  const MetricSpec spec = lookup_metric("euclidean");
  const EvalPoint pt{{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(eval_jet(norm_field(spec), pt, {3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(eval_jet(norm_field(spec), pt, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(eval_jet(norm_field(spec), pt, {2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(eval_jet(norm_field(spec), EvalPoint{{0.0, 0.0}, {0.0, 0.0}}, {0, 1}), SlitBundleError);
  CHECK_THROWS_AS(eval_jet(norm_field(spec), EvalPoint{{0.0}, {1.0, 0.0}}, {0, 1}), std::invalid_argument);
}

TEST_CASE("fd stencil leaving the Funk ball raises DomainError") {
  const MetricSpec funk = lookup_metric("funk");
  const EvalPoint pt{{0.9999, 0.0}, {1.0, 0.0}};
  CHECK_NOTHROW(eval_jet(norm_field(funk), pt, {1, 1}));
  CHECK_THROWS_AS(fd_jet(norm_field(funk), pt, {2, 0}, 1e-3), DomainError);
}

TEST_CASE("eval_jet agrees with finite differences on every catalog metric") {
  for (const MetricSpec& spec : list_catalog()) {
    CAPTURE(spec.name);
    for (const EvalPoint& pt : sample_points(spec, 8)) {
      const auto field = norm_field(spec);
      const JetTable exact = eval_jet(field, pt, {1, 3});
      const JetTable fd = fd_jet(field, pt, {1, 3});
      for (int order = 1; order <= 3; ++order) CHECK(oracle::jet_rel_error(exact, fd, order) < 1e-5);
      const JetTable exact4 = eval_jet(field, pt, {0, 4});
      const JetTable fd4 = fd_jet(field, pt, {0, 4});
      CHECK(oracle::jet_rel_error(exact4, fd4, 4) < 1e-4);
    }
  }
}
