#include <doctest.h>

#include <set>

#include "finsler/catalog.hpp"
#include "finsler/json_io.hpp"
#include "finsler/sampling.hpp"

using namespace finsler;

TEST_CASE("catalog lists the five metrics and all validate") {
  const auto cat = list_catalog();
  REQUIRE(cat.size() == 5);
  std::set<std::string> names;
  for (const auto& spec : cat) {
    names.insert(spec.name);
    const auto rep = validate(spec, 100);
    CAPTURE(spec.name);
    CHECK(rep.pass);
    CHECK(rep.min_eigenvalue > 0.0);
    CHECK(rep.positivity > 0.0);
  }
  CHECK(names == std::set<std::string>{"euclidean", "riemannian-sphere", "quartic", "randers-nonconst", "funk"});
}

TEST_CASE("aliases and the constant-beta preset resolve") {
  CHECK(lookup_metric("sphere").kind() == MetricKind::riemannian_sphere);
  CHECK(lookup_metric("funk-ball").kind() == MetricKind::funk_ball);
  const MetricSpec rc = lookup_metric("randers-const");
  CHECK(std::get<RandersParams>(rc.params).beta_is_constant());
  CHECK_FALSE(std::get<RandersParams>(lookup_metric("randers-nonconst").params).beta_is_constant());
  CHECK_THROWS_AS(lookup_metric("no-such-metric"), std::invalid_argument);
}

TEST_CASE("closed-form values") {
  const EvalPoint pt{{0.3, -0.4}, {1.0, 2.0}};
  CHECK(evaluate_F(lookup_metric("euclidean"), pt) == doctest::Approx(std::sqrt(5.0)));
  CHECK(evaluate_F(lookup_metric("riemannian-sphere"), pt) == doctest::Approx(2 * std::sqrt(5.0) / 1.25));
  // Funk at the origin is the Euclidean norm; along a ray F = |y| / (1 - |x|) outward.
  CHECK(evaluate_F(lookup_metric("funk"), EvalPoint{{0, 0}, {3, 4}}) == doctest::Approx(5.0));
  CHECK(evaluate_F(lookup_metric("funk"), EvalPoint{{0.5, 0}, {1, 0}}) == doctest::Approx(2.0));
  CHECK(evaluate_F(lookup_metric("funk"), EvalPoint{{0.5, 0}, {-1, 0}}) == doctest::Approx(1.0 / 1.5));
}

TEST_CASE("domain and parameter errors") {
  const MetricSpec funk = lookup_metric("funk");
  CHECK_THROWS_AS(evaluate_F(funk, EvalPoint{{1.0, 0.0}, {1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(evaluate_F(funk, EvalPoint{{0.0, 0.0}, {0.0, 0.0}}), SlitBundleError);
  MetricSpec bad = lookup_metric("randers-nonconst");
  std::get<RandersParams>(bad.params).beta_const = {0.9, 0.9};
  CHECK_FALSE(validate(bad, 50).pass);  // |beta|_alpha >= 1 somewhere
  std::get<RandersParams>(bad.params).beta_const = {0.1};
  CHECK_THROWS_AS(bad.check_parameters(), std::invalid_argument);
  CHECK_THROWS_AS(make_default(MetricKind::euclidean, 1).check_parameters(), std::invalid_argument);
}

TEST_CASE("quartic convexity depends on epsilon") {
  MetricSpec q = lookup_metric("quartic");
  for (double eps : {0.0, 0.5, 5.0, 100.0}) {
    std::get<QuarticParams>(q.params).epsilon = eps;
    CAPTURE(eps);
    CHECK(validate(q, 50).pass);
  }
  std::get<QuarticParams>(q.params).epsilon = -0.9;
  const auto rep = validate(q, 50);
  CHECK_FALSE(rep.pass);
  CHECK(rep.failing_point.has_value());
  CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("higher dimension specs validate") {
  CHECK(validate(make_default(MetricKind::funk_ball, 3), 30).pass);
  CHECK(validate(make_default(MetricKind::quartic, 3), 30).pass);
}

TEST_CASE("spec JSON round-trip") {
  for (const auto& spec : extended_catalog()) {
    const Json j = to_json(spec);
    const MetricSpec back = metric_from_json(j);
    CHECK(to_json(back) == j);
  }
  CHECK_THROWS_AS(metric_from_json(Json{{"kind", "bogus"}}), std::invalid_argument);
  CHECK_THROWS_AS(metric_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("sample points are deterministic and inside the domain") {
  for (const auto& spec : list_catalog()) {
    const auto a = sample_points(spec, 50), b = sample_points(spec, 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].y == b[i].y);
      CHECK_NOTHROW(evaluate_F(spec, a[i]));
    }
  }
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(3, 2) == 0.75);
}
