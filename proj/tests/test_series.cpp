#include <doctest.h>

#include <cmath>

#include "finsler/errors.hpp"
#include "finsler/series.hpp"

using namespace finsler;

namespace {

// d^a/dt0^a d^b/dt1^b at the expansion point, from the stored coefficient.
double partial(const Series& s, const MonomialBasis& basis, int a, int b) {
  const std::vector<int> e{a, b};
  double fact = 1.0;
  for (int i = 2; i <= a; ++i) fact *= i;
  for (int i = 2; i <= b; ++i) fact *= i;
  return s.coefficient(basis.index_of(e)) * fact;
}

}  // namespace

TEST_CASE("series arithmetic matches polynomial expansion") {
  const MonomialBasis& b = MonomialBasis::get(2, 4);
  const Series t0 = Series::variable(b, 4, 0, 2.0);
  const Series t1 = Series::variable(b, 4, 1, -1.0);
  const Series p = t0 * t0 * t1 + 3.0 * t1;  // x^2 y + 3y
  CHECK(p.value() == doctest::Approx(4.0 * -1.0 - 3.0));
  CHECK(partial(p, b, 1, 0) == doctest::Approx(2 * 2.0 * -1.0));
  CHECK(partial(p, b, 0, 1) == doctest::Approx(4.0 + 3.0));
  CHECK(partial(p, b, 2, 1) == doctest::Approx(2.0));
  CHECK(partial(p, b, 1, 1) == doctest::Approx(4.0));
  CHECK(partial(p, b, 3, 0) == doctest::Approx(0.0));
}

TEST_CASE("elementary functions reproduce closed-form derivatives") {
  const MonomialBasis& b = MonomialBasis::get(2, 4);
  const double a = 0.7;
  const Series t = Series::variable(b, 4, 0, a);
  const Series s = sin(t), c = cos(t), e = exp(t), l = log(t), r = sqrt(t), q = pow(t, 0.25), inv = reciprocal(t);
  CHECK(partial(s, b, 3, 0) == doctest::Approx(-std::cos(a)));
  CHECK(partial(c, b, 4, 0) == doctest::Approx(std::cos(a)));
  CHECK(partial(e, b, 4, 0) == doctest::Approx(std::exp(a)));
  CHECK(partial(l, b, 3, 0) == doctest::Approx(2.0 / (a * a * a)));
  CHECK(partial(r, b, 2, 0) == doctest::Approx(-0.25 * std::pow(a, -1.5)));
  CHECK(partial(q, b, 2, 0) == doctest::Approx(0.25 * -0.75 * std::pow(a, -1.75)));
  CHECK(partial(inv, b, 3, 0) == doctest::Approx(-6.0 / std::pow(a, 4)));
}

TEST_CASE("division and chain rule in two variables") {
  const MonomialBasis& b = MonomialBasis::get(2, 3);
  const Series x = Series::variable(b, 3, 0, 0.4);
  const Series y = Series::variable(b, 3, 1, 1.3);
  const Series f = sin(x * y) / (1.0 + y * y);
  // Mixed partial by hand: d/dx = y cos(xy) / (1+y^2).
  const double xv = 0.4, yv = 1.3;
  const double dfx = yv * std::cos(xv * yv) / (1 + yv * yv);
  const double dfxy = (std::cos(xv * yv) - xv * yv * std::sin(xv * yv)) / (1 + yv * yv) -
                      yv * std::cos(xv * yv) * 2 * yv / ((1 + yv * yv) * (1 + yv * yv));
  CHECK(partial(f, b, 1, 0) == doctest::Approx(dfx));
  CHECK(partial(f, b, 1, 1) == doctest::Approx(dfxy));
}

TEST_CASE("derivative lowers the degree and throws when exhausted") {
  const MonomialBasis& b = MonomialBasis::get(2, 2);
  Series t = Series::variable(b, 2, 1, 0.5);
  Series d = (t * t).derivative(1);
  CHECK(d.degree() == 1);
  CHECK(d.value() == doctest::Approx(1.0));
  Series dd = d.derivative(1);
  CHECK(dd.value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(dd.derivative(0), OrderExhausted);
}
