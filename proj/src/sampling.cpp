#include "finsler/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace finsler {

namespace {

constexpr std::array<unsigned, 24> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                              41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

std::vector<double> halton(std::size_t index, int dim, int first_prime) {
  if (first_prime + dim > static_cast<int>(kPrimes.size()))
    throw std::invalid_argument("halton: dimension too large");
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d)
    u[static_cast<std::size_t>(d)] =
        radical_inverse(index + 1, kPrimes[static_cast<std::size_t>(first_prime + d)]);
  return u;
}

std::vector<double> sample_direction(int dim, std::size_t index, int first_prime) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  if (dim == 2) {
    const double theta = 2.0 * std::numbers::pi * halton(index, 1, first_prime)[0];
    v[0] = std::cos(theta);
    v[1] = std::sin(theta);
    return v;
  }
  // Box-Muller on pairs of Halton coordinates, then normalize.
  const int pairs = (dim + 1) / 2;
  const auto u = halton(index, 2 * pairs, first_prime);
  double norm = 0.0;
  for (int d = 0; d < dim; ++d) {
    const auto p = static_cast<std::size_t>(d / 2);
    const double r = std::sqrt(-2.0 * std::log(1.0 - u[2 * p]));
    const double phi = 2.0 * std::numbers::pi * u[2 * p + 1];
    v[static_cast<std::size_t>(d)] = d % 2 == 0 ? r * std::cos(phi) : r * std::sin(phi);
    norm += v[static_cast<std::size_t>(d)] * v[static_cast<std::size_t>(d)];
  }
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

SampleRegion sample_region(const MetricSpec& spec) {
  if (spec.kind() == MetricKind::funk_ball) return {true, 0.5};
  return {false, 0.8};
}

EvalPoint sample_point(const MetricSpec& spec, std::size_t index, std::size_t offset) {
  const int n = spec.dim;
  const std::size_t k = index + offset;
  const SampleRegion region = sample_region(spec);
  EvalPoint pt;
  const auto u = halton(k, n, 0);
  pt.x.resize(static_cast<std::size_t>(n));
  if (region.ball) {
    // Uniform in the ball: direction from the sequence, radius u^(1/n).
    const auto dir = sample_direction(n, k, 2 * n + 4);
    const double r = region.extent * std::pow(u[0], 1.0 / n);
    for (std::size_t i = 0; i < dir.size(); ++i) pt.x[i] = r * dir[i];
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) pt.x[i] = region.extent * (2.0 * u[i] - 1.0);
  }
  pt.y = sample_direction(n, k, n);
  return pt;
}

std::vector<EvalPoint> sample_points(const MetricSpec& spec, std::size_t count,
                                     std::size_t offset) {
  std::vector<EvalPoint> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_point(spec, i, offset));
  return pts;
}

}  // namespace finsler
