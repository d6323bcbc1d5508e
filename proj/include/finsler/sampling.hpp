#pragma once

// Deterministic low-discrepancy sample points on TM_0.

#include <cstddef>
#include <vector>

#include "finsler/catalog.hpp"
#include "finsler/jets.hpp"

namespace finsler {

/// Radical inverse of `index` in the given base (van der Corput).
double radical_inverse(std::size_t index, unsigned base);

/// Halton point `index` in [0,1)^dim using the first `dim` primes starting at
/// prime number `first_prime`.
std::vector<double> halton(std::size_t index, int dim, int first_prime = 0);

/// Base points are drawn from a metric-dependent region (a box, or a ball for
/// the Funk metric), and y on the unit Euclidean sphere.
struct SampleRegion {
  bool ball = false;
  double extent = 0.8;  ///< half-width of the box or radius of the ball
};

SampleRegion sample_region(const MetricSpec& spec);

/// Sample `index` (0-based, plus `offset`) of the fixed sequence.
EvalPoint sample_point(const MetricSpec& spec, std::size_t index, std::size_t offset = 0);
std::vector<EvalPoint> sample_points(const MetricSpec& spec, std::size_t count,
                                     std::size_t offset = 0);

/// Unit Euclidean vector from a fixed sequence, for transverse flag edges.
std::vector<double> sample_direction(int dim, std::size_t index, int first_prime);

}  // namespace finsler
