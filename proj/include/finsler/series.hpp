#pragma once

// Truncated multivariate Taylor series ("jets").
//
// A Series of degree d in v variables stores the Taylor coefficients
// c_alpha = (d^alpha f)(p) / alpha! for all multi-indices |alpha| <= d of a
// smooth function around an expansion point p. Arithmetic and elementary
// functions act on truncated series exactly; differentiation with respect to
// a variable lowers the degree by one. Composing these operations therefore
// yields exact derivatives of arbitrarily nested expressions up to the
// degree that survives.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace finsler {

/// Thrown when a computation needs more derivative orders than the series
/// carries.
class OrderExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Graded monomial enumeration shared by all series with the same variable
/// count and maximal degree. Monomials of degree <= d form a prefix of the
/// enumeration, so a series of degree d uses the first size(d) slots.
class MonomialBasis {
 public:
  /// Cached, immutable, thread-safe accessor.
  static const MonomialBasis& get(int nvars, int max_degree);

  int nvars() const { return nvars_; }
  int max_degree() const { return max_degree_; }

  /// Number of monomials of total degree <= d.
  std::size_t size(int d) const { return prefix_[static_cast<std::size_t>(d)]; }
  int degree_of(std::size_t idx) const { return degree_[idx]; }
  std::span<const std::uint8_t> exponents(std::size_t idx) const {
    return {exps_.data() + idx * static_cast<std::size_t>(nvars_),
            static_cast<std::size_t>(nvars_)};
  }
  std::size_t index_of(std::span<const int> alpha) const;

  /// Index of alpha_i + alpha_j; requires deg(i) + deg(j) <= max_degree.
  std::uint32_t product(std::size_t i, std::size_t j) const {
    return product_[i * size(max_degree_) + j];
  }
  const std::uint32_t* product_row(std::size_t i) const {
    return product_.data() + i * size(max_degree_);
  }
  /// Index of alpha + e_var, or -1 when that exceeds max_degree.
  std::int32_t raise(std::size_t idx, int var) const {
    return raise_[idx * static_cast<std::size_t>(nvars_) +
                  static_cast<std::size_t>(var)];
  }

 private:
  MonomialBasis(int nvars, int max_degree);

  int nvars_;
  int max_degree_;
  std::vector<std::size_t> prefix_;
  std::vector<int> degree_;
  std::vector<std::uint8_t> exps_;
  std::vector<std::uint32_t> product_;
  std::vector<std::int32_t> raise_;
};

class Series {
 public:
  Series() = default;
  Series(const MonomialBasis& basis, int degree, double value = 0.0);

  static Series variable(const MonomialBasis& basis, int degree, int var,
                         double value);

  const MonomialBasis& basis() const { return *basis_; }
  int degree() const { return degree_; }
  double value() const { return c_[0]; }
  std::span<const double> coefficients() const { return c_; }
  double coefficient(std::size_t idx) const { return c_[idx]; }

  /// Partial derivative d/dt_var; the result has degree one lower.
  Series derivative(int var) const;
  /// Drops coefficients above degree d.
  Series truncated(int d) const;
  /// Same value, everything else dropped (degree-0 series).
  Series constant() const { return truncated(0); }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator/=(const Series& o);
  Series& operator+=(double s);
  Series& operator-=(double s);
  Series& operator*=(double s);
  Series& operator/=(double s);

  Series operator-() const;

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator/(const Series& a, const Series& b);
  friend Series operator+(Series a, double s) { return a += s; }
  friend Series operator+(double s, Series a) { return a += s; }
  friend Series operator-(Series a, double s) { return a -= s; }
  friend Series operator-(double s, const Series& a) { return -a + s; }
  friend Series operator*(Series a, double s) { return a *= s; }
  friend Series operator*(double s, Series a) { return a *= s; }
  friend Series operator/(Series a, double s) { return a /= s; }
  friend Series operator/(double s, const Series& a);

  /// f(a) given the Taylor coefficients taylor[k] = f^(k)(a0)/k!.
  Series compose(std::span<const double> taylor) const;

 private:
  void require_same_basis(const Series& o) const;

  const MonomialBasis* basis_ = nullptr;
  int degree_ = 0;
  std::vector<double> c_;
};

Series reciprocal(const Series& a);
Series sqrt(const Series& a);
Series pow(const Series& a, double p);
Series exp(const Series& a);
Series log(const Series& a);
Series sin(const Series& a);
Series cos(const Series& a);

inline double value_of(double v) { return v; }
inline double value_of(const Series& s) { return s.value(); }

}  // namespace finsler
