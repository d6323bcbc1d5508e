#include "finsler/series.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

namespace finsler {

namespace {

void enumerate_degree(int nvars, int degree, std::vector<int>& current, int var,
                      std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    current[static_cast<std::size_t>(var)] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = e;
    enumerate_degree(nvars, degree - e, current, var + 1, out);
  }
}

std::uint64_t pack(std::span<const int> alpha) {
  std::uint64_t key = 0;
  for (int a : alpha) key = (key << 5U) | static_cast<std::uint64_t>(a);
  return key;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int max_degree)
    : nvars_(nvars), max_degree_(max_degree) {
  if (nvars < 1 || nvars > 12) throw std::invalid_argument("MonomialBasis: nvars out of range");
  if (max_degree < 0 || max_degree > 16)
    throw std::invalid_argument("MonomialBasis: degree out of range");

  std::vector<std::vector<int>> monos;
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  prefix_.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    enumerate_degree(nvars, d, cur, 0, monos);
    prefix_.push_back(monos.size());
  }
  const std::size_t m = monos.size();
  const auto nv = static_cast<std::size_t>(nvars);
  degree_.resize(m);
  exps_.resize(m * nv);
  std::unordered_map<std::uint64_t, std::size_t> lookup;
  for (std::size_t i = 0; i < m; ++i) {
    int d = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      exps_[i * nv + v] = static_cast<std::uint8_t>(monos[i][v]);
      d += monos[i][v];
    }
    degree_[i] = d;
    lookup.emplace(pack(monos[i]), i);
  }

  product_.assign(m * m, 0);
  std::vector<int> sum(nv);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t jmax = prefix_[static_cast<std::size_t>(max_degree - degree_[i])];
    for (std::size_t j = 0; j < jmax; ++j) {
      for (std::size_t v = 0; v < nv; ++v) sum[v] = monos[i][v] + monos[j][v];
      product_[i * m + j] = static_cast<std::uint32_t>(lookup.at(pack(sum)));
    }
  }

  raise_.assign(m * nv, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (degree_[i] == max_degree) continue;
    for (std::size_t v = 0; v < nv; ++v) {
      sum = monos[i];
      ++sum[v];
      raise_[i * nv + v] = static_cast<std::int32_t>(lookup.at(pack(sum)));
    }
  }
}

const MonomialBasis& MonomialBasis::get(int nvars, int max_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, max_degree}];
  if (!slot) slot.reset(new MonomialBasis(nvars, max_degree));
  return *slot;
}

std::size_t MonomialBasis::index_of(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_)
    throw std::invalid_argument("MonomialBasis::index_of: wrong arity");
  int d = 0;
  for (int a : alpha) d += a;
  if (d > max_degree_) throw OrderExhausted("multi-index exceeds basis degree");
  const std::size_t begin = d == 0 ? 0 : prefix_[static_cast<std::size_t>(d - 1)];
  const std::size_t end = prefix_[static_cast<std::size_t>(d)];
  for (std::size_t i = begin; i < end; ++i) {
    auto e = exponents(i);
    bool match = true;
    for (std::size_t v = 0; v < e.size() && match; ++v) match = e[v] == alpha[v];
    if (match) return i;
  }
  throw std::logic_error("MonomialBasis::index_of: monomial not found");
}

Series::Series(const MonomialBasis& basis, int degree, double value)
    : basis_(&basis), degree_(degree) {
  if (degree < 0) throw OrderExhausted("series degree exhausted");
  if (degree > basis.max_degree()) throw std::invalid_argument("series degree above basis");
  c_.assign(basis.size(degree), 0.0);
  c_[0] = value;
}

Series Series::variable(const MonomialBasis& basis, int degree, int var, double value) {
  Series s(basis, degree, value);
  if (degree >= 1) s.c_[1 + static_cast<std::size_t>(var)] = 1.0;
  return s;
}

void Series::require_same_basis(const Series& o) const {
  if (basis_ != o.basis_) throw std::invalid_argument("series over different bases");
}

Series Series::derivative(int var) const {
  if (degree_ == 0) throw OrderExhausted("cannot differentiate a degree-0 series");
  Series out(*basis_, degree_ - 1);
  const std::size_t m = out.c_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto up = static_cast<std::size_t>(basis_->raise(i, var));
    const double mult = basis_->exponents(i)[static_cast<std::size_t>(var)] + 1.0;
    out.c_[i] = mult * c_[up];
  }
  return out;
}

Series Series::truncated(int d) const {
  if (d >= degree_) return *this;
  Series out(*basis_, d);
  std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
  return out;
}

Series& Series::operator+=(const Series& o) {
  require_same_basis(o);
  if (o.degree_ < degree_) *this = truncated(o.degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_basis(o);
  if (o.degree_ < degree_) *this = truncated(o.degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  a.require_same_basis(b);
  const MonomialBasis& basis = *a.basis_;
  const int d = std::min(a.degree_, b.degree_);
  Series out(basis, d);
  const std::size_t m = basis.size(d);
  double* res = out.c_.data();
  const double* bc = b.c_.data();
  for (std::size_t i = 0; i < m; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    const std::size_t jmax = basis.size(d - basis.degree_of(i));
    const std::uint32_t* row = basis.product_row(i);
    for (std::size_t j = 0; j < jmax; ++j) res[row[j]] += ai * bc[j];
  }
  return out;
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }
Series& Series::operator/=(const Series& o) { return *this = *this * reciprocal(o); }

Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }
Series operator/(double s, const Series& a) { return reciprocal(a) * s; }

Series& Series::operator+=(double s) {
  c_[0] += s;
  return *this;
}
Series& Series::operator-=(double s) {
  c_[0] -= s;
  return *this;
}
Series& Series::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}
Series& Series::operator/=(double s) {
  for (double& v : c_) v /= s;
  return *this;
}

Series Series::operator-() const {
  Series out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Series Series::compose(std::span<const double> taylor) const {
  if (static_cast<int>(taylor.size()) < degree_ + 1)
    throw std::invalid_argument("compose: not enough Taylor coefficients");
  Series h = *this;
  h.c_[0] = 0.0;
  Series acc(*basis_, degree_, taylor[static_cast<std::size_t>(degree_)]);
  for (int k = degree_ - 1; k >= 0; --k) {
    acc = acc * h;
    acc.c_[0] += taylor[static_cast<std::size_t>(k)];
  }
  return acc;
}

Series reciprocal(const Series& a) {
  const double a0 = a.value();
  if (a0 == 0.0) throw std::domain_error("reciprocal of a series with zero value");
  std::vector<double> t(static_cast<std::size_t>(a.degree()) + 1);
  double p = 1.0 / a0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= a0;
  }
  return a.compose(t);
}

Series pow(const Series& a, double p) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw std::domain_error("pow of a series with non-positive value");
  std::vector<double> t(static_cast<std::size_t>(a.degree()) + 1);
  // binom(p, k) * a0^(p-k)
  double binom = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = binom * std::pow(a0, p - static_cast<double>(k));
    binom *= (p - static_cast<double>(k)) / static_cast<double>(k + 1);
  }
  return a.compose(t);
}

Series sqrt(const Series& a) { return pow(a, 0.5); }

Series exp(const Series& a) {
  std::vector<double> t(static_cast<std::size_t>(a.degree()) + 1);
  const double e = std::exp(a.value());
  double fact = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    t[k] = e / fact;
  }
  return a.compose(t);
}

Series log(const Series& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw std::domain_error("log of a series with non-positive value");
  std::vector<double> t(static_cast<std::size_t>(a.degree()) + 1);
  t[0] = std::log(a0);
  double p = 1.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    p /= a0;
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(k);
  }
  return a.compose(t);
}

namespace {

Series trig(const Series& a, double phase_shift) {
  // k-th derivative of sin at a0 is sin(a0 + k*pi/2).
  std::vector<double> t(static_cast<std::size_t>(a.degree()) + 1);
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double cycle[4] = {s, c, -s, -c};
  double fact = 1.0;
  const auto shift = static_cast<std::size_t>(phase_shift);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    t[k] = cycle[(k + shift) % 4] / fact;
  }
  return a.compose(t);
}

}  // namespace

Series sin(const Series& a) { return trig(a, 0); }
Series cos(const Series& a) { return trig(a, 1); }

}  // namespace finsler
