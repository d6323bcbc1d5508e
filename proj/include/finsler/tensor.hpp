#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "finsler/series.hpp"

namespace finsler {

/// Dense component array of a rank-r tensor in dimension n. Index placement
/// (upper/lower) is a convention of the caller; components are stored in
/// row-major order of the index tuple.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank, const T& fill = T{})
      : dim_(dim), rank_(rank), data_(count(dim, rank), fill) {}

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  T& flat(std::size_t i) { return data_[i]; }
  const T& flat(std::size_t i) const { return data_[i]; }

  /// Index tuple of a flat position.
  std::vector<int> unflatten(std::size_t pos) const {
    std::vector<int> idx(static_cast<std::size_t>(rank_));
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(pos % static_cast<std::size_t>(dim_));
      pos /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }
  std::size_t flatten(const std::vector<int>& idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return off;
  }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  template <class Fn>
  auto map(Fn&& fn) const -> Tensor<std::decay_t<decltype(fn(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(fn(std::declval<const T&>()))>;
    Tensor<U> out;
    out.dim_ = dim_;
    out.rank_ = rank_;
    out.data_.reserve(data_.size());
    for (const T& v : data_) out.data_.push_back(fn(v));
    return out;
  }

 private:
  template <class U>
  friend class Tensor;

  static std::size_t count(int dim, int rank) {
    std::size_t c = 1;
    for (int r = 0; r < rank; ++r) c *= static_cast<std::size_t>(dim);
    return c;
  }

  template <class... I>
  std::size_t offset(I... idx) const {
    static_assert((std::is_integral_v<I> && ...));
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

using RealTensor = Tensor<double>;
using SeriesTensor = Tensor<Series>;

/// Component values (constant Taylor terms) of a series-valued tensor.
inline RealTensor values(const SeriesTensor& t) {
  return t.map([](const Series& s) { return s.value(); });
}

/// max_i |a_i - b_i|
inline double max_abs_diff(const RealTensor& a, const RealTensor& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.flat(i) - b.flat(i)));
  return m;
}

inline double max_abs(const RealTensor& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace finsler
