#pragma once

// Exact partial derivatives of scalar fields phi(x, y) on the slit tangent
// bundle, with a finite-difference oracle for cross-validation.

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/series.hpp"

namespace finsler {

/// A point (x, y) of TM_0 in one chart.
struct EvalPoint {
  std::vector<double> x;
  std::vector<double> y;

  int dim() const { return static_cast<int>(x.size()); }
  /// Throws std::invalid_argument for n < 2 or mismatched lengths and
  /// SlitBundleError for y = 0.
  void validate() const;
};

struct JetRequest {
  int x_order = 0;  ///< maximal total derivative order in x (0..2)
  int y_order = 0;  ///< maximal total derivative order in y (0..4)

  void validate() const;
  int total() const { return x_order + y_order; }
};

/// Sorted slot lists; {x = {0}, y = {1, 1}} is d^3 / dx^0 dy^1 dy^1.
struct JetIndex {
  std::vector<int> x;
  std::vector<int> y;

  JetIndex() = default;
  JetIndex(std::vector<int> xs, std::vector<int> ys);
  int order() const { return static_cast<int>(x.size() + y.size()); }
  auto operator<=>(const JetIndex&) const = default;
};

class JetTable {
 public:
  JetTable(EvalPoint point, JetRequest request)
      : point_(std::move(point)), request_(request) {}

  const EvalPoint& point() const { return point_; }
  const JetRequest& request() const { return request_; }
  const std::map<JetIndex, double>& entries() const { return entries_; }

  /// Slot lists need not be sorted.
  double at(std::vector<int> x_slots, std::vector<int> y_slots) const;
  double value() const { return at({}, {}); }
  void set(const JetIndex& idx, double v) { entries_[idx] = v; }

 private:
  EvalPoint point_;
  JetRequest request_;
  std::map<JetIndex, double> entries_;
};

/// A smooth scalar field on (part of) TM_0, evaluable both on doubles and on
/// truncated Taylor series. Evaluation throws DomainError outside its domain.
class ScalarField {
 public:
  using RealFn = std::function<double(std::span<const double>, std::span<const double>)>;
  using SeriesFn = std::function<Series(std::span<const Series>, std::span<const Series>)>;

  ScalarField(RealFn real, SeriesFn series) : real_(std::move(real)), series_(std::move(series)) {}

  /// Wraps a generic callable `f(x, y)` instantiable for double and Series.
  template <class Generic>
  static ScalarField from_generic(Generic f) {
    return ScalarField(
        [f](std::span<const double> x, std::span<const double> y) { return f(x, y); },
        [f](std::span<const Series> x, std::span<const Series> y) { return f(x, y); });
  }

  double operator()(std::span<const double> x, std::span<const double> y) const {
    return real_(x, y);
  }
  Series expand(std::span<const Series> x, std::span<const Series> y) const {
    return series_(x, y);
  }

 private:
  RealFn real_;
  SeriesFn series_;
};

/// Expansion variables around pt: t_i for x^i and t_{n+i} for y^i.
struct ExpansionVariables {
  std::vector<Series> x;
  std::vector<Series> y;
};
ExpansionVariables expansion_variables(const EvalPoint& pt, int degree);

/// Every sorted multi-index with |x| <= x_order and |y| <= y_order, in a
/// fixed order (by total order, then lexicographic).
std::vector<JetIndex> jet_indices(int dim, JetRequest req);

/// Exact (to rounding) partial derivatives via truncated Taylor arithmetic.
JetTable eval_jet(const ScalarField& field, const EvalPoint& pt, JetRequest req);

/// Central-difference step used by fd_jet for a derivative of total order k
/// (before scaling by coordinate magnitude).
double fd_step_for_order(double base_step, int order);

/// Tensor-product central differences (second order in h per entry) with one
/// Richardson level combining steps h and 2h, giving O(h^4) truncation.
/// Throws DomainError when a stencil point leaves the field's domain.
JetTable fd_jet(const ScalarField& field, const EvalPoint& pt, JetRequest req,
                double step = 1e-3);

}  // namespace finsler
