#include "finsler/jets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace finsler {

void EvalPoint::validate() const {
  if (x.size() != y.size()) throw std::invalid_argument("EvalPoint: x and y lengths differ");
  if (x.size() < 2) throw std::invalid_argument("EvalPoint: dimension must be at least 2");
  double yy = 0.0;
  for (double v : y) yy += v * v;
  if (!(yy > 0.0)) throw SlitBundleError("point not on the slit tangent bundle: y = 0");
}

void JetRequest::validate() const {
  if (x_order < 0 || y_order < 0) throw std::invalid_argument("JetRequest: negative order");
  if (x_order > 2) throw std::invalid_argument("JetRequest: x_order must be <= 2");
  if (y_order > 4) throw std::invalid_argument("JetRequest: y_order must be <= 4");
  if (x_order + y_order > 5) throw std::invalid_argument("JetRequest: total order must be <= 5");
}

JetIndex::JetIndex(std::vector<int> xs, std::vector<int> ys) : x(std::move(xs)), y(std::move(ys)) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
}

double JetTable::at(std::vector<int> x_slots, std::vector<int> y_slots) const {
  const JetIndex key(std::move(x_slots), std::move(y_slots));
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::out_of_range("JetTable: multi-index not computed");
  return it->second;
}

ExpansionVariables expansion_variables(const EvalPoint& pt, int degree) {
  const int n = pt.dim();
  const auto& basis = MonomialBasis::get(2 * n, degree);
  ExpansionVariables vars;
  vars.x.reserve(static_cast<std::size_t>(n));
  vars.y.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    vars.x.push_back(Series::variable(basis, degree, i, pt.x[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < n; ++i) {
    vars.y.push_back(Series::variable(basis, degree, n + i, pt.y[static_cast<std::size_t>(i)]));
  }
  return vars;
}

namespace {

void sorted_lists(int dim, int length, int start, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    sorted_lists(dim, length, i, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_sorted_lists(int dim, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  for (int len = 0; len <= max_len; ++len) sorted_lists(dim, len, 0, cur, out);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<JetIndex> jet_indices(int dim, JetRequest req) {
  std::vector<JetIndex> out;
  const auto xs = all_sorted_lists(dim, req.x_order);
  const auto ys = all_sorted_lists(dim, req.y_order);
  for (const auto& xl : xs)
    for (const auto& yl : ys) out.emplace_back(xl, yl);
  std::stable_sort(out.begin(), out.end(), [](const JetIndex& a, const JetIndex& b) {
    return a.order() < b.order();
  });
  return out;
}

JetTable eval_jet(const ScalarField& field, const EvalPoint& pt, JetRequest req) {
  pt.validate();
  req.validate();
  const int n = pt.dim();
  const auto vars = expansion_variables(pt, req.total());
  const Series s = field.expand(vars.x, vars.y);
  const auto& basis = s.basis();

  JetTable table(pt, req);
  std::vector<int> alpha(static_cast<std::size_t>(2 * n));
  for (const JetIndex& idx : jet_indices(n, req)) {
    std::fill(alpha.begin(), alpha.end(), 0);
    for (int i : idx.x) ++alpha[static_cast<std::size_t>(i)];
    for (int i : idx.y) ++alpha[static_cast<std::size_t>(n + i)];
    double mult = 1.0;
    for (int a : alpha) mult *= factorial(a);
    table.set(idx, mult * s.coefficient(basis.index_of(alpha)));
  }
  return table;
}

double fd_step_for_order(double base_step, int order) {
  static constexpr std::array<double, 6> kScale = {1.0, 1.0, 1.0, 3.0, 8.0, 16.0};
  return base_step * kScale[static_cast<std::size_t>(std::clamp(order, 0, 5))];
}

namespace {

// Central-difference weights (second-order accurate) for derivative order k,
// as (offset, weight) pairs; divide by h^k.
std::vector<std::pair<int, double>> central_weights(int k) {
  switch (k) {
    case 0: return {{0, 1.0}};
    case 1: return {{-1, -0.5}, {1, 0.5}};
    case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
    case 4: return {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}};
    case 5: return {{-3, -0.5}, {-2, 2.0}, {-1, -2.5}, {1, 2.5}, {2, -2.0}, {3, 0.5}};
    default: throw std::invalid_argument("central_weights: order above 5");
  }
}

double stencil(const ScalarField& field, const EvalPoint& pt, const std::vector<int>& alpha,
               const std::vector<double>& h) {
  const std::size_t nv = alpha.size();
  const std::size_t n = nv / 2;
  std::vector<std::vector<std::pair<int, double>>> w(nv);
  std::size_t total = 1;
  for (std::size_t v = 0; v < nv; ++v) {
    w[v] = central_weights(alpha[v]);
    total *= w[v].size();
  }
  std::vector<double> x(pt.x), y(pt.y);
  double acc = 0.0;
  for (std::size_t combo = 0; combo < total; ++combo) {
    std::size_t rest = combo;
    double weight = 1.0;
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& [off, wt] = w[v][rest % w[v].size()];
      rest /= w[v].size();
      weight *= wt;
      const double shifted = off * h[v];
      if (v < n) {
        x[v] = pt.x[v] + shifted;
      } else {
        y[v - n] = pt.y[v - n] + shifted;
      }
    }
    double f = 0.0;
    try {
      f = field(x, y);
    } catch (const DomainError& e) {
      throw DomainError(std::string("finite-difference stencil leaves the domain: ") + e.what());
    }
    acc += weight * f;
  }
  double denom = 1.0;
  for (std::size_t v = 0; v < nv; ++v) denom *= std::pow(h[v], alpha[v]);
  return acc / denom;
}

}  // namespace

JetTable fd_jet(const ScalarField& field, const EvalPoint& pt, JetRequest req, double step) {
  pt.validate();
  req.validate();
  if (!(step > 0.0)) throw std::invalid_argument("fd_jet: step must be positive");
  const int n = pt.dim();
  const auto nv = static_cast<std::size_t>(2 * n);
  JetTable table(pt, req);
  std::vector<int> alpha(nv);
  std::vector<double> h(nv), h2(nv);
  for (const JetIndex& idx : jet_indices(n, req)) {
    std::fill(alpha.begin(), alpha.end(), 0);
    for (int i : idx.x) ++alpha[static_cast<std::size_t>(i)];
    for (int i : idx.y) ++alpha[static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    const double base = fd_step_for_order(step, idx.order());
    for (std::size_t v = 0; v < nv; ++v) {
      const double coord = v < static_cast<std::size_t>(n) ? pt.x[v] : pt.y[v - static_cast<std::size_t>(n)];
      h[v] = base * std::max(1.0, std::abs(coord));
      h2[v] = 2.0 * h[v];
    }
    if (idx.order() == 0) {
      table.set(idx, field(pt.x, pt.y));
      continue;
    }
    const double fine = stencil(field, pt, alpha, h);
    const double coarse = stencil(field, pt, alpha, h2);
    table.set(idx, (4.0 * fine - coarse) / 3.0);
  }
  return table;
}

}  // namespace finsler
