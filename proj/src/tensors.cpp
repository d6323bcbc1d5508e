#include "finsler/tensors.hpp"

#include <Eigen/Cholesky>
#include <sstream>

namespace finsler {

namespace {

Series zero_like(const MonomialBasis& basis) { return Series(basis, basis.max_degree()); }

SeriesTensor zeros(const MonomialBasis& basis, int dim, int rank) {
  return SeriesTensor(dim, rank, zero_like(basis));
}

std::string describe(const EvalPoint& pt) {
  std::ostringstream os;
  os << "x = (";
  for (std::size_t i = 0; i < pt.x.size(); ++i) os << (i ? ", " : "") << pt.x[i];
  os << "), y = (";
  for (std::size_t i = 0; i < pt.y.size(); ++i) os << (i ? ", " : "") << pt.y[i];
  os << ")";
  return os.str();
}

// Positions of a rank-r tensor with index s substituted into `slot`.
std::size_t substitute(const SeriesTensor& t, std::vector<int> idx, int slot, int s) {
  idx[static_cast<std::size_t>(slot)] = s;
  return t.flatten(idx);
}

}  // namespace

SeriesTensor inverse(const SeriesTensor& m) {
  const int n = m.dim();
  const auto& basis = m.flat(0).basis();
  SeriesTensor a = m;
  SeriesTensor inv = zeros(basis, n, 2);
  for (int i = 0; i < n; ++i) inv(i, i) += 1.0;
  for (int col = 0; col < n; ++col) {
    const Series pivot_inv = reciprocal(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * pivot_inv;
      inv(col, j) = inv(col, j) * pivot_inv;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Series factor = a(row, col);
      for (int j = 0; j < n; ++j) {
        a(row, j) -= factor * a(col, j);
        inv(row, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

Series delta_x(const Series& field, const SeriesTensor& N, int l) {
  const int n = N.dim();
  Series out = field.derivative(l);
  for (int i = 0; i < n; ++i) out -= N(i, l) * field.derivative(n + i);
  return out;
}

SeriesTensor delta_x(const SeriesTensor& field, const SeriesTensor& N) {
  const int n = N.dim();
  SeriesTensor out(n, field.rank() + 1, zero_like(N.flat(0).basis()));
  std::vector<Series> dy(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < field.size(); ++p) {
    const Series& f = field.flat(p);
    for (int i = 0; i < n; ++i) dy[static_cast<std::size_t>(i)] = f.derivative(n + i);
    for (int l = 0; l < n; ++l) {
      Series v = f.derivative(l);
      for (int i = 0; i < n; ++i) v -= N(i, l) * dy[static_cast<std::size_t>(i)];
      out.flat(p * static_cast<std::size_t>(n) + static_cast<std::size_t>(l)) = std::move(v);
    }
  }
  return out;
}

SeriesTensor delta_x(const SeriesTensor& field, const LocalGeometry& geo) {
  return delta_x(field, geo.N);
}

SeriesTensor cov_h(const SeriesTensor& field, const SeriesTensor& Gamma, const SeriesTensor& N) {
  const int n = N.dim();
  const int r = field.rank();
  SeriesTensor out = delta_x(field, N);
  for (std::size_t p = 0; p < out.size(); ++p) {
    auto idx = out.unflatten(p);
    const int l = idx.back();
    idx.pop_back();
    for (int a = 0; a < r; ++a) {
      const int ia = idx[static_cast<std::size_t>(a)];
      for (int s = 0; s < n; ++s)
        out.flat(p) -= field.flat(substitute(field, idx, a, s)) * Gamma(s, ia, l);
    }
  }
  return out;
}

SeriesTensor cov_h_along_ell(const SeriesTensor& field, const SeriesTensor& Gamma,
                             const LocalGeometry& geo) {
  const int n = geo.dim();
  const int r = field.rank();
  const auto& basis = geo.basis();
  // Gamma^s_{i l} ell^l and N^i_l ell^l.
  SeriesTensor gl = zeros(basis, n, 2);
  SeriesTensor nl = zeros(basis, n, 1);
  for (int s = 0; s < n; ++s)
    for (int l = 0; l < n; ++l) {
      nl(s) += geo.N(s, l) * geo.ell(l);
      for (int i = 0; i < n; ++i) gl(s, i) += Gamma(s, i, l) * geo.ell(l);
    }
  SeriesTensor out(n, r, zero_like(basis));
  for (std::size_t p = 0; p < field.size(); ++p) {
    const Series& f = field.flat(p);
    Series v = zero_like(basis);
    for (int l = 0; l < n; ++l) v += geo.ell(l) * f.derivative(l) - nl(l) * f.derivative(n + l);
    const auto idx = field.unflatten(p);
    for (int a = 0; a < r; ++a) {
      const int ia = idx[static_cast<std::size_t>(a)];
      for (int s = 0; s < n; ++s) v -= field.flat(substitute(field, idx, a, s)) * gl(s, ia);
    }
    out.flat(p) = std::move(v);
  }
  return out;
}

SeriesTensor cov_v(const SeriesTensor& field, const LocalGeometry& geo) {
  const int n = geo.dim();
  SeriesTensor out(n, field.rank() + 1, zero_like(geo.basis()));
  for (std::size_t p = 0; p < field.size(); ++p) {
    const Series& f = field.flat(p);
    for (int l = 0; l < n; ++l)
      out.flat(p * static_cast<std::size_t>(n) + static_cast<std::size_t>(l)) =
          geo.F * f.derivative(n + l);
  }
  return out;
}

SeriesTensor raise_first(const SeriesTensor& field, const SeriesTensor& g_inv) {
  const int n = g_inv.dim();
  SeriesTensor out(n, field.rank(), zero_like(g_inv.flat(0).basis()));
  for (std::size_t p = 0; p < field.size(); ++p) {
    const auto idx = field.unflatten(p);
    for (int s = 0; s < n; ++s)
      out.flat(p) += g_inv(idx[0], s) * field.flat(substitute(field, idx, 0, s));
  }
  return out;
}

SeriesTensor contract(const SeriesTensor& field, int slot, const SeriesTensor& v) {
  const int n = field.dim();
  SeriesTensor out(n, field.rank() - 1, zero_like(v.flat(0).basis()));
  for (std::size_t p = 0; p < out.size(); ++p) {
    auto idx = out.unflatten(p);
    idx.insert(idx.begin() + slot, 0);
    for (int s = 0; s < n; ++s) out.flat(p) += field.flat(substitute(field, idx, slot, s)) * v(s);
  }
  return out;
}

RealTensor contract(const RealTensor& field, int slot, const RealTensor& v) {
  const int n = field.dim();
  RealTensor out(n, field.rank() - 1, 0.0);
  for (std::size_t p = 0; p < out.size(); ++p) {
    auto idx = out.unflatten(p);
    idx.insert(idx.begin() + slot, 0);
    for (int s = 0; s < n; ++s) {
      idx[static_cast<std::size_t>(slot)] = s;
      out.flat(p) += field.flat(field.flatten(idx)) * v(s);
    }
  }
  return out;
}

std::shared_ptr<const LocalGeometry> expand_geometry(const MetricSpec& spec, const EvalPoint& pt,
                                                     int m_max, int extra_order) {
  pt.validate();
  if (pt.dim() != spec.dim) throw std::invalid_argument("point dimension does not match metric");
  if (m_max < 0 || extra_order < 0) throw std::invalid_argument("expand_geometry: negative order");
  const int n = pt.dim();
  const int D = 3 + m_max + extra_order;
  auto geo = std::make_shared<LocalGeometry>();
  geo->spec = spec;
  geo->point = pt;
  geo->degree = D;
  geo->m_max = m_max;
  auto vars = expansion_variables(pt, D);
  geo->x = std::move(vars.x);
  geo->y = std::move(vars.y);
  const auto& basis = geo->x[0].basis();

  geo->F = finsler_norm<Series>(spec, geo->x, geo->y);
  geo->F2 = geo->F * geo->F;

  SeriesTensor& g = geo->g;
  g = zeros(basis, n, 2);
  for (int i = 0; i < n; ++i) {
    const Series fi = geo->F2.derivative(n + i);
    for (int j = i; j < n; ++j) {
      g(i, j) = 0.5 * fi.derivative(n + j);
      g(j, i) = g(i, j);
    }
  }
  {
    Eigen::MatrixXd gv(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gv(i, j) = g(i, j).value();
    Eigen::LLT<Eigen::MatrixXd> llt(gv);
    if (llt.info() != Eigen::Success)
      throw ConvexityError("metric '" + spec.name +
                           "': fundamental tensor not positive definite at " + describe(pt));
  }
  geo->g_inv = inverse(g);

  geo->ell = zeros(basis, n, 1);
  geo->ell_low = zeros(basis, n, 1);
  const Series F_inv = reciprocal(geo->F);
  for (int i = 0; i < n; ++i) {
    geo->ell(i) = geo->y[static_cast<std::size_t>(i)] * F_inv;
    geo->ell_low(i) = geo->F.derivative(n + i);
  }

  // C_ijk = 1/4 [F^2]_{y^i y^j y^k} = 1/2 dg_ij/dy^k, A = F C.
  geo->C = zeros(basis, n, 3);
  geo->A = zeros(basis, n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const Series c = 0.5 * g(i, j).derivative(n + k);
        const Series a = geo->F * c;
        for (auto [p, q, r] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}}) {
          geo->C(p, q, r) = c;
          geo->A(p, q, r) = a;
        }
      }

  // Formal Christoffel symbols of g(x, y) with y frozen.
  SeriesTensor dxg(n, 3, zero_like(basis));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) dxg(i, j, l) = g(i, j).derivative(l);
  geo->gamma = zeros(basis, n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Series acc = zero_like(basis);
        for (int l = 0; l < n; ++l)
          acc += geo->g_inv(k, l) * (dxg(j, l, i) + dxg(i, l, j) - dxg(i, j, l));
        acc *= 0.5;
        geo->gamma(k, i, j) = acc;
        geo->gamma(k, j, i) = acc;
      }

  geo->G = zeros(basis, n, 1);
  for (int i = 0; i < n; ++i) {
    Series acc = zero_like(basis);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        acc += geo->gamma(i, j, k) * geo->y[static_cast<std::size_t>(j)] *
               geo->y[static_cast<std::size_t>(k)];
    geo->G(i) = 0.5 * acc;
  }

  // N^k_i = F (gamma^k_ij ell^j - A^k_il gamma^l_ab ell^a ell^b)
  const SeriesTensor A_up = raise_first(geo->A, geo->g_inv);
  SeriesTensor gll = zeros(basis, n, 1);
  for (int l = 0; l < n; ++l)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) gll(l) += geo->gamma(l, a, b) * geo->ell(a) * geo->ell(b);
  geo->N = zeros(basis, n, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      Series acc = zero_like(basis);
      for (int j = 0; j < n; ++j) acc += geo->gamma(k, i, j) * geo->ell(j);
      for (int l = 0; l < n; ++l) acc -= A_up(k, i, l) * gll(l);
      geo->N(k, i) = geo->F * acc;
    }

  // Chern: Gamma*^i_jk = 1/2 g^is (dg_sj/dx^k - dg_jk/dx^s + dg_ks/dx^j), delta derivatives.
  const SeriesTensor dg = delta_x(g, geo->N);
  geo->chern = zeros(basis, n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Series acc = zero_like(basis);
        for (int s = 0; s < n; ++s)
          acc += geo->g_inv(i, s) * (dg(s, j, k) - dg(j, k, s) + dg(k, s, j));
        acc *= 0.5;
        geo->chern(i, j, k) = acc;
        geo->chern(i, k, j) = acc;
      }

  geo->adot.clear();
  for (int m = 1; m <= m_max; ++m) {
    const SeriesTensor& prev = m == 1 ? geo->A : geo->adot.back();
    geo->adot.push_back(cov_h_along_ell(prev, geo->chern, *geo));
  }
  return geo;
}

MetricData metric_data(const LocalGeometry& geo) {
  return {geo.F.value(), values(geo.g),       values(geo.g_inv), values(geo.ell),
          values(geo.ell_low), values(geo.A), values(geo.C)};
}

MetricData metric_data(const MetricSpec& spec, const EvalPoint& pt) {
  return metric_data(*expand_geometry(spec, pt, 0, 0));
}

SprayData spray_data(const LocalGeometry& geo) {
  return {values(geo.gamma), values(geo.G), values(geo.N)};
}

SprayData spray_data(const MetricSpec& spec, const EvalPoint& pt) {
  return spray_data(*expand_geometry(spec, pt, 0, 0));
}

namespace {

// Degree-2 expansion of F^2 at (x, y): enough for the cheap spray formula,
// degree 3 when the nonlinear connection is wanted as well.
struct SprayExpansion {
  std::vector<Series> G;
};

SprayExpansion cheap_spray(const MetricSpec& spec, std::span<const double> x,
                           std::span<const double> y, int degree) {
  EvalPoint pt{std::vector<double>(x.begin(), x.end()), std::vector<double>(y.begin(), y.end())};
  pt.validate();
  const int n = pt.dim();
  const auto vars = expansion_variables(pt, degree);
  const auto& basis = vars.x[0].basis();
  const Series F = finsler_norm<Series>(spec, vars.x, vars.y);
  const Series F2 = F * F;
  SeriesTensor g(n, 2, zero_like(basis));
  std::vector<Series> f2y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f2y[static_cast<std::size_t>(i)] = F2.derivative(n + i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = 0.5 * f2y[static_cast<std::size_t>(i)].derivative(n + j);
  const SeriesTensor g_inv = inverse(g);
  // b_l = [F^2]_{x^k y^l} y^k - [F^2]_{x^l}
  std::vector<Series> b;
  for (int l = 0; l < n; ++l) {
    Series acc = -F2.derivative(l);
    for (int k = 0; k < n; ++k)
      acc += f2y[static_cast<std::size_t>(l)].derivative(k) * vars.y[static_cast<std::size_t>(k)];
    b.push_back(std::move(acc));
  }
  SprayExpansion out;
  for (int i = 0; i < n; ++i) {
    Series acc = zero_like(basis);
    for (int l = 0; l < n; ++l) acc += g_inv(i, l) * b[static_cast<std::size_t>(l)];
    out.G.push_back(0.25 * acc);
  }
  return out;
}

}  // namespace

std::vector<double> spray_coefficients(const MetricSpec& spec, std::span<const double> x,
                                       std::span<const double> y) {
  const auto sp = cheap_spray(spec, x, y, 2);
  std::vector<double> G;
  G.reserve(sp.G.size());
  for (const auto& s : sp.G) G.push_back(s.value());
  return G;
}

RealTensor nonlinear_connection(const MetricSpec& spec, std::span<const double> x,
                                std::span<const double> y) {
  const auto sp = cheap_spray(spec, x, y, 3);
  const int n = static_cast<int>(x.size());
  RealTensor N(n, 2, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) N(i, j) = sp.G[static_cast<std::size_t>(i)].derivative(n + j).value();
  return N;
}

SeriesTensor berwald_from_spray(const LocalGeometry& geo) {
  const int n = geo.dim();
  SeriesTensor B(n, 3, zero_like(geo.basis()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Series gj = geo.G(i).derivative(n + j);
      for (int k = j; k < n; ++k) {
        B(i, j, k) = gj.derivative(n + k);
        B(i, k, j) = B(i, j, k);
      }
    }
  return B;
}

SeriesTensor landsberg(const LocalGeometry& geo) {
  SeriesTensor L = berwald_from_spray(geo);
  for (std::size_t p = 0; p < L.size(); ++p) L.flat(p) -= geo.chern.flat(p);
  return L;
}

std::vector<SeriesTensor> adot_with_berwald_base(const LocalGeometry& geo) {
  const SeriesTensor B = berwald_from_spray(geo);
  std::vector<SeriesTensor> out;
  for (int m = 1; m <= geo.m_max; ++m) {
    const SeriesTensor& prev = m == 1 ? geo.A : out.back();
    out.push_back(cov_h_along_ell(prev, B, geo));
  }
  return out;
}

DerivedCartan derived_cartan(const LocalGeometry& geo) {
  DerivedCartan d;
  d.A_h = values(cov_h(geo.A, geo.chern, geo.N));
  d.A_v = values(cov_v(geo.A, geo));
  for (const auto& a : geo.adot) d.adot.push_back(values(a));
  d.L = values(landsberg(geo));
  return d;
}

DerivedCartan adot_iterated(const MetricSpec& spec, const EvalPoint& pt, int m_max) {
  if (m_max < 1) throw std::invalid_argument("adot_iterated: m_max must be >= 1");
  // L needs two y-derivatives of the spray (degree 5).
  const int extra = std::max(1, 2 - m_max);
  return derived_cartan(*expand_geometry(spec, pt, m_max, extra));
}

}  // namespace finsler
