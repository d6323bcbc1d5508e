#include "finsler/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace finsler {

double Verdict::separation() const {
  if (measured == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(std::log10(measured / threshold));
}

namespace {

double max_abs_of(const RealTensor& t) { return max_abs(t); }

struct ClassSample {
  double A = 0, Adot = 0, Ah = 0, P = 0, dGB = 0, g = 0, Gamma = 0;
};

ClassSample classify_sample(const MetricSpec& spec, const EvalPoint& pt) {
  // m_max = 1 with two extra orders: the third y-derivative of the spray
  // needs degree 6.
  const auto geo = expand_geometry(spec, pt, 1, 2);
  const ConnectionData conn = family(geo, {});
  const int n = geo->dim();
  ClassSample s;
  s.A = max_abs_of(values(geo->A));
  s.Adot = max_abs_of(values(geo->adot[0]));
  s.Ah = max_abs_of(values(cov_h(geo->A, geo->chern, geo->N)));
  s.P = max_abs_of(hv_curvature(conn));
  s.g = max_abs_of(values(geo->g));
  s.Gamma = max_abs_of(conn.Gamma);
  const SeriesTensor B = berwald_from_spray(*geo);
  for (std::size_t p = 0; p < B.size(); ++p)
    for (int l = 0; l < n; ++l) s.dGB = std::max(s.dGB, std::abs(B.flat(p).derivative(n + l).value()));
  return s;
}

Verdict make_verdict(std::string norm, double measured, double threshold) {
  Verdict v;
  v.norm = std::move(norm);
  v.measured = measured;
  v.threshold = threshold;
  v.value = measured < threshold;
  return v;
}

}  // namespace

ClassificationReport classify(const MetricSpec& spec, int n_samples, const Thresholds& th,
                              ExecMode mode) {
  if (n_samples < 1) throw std::invalid_argument("classify: need at least one sample");
  if (!(th.tau > 0.0) || !(th.tau_p > 0.0)) throw std::invalid_argument("thresholds must be positive");
  spec.check_parameters();
  const auto pts = sample_points(spec, static_cast<std::size_t>(n_samples));
  const auto samples = parallel_map<ClassSample>(
      pts.size(), [&](std::size_t i) { return classify_sample(spec, pts[i]); }, mode);

  ClassificationReport r;
  r.metric = spec.name;
  r.samples = n_samples;
  for (const auto& s : samples) {
    r.max_A = std::max(r.max_A, s.A);
    r.max_Adot = std::max(r.max_Adot, s.Adot);
    r.max_A_h = std::max(r.max_A_h, s.Ah);
    r.max_P = std::max(r.max_P, s.P);
    r.max_dGamma_berwald = std::max(r.max_dGamma_berwald, s.dGB);
    r.max_g = std::max(r.max_g, s.g);
    r.max_Gamma = std::max(r.max_Gamma, s.Gamma);
  }
  r.riemannian = make_verdict("max|A|", r.max_A / (1.0 + r.max_g), th.tau);
  r.landsberg = make_verdict("max|Adot|", r.max_Adot / (1.0 + r.max_A), th.tau);
  r.berwald_h = make_verdict("max|A_|l|", r.max_A_h / (1.0 + r.max_A), th.tau);
  r.berwald_p = make_verdict("max|P(chern)|", r.max_P / (1.0 + r.max_Gamma), th.tau_p);

  r.is_riemannian = r.riemannian.value;
  r.is_landsberg = r.landsberg.value;
  r.criteria_agree = r.berwald_h.value == r.berwald_p.value;
  r.is_berwald = r.berwald_h.value && r.berwald_p.value;
  r.chain_ok = (!r.is_riemannian || r.is_berwald) && (!r.is_berwald || r.is_landsberg);
  r.separation = std::min({r.riemannian.separation(), r.landsberg.separation(),
                           r.berwald_h.separation(), r.berwald_p.separation()});
  r.separated = r.separation >= th.separation;
  r.expected = spec.expected();
  r.matches_expected = r.expected.riemannian == r.is_riemannian &&
                       r.expected.berwald == r.is_berwald &&
                       r.expected.landsberg == r.is_landsberg;
  return r;
}

namespace {

struct Thm2Sample {
  double P = 0, Gamma = 0, A = 0, Adot = 0, iterates = 0;
};

}  // namespace

Theorem2Report theorem2_check(const MetricSpec& spec, const FamilyParams& params, int n_samples,
                              const Thresholds& th, ExecMode mode) {
  params.validate();
  const ClassificationReport cls = classify(spec, n_samples, th, mode);
  const auto pts = sample_points(spec, static_cast<std::size_t>(n_samples));
  const int m_max = std::max(2, params.m());
  const auto samples = parallel_map<Thm2Sample>(
      pts.size(),
      [&](std::size_t i) {
        const auto geo = expand_geometry(spec, pts[i], m_max, family_extra_order(m_max));
        const ConnectionData conn = family(geo, params);
        Thm2Sample s;
        s.P = max_abs(hv_curvature(conn));
        s.Gamma = max_abs(conn.Gamma);
        s.A = max_abs(values(geo->A));
        s.Adot = max_abs(values(geo->adot[0]));
        for (const auto& a : geo->adot) s.iterates = std::max(s.iterates, max_abs(values(a)));
        return s;
      },
      mode);
  Theorem2Report r;
  r.metric = spec.name;
  r.params = params;
  r.samples = n_samples;
  double Gamma = 0.0, A = 0.0, P = 0.0, Adot = 0.0, it = 0.0;
  for (const auto& s : samples) {
    Gamma = std::max(Gamma, s.Gamma);
    A = std::max(A, s.A);
    P = std::max(P, s.P);
    Adot = std::max(Adot, s.Adot);
    it = std::max(it, s.iterates);
  }
  r.max_P = P / (1.0 + Gamma);
  r.P_small = r.max_P < th.tau_p;
  r.berwald = cls.is_berwald;
  r.max_Adot = Adot / (1.0 + A);
  r.max_iterates = it / (1.0 + A);
  if (r.berwald) r.iterates_vanish = r.max_Adot < th.tau && r.max_iterates < th.tau;
  r.pass = (r.P_small == r.berwald) && r.iterates_vanish && cls.criteria_agree;
  return r;
}

namespace {

struct PathResult {
  CartanSeries series;
  double witness = 0.0;
  double K = 0.0;
};

}  // namespace

Theorem3Report theorem3_residual(const MetricSpec& spec, double k2, const PathConfig& cfg,
                                 ExecMode mode) {
  if (k2 == 0.0 || !std::isfinite(k2)) throw std::invalid_argument("theorem 3 check: k2 must be nonzero");
  if (cfg.count == 0) throw std::invalid_argument("theorem 3 check: no paths requested");
  const auto starts = geodesic_starts(spec, cfg.count);
  GeodesicOptions opts;
  opts.t_max = cfg.t_max;
  opts.dt = cfg.dt;
  const FamilyParams params{{0.0, k2}};
  const auto results = parallel_map<PathResult>(
      starts.size(),
      [&](std::size_t i) {
        const auto& st = starts[i];
        const TransportedFrame frame = parallel_transport(spec, st.x0, st.y0, {st.V0}, params, opts);
        PathResult pr;
        pr.series = cartan_series(frame, cfg.stride);
        for (std::size_t t = 0; t < pr.series.A.size(); ++t)
          pr.witness = std::max(pr.witness, std::abs(k2 * pr.series.Addot[t] - pr.series.Adot[t]));
        const ConnectionData conn = chern(spec, EvalPoint{st.x0, st.y0});
        pr.K = flag_curvature(curvature(conn), values(conn.geometry->g), st.y0, st.V0);
        return pr;
      },
      mode);

  Theorem3Report r;
  r.metric = spec.name;
  r.k2 = k2;
  r.paths = results.size();
  r.lambda = results.front().K;
  double kmin = r.lambda, kmax = r.lambda;
  for (const auto& pr : results) {
    const auto& cs = pr.series;
    r.residual_derivative = std::max(r.residual_derivative, cs.residual_second);
    r.residual_first = std::max(r.residual_first, cs.residual_first);
    r.witness = std::max(r.witness, pr.witness);
    r.max_A = std::max(r.max_A, cs.max_A);
    r.max_Adot = std::max(r.max_Adot, cs.max_Adot);
    r.max_Addot = std::max(r.max_Addot, cs.max_Addot);
    kmin = std::min(kmin, pr.K);
    kmax = std::max(kmax, pr.K);
  }
  r.constant_curvature = kmax - kmin < 1e-5;
  for (const auto& pr : results)
    for (std::size_t t = 0; t < pr.series.A.size(); ++t)
      r.residual_constant_curvature =
          std::max(r.residual_constant_curvature,
                   std::abs(pr.series.Addot[t] + r.lambda * pr.series.A[t]));
  r.landsberg = classify(spec, 20, {}, mode).is_landsberg;
  r.consistent = r.landsberg ? r.witness <= 1e-7 : r.witness >= 1e-3;
  return r;
}

std::vector<FlagSample> sample_flags(const MetricSpec& spec, std::size_t count, ExecMode mode) {
  const auto pts = sample_points(spec, count);
  const int n = spec.dim;
  return parallel_map<FlagSample>(
      count,
      [&](std::size_t i) {
        const ConnectionData conn = chern(spec, pts[i]);
        const CurvatureData curv = curvature(conn);
        const RealTensor g = values(conn.geometry->g);
        FlagSample fs;
        fs.pt = pts[i];
        const int prime = std::min(2 * n + 9, 24 - 2 * ((n + 1) / 2));
        for (std::size_t attempt = 0;; ++attempt) {
          fs.V = sample_direction(n, i + 31 * attempt, prime);
          try {
            fs.K = flag_curvature(curv, g, fs.pt.y, fs.V);
          } catch (const FlagError&) {
            continue;
          }
          // Keep edges well away from the flagpole.
          double yy = 0, vv = 0, yv = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              const auto au = static_cast<std::size_t>(a);
              const auto bu = static_cast<std::size_t>(b);
              yy += g(a, b) * fs.pt.y[au] * fs.pt.y[bu];
              vv += g(a, b) * fs.V[au] * fs.V[bu];
              yv += g(a, b) * fs.pt.y[au] * fs.V[bu];
            }
          if (yy * vv - yv * yv > 1e-2 * yy * vv) break;
        }
        return fs;
      },
      mode);
}

// ---------------------------------------------------------------------------
// Identity suite

namespace {

enum Row : std::size_t {
  kEulerF,
  kHomG,
  kHomA,
  kHomSpray,
  kHomN,
  kHomGamma,
  kSprayContraction,
  kTorsion,
  kCompatH,
  kCompatV,
  kAAlongEll,
  kIterateAlongEll,
  kAEllH,
  kAEllV,
  kIterEllH,
  kIterEllV,
  kAVertSym,
  kAVertSymCorrected,
  kRSkew,
  kBianchi,
  kPSym,
  kRCompat,
  kPCompat,
  kPFormula,
  kPnSlice,
  kPnn,
  kQZero,
  kBerwaldSpray,
  kLandsbergAdot,
  kAdotBase,
  kRowCount
};

struct IdentityDef {
  const char* id;
  const char* eq;
  double tol;
  std::vector<Row> prereq;
};

const std::vector<IdentityDef>& registry() {
  static const std::vector<IdentityDef> defs = [] {
    const std::vector<Row> curv = {kTorsion, kCompatH, kCompatV};
    std::vector<IdentityDef> d(kRowCount);
    d[kEulerF] = {"euler-F", "y^i F_{y^i} = F", 1e-9, {}};
    d[kHomG] = {"homogeneity-g", "y^l dg_ij/dy^l = 0", 1e-9, {}};
    d[kHomA] = {"homogeneity-A", "y^l dA_ijk/dy^l = 0", 1e-9, {}};
    d[kHomSpray] = {"homogeneity-G", "y^l dG^i/dy^l = 2 G^i", 1e-9, {}};
    d[kHomN] = {"homogeneity-N", "y^l dN^i_j/dy^l = N^i_j", 1e-9, {}};
    d[kHomGamma] = {"homogeneity-Gamma", "y^l dGamma^i_jk/dy^l = 0", 1e-9, {}};
    d[kSprayContraction] = {"spray-contraction", "Gamma^k_ab ell^a ell^b = gamma^k_ab ell^a ell^b", 1e-7, {}};
    d[kTorsion] = {"torsion-free", "Gamma^i_jk = Gamma^i_kj, F^i_jk = 0", 1e-12, {}};
    d[kCompatH] = {"compatibility-horizontal", "g_ij|k = -2 sum_m k_m Adot^(m)_ijk", 1e-7, {}};
    d[kCompatV] = {"compatibility-vertical", "g_ij.k = 2 A_ijk", 1e-7, {}};
    d[kAAlongEll] = {"A-along-ell", "A_ijk|n = Adot_ijk", 1e-7, {}};
    d[kIterateAlongEll] = {"iterate-along-ell", "Adot^(m)_ijk|n = Adot^(m+1)_ijk", 1e-7, {}};
    d[kAEllH] = {"A-ell-horizontal", "A_njk|l = 0", 1e-7, {}};
    d[kAEllV] = {"A-ell-vertical", "A_njk.l = -A_jkl", 1e-7, {}};
    d[kIterEllH] = {"iterate-ell-horizontal", "Adot^(m)_njk|l = 0", 1e-7, {}};
    d[kIterEllV] = {"iterate-ell-vertical", "Adot^(m)_njk.l = -Adot^(m)_jkl", 1e-7, {}};
    d[kAVertSym] = {"A-vertical-symmetry", "A_ijk.l = A_ijl.k", 1e-7, {}};
    d[kAVertSymCorrected] = {"A-vertical-symmetry-corrected",
                             "A_ijk.l - A_ijl.k = ell_l A_ijk - ell_k A_ijl", 1e-7, {}};
    d[kRSkew] = {"R-skew", "R^i_j kl = -R^i_j lk", 1e-6, curv};
    d[kBianchi] = {"first-bianchi", "R^j_i kl + R^j_k li + R^j_l ik = 0", 1e-6, curv};
    d[kPSym] = {"P-symmetry", "P^j_i kl = P^j_k il", 1e-6, curv};
    d[kRCompat] = {"R-compatibility",
                   "R_ijkl + R_jikl = 2 sum_m k_m (Adot^(m)_ijl|k - Adot^(m)_ijk|l) - 2 A_ijs R^s_n kl",
                   1e-6, curv};
    d[kPCompat] = {"P-compatibility",
                   "P_ijkl + P_jikl = -2 sum_m k_m Adot^(m)_ijk.l - 2 A_ijl|k - 2 A_ijs P^s_n kl", 1e-6,
                   curv};
    d[kPFormula] = {"P-formula",
                    "P_ijkl = -sum_m k_m Adot^(m)_ijk.l - (A_ijl|k + A_jkl|i - A_kil|j) "
                    "+ A_kis P^s_n jl - A_jks P^s_n il - A_ijs P^s_n kl",
                    1e-6, curv};
    d[kPnSlice] = {"P-n-slice", "P_njkl = sum_m k_m Adot^(m)_jkl - Adot_jkl", 1e-6, curv};
    d[kPnn] = {"P-nn", "P_njnl = 0", 1e-8, curv};
    d[kQZero] = {"Q-zero", "Q^i_j kl = 0", 1e-12, {kTorsion}};
    d[kBerwaldSpray] = {"berwald-spray", "Gamma^i_jk(k = (1)) = d^2 G^i / dy^j dy^k", 1e-6, {}};
    d[kLandsbergAdot] = {"landsberg-adot", "d^2 G^i / dy^j dy^k - Gamma*^i_jk = g^is Adot_sjk", 1e-6, {}};
    d[kAdotBase] = {"adot-base", "Adot^(m) with Chern base = Adot^(m) with Berwald base", 1e-7, {}};
    return d;
  }();
  return defs;
}

struct Acc {
  double diff = 0.0;
  double scale = 0.0;
  void add(double lhs, double rhs) {
    diff = std::max(diff, std::abs(lhs - rhs));
    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  }
  void add_tensors(const RealTensor& lhs, const RealTensor& rhs) {
    for (std::size_t p = 0; p < lhs.size(); ++p) add(lhs.flat(p), rhs.flat(p));
  }
  double value() const { return diff / (1.0 + scale); }
};

// y^l dT/dy^l against degree * T.
void euler_check(Acc& acc, const SeriesTensor& T, double degree, const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  for (std::size_t p = 0; p < T.size(); ++p) {
    double lhs = 0.0;
    for (int l = 0; l < n; ++l) lhs += y[static_cast<std::size_t>(l)] * T.flat(p).derivative(n + l).value();
    acc.add(lhs, degree * T.flat(p).value());
  }
}

std::vector<double> sample_rows(const MetricSpec& spec, const EvalPoint& pt, const FamilyParams& params) {
  const int m_max = std::max(2, params.m());
  const auto geo = expand_geometry(spec, pt, m_max, 1);
  const ConnectionData conn = family(geo, params);
  const int n = geo->dim();
  const auto& k = params.k;
  const int mk = params.m();
  const RealTensor ell = values(geo->ell);
  const RealTensor ell_low = values(geo->ell_low);
  const RealTensor A = values(geo->A);
  std::vector<RealTensor> adot;
  for (const auto& a : geo->adot) adot.push_back(values(a));

  std::vector<Acc> acc(kRowCount);

  // Euler relations.
  {
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) lhs += pt.y[static_cast<std::size_t>(i)] * geo->F.derivative(n + i).value();
    acc[kEulerF].add(lhs, geo->F.value());
    euler_check(acc[kHomG], geo->g, 0.0, pt.y);
    euler_check(acc[kHomA], geo->A, 0.0, pt.y);
    euler_check(acc[kHomSpray], geo->G, 2.0, pt.y);
    euler_check(acc[kHomN], geo->N, 1.0, pt.y);
    euler_check(acc[kHomGamma], conn.Gamma_series, 0.0, pt.y);
  }

  {
    const RealTensor gamma = values(geo->gamma);
    for (int i = 0; i < n; ++i) {
      double lhs = 0.0, rhs = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          lhs += conn.Gamma(i, a, b) * ell(a) * ell(b);
          rhs += gamma(i, a, b) * ell(a) * ell(b);
        }
      acc[kSprayContraction].add(lhs, rhs);
    }
  }

  acc[kTorsion].diff = torsion_defect(conn);

  const RealTensor w = values(weighted_adot(conn));
  {
    const RealTensor gh = values(cov_h(geo->g, conn));
    const RealTensor gv = values(cov_v(geo->g, conn));
    for (std::size_t p = 0; p < gh.size(); ++p) {
      acc[kCompatH].add(gh.flat(p), -2.0 * w.flat(p));
      acc[kCompatV].add(gv.flat(p), 2.0 * A.flat(p));
    }
  }

  // Derivatives of A and the iterates. Ah(i,j,k,l) = A_ijk|l, Av(i,j,k,l) = A_ijk.l.
  const RealTensor Ah = values(cov_h(geo->A, conn));
  const RealTensor Av = values(cov_v(geo->A, conn));
  std::vector<RealTensor> adh, adv;
  for (int m = 1; m <= m_max; ++m) {
    adh.push_back(values(cov_h(geo->adot[static_cast<std::size_t>(m - 1)], conn)));
    adv.push_back(values(cov_v(geo->adot[static_cast<std::size_t>(m - 1)], conn)));
  }
  acc[kAAlongEll].add_tensors(contract(Ah, 3, ell), adot[0]);
  for (int m = 1; m < m_max; ++m)
    acc[kIterateAlongEll].add_tensors(contract(adh[static_cast<std::size_t>(m - 1)], 3, ell),
                                      adot[static_cast<std::size_t>(m)]);
  {
    const RealTensor zero3(n, 3, 0.0);
    acc[kAEllH].add_tensors(contract(Ah, 0, ell), zero3);
    RealTensor negA = A;
    for (std::size_t p = 0; p < negA.size(); ++p) negA.flat(p) = -negA.flat(p);
    acc[kAEllV].add_tensors(contract(Av, 0, ell), negA);
    for (int m = 1; m <= m_max; ++m) {
      const auto mi = static_cast<std::size_t>(m - 1);
      acc[kIterEllH].add_tensors(contract(adh[mi], 0, ell), zero3);
      RealTensor neg = adot[mi];
      for (std::size_t p = 0; p < neg.size(); ++p) neg.flat(p) = -neg.flat(p);
      acc[kIterEllV].add_tensors(contract(adv[mi], 0, ell), neg);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          acc[kAVertSym].add(Av(i, j, a, b), Av(i, j, b, a));
          acc[kAVertSymCorrected].add(Av(i, j, a, b) - Av(i, j, b, a),
                                      ell_low(b) * A(i, j, a) - ell_low(a) * A(i, j, b));
        }

  // Curvature.
  const CurvatureData cv = curvature(conn);
  const RealTensor Rn = contract(cv.R, 1, ell);  // Rn(s,k,l) = R^s_n kl
  const RealTensor Pn = contract(cv.P, 1, ell);  // Pn(s,k,l) = P^s_n kl
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          acc[kRSkew].add(cv.R(i, j, a, b), -cv.R(i, j, b, a));
          acc[kBianchi].add(cv.R(j, i, a, b) + cv.R(j, a, b, i) + cv.R(j, b, i, a), 0.0);
          acc[kPSym].add(cv.P(j, i, a, b), cv.P(j, a, i, b));
          acc[kQZero].add(cv.Q(i, j, a, b), 0.0);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        for (int l = 0; l < n; ++l) {
          double lhs = cv.R_low(i, j, kk, l) + cv.R_low(j, i, kk, l);
          double rhs = 0.0;
          for (int m = 0; m < mk; ++m) {
            const auto mi = static_cast<std::size_t>(m);
            rhs += 2.0 * k[mi] * (adh[mi](i, j, l, kk) - adh[mi](i, j, kk, l));
          }
          for (int s = 0; s < n; ++s) rhs -= 2.0 * A(i, j, s) * Rn(s, kk, l);
          acc[kRCompat].add(lhs, rhs);

          lhs = cv.P_low(i, j, kk, l) + cv.P_low(j, i, kk, l);
          double vert = 0.0;
          for (int m = 0; m < mk; ++m) {
            const auto mi = static_cast<std::size_t>(m);
            vert += k[mi] * adv[mi](i, j, kk, l);
          }
          rhs = -2.0 * vert - 2.0 * Ah(i, j, l, kk);
          for (int s = 0; s < n; ++s) rhs -= 2.0 * A(i, j, s) * Pn(s, kk, l);
          acc[kPCompat].add(lhs, rhs);

          lhs = cv.P_low(i, j, kk, l);
          rhs = -vert - (Ah(i, j, l, kk) + Ah(j, kk, l, i) - Ah(kk, i, l, j));
          for (int s = 0; s < n; ++s)
            rhs += A(kk, i, s) * Pn(s, j, l) - A(j, kk, s) * Pn(s, i, l) - A(i, j, s) * Pn(s, kk, l);
          acc[kPFormula].add(lhs, rhs);
        }
  for (std::size_t p = 0; p < cv.P_n.size(); ++p) acc[kPnSlice].add(cv.P_n.flat(p), w.flat(p) - adot[0].flat(p));
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double v = 0.0;
      for (int a = 0; a < n; ++a) v += cv.P_n(j, a, l) * ell(a);
      acc[kPnn].add(v, 0.0);
    }

  // Independent constructions.
  {
    const ConnectionData bw = family(geo, FamilyParams{{1.0}});
    acc[kBerwaldSpray].add_tensors(bw.Gamma, values(berwald_from_spray(*geo)));
    acc[kLandsbergAdot].add_tensors(values(landsberg(*geo)), values(raise_first(geo->adot[0], geo->g_inv)));
    const auto alt = adot_with_berwald_base(*geo);
    for (std::size_t m = 0; m < alt.size(); ++m) acc[kAdotBase].add_tensors(adot[m], values(alt[m]));
  }

  std::vector<double> out(kRowCount);
  for (std::size_t r = 0; r < kRowCount; ++r) out[r] = acc[r].value();
  return out;
}

std::string format_status(double residual, double tol) { return residual <= tol ? "pass" : "fail"; }

}  // namespace

std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.emplace_back(d.id);
  return out;
}

bool IdentityReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) { return r.ok(); });
}

const IdentityRow& IdentityReport::row(const std::string& identity) const {
  for (const auto& r : rows)
    if (r.identity == identity) return r;
  throw std::out_of_range("no identity row '" + identity + "'");
}

IdentityReport verify_identities(const MetricSpec& spec, const FamilyParams& params, int n_samples,
                                 ExecMode mode) {
  if (n_samples < 1) throw std::invalid_argument("verify: need at least one sample");
  params.validate();
  spec.check_parameters();
  IdentityReport rep;
  rep.metric = spec.name;
  rep.params = params;
  rep.samples = n_samples;
  const auto& defs = registry();

  std::vector<std::vector<double>> per_sample;
  std::string failure;
  try {
    const auto pts = sample_points(spec, static_cast<std::size_t>(n_samples));
    per_sample = parallel_map<std::vector<double>>(
        pts.size(), [&](std::size_t i) { return sample_rows(spec, pts[i], params); }, mode);
  } catch (const DomainError& e) {
    failure = e.what();
  }

  for (std::size_t r = 0; r < defs.size(); ++r) {
    IdentityRow row;
    row.identity = defs[r].id;
    row.eq = defs[r].eq;
    row.tol = defs[r].tol;
    if (!failure.empty()) {
      row.residual = std::numeric_limits<double>::quiet_NaN();
      row.status = "skipped: " + failure;
    } else {
      for (const auto& s : per_sample) row.residual = std::max(row.residual, s[r]);
      row.status = format_status(row.residual, row.tol);
    }
    rep.rows.push_back(std::move(row));
  }
  if (failure.empty()) {
    for (std::size_t r = 0; r < defs.size(); ++r)
      for (Row pre : defs[r].prereq)
        if (!rep.rows[pre].ok()) {
          rep.rows[r].status = "skipped: prerequisite " + rep.rows[pre].identity + " failed";
          break;
        }
  }
  return rep;
}

}  // namespace finsler
