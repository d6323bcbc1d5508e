// One PASS/FAIL line per acceptance criterion. `--criterion N` runs one.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "finsler/analysis.hpp"
#include "finsler/json_io.hpp"
#include "finsler/sampling.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<FamilyParams> kFamily{{{}}, {{1.0}}, {{0.3, -0.2}}, {{0.0, 0.4}}};
constexpr int kSamples = 50;

// Max residual of the named rows over catalog x family; records the worst row.
struct RowSweep {
  double worst = 0.0;
  std::string worst_row;
  std::vector<std::string> failing;
};

RowSweep sweep_rows(const std::vector<std::string>& rows, const std::vector<FamilyParams>& ks, double tol) {
  RowSweep s;
  for (const auto& spec : list_catalog())
    for (const auto& k : ks) {
      const IdentityReport rep = verify_identities(spec, k, kSamples);
      for (const auto& id : rows) {
        const IdentityRow& row = rep.row(id);
        const bool skipped = row.status.rfind("skipped", 0) == 0;
        const double r = skipped ? INFINITY : row.residual;
        if (r > s.worst) {
          s.worst = r;
          s.worst_row = id + " on " + spec.name;
        }
        if (r > tol || !row.ok()) {
          const std::string tag = id + "@" + spec.name;
          if (std::find(s.failing.begin(), s.failing.end(), tag) == s.failing.end()) s.failing.push_back(tag);
        }
      }
    }
  return s;
}

Outcome report_sweep(const RowSweep& s, double tol) {
  std::string d = "max residual " + fmt("%.2e", s.worst) + " (" + s.worst_row + "), tol " + fmt("%.0e", tol);
  if (!s.failing.empty()) {
    d += "; failing:";
    for (const auto& f : s.failing) d += " " + f;
  }
  return {s.failing.empty(), d};
}

Outcome jets() {
  double worst3 = 0, worst4 = 0;
  for (const auto& spec : list_catalog()) {
    const auto field = norm_field(spec);
    for (const auto& pt : sample_points(spec, kSamples)) {
      const JetTable a = eval_jet(field, pt, {2, 2}), b = fd_jet(field, pt, {2, 2});
      for (int o = 1; o <= 3; ++o) worst3 = std::max(worst3, oracle::jet_rel_error(a, b, o));
      worst4 = std::max(worst4, oracle::jet_rel_error(a, b, 4));
      const JetTable c = eval_jet(field, pt, {1, 3}), d = fd_jet(field, pt, {1, 3});
      for (int o = 1; o <= 3; ++o) worst3 = std::max(worst3, oracle::jet_rel_error(c, d, o));
      worst4 = std::max(worst4, oracle::jet_rel_error(c, d, 4));
      const JetTable e = eval_jet(field, pt, {0, 4}), f = fd_jet(field, pt, {0, 4});
      worst4 = std::max(worst4, oracle::jet_rel_error(e, f, 4));
    }
  }
  return {worst3 <= 1e-5 && worst4 <= 1e-4,
          "orders<=3 rel " + fmt("%.2e", worst3) + " (tol 1e-5), order 4 rel " + fmt("%.2e", worst4) + " (tol 1e-4)"};
}

Outcome euler() {
  const double tol = 1e-9;
  return report_sweep(sweep_rows({"euler-F", "homogeneity-g", "homogeneity-A", "homogeneity-G", "homogeneity-N",
                                  "homogeneity-Gamma"},
                                 kFamily, tol),
                      tol);
}

Outcome theorem1() {
  double torsion = 0, compat = 0;
  for (const auto& spec : list_catalog())
    for (const auto& pt : sample_points(spec, kSamples)) {
      const auto geo = expand_geometry(spec, pt, 2, family_extra_order(2));
      for (const auto& k : kFamily) {
        const ConnectionData c = family(geo, k);
        torsion = std::max(torsion, torsion_defect(c));
        const auto d = compatibility_defect(c);
        compat = std::max({compat, d.horizontal, d.vertical});
      }
    }
  return {torsion == 0.0 && compat <= 1e-7,
          "torsion defect " + fmt("%.2e", torsion) + " (must be 0), compatibility defect " + fmt("%.2e", compat) +
              " (tol 1e-7)"};
}

Outcome conventions() {
  const double tol = 1e-7;
  Outcome o = report_sweep(
      sweep_rows({"A-along-ell", "A-ell-horizontal", "A-ell-vertical", "A-vertical-symmetry"}, kFamily, tol), tol);
  const RowSweep corrected = sweep_rows({"A-vertical-symmetry-corrected"}, kFamily, tol);
  o.detail += "; A_ijk.l - A_ijl.k = ell_l A_ijk - ell_k A_ijl holds to " + fmt("%.2e", corrected.worst);
  return o;
}

Outcome curvature_suite() {
  const double tol = 1e-6;
  return report_sweep(sweep_rows({"R-skew", "first-bianchi", "P-symmetry", "R-compatibility", "P-compatibility",
                                  "P-formula", "P-n-slice", "P-nn", "Q-zero"},
                                 kFamily, tol),
                      tol);
}

Outcome theorem2() {
  bool ok = true;
  double berwald_P = 0, other_P = INFINITY;
  std::string bad;
  for (const auto& k : kFamily) {
    for (const char* name : {"quartic", "randers-const"}) {
      const auto r = theorem2_check(lookup_metric(name), k, kSamples);
      berwald_P = std::max(berwald_P, r.max_P);
      if (!(r.berwald && r.P_small)) {
        ok = false;
        bad += std::string(" ") + name;
      }
    }
    for (const char* name : {"funk", "randers-nonconst"}) {
      const auto r = theorem2_check(lookup_metric(name), k, kSamples);
      other_P = std::min(other_P, r.max_P);
      if (r.berwald || r.max_P < 1e-3) {
        ok = false;
        bad += std::string(" ") + name;
      }
    }
  }
  bool agree = true;
  for (const auto& spec : list_catalog()) agree = agree && classify(spec, kSamples).criteria_agree;
  std::string d = "Berwald max|P| " + fmt("%.2e", berwald_P) + " (tol 1e-6 rel), non-Berwald min max|P| " +
                  fmt("%.2e", other_P) + " (>= 1e-3), criteria agree: " + (agree ? "yes" : "no");
  if (!bad.empty()) d += "; failing:" + bad;
  return {ok && agree, d};
}

Outcome cross_construction() {
  double spray = 0, landsberg = 0;
  for (const auto& spec : list_catalog())
    for (const auto& pt : sample_points(spec, kSamples)) {
      const ConnectionData b = berwald(spec, pt);
      const RealTensor ref = berwald_from_spray_values(b);
      spray = std::max(spray, max_abs_diff(b.Gamma, ref) / (1 + max_abs(ref)));
      const MetricData md = metric_data(*b.geometry);
      const int n = pt.dim();
      RealTensor raised(n, 3);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int s = 0; s < n; ++s) raised(i, j, k) += md.g_inv(i, s) * b.cartan.adot[0](s, j, k);
      landsberg = std::max(landsberg, max_abs_diff(raised, b.cartan.L) / (1 + max_abs(b.cartan.L)));
    }
  return {spray <= 1e-6 && landsberg <= 1e-6,
          "Berwald member vs spray Hessian rel " + fmt("%.2e", spray) + ", raised Adot vs L rel " +
              fmt("%.2e", landsberg) + " (tol 1e-6)"};
}

Outcome flag_constancy() {
  double sphere = 0;
  for (const auto& f : sample_flags(lookup_metric("riemannian-sphere"), 100)) sphere = std::max(sphere, std::abs(f.K - 1.0));
  double funk = 0, lo = INFINITY, hi = -INFINITY;
  for (const auto& f : sample_flags(lookup_metric("funk"), 100)) {
    funk = std::max(funk, std::abs(f.K + 0.25));
    lo = std::min(lo, f.K);
    hi = std::max(hi, f.K);
  }
  return {sphere <= 1e-6 && funk <= 1e-5 && hi - lo < 1e-5,
          "sphere |K-1| " + fmt("%.2e", sphere) + " (tol 1e-6), funk |K+1/4| " + fmt("%.2e", funk) +
              " (tol 1e-5), funk spread " + fmt("%.2e", hi - lo) + " (tol 1e-5)"};
}

Outcome geodesics() {
  constexpr std::size_t kPaths = 10;
  double drift = 0, residual = 0, witness_q = 0, witness_f = 0;
  bool exited = false;
  for (const auto& spec : list_catalog()) {
    const auto starts = geodesic_starts(spec, kPaths);
    const auto drifts = parallel_map<std::pair<double, bool>>(kPaths, [&](std::size_t i) {
      const GeodesicPath p = integrate_geodesic(spec, starts[i].x0, starts[i].y0, {10.0, 1e-3});
      return std::make_pair(p.speed_drift, p.exited);
    });
    for (const auto& [d, e] : drifts) {
      drift = std::max(drift, d);
      exited = exited || e;
    }
    PathConfig cfg;
    cfg.count = kPaths;
    const Theorem3Report t3 = theorem3_residual(spec, 1.0, cfg);
    residual = std::max(residual, t3.residual_derivative);
    if (spec.kind() == MetricKind::quartic) witness_q = t3.witness;
    if (spec.kind() == MetricKind::funk_ball) witness_f = t3.witness;
  }
  return {drift <= 1e-6 && !exited && residual <= 1e-4 && witness_q <= 1e-7 && witness_f >= 1e-3,
          "speed drift " + fmt("%.2e", drift) + " (tol 1e-6" + (exited ? ", a path left the chart" : "") +
              "), |dAdot/dt - Addot| " + fmt("%.2e", residual) + " (tol 1e-4), witness quartic " +
              fmt("%.2e", witness_q) + " (<= 1e-7), funk " + fmt("%.2e", witness_f) + " (>= 1e-3)"};
}

std::string full_suite_json() {
  Json out = Json::object();
  for (const auto& spec : list_catalog()) {
    Json m = Json::object();
    m["validate"] = to_json(validate(spec, kSamples));
    m["classify"] = to_json(classify(spec, 20));
    Json verify = Json::array();
    for (const auto& k : kFamily) verify.push_back(to_json(verify_identities(spec, k, kSamples)));
    m["verify"] = verify;
    m["theorem2"] = to_json(theorem2_check(spec, kFamily[2], 20));
    PathConfig cfg;
    cfg.count = 3;
    m["theorem3"] = to_json(theorem3_residual(spec, 1.0, cfg));
    Json flags = Json::array();
    for (const auto& f : sample_flags(spec, 20)) flags.push_back(f.K);
    m["flags"] = flags;
    const auto s = geodesic_starts(spec, 1)[0];
    m["geodesic"] = to_json(integrate_geodesic(spec, s.x0, s.y0, {1.0, 1e-3}));
    out[spec.name] = m;
  }
  return out.dump();
}

Outcome determinism() {
  const std::string a = full_suite_json();
  const std::string b = full_suite_json();
  return {a == b, std::to_string(a.size()) + " bytes, runs " + (a == b ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"jet correctness", jets},
      {"Euler and homogeneity", euler},
      {"torsion-free and almost compatible family", theorem1},
      {"convention validators", conventions},
      {"curvature identities", curvature_suite},
      {"P = 0 iff Berwald", theorem2},
      {"cross-construction oracle", cross_construction},
      {"constant flag curvature", flag_constancy},
      {"geodesic integrity", geodesics},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s | %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
