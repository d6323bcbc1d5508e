// finsler-lab: command-line front end over the library.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 domain error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "finsler/json_io.hpp"

namespace {

using namespace finsler;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError(what + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<MetricSpec> resolve_metrics(const std::string& name) {
  if (name == "all") return list_catalog();
  try {
    return {load_metric(name)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

MetricSpec resolve_metric(const std::string& name) {
  if (name == "all") throw UsageError("this command takes a single metric");
  return resolve_metrics(name).front();
}

FamilyParams parse_k(const std::string& text) {
  if (text.empty()) return {};
  try {
    return FamilyParams::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << text;
  }
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("unsupported format '" + format + "' for this command");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(what) + " must be positive");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_catalog(bool json) {
  if (json) {
    std::cout << catalog_json().dump(2) << "\n";
    return kExitPass;
  }
  for (const auto& spec : list_catalog()) {
    const auto e = spec.expected();
    std::cout << std::left << std::setw(20) << spec.name << std::setw(28) << kind_name(spec.kind())
              << "dim " << spec.dim << "  params " << to_json(spec)["params"].dump() << "  expected "
              << (e.riemannian ? "Riemannian" : e.berwald ? "Berwald" : e.landsberg ? "Landsberg" : "non-Landsberg")
              << "\n";
  }
  return kExitPass;
}

int cmd_validate(const std::string& metric, int samples) {
  if (samples < 1) throw UsageError("--samples must be at least 1");
  bool ok = true;
  Json arr = Json::array();
  for (const auto& spec : resolve_metrics(metric)) {
    const auto rep = validate(spec, samples);
    ok = ok && rep.pass;
    arr.push_back(to_json(rep));
  }
  emit(metric == "all" ? Json{{"schema", kSchema}, {"reports", arr}} : arr.front(), "");
  return ok ? kExitPass : kExitFail;
}

Json tensor_dump(const std::string& name, const MetricSpec& spec, const EvalPoint& pt,
                 const FamilyParams& params) {
  if (name == "F") return Json(evaluate_F(spec, pt));
  if (name == "g") return to_json(metric_data(spec, pt).g);
  if (name == "g_inv") return to_json(metric_data(spec, pt).g_inv);
  if (name == "A") return to_json(metric_data(spec, pt).A);
  if (name == "G") return to_json(spray_data(spec, pt).G);
  if (name == "N") return to_json(spray_data(spec, pt).N);
  const ConnectionData conn = family(spec, pt, params);
  if (name == "Gamma") return to_json(conn.Gamma);
  if (name == "Adot") return to_json(conn.cartan.adot.at(0));
  if (name == "L") return to_json(conn.cartan.L);
  if (name == "R") return to_json(hh_curvature(conn));
  if (name == "P") return to_json(hv_curvature(conn));
  if (name == "Q") return to_json(vv_curvature(conn));
  throw UsageError("unknown tensor '" + name + "' (choose from F,g,g_inv,A,G,N,Gamma,Adot,L,R,P,Q)");
}

void print_pretty_tensor(const std::string& name, const Json& t) {
  std::cout << name << " = " << t.dump() << "\n";
}

int cmd_eval(const std::string& metric, const std::string& point, const std::string& tensors,
             const std::string& k, const std::string& format) {
  check_format(format, {"json", "pretty"});
  const MetricSpec spec = resolve_metric(metric);
  const FamilyParams params = parse_k(k);
  const auto vals = parse_list(point, "--point");
  const auto n = static_cast<std::size_t>(spec.dim);
  if (vals.size() != 2 * n)
    throw UsageError("--point needs " + std::to_string(2 * n) + " values (x then y) for metric '" +
                     spec.name + "', got " + std::to_string(vals.size()));
  const EvalPoint pt{{vals.begin(), vals.begin() + static_cast<long>(n)},
                     {vals.begin() + static_cast<long>(n), vals.end()}};
  evaluate_F(spec, pt);  // domain check before any tensor work

  std::vector<std::string> names;
  {
    std::stringstream ss(tensors);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) names.push_back(item);
  }
  if (names.empty()) throw UsageError("--tensors is empty");
  Json out = Json::object();
  for (const auto& name : names) out[name] = tensor_dump(name, spec, pt, params);

  if (format == "pretty") {
    std::cout << "metric " << spec.name << " at x = " << Json(pt.x).dump() << ", y = " << Json(pt.y).dump()
              << "\n";
    for (const auto& name : names) print_pretty_tensor(name, out[name]);
    return kExitPass;
  }
  emit(Json{{"schema", kSchema}, {"metric", spec.name}, {"point", to_json(pt)}, {"k", to_json(params)},
            {"tensors", out}},
       "");
  return kExitPass;
}

int cmd_classify(const std::string& metric, int samples, double tau, double tau_p, const std::string& format) {
  check_format(format, {"json", "pretty"});
  if (samples < 1) throw UsageError("--samples must be at least 1");
  check_positive(tau, "--tau");
  check_positive(tau_p, "--tau-p");
  const auto specs = resolve_metrics(metric);
  Thresholds th;
  th.tau = tau;
  th.tau_p = tau_p;
  bool ok = true;
  Json arr = Json::array();
  for (const auto& spec : specs) {
    const auto rep = classify(spec, samples, th);
    ok = ok && rep.pass();
    arr.push_back(to_json(rep));
  }
  if (format == "pretty") {
    for (const auto& j : arr)
      std::cout << std::left << std::setw(20) << j["metric"].get<std::string>() << std::setw(16)
                << j["classification"].get<std::string>() << "criteria agree: " << j["criteria_agree"]
                << "  matches expected: " << j["matches_expected"] << "\n";
  } else {
    emit(specs.size() == 1 ? arr.front() : Json{{"schema", kSchema}, {"reports", arr}}, "");
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& metric, const std::string& k, int samples, const std::string& format,
               const std::string& out_path) {
  check_format(format, {"json", "pretty", "csv"});
  if (samples < 1) throw UsageError("--samples must be at least 1");
  const auto specs = resolve_metrics(metric);
  const FamilyParams params = parse_k(k);
  bool ok = true;
  std::vector<IdentityReport> reports;
  for (const auto& spec : specs) {
    reports.push_back(verify_identities(spec, params, samples));
    ok = ok && reports.back().all_pass();
  }
  if (format == "json") {
    Json j;
    if (reports.size() == 1) {
      j = to_json(reports.front());
    } else {
      Json arr = Json::array();
      Json failures = Json::array();
      for (const auto& r : reports) {
        Json rj = to_json(r);
        for (const auto& f : rj["failures"]) failures.push_back(r.metric + ":" + f.get<std::string>());
        rj.erase("schema");
        arr.push_back(std::move(rj));
      }
      j = Json{{"schema", kSchema}, {"reports", arr}, {"failures", failures}};
    }
    emit(j, out_path);
  } else {
    std::ostringstream os;
    if (format == "csv") os << "metric,identity,residual,tol,status\n";
    for (const auto& r : reports)
      for (const auto& row : r.rows) {
        if (format == "csv")
          os << r.metric << ',' << row.identity << ',' << std::setprecision(17) << row.residual << ','
             << row.tol << ',' << '"' << row.status << '"' << '\n';
        else
          os << std::left << std::setw(18) << r.metric << std::setw(32) << row.identity << std::setw(12)
             << fmt(row.residual) << std::setw(12) << fmt(row.tol) << row.status << '\n';
      }
    if (out_path.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(out_path);
      if (!f) throw UsageError("cannot write '" + out_path + "'");
      f << os.str();
    }
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_flags(const std::string& metric, int samples, const std::string& format) {
  check_format(format, {"json", "csv"});
  if (samples < 1) throw UsageError("--samples must be at least 1");
  const MetricSpec spec = resolve_metric(metric);
  const auto flags = sample_flags(spec, static_cast<std::size_t>(samples));
  if (format == "csv") {
    std::cout << "index,x,y,V,K\n" << std::setprecision(17);
    for (std::size_t i = 0; i < flags.size(); ++i)
      std::cout << i << ",\"" << Json(flags[i].pt.x).dump() << "\",\"" << Json(flags[i].pt.y).dump() << "\",\""
                << Json(flags[i].V).dump() << "\"," << flags[i].K << "\n";
    return kExitPass;
  }
  double kmin = flags.front().K, kmax = flags.front().K;
  Json arr = Json::array();
  for (const auto& f : flags) {
    kmin = std::min(kmin, f.K);
    kmax = std::max(kmax, f.K);
    arr.push_back(Json{{"x", f.pt.x}, {"y", f.pt.y}, {"V", f.V}, {"K", f.K}});
  }
  emit(Json{{"schema", kSchema}, {"metric", spec.name}, {"samples", samples}, {"K_min", kmin},
            {"K_max", kmax}, {"flags", arr}},
       "");
  return kExitPass;
}

int cmd_theorem2(const std::string& metric, const std::string& k, int samples) {
  if (samples < 1) throw UsageError("--samples must be at least 1");
  const auto specs = resolve_metrics(metric);
  const FamilyParams params = parse_k(k);
  bool ok = true;
  Json arr = Json::array();
  for (const auto& spec : specs) {
    const auto rep = theorem2_check(spec, params, samples);
    ok = ok && rep.pass;
    arr.push_back(to_json(rep));
  }
  emit(specs.size() == 1 ? arr.front() : Json{{"schema", kSchema}, {"reports", arr}}, "");
  return ok ? kExitPass : kExitFail;
}

int cmd_theorem3(const std::string& metric, double k2, const PathConfig& cfg) {
  if (k2 == 0.0) throw UsageError("--k2 must be nonzero");
  check_positive(cfg.t_max, "--tmax");
  check_positive(cfg.dt, "--dt");
  if (cfg.count < 1 || cfg.stride < 1) throw UsageError("--paths and --stride must be at least 1");
  const auto specs = resolve_metrics(metric);
  bool ok = true;
  Json arr = Json::array();
  for (const auto& spec : specs) {
    const auto rep = theorem3_residual(spec, k2, cfg);
    ok = ok && rep.consistent && rep.residual_derivative <= 1e-4;
    arr.push_back(to_json(rep));
  }
  emit(specs.size() == 1 ? arr.front() : Json{{"schema", kSchema}, {"reports", arr}}, "");
  return ok ? kExitPass : kExitFail;
}

int cmd_geodesic(const std::string& metric, const std::string& x0s, const std::string& y0s, double tmax,
                 double dt, const std::string& out_path, std::string format, double drift_tol) {
  check_positive(dt, "--dt");
  check_positive(drift_tol, "--drift-tol");
  if (!(tmax >= 0.0)) throw UsageError("--tmax must be nonnegative");
  const MetricSpec spec = resolve_metric(metric);
  const auto x0 = parse_list(x0s, "--x0");
  const auto y0_in = parse_list(y0s, "--y0");
  const auto n = static_cast<std::size_t>(spec.dim);
  if (x0.size() != n || y0_in.size() != n)
    throw UsageError("--x0 and --y0 need " + std::to_string(n) + " values each for metric '" + spec.name + "'");
  const auto y0 = normalize_direction(spec, x0, y0_in);
  GeodesicOptions opts;
  opts.t_max = tmax;
  opts.dt = dt;
  const GeodesicPath path = integrate_geodesic(spec, x0, y0, opts);

  if (format.empty()) {
    const bool json_ext = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json";
    format = json_ext ? "json" : "csv";
  }
  check_format(format, {"json", "csv"});
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    if (format == "csv")
      write_csv(f, path);
    else
      f << to_json(path).dump(2) << "\n";
  }
  const bool pass = path.speed_drift <= drift_tol;
  Json summary{{"schema", kSchema},
               {"metric", spec.name},
               {"x0", x0},
               {"y0_input", y0_in},
               {"y0", y0},
               {"t_max", tmax},
               {"dt", dt},
               {"samples", path.size()},
               {"t_end", path.times.back()},
               {"speed_drift", path.speed_drift},
               {"drift_tol", drift_tol},
               {"exited", path.exited},
               {"pass", pass}};
  if (path.exited) summary["exit_reason"] = path.exit_reason;
  if (!out_path.empty()) summary["out"] = out_path;
  emit(summary, "");
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finsler-lab: Finsler tensors, Berwald-type connections, curvature and geodesics"};
  app.require_subcommand(1);

  bool catalog_json_flag = false;
  auto* catalog = app.add_subcommand("catalog", "List built-in metrics");
  catalog->add_flag("--json", catalog_json_flag, "JSON output");

  std::string metric = "all";
  int samples = 50;
  auto* validate_cmd = app.add_subcommand("validate", "Check positivity and strong convexity on samples");
  validate_cmd->add_option("--metric", metric, "Metric name, spec file, or 'all'");
  validate_cmd->add_option("--samples", samples, "Sample count");

  std::string point, tensors = "g", k, format = "json", out_path;
  auto* eval = app.add_subcommand("eval", "Evaluate tensors at a point");
  eval->add_option("--metric", metric, "Metric name or spec file")->required();
  eval->add_option("--point", point, "x then y, comma separated")->required();
  eval->add_option("--tensors", tensors, "Comma list of F,g,g_inv,A,G,N,Gamma,Adot,L,R,P,Q");
  eval->add_option("--k", k, "Family coefficients k_1,...,k_m (empty: Chern)");
  eval->add_option("--format", format, "json or pretty");

  int cls_samples = 20;
  double tau = 1e-7, tau_p = 1e-6;
  auto* classify_cmd = app.add_subcommand("classify", "Riemannian / Berwald / Landsberg classification");
  classify_cmd->add_option("--metric", metric, "Metric name, spec file, or 'all'");
  classify_cmd->add_option("--samples", cls_samples, "Sample count");
  classify_cmd->add_option("--tau", tau, "Threshold for A, Adot and A_|l");
  classify_cmd->add_option("--tau-p", tau_p, "Threshold for P");
  classify_cmd->add_option("--format", format, "json or pretty");

  auto* verify = app.add_subcommand("verify", "Run the identity suite");
  verify->add_option("--metric", metric, "Metric name, spec file, or 'all'");
  verify->add_option("--k", k, "Family coefficients");
  verify->add_option("--samples", samples, "Sample count");
  verify->add_option("--format", format, "json, pretty or csv");
  verify->add_option("--out", out_path, "Write the report to a file");

  int flag_samples = 100;
  auto* flags = app.add_subcommand("flags", "Flag curvature sweep");
  flags->add_option("--metric", metric, "Metric name or spec file")->required();
  flags->add_option("--samples", flag_samples, "Number of flags");
  flags->add_option("--format", format, "json or csv");

  auto* thm2 = app.add_subcommand("theorem2", "P = 0 iff Berwald, for one family member");
  thm2->add_option("--metric", metric, "Metric name, spec file, or 'all'");
  thm2->add_option("--k", k, "Family coefficients");
  thm2->add_option("--samples", cls_samples, "Sample count");

  double k2 = 1.0;
  PathConfig cfg;
  auto* thm3 = app.add_subcommand("theorem3", "Along-geodesic residuals of k2 Addot - Adot");
  thm3->add_option("--metric", metric, "Metric name, spec file, or 'all'");
  thm3->add_option("--k2", k2, "Coefficient k_2");
  thm3->add_option("--paths", cfg.count, "Number of geodesics");
  thm3->add_option("--tmax", cfg.t_max, "Path length");
  thm3->add_option("--dt", cfg.dt, "Step");
  thm3->add_option("--stride", cfg.stride, "Steps between Cartan samples");

  std::string x0s, y0s, geo_format;
  double tmax = 10.0, dt = 1e-3, drift_tol = 1e-6;
  auto* geodesic = app.add_subcommand("geodesic", "Integrate a unit-speed geodesic");
  geodesic->add_option("--metric", metric, "Metric name or spec file")->required();
  geodesic->add_option("--x0", x0s, "Initial point")->required();
  geodesic->add_option("--y0", y0s, "Initial direction (scaled to F = 1)")->required();
  geodesic->add_option("--tmax", tmax, "Final time");
  geodesic->add_option("--dt", dt, "Step");
  geodesic->add_option("--out", out_path, "CSV or JSON output file");
  geodesic->add_option("--format", geo_format, "csv or json (default from --out extension)");
  geodesic->add_option("--drift-tol", drift_tol, "Allowed |F - 1| drift");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*catalog) return cmd_catalog(catalog_json_flag);
    if (*validate_cmd) return cmd_validate(metric, samples);
    if (*eval) return cmd_eval(metric, point, tensors, k, format);
    if (*classify_cmd) return cmd_classify(metric, cls_samples, tau, tau_p, format);
    if (*verify) return cmd_verify(metric, k, samples, format, out_path);
    if (*flags) return cmd_flags(metric, flag_samples, format);
    if (*thm2) return cmd_theorem2(metric, k, cls_samples);
    if (*thm3) return cmd_theorem3(metric, k2, cfg);
    if (*geodesic) return cmd_geodesic(metric, x0s, y0s, tmax, dt, out_path, geo_format, drift_tol);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
