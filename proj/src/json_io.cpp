#include "finsler/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace finsler {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::vector<double> read_vector(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw std::invalid_argument(std::string("spec: missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw std::invalid_argument(std::string("spec: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

Json tensor_slice(const RealTensor& t, std::vector<int>& idx, int depth) {
  if (depth == t.rank()) return number(t.flat(t.flatten(idx)));
  Json arr = Json::array();
  for (int i = 0; i < t.dim(); ++i) {
    idx[static_cast<std::size_t>(depth)] = i;
    arr.push_back(tensor_slice(t, idx, depth + 1));
  }
  return arr;
}

Json verdict_json(const Verdict& v) {
  return Json{{"value", v.value}, {"norm", v.norm}, {"measured", number(v.measured)},
              {"threshold", v.threshold}};
}

}  // namespace

Json to_json(const MetricSpec& spec) {
  Json params = Json::object();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SphereParams>) {
          params["radius"] = p.radius;
        } else if constexpr (std::is_same_v<P, QuarticParams>) {
          params["epsilon"] = p.epsilon;
        } else if constexpr (std::is_same_v<P, RandersParams>) {
          params["alpha"] = p.alpha;
          params["beta_const"] = p.beta_const;
          params["beta_sin"] = p.beta_sin;
        }
      },
      spec.params);
  return Json{{"name", spec.name}, {"dim", spec.dim}, {"kind", kind_name(spec.kind())}, {"params", params}};
}

MetricSpec metric_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec: expected a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw std::invalid_argument("spec: missing 'kind'");
  const MetricKind kind = kind_from_name(j.at("kind").get<std::string>());
  int dim = 2;
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer()) throw std::invalid_argument("spec: 'dim' must be an integer");
    dim = j.at("dim").get<int>();
  }
  if (dim < 2) throw std::invalid_argument("spec: 'dim' must be >= 2");
  std::string name = j.value("name", std::string());
  MetricSpec spec = make_default(kind, dim, name);
  const Json params = j.value("params", Json::object());
  if (!params.is_object()) throw std::invalid_argument("spec: 'params' must be an object");
  switch (kind) {
    case MetricKind::riemannian_sphere:
      if (params.contains("radius")) std::get<SphereParams>(spec.params).radius = params.at("radius").get<double>();
      break;
    case MetricKind::quartic:
      if (params.contains("epsilon"))
        std::get<QuarticParams>(spec.params).epsilon = params.at("epsilon").get<double>();
      break;
    case MetricKind::randers: {
      auto& p = std::get<RandersParams>(spec.params);
      if (params.contains("alpha")) p.alpha = read_vector(params, "alpha");
      if (params.contains("beta_const")) p.beta_const = read_vector(params, "beta_const");
      if (params.contains("beta_sin")) p.beta_sin = read_vector(params, "beta_sin");
      break;
    }
    default: break;
  }
  spec.check_parameters();
  return spec;
}

MetricSpec load_metric(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(name_or_path, ec)) {
    std::ifstream in(name_or_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw std::invalid_argument("spec file '" + name_or_path + "': " + e.what());
    }
    try {
      return metric_from_json(j);
    } catch (const Json::exception& e) {
      throw std::invalid_argument("spec file '" + name_or_path + "': " + e.what());
    }
  }
  return lookup_metric(name_or_path);
}

Json catalog_json() {
  Json arr = Json::array();
  for (const auto& spec : list_catalog()) {
    Json j = to_json(spec);
    const auto e = spec.expected();
    j["expected"] = {{"riemannian", e.riemannian}, {"berwald", e.berwald}, {"landsberg", e.landsberg}};
    arr.push_back(std::move(j));
  }
  return arr;
}

Json to_json(const RealTensor& t) {
  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  return tensor_slice(t, idx, 0);
}

Json to_json(const FamilyParams& p) { return p.k; }

Json to_json(const EvalPoint& pt) { return Json{{"x", pt.x}, {"y", pt.y}}; }

Json to_json(const ValidationReport& r) {
  Json j{{"schema", kSchema},
         {"metric", r.spec.name},
         {"samples", r.samples},
         {"min_eigenvalue", number(r.min_eigenvalue)},
         {"min_F", number(r.positivity)},
         {"pass", r.pass}};
  if (!r.pass) {
    j["failure"] = r.failure;
    if (r.failing_point) j["failing_point"] = to_json(*r.failing_point);
  }
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json failures = Json::array();
  if (!r.criteria_agree) failures.push_back("berwald criteria disagree");
  if (!r.chain_ok) failures.push_back("verdict chain violated");
  if (!r.matches_expected) failures.push_back("verdicts differ from expected labels");
  std::string label = "non-Landsberg";
  if (r.is_riemannian)
    label = "Riemannian";
  else if (r.is_berwald)
    label = "Berwald";
  else if (r.is_landsberg)
    label = "Landsberg";
  return Json{
      {"schema", kSchema},
      {"metric", r.metric},
      {"samples", r.samples},
      {"norms",
       {{"max_A", number(r.max_A)},
        {"max_Adot", number(r.max_Adot)},
        {"max_A_h", number(r.max_A_h)},
        {"max_P_chern", number(r.max_P)},
        {"max_dGamma_berwald_dy", number(r.max_dGamma_berwald)},
        {"max_g", number(r.max_g)},
        {"max_Gamma", number(r.max_Gamma)}}},
      {"verdicts",
       {{"riemannian", verdict_json(r.riemannian)},
        {"landsberg", verdict_json(r.landsberg)},
        {"berwald_horizontal", verdict_json(r.berwald_h)},
        {"berwald_P", verdict_json(r.berwald_p)}}},
      {"classification", label},
      {"is_riemannian", r.is_riemannian},
      {"is_berwald", r.is_berwald},
      {"is_landsberg", r.is_landsberg},
      {"criteria_agree", r.criteria_agree},
      {"chain_ok", r.chain_ok},
      {"separation_orders", number(r.separation)},
      {"separated", r.separated},
      {"expected",
       {{"riemannian", r.expected.riemannian},
        {"berwald", r.expected.berwald},
        {"landsberg", r.expected.landsberg}}},
      {"matches_expected", r.matches_expected},
      {"pass", r.pass()},
      {"failures", failures}};
}

Json to_json(const Theorem2Report& r) {
  return Json{{"schema", kSchema},
              {"metric", r.metric},
              {"k", to_json(r.params)},
              {"samples", r.samples},
              {"max_P", number(r.max_P)},
              {"P_small", r.P_small},
              {"berwald", r.berwald},
              {"max_Adot", number(r.max_Adot)},
              {"max_iterates", number(r.max_iterates)},
              {"iterates_vanish", r.iterates_vanish},
              {"pass", r.pass}};
}

Json to_json(const Theorem3Report& r) {
  return Json{{"schema", kSchema},
              {"metric", r.metric},
              {"k2", r.k2},
              {"paths", r.paths},
              {"residual_dAdot_dt", number(r.residual_derivative)},
              {"residual_dA_dt", number(r.residual_first)},
              {"witness_k2_Addot_minus_Adot", number(r.witness)},
              {"max_A", number(r.max_A)},
              {"max_Adot", number(r.max_Adot)},
              {"max_Addot", number(r.max_Addot)},
              {"lambda", number(r.lambda)},
              {"constant_flag_curvature", r.constant_curvature},
              {"residual_Addot_plus_lambda_A", number(r.residual_constant_curvature)},
              {"landsberg", r.landsberg},
              {"consistent", r.consistent},
              {"global_claim", "untested"}};
}

Json to_json(const IdentityReport& r) {
  Json rows = Json::array();
  Json failures = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"identity", row.identity},
                        {"eq", row.eq},
                        {"residual", number(row.residual)},
                        {"tol", row.tol},
                        {"status", row.status}});
    if (!row.ok()) failures.push_back(row.identity);
  }
  return Json{{"schema", kSchema}, {"metric", r.metric}, {"k", to_json(r.params)},
              {"samples", r.samples}, {"rows", rows}, {"failures", failures}};
}

Json to_json(const GeodesicPath& p) {
  Json samples = Json::array();
  for (std::size_t t = 0; t < p.size(); ++t)
    samples.push_back(Json{{"t", p.times[t]}, {"x", p.x[t]}, {"v", p.v[t]}, {"F_minus_1", p.speed[t] - 1.0}});
  Json j{{"schema", kSchema},
         {"metric", p.spec.name},
         {"dt", p.dt},
         {"speed_drift", number(p.speed_drift)},
         {"exited", p.exited},
         {"samples", samples}};
  if (p.exited) j["exit_reason"] = p.exit_reason;
  return j;
}

}  // namespace finsler
