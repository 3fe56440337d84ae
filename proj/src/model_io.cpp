#include "frhs/model_io.hpp"

#include "frhs/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace frhs {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) bad(path + "/" + key, "missing");
  return obj.at(key);
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer, got " + std::string(j.type_name()));
  return j.get<int>();
}

Vec as_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = as_number(j[i], path + "/" + std::to_string(i));
  return v;
}

Mat as_matrix(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  Mat A(n, n);
  if (!j.empty() && j[0].is_array()) {
    if (j.size() != n) bad(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
    for (std::size_t r = 0; r < n; ++r) {
      const std::string rp = path + "/" + std::to_string(r);
      if (!j[r].is_array() || j[r].size() != n) bad(rp, "expected a row of " + std::to_string(n) + " numbers");
      for (std::size_t c = 0; c < n; ++c) A(r, c) = as_number(j[r][c], rp + "/" + std::to_string(c));
    }
  } else {
    if (j.size() != n * n) {
      bad(path, "expected " + std::to_string(n * n) + " row-major entries, got " + std::to_string(j.size()));
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) A(r, c) = as_number(j[r * n + c], path + "/" + std::to_string(r * n + c));
    }
  }
  return A;
}

PhiFamily parse_phi(const Json& j) {
  const std::string path = "/phi";
  if (!j.is_object()) bad(path, "expected an object");
  const Json& fam = require(j, "family", path);
  if (!fam.is_string()) bad(path + "/family", "expected a string");
  const std::string name = fam.get<std::string>();
  const Json params = j.value("params", Json::object());
  if (!params.is_object()) bad(path + "/params", "expected an object");
  const std::string pp = path + "/params";
  auto number_or = [&](const char* key, double fallback) {
    return params.contains(key) ? as_number(params.at(key), pp + "/" + key) : fallback;
  };

  if (name == "randers") return PhiFamily::randers();
  if (name == "kropina") return PhiFamily::kropina(number_or("s_min", 0.05));
  if (name == "matsumoto") return PhiFamily::matsumoto(number_or("s_min", 0.05));
  if (name == "polynomial") {
    const Json& c = require(params, "coefficients", pp);
    Vec coeffs = as_vector(c, pp + "/coefficients");
    if (coeffs.size() == 0) bad(pp + "/coefficients", "must not be empty");
    return PhiFamily::polynomial(std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size()),
                                 number_or("b0", kInfinity));
  }
  bad(path + "/family", "unknown family '" + name + "' (randers, kropina, matsumoto, polynomial)");
}

RunConfig parse_config(const Json& j, bool* seed_specified) {
  RunConfig cfg;
  const std::string path = "/config";
  if (!j.is_object()) bad(path, "expected an object");
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      bad(path + "/seed", "expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
    if (seed_specified) *seed_specified = true;
  }
  if (j.contains("n_samples")) {
    cfg.n_samples = as_int(j.at("n_samples"), path + "/n_samples");
    if (cfg.n_samples < 1) bad(path + "/n_samples", "must be >= 1");
  }
  if (j.contains("grid_points")) {
    cfg.grid_points = as_int(j.at("grid_points"), path + "/grid_points");
    if (cfg.grid_points < 1) bad(path + "/grid_points", "must be >= 1");
  }
  if (j.contains("sweep_b")) {
    if (!j.at("sweep_b").is_boolean()) bad(path + "/sweep_b", "expected a boolean");
    cfg.sweep_b = j.at("sweep_b").get<bool>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    if (!t.is_object()) bad(path + "/tolerances", "expected an object");
    for (const auto& [name, value] : t.items()) {
      const std::string tp = path + "/tolerances/" + name;
      try {
        cfg.tol.set(name, as_number(value, tp));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        bad(tp, e.what());
      }
    }
  }
  return cfg;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// NaN and inf have no JSON spelling.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Model parse_model(const Json& doc, bool* seed_specified) {
  if (seed_specified) *seed_specified = false;
  if (!doc.is_object()) bad("/", "model file must be a JSON object");

  StructureConstants sc;
  sc.dim = as_int(require(doc, "dim", ""), "/dim");
  if (sc.dim < 1) bad("/dim", "must be >= 1");
  const Json& br = require(doc, "brackets", "");
  if (!br.is_array()) bad("/brackets", "expected an array of [i, j, k, value]");
  for (std::size_t n = 0; n < br.size(); ++n) {
    const std::string p = "/brackets/" + std::to_string(n);
    const Json& q = br[n];
    if (!q.is_array() || q.size() != 4) bad(p, "expected [i, j, k, value]");
    sc.entries.push_back({as_int(q[0], p + "/0"), as_int(q[1], p + "/1"), as_int(q[2], p + "/2"),
                          as_number(q[3], p + "/3")});
  }

  std::vector<int> h;
  if (doc.contains("h_indices")) {
    const Json& hj = doc.at("h_indices");
    if (!hj.is_array()) bad("/h_indices", "expected an array of integers");
    for (std::size_t n = 0; n < hj.size(); ++n) h.push_back(as_int(hj[n], "/h_indices/" + std::to_string(n)));
  }

  RunConfig cfg;
  if (doc.contains("config")) cfg = parse_config(doc.at("config"), seed_specified);

  const int dim_m = sc.dim - static_cast<int>(h.size());
  if (dim_m < 1) bad("/h_indices", "leaves no room for m");
  Mat A = as_matrix(require(doc, "metric", ""), static_cast<std::size_t>(dim_m), "/metric");
  Vec X = as_vector(require(doc, "X", ""), "/X");
  if (X.size() != dim_m) {
    bad("/X", "expected " + std::to_string(dim_m) + " components (dim m), got " + std::to_string(X.size()));
  }
  PhiFamily phi = parse_phi(require(doc, "phi", ""));
  return make_model(sc, std::move(h), std::move(A), std::move(X), std::move(phi), cfg);
}

Model load_model(const std::string& path, bool* seed_specified) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return parse_model(doc, seed_specified);
}

Json model_to_json(const Model& model) {
  Json doc;
  const LieAlgebra& alg = model.algebra();
  doc["dim"] = alg.dim();
  Json br = Json::array();
  for (const auto& e : alg.canonical_entries()) br.push_back({e.i, e.j, e.k, e.value});
  doc["brackets"] = br;
  doc["h_indices"] = model.dec.h_indices();

  const Mat& A = model.metric.inner().matrix();
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) rows.push_back(vec_json(A.row(r).transpose()));
  doc["metric"] = rows;
  doc["X"] = vec_json(model.metric.drift());

  const PhiFamily& phi = model.metric.phi();
  Json params = Json::object();
  switch (phi.kind()) {
    case PhiKind::Randers: break;
    case PhiKind::Kropina:
    case PhiKind::Matsumoto: params["s_min"] = phi.s_min(); break;
    case PhiKind::Polynomial:
      params["coefficients"] = phi.coefficients();
      if (std::isfinite(phi.b0())) params["b0"] = phi.b0();
      break;
  }
  doc["phi"] = {{"family", std::string(to_string(phi.kind()))}, {"params", params}};

  const RunConfig def;
  const RunConfig& cfg = model.config;
  Json c = Json::object();
  if (cfg.seed != def.seed) c["seed"] = cfg.seed;
  if (cfg.n_samples != def.n_samples) c["n_samples"] = cfg.n_samples;
  if (cfg.grid_points != def.grid_points) c["grid_points"] = cfg.grid_points;
  if (cfg.sweep_b != def.sweep_b) c["sweep_b"] = cfg.sweep_b;
  Json tol = Json::object();
  for (const auto& name : Tolerances::names()) {
    if (cfg.tol.get(name) != def.tol.get(name)) tol[name] = cfg.tol.get(name);
  }
  if (!tol.empty()) c["tolerances"] = tol;
  if (!c.empty()) doc["config"] = c;
  return doc;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << model_to_json(model).dump(2) << "\n";
}

Json to_json(const AdmissibilityReport& rep) {
  return {{"drift_norm", rep.drift_norm},
          {"b0", num(rep.b0)},
          {"norm_below_b0", rep.norm_ok},
          {"convexity_grid_min", num(rep.grid_min)},
          {"convexity_witness_s", rep.witness_s},
          {"convexity_witness_b", rep.witness_b},
          {"grid_points", rep.grid_points},
          {"grid_skipped", rep.grid_skipped},
          {"convexity_ok", rep.convex_ok},
          {"pass", rep.pass()}};
}

Json to_json(const CheckResult& res) {
  Json j = {{"pass", res.pass},
            {"residual", num(res.residual)},
            {"tolerance", res.tolerance},
            {"witness", res.witness}};
  if (res.witness_y.size() > 0) j["witness_y"] = vec_json(res.witness_y);
  if (res.samples_evaluated > 0 || res.samples_skipped > 0) {
    j["samples_evaluated"] = res.samples_evaluated;
    j["samples_skipped"] = res.samples_skipped;
  }
  return j;
}

Json to_json(const ReductivityReport& rep) {
  return {{"riemannian_nr", to_json(rep.riemannian_nr)},
          {"skew_adjoint_all_g", to_json(rep.skew_adjoint_all_g)},
          {"x_orthogonal_derived", to_json(rep.x_orthogonal_derived)},
          {"finsler_nr_def1", to_json(rep.finsler_nr_def1)},
          {"geodesic_vectors", to_json(rep.geodesic_vectors)},
          {"geodesic_route_gap", rep.geodesic_route_gap},
          {"phiprime_flagged", rep.phiprime_flagged},
          {"phiprime_total", rep.phiprime_total},
          {"assumptions",
           {{"chern_equals_levi_civita", rep.assumes_connections_coincide},
            {"same_geodesics", rep.assumes_same_geodesics}}},
          {"h_trivial", rep.h_trivial},
          {"verdict", std::string(to_string(rep.verdict))},
          {"reasons", rep.reasons},
          {"notes", rep.notes}};
}

Json to_json(const ScanSummary& s) {
  return {{"empty", s.empty},
          {"rows", s.rows},
          {"skipped_degenerate", s.skipped_degenerate},
          {"skipped_domain", s.skipped_domain},
          {"closed_missing", s.closed_missing},
          {"min_K", s.empty ? Json(nullptr) : num(s.min_K)},
          {"max_K", s.empty ? Json(nullptr) : num(s.max_K)},
          {"mean_K", s.empty ? Json(nullptr) : num(s.mean_K)},
          {"max_delta", num(s.max_delta)},
          {"max_corollary_gap", num(s.max_corollary_gap)}};
}

Json to_json(const TensorVerification& ver) {
  Json samples = Json::array();
  for (const auto& s : ver.samples) {
    samples.push_back({{"y", vec_json(s.y)}, {"g_rel", s.g_rel}, {"cartan_rel", s.cartan_rel}});
  }
  return {{"samples", samples},
          {"max_g_rel", ver.max_g_rel},
          {"max_cartan_rel", ver.max_cartan_rel},
          {"skipped_samples", ver.skipped_samples},
          {"skipped_stencils", ver.skipped_stencils},
          {"pass", ver.pass}};
}

}  // namespace frhs
