#include "cli.hpp"

#include "frhs/catalog.hpp"
#include "frhs/curvature.hpp"
#include "frhs/error.hpp"
#include "frhs/model_io.hpp"
#include "frhs/reductivity.hpp"
#include "frhs/tensor_engine.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace frhs::cli {

namespace {

struct Common {
  std::string model_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::string format = "json";
  std::vector<std::pair<std::string, double>> tol_overrides;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const Vec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt(v[i]);
  }
  return s;
}

/// Loads the model and folds CLI, file and environment settings into its config.
Model load(const Common& c) {
  bool seed_in_file = false;
  Model m = load_model(c.model_path, &seed_in_file);
  if (c.seed) {
    m.config.seed = *c.seed;
  } else if (!seed_in_file) {
    if (const char* env = std::getenv("FRHS_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        throw Error(ErrorCode::ParseError, "FRHS_SEED must be a non-negative integer, got '" + std::string(env) + "'");
      }
      m.config.seed = v;
    }
  }
  if (c.samples) {
    if (*c.samples < 1) throw Error(ErrorCode::ParseError, "--samples must be >= 1");
    m.config.n_samples = *c.samples;
  }
  for (const auto& [name, value] : c.tol_overrides) m.config.tol.set(name, value);
  return m;
}

AdmissibilityReport admissibility(const Model& m) {
  return check_admissibility(m.metric, {m.config.grid_points, m.config.sweep_b});
}

void print_check_table(std::ostream& out, const AdmissibilityReport& adm, const ReductivityReport& rep) {
  out << "admissibility: ||X|| = " << adm.drift_norm << ", b0 = " << adm.b0
      << ", convexity min = " << adm.grid_min << " -> " << (adm.pass() ? "pass" : "FAIL") << "\n";
  auto row = [&](const char* name, const CheckResult& r) {
    out << std::left << std::setw(22) << name << std::setw(6) << (r.pass ? "pass" : "FAIL") << " residual "
        << std::setw(14) << r.residual << " tol " << r.tolerance;
    if (!r.witness.empty()) {
      out << "  witness (";
      for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? "," : "") << r.witness[i];
      out << ")";
    }
    out << "\n";
  };
  row("riemannian_nr", rep.riemannian_nr);
  row("skew_adjoint_all_g", rep.skew_adjoint_all_g);
  row("x_orthogonal_derived", rep.x_orthogonal_derived);
  row("finsler_nr_def1", rep.finsler_nr_def1);
  row("geodesic_vectors", rep.geodesic_vectors);
  out << "verdict: " << to_string(rep.verdict) << "\n";
  for (const auto& r : rep.reasons) out << "  - " << r << "\n";
  for (const auto& n : rep.notes) out << "  note: " << n << "\n";
}

int cmd_check(const Common& c, std::ostream& out) {
  const Model m = load(c);
  const AdmissibilityReport adm = admissibility(m);
  if (!adm.pass()) {
    if (c.format == "table") {
      out << "model is not admissible: ||X|| = " << adm.drift_norm << ", b0 = " << adm.b0
          << ", convexity min = " << adm.grid_min << " at s = " << adm.witness_s << "\n";
    } else {
      out << Json{{"admissibility", to_json(adm)}}.dump(2) << "\n";
    }
    return kPrecondition;
  }
  const ReductivityReport rep = reductivity_verdict(m, m.config);
  if (c.format == "table") {
    print_check_table(out, adm, rep);
  } else {
    out << Json{{"admissibility", to_json(adm)}, {"reductivity", to_json(rep)}}.dump(2) << "\n";
  }
  switch (rep.verdict) {
    case Verdict::NaturallyReductive: return kPass;
    case Verdict::NotNaturallyReductive: return kGeometricFail;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void write_csv(std::ostream& os, const ScanTable& table) {
  os << "y,u,r,K_general,K_closed,delta,theta\n";
  for (const auto& row : table.rows) {
    const FlagCurvatureResult& r = row.result;
    os << join(row.y) << ',' << join(row.u) << ',' << fmt(r.r) << ',' << fmt(r.K_general) << ','
       << (r.K_closed ? fmt(*r.K_closed) : "") << ',' << (r.K_closed ? fmt(r.delta) : "") << ','
       << fmt(r.theta) << '\n';
  }
}

struct CurvatureOpts {
  int n_y = 16;
  int n_planes = 16;
  std::string out_path;
  bool force = false;
  bool fd_numerator = false;
};

int cmd_curvature(const Common& c, const CurvatureOpts& o, std::ostream& out) {
  if (o.n_y < 0 || o.n_planes < 0) throw Error(ErrorCode::ParseError, "--ny and --nplanes must be >= 0");
  const Model m = load(c);
  const AdmissibilityReport adm = admissibility(m);
  if (!adm.pass() && !o.force) {
    out << Json{{"admissibility", to_json(adm)}, {"error", "model is not admissible (use --force)"}}.dump(2)
        << "\n";
    return kPrecondition;
  }
  const ReductivityReport rep = reductivity_verdict(m, m.config);
  if (rep.verdict != Verdict::NaturallyReductive && !o.force) {
    out << Json{{"verdict", std::string(to_string(rep.verdict))},
                {"error", "curvature needs a naturally reductive model (use --force)"}}
               .dump(2)
        << "\n";
    return kPrecondition;
  }
  CurvatureEngine engine(m, rep, o.force);
  engine.use_fd_numerator(o.fd_numerator);
  const ScanTable table = engine.scan(o.n_y, o.n_planes, m.config.seed);

  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + o.out_path + "'");
    write_csv(f, table);
  }
  const double tol = m.config.tol.curvature_agree;
  const bool agree = table.summary.max_delta <= tol;
  if (c.format == "csv") {
    if (o.out_path.empty()) write_csv(out, table);
  } else if (c.format == "table") {
    const ScanSummary& s = table.summary;
    out << "flags: " << s.rows << " (skipped degenerate " << s.skipped_degenerate << ", domain "
        << s.skipped_domain << ")\n";
    if (!s.empty) out << "K: min " << s.min_K << ", max " << s.max_K << ", mean " << s.mean_K << "\n";
    out << "max |K_general - K_closed| = " << s.max_delta << " (tol " << tol << ") -> "
        << (agree ? "agree" : "DISAGREE") << "\n";
    if (engine.watermarked()) out << "WARNING: forced run on a model not certified naturally reductive\n";
  } else {
    out << Json{{"summary", to_json(table.summary)},
                {"curvature_agree_tol", tol},
                {"agree", agree},
                {"seed", m.config.seed},
                {"forced", engine.watermarked()},
                {"csv", o.out_path}}
               .dump(2)
        << "\n";
  }
  return agree ? kPass : kGeometricFail;
}

int cmd_verify(const Common& c, std::ostream& out) {
  const Model m = load(c);
  const AdmissibilityReport adm = admissibility(m);
  if (!adm.pass()) {
    out << Json{{"admissibility", to_json(adm)}, {"error", "model is not admissible"}}.dump(2) << "\n";
    return kPrecondition;
  }
  const TensorVerification ver = verify_tensors(m.metric, m.config);
  if (c.format == "table") {
    out << "sample  g_rel_err      cartan_rel_err\n";
    for (std::size_t i = 0; i < ver.samples.size(); ++i) {
      out << std::setw(6) << i << "  " << std::setw(13) << ver.samples[i].g_rel << "  " << ver.samples[i].cartan_rel
          << "\n";
    }
    out << "max g rel err " << ver.max_g_rel << " (tol " << m.config.tol.g_fd << "), max Cartan rel err "
        << ver.max_cartan_rel << " (tol " << m.config.tol.cartan_fd << ")\n";
    out << "skipped samples " << ver.skipped_samples << ", skipped stencils " << ver.skipped_stencils << "\n";
    out << (ver.pass ? "pass" : "FAIL") << "\n";
  } else {
    Json j = to_json(ver);
    j["g_tol"] = m.config.tol.g_fd;
    j["cartan_tol"] = m.config.tol.cartan_fd;
    out << j.dump(2) << "\n";
  }
  return ver.pass ? kPass : kGeometricFail;
}

/// Pulls `--tol.name=value` / `--tol.name value` out of args; CLI11 handles the rest.
std::vector<std::string> extract_tolerances(const std::vector<std::string>& args,
                                            std::vector<std::pair<std::string, double>>& tols) {
  std::vector<std::string> rest;
  const std::string prefix = "--tol.";
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind(prefix, 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string name = a.substr(prefix.size());
    std::string value;
    if (auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else if (i + 1 < args.size()) {
      value = args[++i];
    } else {
      throw Error(ErrorCode::ParseError, a + " needs a value");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw Error(ErrorCode::ParseError, "--tol." + name + ": '" + value + "' is not a number");
    }
    Tolerances probe;
    probe.set(name, v);  // validates name and sign
    tols.emplace_back(name, v);
  }
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Common common;
  CurvatureOpts curv;
  std::string cat_id, cat_path;

  CLI::App app{"Invariant (alpha, beta)-metrics on homogeneous spaces: tensors, natural reductivity, flag curvature", "frhs"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", common.model_path, "Model file (JSON)")->required();
    sub->add_option("--seed", common.seed, "Sampling seed (default: model config, then FRHS_SEED, then 42)");
    sub->add_option("--samples", common.samples, "Number of seeded flagpole samples");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
  };

  CLI::App* check = app.add_subcommand("check", "Admissibility and natural-reductivity report");
  add_common(check);

  CLI::App* curvature = app.add_subcommand("curvature", "Flag-curvature scan by both computation paths");
  add_common(curvature);
  curvature->add_option("--ny", curv.n_y, "Number of flagpoles");
  curvature->add_option("--nplanes", curv.n_planes, "Planes per flagpole");
  curvature->add_option("-o,--out", curv.out_path, "CSV output path");
  curvature->add_flag("--force", curv.force, "Run even if the model is not certified naturally reductive");
  curvature->add_flag("--fd-numerator", curv.fd_numerator, "Use the finite-difference g_y in the general path");

  CLI::App* verify = app.add_subcommand("verify-tensors", "Closed-form g_y and Cartan tensor vs finite differences");
  add_common(verify);

  CLI::App* catalog = app.add_subcommand("catalog", "Built-in example models");
  catalog->require_subcommand(1);
  CLI::App* cat_list = catalog->add_subcommand("list", "List catalog ids");
  CLI::App* cat_export = catalog->add_subcommand("export", "Write a catalog model file");
  cat_export->add_option("id", cat_id)->required();
  cat_export->add_option("path", cat_path)->required();

  try {
    std::vector<std::string> args = extract_tolerances(raw_args, common.tol_overrides);
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(common, out);
    if (curvature->parsed()) return cmd_curvature(common, curv, out);
    if (verify->parsed()) return cmd_verify(common, out);
    if (cat_list->parsed()) {
      for (const auto& e : catalog_list()) out << e.id << "  " << e.notes << "\n";
      return kPass;
    }
    if (cat_export->parsed()) {
      catalog_export(cat_id, cat_path);
      return kPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace frhs::cli
