#pragma once

#include "frhs/config.hpp"
#include "frhs/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace frhs {

enum class Verdict { NaturallyReductive, NotNaturallyReductive, Inconclusive };

std::string_view to_string(Verdict v);

/// Outcome of one criterion: worst residual, where it happened, and the gate it was held to.
struct CheckResult {
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  /// Basis indices of the worst case (meaning depends on the check).
  std::vector<int> witness;
  /// Worst flagpole for sample-based checks.
  Vec witness_y;
  int samples_evaluated = 0;
  int samples_skipped = 0;
};

struct ReductivityReport {
  CheckResult riemannian_nr;         // <[x,y]_m, z> + <y, [x,z]_m> = 0 on m
  CheckResult skew_adjoint_all_g;    // (ad_x)_m skew for every x in g
  CheckResult x_orthogonal_derived;  // a(X, [m,m]_m) = 0
  CheckResult finsler_nr_def1;       // g_y([x,u]_m,v) + g_y(u,[x,v]_m) + 2C_y([x,y]_m,u,v) = 0
  CheckResult geodesic_vectors;      // g_y(y, [y,z]_m) = 0
  /// max |reduced route - generic g_y route| for g_y(y, [y,z]_m).
  double geodesic_route_gap = 0.0;

  /// Samples where |phi'(r)| < phiprime tolerance.
  int phiprime_flagged = 0;
  int phiprime_total = 0;

  /// Hypotheses this artifact cannot certify; reported, not decided.
  bool assumes_connections_coincide = true;
  bool assumes_same_geodesics = true;

  bool h_trivial = false;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> reasons;
  std::vector<std::string> notes;

  bool certificate() const { return skew_adjoint_all_g.pass && x_orthogonal_derived.pass; }
};

CheckResult check_riemannian_nr(const ReductiveDecomposition& dec, const InnerProduct& a, double tol);
CheckResult check_skew_adjoint(const ReductiveDecomposition& dec, const InnerProduct& a, double tol);
CheckResult check_x_orthogonal(const ReductiveDecomposition& dec, const InnerProduct& a, const Vec& X,
                               double tol);

/// Sample-based checks over cfg.n_samples seeded flagpoles (domain-filtered).
CheckResult check_finsler_nr_def1(const Model& model, const RunConfig& cfg);
CheckResult check_geodesic_vectors(const Model& model, const RunConfig& cfg, double* route_gap = nullptr);

ReductivityReport reductivity_verdict(const Model& model, const RunConfig& cfg);

}  // namespace frhs
