#pragma once

#include "frhs/config.hpp"
#include "frhs/metric_core.hpp"

#include <vector>

namespace frhs {

/// A base vector y with alpha, beta, r and phi-derivatives at r cached.
struct TensorSample {
  Vec y;
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;
  PhiValues phi;

  double F() const { return alpha * phi.phi; }
  /// max(1, F(y)^2): the unit for absolute tolerances at this sample.
  double scale() const { return std::max(1.0, F() * F()); }
};

/// Throws NearZeroVector / DomainError.
TensorSample make_sample(const MetricModel& model, const Vec& y);

/// Fundamental tensor g_y(u, v) from the closed-form (alpha, beta) expansion.
double g_y(const MetricModel& model, const TensorSample& s, const Vec& u, const Vec& v);

/// g_y(y, w) through the reduced geodesic-vector form
/// a(y, w)(phi^2 - phi phi' r) + a(X, w) phi' F(y).
double g_y_flagpole(const MetricModel& model, const TensorSample& s, const Vec& w);

/// Cartan tensor C_y(z, u, v) from the closed-form six-block expansion.
double cartan(const MetricModel& model, const TensorSample& s, const Vec& z, const Vec& u, const Vec& v);

/// Oracles: central differences of F^2 only, refined by one Richardson step.
/// Base steps 1e-4 (second order) and 1e-3 (third order), times max(1, alpha(y)).
/// Throw DomainError when a stencil point leaves the phi domain.
double g_y_fd(const MetricModel& model, const TensorSample& s, const Vec& u, const Vec& v);
double cartan_fd(const MetricModel& model, const TensorSample& s, const Vec& z, const Vec& u,
                 const Vec& v);

Mat g_y_matrix(const MetricModel& model, const TensorSample& s);

struct DefinitenessResult {
  bool positive_definite = false;
  double smallest_pivot = 0.0;
};
DefinitenessResult is_positive_definite(const MetricModel& model, const TensorSample& s);

/// |closed - fd| / max(|fd|, scale * prod ||arg||_a).
double fd_relative_error(double closed, double fd, double scale);

struct SampleTensorErrors {
  Vec y;
  double g_rel = 0.0;
  double cartan_rel = 0.0;
};

/// Closed form vs oracle over seeded samples: the m basis plus 16 random
/// directions, all pairs for g and all non-decreasing triples for C.
struct TensorVerification {
  std::vector<SampleTensorErrors> samples;
  double max_g_rel = 0.0;
  double max_cartan_rel = 0.0;
  int skipped_samples = 0;  ///< drawn outside the phi domain
  int skipped_stencils = 0; ///< stencil escaped the domain
  bool pass = false;
};

TensorVerification verify_tensors(const MetricModel& model, const RunConfig& cfg, int n_random_dirs = 16);

}  // namespace frhs
