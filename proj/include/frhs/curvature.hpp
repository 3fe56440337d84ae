#pragma once

#include "frhs/model.hpp"
#include "frhs/reductivity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frhs {

/// Flagpole y and a second vector u spanning the plane P = span{u, y}.
struct Flag {
  Vec y;
  Vec u;
};

struct FlagCurvatureResult {
  double K_general = 0.0;
  std::optional<double> K_closed;
  std::optional<double> K_corollary;
  double delta = 0.0;  ///< |K_general - K_closed| when both exist
  double theta = 0.0;
  double r = 0.0;      ///< a(X, y) for the a-normalized flagpole
  std::vector<std::string> flags;
};

/// R(u, y) y = 1/4 [y, [u,y]_m]_m + [y, [u,y]_h]_m for a naturally reductive split.
/// No gating; CurvatureEngine applies the natural-reductivity precondition.
Vec nr_curvature_operator(const ReductiveDecomposition& dec, const Vec& u, const Vec& y);

/// a(R(u,y)y, w).
double nr_curvature_form(const ReductiveDecomposition& dec, const InnerProduct& a, const Vec& u, const Vec& y,
                         const Vec& w);

/// (y, u) -> a-orthonormal (y/|y|, u - a(u,y^)y^ normalized). Throws DegenerateFlag.
Flag orthonormalize(const InnerProduct& a, const Flag& flag, double gram_floor);

struct ScanRow {
  Vec y;
  Vec u;
  FlagCurvatureResult result;
};

struct ScanSummary {
  bool empty = true;
  int rows = 0;
  int skipped_degenerate = 0;
  int skipped_domain = 0;
  int closed_missing = 0;
  double min_K = 0.0;
  double max_K = 0.0;
  double mean_K = 0.0;
  double max_delta = 0.0;
  double max_corollary_gap = 0.0;  ///< |K_corollary - K_closed|
};

struct ScanTable {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

/// Flag curvature of a model whose natural reductivity has been established.
/// Holds a reference to the model, which must outlive it.
class CurvatureEngine {
public:
  /// Throws Error{NotNaturallyReductive} unless the report says NaturallyReductive or force is set;
  /// forced engines are watermarked.
  CurvatureEngine(const Model& model, const ReductivityReport& report, bool force = false);

  bool watermarked() const { return watermarked_; }

  /// Evaluate the general-path numerator with the FD oracle for g instead of the closed form.
  void use_fd_numerator(bool on) { fd_numerator_ = on; }

  Vec curvature_operator(const Vec& u, const Vec& y) const;

  /// K = g_y(R(u,y)y, u) / (g_y(y,y) g_y(u,u) - g_y(y,u)^2) on the raw flag.
  double flag_curvature_general(const Flag& flag) const;
  /// Three-block closed form over theta on the a-orthonormalized flag.
  double flag_curvature_closed(const Flag& flag) const;
  /// Two-block form, valid when a(R(u,y)y, y) = 0.
  double flag_curvature_corollary(const Flag& flag) const;

  FlagCurvatureResult evaluate(const Flag& flag) const;

  /// Seeded scan: flagpoles are the a-normalized m basis then random unit vectors;
  /// each gets n_planes mates, the basis first then random directions.
  ScanTable scan(int n_y, int n_planes, std::uint64_t seed) const;

private:
  struct ClosedParts;
  ClosedParts closed_parts(const Flag& flag) const;

  const Model& model_;
  Tolerances tol_;
  bool watermarked_ = false;
  bool fd_numerator_ = false;
};

}  // namespace frhs
