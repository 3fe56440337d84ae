#pragma once

#include "frhs/lie_algebra.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace frhs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class PhiKind { Randers, Kropina, Matsumoto, Polynomial };

std::string_view to_string(PhiKind kind);

/// phi and its first three derivatives at one s.
struct PhiValues {
  double phi = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// The profile function of an (alpha, beta)-metric, F = alpha * phi(beta / alpha).
class PhiFamily {
public:
  static PhiFamily randers();
  /// phi(s) = 1/s on the cone s >= s_min.
  static PhiFamily kropina(double s_min = 0.05);
  /// phi(s) = 1/(1 - s), guarded by s < 1 - s_min.
  static PhiFamily matsumoto(double s_min = 0.05);
  /// phi(s) = sum c_k s^k. b0 = +inf when unspecified.
  static PhiFamily polynomial(std::vector<double> coefficients, double b0 = kInfinity);

  PhiKind kind() const { return kind_; }
  double b0() const { return b0_; }
  double s_min() const { return s_min_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  bool in_domain(double s) const;

  /// Exact analytic values; throws Error{DomainError} outside the domain.
  PhiValues derivs(double s) const;
  double value(double s) const { return derivs(s).phi; }

  bool operator==(const PhiFamily&) const = default;

private:
  PhiFamily(PhiKind kind, double b0, double s_min) : kind_(kind), b0_(b0), s_min_(s_min) {}

  PhiKind kind_;
  double b0_;
  double s_min_;
  std::vector<double> coeffs_;
};

inline PhiValues phi_derivs(const PhiFamily& fam, double s) { return fam.derivs(s); }

/// Symmetric positive-definite form a(u, v) = u^T A v on m.
class InnerProduct {
public:
  /// Throws Error{InvalidModel} unless A is square, exactly symmetric and PD.
  static InnerProduct from_matrix(Mat A);
  static InnerProduct identity(int n) { return from_matrix(Mat::Identity(n, n)); }

  int dim() const { return static_cast<int>(A_.rows()); }
  const Mat& matrix() const { return A_; }
  /// Lower Cholesky factor L with A = L L^T.
  const Mat& cholesky_factor() const { return L_; }

  double operator()(const Vec& u, const Vec& v) const { return u.dot(A_ * v); }
  double norm(const Vec& u) const;

  bool operator==(const InnerProduct& o) const {
    return A_.rows() == o.A_.rows() && A_.cols() == o.A_.cols() && A_ == o.A_;
  }

private:
  InnerProduct() = default;
  Mat A_;
  Mat L_;
};

/// a, the drift vector X (a-dual of beta) and phi, all on the single tangent space m.
class MetricModel {
public:
  /// Throws Error{InvalidModel} on dimension mismatch.
  MetricModel(InnerProduct a, Vec X, PhiFamily phi, double alpha_floor = 1e-12);

  const InnerProduct& inner() const { return a_; }
  const Vec& drift() const { return X_; }
  const PhiFamily& phi() const { return phi_; }
  double alpha_floor() const { return alpha_floor_; }
  int dim() const { return a_.dim(); }

  /// ||X||_a, which equals ||beta||_alpha.
  double drift_norm() const { return a_.norm(X_); }

  double alpha(const Vec& y) const;  ///< throws NearZeroVector
  double beta(const Vec& y) const { return a_(X_, y); }
  double r_value(const Vec& y) const { return beta(y) / alpha(y); }
  double finsler_norm(const Vec& y) const;  ///< throws NearZeroVector / DomainError

  bool operator==(const MetricModel& o) const {
    return a_ == o.a_ && X_.size() == o.X_.size() && X_ == o.X_ && phi_ == o.phi_ &&
           alpha_floor_ == o.alpha_floor_;
  }

private:
  InnerProduct a_;
  Vec X_;
  PhiFamily phi_;
  double alpha_floor_;
};

struct AdmissibilityOptions {
  int grid_points = 101;
  /// Also sweep b over [||X||, b0) (only when b0 is finite).
  bool sweep_b = false;
  int b_points = 21;
};

struct AdmissibilityReport {
  double drift_norm = 0.0;
  double b0 = 0.0;
  bool norm_ok = false;
  /// min of phi - s phi' + (b^2 - s^2) phi'' over the grid, and where it happened.
  double grid_min = 0.0;
  double witness_s = 0.0;
  double witness_b = 0.0;
  int grid_points = 0;
  int grid_skipped = 0;
  bool convex_ok = false;

  bool pass() const { return norm_ok && convex_ok; }
};

AdmissibilityReport check_admissibility(const MetricModel& model, const AdmissibilityOptions& opts = {});

}  // namespace frhs
