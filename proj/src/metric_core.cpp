#include "frhs/metric_core.hpp"

#include "frhs/error.hpp"

#include <cmath>
#include <sstream>

namespace frhs {

std::string_view to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::Randers: return "randers";
    case PhiKind::Kropina: return "kropina";
    case PhiKind::Matsumoto: return "matsumoto";
    case PhiKind::Polynomial: return "polynomial";
  }
  return "unknown";
}

PhiFamily PhiFamily::randers() { return PhiFamily(PhiKind::Randers, 1.0, 0.0); }

PhiFamily PhiFamily::kropina(double s_min) {
  if (!(s_min > 0.0)) throw Error(ErrorCode::InvalidModel, "kropina s_min must be > 0");
  return PhiFamily(PhiKind::Kropina, kInfinity, s_min);
}

PhiFamily PhiFamily::matsumoto(double s_min) {
  if (!(s_min > 0.0) || s_min >= 1.0) {
    throw Error(ErrorCode::InvalidModel, "matsumoto s_min must be in (0, 1)");
  }
  return PhiFamily(PhiKind::Matsumoto, 0.5, s_min);
}

PhiFamily PhiFamily::polynomial(std::vector<double> coefficients, double b0) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::InvalidModel, "polynomial phi needs at least one coefficient");
  }
  if (!(b0 > 0.0)) throw Error(ErrorCode::InvalidModel, "polynomial b0 must be > 0");
  PhiFamily fam(PhiKind::Polynomial, b0, 0.0);
  fam.coeffs_ = std::move(coefficients);
  return fam;
}

bool PhiFamily::in_domain(double s) const {
  if (!std::isfinite(s)) return false;
  switch (kind_) {
    case PhiKind::Kropina: return s >= s_min_;
    case PhiKind::Matsumoto: return s < 1.0 - s_min_;
    case PhiKind::Randers: return 1.0 + s > 0.0;
    case PhiKind::Polynomial: {
      double p = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * s + *it;
      return p > 0.0;
    }
  }
  return false;
}

PhiValues PhiFamily::derivs(double s) const {
  if (!in_domain(s)) {
    std::ostringstream os;
    os << to_string(kind_) << " phi is not defined (or not positive) at s = " << s;
    throw Error(ErrorCode::DomainError, os.str());
  }
  switch (kind_) {
    case PhiKind::Randers: return {1.0 + s, 1.0, 0.0, 0.0};
    case PhiKind::Kropina: {
      const double inv = 1.0 / s;
      return {inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv};
    }
    case PhiKind::Matsumoto: {
      const double inv = 1.0 / (1.0 - s);
      return {inv, inv * inv, 2.0 * inv * inv * inv, 6.0 * inv * inv * inv * inv};
    }
    case PhiKind::Polynomial: {
      // Horner on p, p', p'', p''' simultaneously.
      double p = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        d3 = d3 * s + 3.0 * d2;
        d2 = d2 * s + 2.0 * d1;
        d1 = d1 * s + p;
        p = p * s + *it;
      }
      return {p, d1, d2, d3};
    }
  }
  return {};
}

InnerProduct InnerProduct::from_matrix(Mat A) {
  if (A.rows() == 0 || A.rows() != A.cols()) {
    throw Error(ErrorCode::InvalidModel, "metric must be a non-empty square matrix");
  }
  if (!A.allFinite()) throw Error(ErrorCode::InvalidModel, "metric has non-finite entries");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < A.cols(); ++j) {
      if (A(i, j) != A(j, i)) {
        std::ostringstream os;
        os << "metric is not symmetric at (" << i << "," << j << ")";
        throw Error(ErrorCode::InvalidModel, os.str());
      }
    }
  }
  Eigen::LLT<Mat> llt(A);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidModel, "metric is not positive definite");
  }
  InnerProduct ip;
  ip.L_ = llt.matrixL();
  ip.A_ = std::move(A);
  return ip;
}

double InnerProduct::norm(const Vec& u) const { return std::sqrt(std::max(0.0, (*this)(u, u))); }

MetricModel::MetricModel(InnerProduct a, Vec X, PhiFamily phi, double alpha_floor)
    : a_(std::move(a)), X_(std::move(X)), phi_(std::move(phi)), alpha_floor_(alpha_floor) {
  if (X_.size() != a_.dim()) {
    throw Error(ErrorCode::InvalidModel, "X has " + std::to_string(X_.size()) +
                                             " components but m has dimension " +
                                             std::to_string(a_.dim()));
  }
  if (!X_.allFinite()) throw Error(ErrorCode::InvalidModel, "X has non-finite entries");
}

double MetricModel::alpha(const Vec& y) const {
  const double a = a_.norm(y);
  if (!(a > alpha_floor_)) {
    std::ostringstream os;
    os << "alpha(y) = " << a << " is below the floor " << alpha_floor_;
    throw Error(ErrorCode::NearZeroVector, os.str());
  }
  return a;
}

double MetricModel::finsler_norm(const Vec& y) const {
  const double a = alpha(y);
  return a * phi_.value(beta(y) / a);
}

namespace {

// phi - s phi' + (b^2 - s^2) phi'' over s in [-b, b]; folds into the report.
void scan_convexity(const PhiFamily& phi, double b, int points, AdmissibilityReport& rep, bool& first) {
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : -b + 2.0 * b * i / (points - 1);
    ++rep.grid_points;
    if (!phi.in_domain(s)) {
      ++rep.grid_skipped;
      continue;
    }
    const PhiValues v = phi.derivs(s);
    const double q = v.phi - s * v.d1 + (b * b - s * s) * v.d2;
    if (first || q < rep.grid_min) {
      rep.grid_min = q;
      rep.witness_s = s;
      rep.witness_b = b;
      first = false;
    }
  }
}

}  // namespace

AdmissibilityReport check_admissibility(const MetricModel& model, const AdmissibilityOptions& opts) {
  AdmissibilityReport rep;
  rep.drift_norm = model.drift_norm();
  rep.b0 = model.phi().b0();
  rep.norm_ok = rep.drift_norm < rep.b0;

  bool first = true;
  const int points = std::max(1, opts.grid_points);
  scan_convexity(model.phi(), rep.drift_norm, points, rep, first);
  if (opts.sweep_b && std::isfinite(rep.b0) && rep.drift_norm < rep.b0) {
    const int nb = std::max(2, opts.b_points);
    const double b_hi = rep.b0 * (1.0 - 1e-9);
    for (int j = 1; j < nb; ++j) {
      const double b = rep.drift_norm + (b_hi - rep.drift_norm) * j / (nb - 1);
      scan_convexity(model.phi(), b, points, rep, first);
    }
  }
  // An all-skipped grid certifies nothing.
  rep.convex_ok = !first && rep.grid_min > 0.0;
  if (first) rep.grid_min = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace frhs
