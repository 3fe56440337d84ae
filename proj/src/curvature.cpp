#include "frhs/curvature.hpp"

#include "frhs/error.hpp"
#include "frhs/sampling.hpp"
#include "frhs/tensor_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace frhs {

Vec nr_curvature_operator(const ReductiveDecomposition& dec, const Vec& u, const Vec& y) {
  const LieAlgebra& alg = dec.algebra();
  const Vec yg = dec.embed_m(y);
  const Vec uy = alg.bracket(dec.embed_m(u), yg);
  const Vec m_term = dec.restrict_m(alg.bracket(yg, dec.proj_m(uy)));
  const Vec h_term = dec.restrict_m(alg.bracket(yg, dec.proj_h(uy)));
  return 0.25 * m_term + h_term;
}

double nr_curvature_form(const ReductiveDecomposition& dec, const InnerProduct& a, const Vec& u, const Vec& y,
                         const Vec& w) {
  return a(nr_curvature_operator(dec, u, y), w);
}

Flag orthonormalize(const InnerProduct& a, const Flag& flag, double gram_floor) {
  const double ny = a.norm(flag.y);
  const double nu = a.norm(flag.u);
  if (!(ny > 0.0) || !(nu > 0.0)) throw Error(ErrorCode::DegenerateFlag, "flag contains a zero vector");
  const Vec yh = flag.y / ny;
  const Vec uh = flag.u / nu;
  const double c = a(uh, yh);
  const double gram = 1.0 - c * c;
  if (!(gram > gram_floor)) {
    std::ostringstream os;
    os << "y and u are (nearly) parallel: normalized Gram determinant " << gram;
    throw Error(ErrorCode::DegenerateFlag, os.str());
  }
  Vec perp = uh - c * yh;
  perp /= a.norm(perp);
  return {yh, perp};
}

CurvatureEngine::CurvatureEngine(const Model& model, const ReductivityReport& report, bool force)
    : model_(model), tol_(model.config.tol) {
  if (report.verdict != Verdict::NaturallyReductive) {
    if (!force) {
      throw Error(ErrorCode::NotNaturallyReductive,
                  "curvature formula needs a naturally reductive model; verdict is " +
                      std::string(to_string(report.verdict)));
    }
    watermarked_ = true;
  }
}

Vec CurvatureEngine::curvature_operator(const Vec& u, const Vec& y) const {
  return nr_curvature_operator(model_.dec, u, y);
}

double CurvatureEngine::flag_curvature_general(const Flag& flag) const {
  const MetricModel& mm = model_.metric;
  orthonormalize(mm.inner(), flag, tol_.denom_floor);  // independence check only
  const TensorSample s = make_sample(mm, flag.y);
  auto g = [&](const Vec& a, const Vec& b) {
    return fd_numerator_ ? g_y_fd(mm, s, a, b) : g_y(mm, s, a, b);
  };
  const Vec R = curvature_operator(flag.u, flag.y);
  const double gyu = g(flag.y, flag.u);
  const double denom = g(flag.y, flag.y) * g(flag.u, flag.u) - gyu * gyu;
  if (!(denom > tol_.denom_floor)) {
    std::ostringstream os;
    os << "flag curvature denominator " << denom << " <= " << tol_.denom_floor;
    throw Error(ErrorCode::DegenerateFlag, os.str());
  }
  return g(R, flag.u) / denom;
}

struct CurvatureEngine::ClosedParts {
  double r = 0.0;
  double theta = 0.0;
  double first = 0.0;   // (phi^2 - phi phi' r) a(R, u)
  double middle = 0.0;  // (phi phi' - rho0 r) a(X,u) a(R, y)
  double last = 0.0;    // rho0 a(X,u) a(R, X)
};

CurvatureEngine::ClosedParts CurvatureEngine::closed_parts(const Flag& flag) const {
  const MetricModel& mm = model_.metric;
  const InnerProduct& a = mm.inner();
  const Vec& X = mm.drift();
  const Flag on = orthonormalize(a, flag, tol_.denom_floor);
  const Vec& y = on.y;
  const Vec& u = on.u;

  ClosedParts p;
  p.r = a(X, y);
  const auto [f, f1, f2, f3] = mm.phi().derivs(p.r);
  const double rho0 = f1 * f1 + f * f2;
  const double Xu = a(X, u);
  const Vec R = curvature_operator(u, y);

  p.theta = f * f * (f * f + f * f2 * Xu * Xu - f * f1 * p.r);
  p.first = (f * f - f * f1 * p.r) * a(R, u);
  p.middle = (f * f1 * Xu - rho0 * Xu * p.r) * a(R, y);
  p.last = rho0 * Xu * a(R, X);
  if (!(std::abs(p.theta) > tol_.denom_floor)) {
    std::ostringstream os;
    os << "theta = " << p.theta << " at r = " << p.r;
    throw Error(ErrorCode::ThetaNearZero, os.str());
  }
  return p;
}

double CurvatureEngine::flag_curvature_closed(const Flag& flag) const {
  const ClosedParts p = closed_parts(flag);
  return (p.first + p.middle + p.last) / p.theta;
}

double CurvatureEngine::flag_curvature_corollary(const Flag& flag) const {
  const ClosedParts p = closed_parts(flag);
  return (p.first + p.last) / p.theta;
}

FlagCurvatureResult CurvatureEngine::evaluate(const Flag& flag) const {
  FlagCurvatureResult res;
  res.K_general = flag_curvature_general(flag);
  try {
    const ClosedParts p = closed_parts(flag);
    res.r = p.r;
    res.theta = p.theta;
    res.K_closed = (p.first + p.middle + p.last) / p.theta;
    res.K_corollary = (p.first + p.last) / p.theta;
    res.delta = std::abs(res.K_general - *res.K_closed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ThetaNearZero) throw;
    res.flags.push_back(e.what());
  }
  if (watermarked_) res.flags.push_back("forced: model not certified naturally reductive");
  return res;
}

ScanTable CurvatureEngine::scan(int n_y, int n_planes, std::uint64_t seed) const {
  const MetricModel& mm = model_.metric;
  const InnerProduct& a = mm.inner();
  const int dm = mm.dim();
  Rng rng(seed);

  ScanTable table;
  std::vector<Vec> poles;
  for (int i = 0; i < n_y; ++i) {
    Vec y = i < dm ? Vec(Vec::Unit(dm, i) / a.norm(Vec::Unit(dm, i))) : unit_sphere_sample(rng, a);
    if (mm.phi().in_domain(mm.r_value(y))) {
      poles.push_back(std::move(y));
    } else {
      table.summary.skipped_domain += n_planes;
    }
  }

  double sum_K = 0.0;
  for (const Vec& y : poles) {
    for (int j = 0; j < n_planes; ++j) {
      Vec u = j < dm ? Vec(Vec::Unit(dm, j)) : unit_sphere_sample(rng, a);
      FlagCurvatureResult res;
      try {
        res = evaluate({y, u});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateFlag) throw;
        ++table.summary.skipped_degenerate;
        continue;
      }
      ScanSummary& s = table.summary;
      if (s.empty) {
        s.min_K = s.max_K = res.K_general;
        s.empty = false;
      }
      s.min_K = std::min(s.min_K, res.K_general);
      s.max_K = std::max(s.max_K, res.K_general);
      sum_K += res.K_general;
      if (res.K_closed) {
        s.max_delta = std::max(s.max_delta, res.delta);
        s.max_corollary_gap = std::max(s.max_corollary_gap, std::abs(*res.K_corollary - *res.K_closed));
      } else {
        ++s.closed_missing;
      }
      ++s.rows;
      table.rows.push_back({y, std::move(u), std::move(res)});
    }
  }
  if (table.summary.rows > 0) table.summary.mean_K = sum_K / table.summary.rows;
  return table;
}

}  // namespace frhs
