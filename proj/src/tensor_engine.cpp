#include "frhs/tensor_engine.hpp"

#include "frhs/error.hpp"
#include "frhs/sampling.hpp"

#include <cmath>

namespace frhs {

TensorSample make_sample(const MetricModel& model, const Vec& y) {
  TensorSample s;
  s.y = y;
  s.alpha = model.alpha(y);
  s.beta = model.beta(y);
  s.r = s.beta / s.alpha;
  s.phi = model.phi().derivs(s.r);
  return s;
}

double g_y(const MetricModel& model, const TensorSample& s, const Vec& u, const Vec& v) {
  const InnerProduct& a = model.inner();
  const Vec& X = model.drift();
  const Vec& y = s.y;
  const auto [p, p1, p2, p3] = s.phi;

  const double yy = a(y, y);
  const double sy = std::sqrt(yy);
  const double uv = a(u, v), yu = a(y, u), yv = a(y, v);
  const double Xu = a(X, u), Xv = a(X, v), Xy = a(X, y);

  const double v_part = Xv / sy - Xy * yv / (yy * sy);
  const double u_part = Xu * sy - yu * Xy / sy;

  return uv * p * p                                   //
         + yu * p * p1 * v_part                       //
         + (p1 * p1 + p * p2) * v_part * u_part       //
         + p * p1 / sy * (Xu * yv - uv * Xy);
}

double g_y_flagpole(const MetricModel& model, const TensorSample& s, const Vec& w) {
  const InnerProduct& a = model.inner();
  const auto [p, p1, p2, p3] = s.phi;
  return a(s.y, w) * (p * p - p * p1 * s.r) + a(model.drift(), w) * (p1 * s.F());
}

double cartan(const MetricModel& model, const TensorSample& s, const Vec& z, const Vec& u, const Vec& v) {
  const InnerProduct& a = model.inner();
  const Vec& X = model.drift();
  const Vec& y = s.y;
  const auto [p, p1, p2, p3] = s.phi;

  const double yy = a(y, y);
  const double sy = std::sqrt(yy);
  const double uv = a(u, v), uz = a(u, z), vz = a(v, z);
  const double uy = a(u, y), vy = a(v, y), zy = a(z, y);
  const double Xu = a(X, u), Xv = a(X, v), Xz = a(X, z), Xy = a(X, y);
  const double rho0 = p1 * p1 + p * p2;

  const double v_perp = Xv - vy * Xy / yy;
  const double z_perp = Xz - zy * Xy / yy;
  const double u_part = Xu * sy - uy * Xy / sy;

  // Six blocks of 2 C_y(u, v, z).
  const double lead = (3.0 * p1 * p2 + p * p3) / yy * v_perp * u_part * z_perp;
  const double b2 = rho0 / yy * v_perp * (Xu * zy - uz * Xy - uy * Xz + zy * uy * Xy / yy);
  const double b3 = -rho0 / (yy * sy) * u_part * (zy * Xv + vz * Xy + vy * Xz - 3.0 * vy * Xy * zy / yy);
  const double b4 = rho0 / yy * z_perp * (Xu * vy - uv * Xy + uy * Xv - vy * uy * Xy / yy);
  const double b5 = p * p1 / sy *
                    (Xu * vz + uv * Xz + uz * Xv                                 //
                     - (zy * vy * Xu + uv * Xy * zy + uy * Xv * zy) / yy         //
                     - (vz * uy * Xy + vy * uz * Xy + vy * uy * Xz) / yy         //
                     + 3.0 * zy * vy * uy * Xy / (yy * yy));

  return 0.5 * (lead + b2 + b3 + b4 + b5);
}

namespace {

double f_squared(const MetricModel& model, const Vec& y) {
  const double f = model.finsler_norm(y);
  return f * f;
}

double mixed2(const MetricModel& model, const Vec& y, const Vec& u, const Vec& v, double h) {
  const double pp = f_squared(model, y + h * u + h * v);
  const double pm = f_squared(model, y + h * u - h * v);
  const double mp = f_squared(model, y - h * u + h * v);
  const double mm = f_squared(model, y - h * u - h * v);
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

double mixed3(const MetricModel& model, const Vec& y, const Vec& z, const Vec& u, const Vec& v, double h) {
  double acc = 0.0;
  for (int a = -1; a <= 1; a += 2) {
    for (int b = -1; b <= 1; b += 2) {
      for (int c = -1; c <= 1; c += 2) {
        acc += a * b * c * f_squared(model, y + h * (a * z + b * u + c * v));
      }
    }
  }
  return acc / (8.0 * h * h * h);
}

}  // namespace

double g_y_fd(const MetricModel& model, const TensorSample& s, const Vec& u, const Vec& v) {
  const double h = 1e-4 * std::max(1.0, s.alpha);
  const double coarse = mixed2(model, s.y, u, v, h);
  const double fine = mixed2(model, s.y, u, v, 0.5 * h);
  return 0.5 * (4.0 * fine - coarse) / 3.0;
}

double cartan_fd(const MetricModel& model, const TensorSample& s, const Vec& z, const Vec& u,
                 const Vec& v) {
  const double h = 1e-3 * std::max(1.0, s.alpha);
  const double coarse = mixed3(model, s.y, z, u, v, h);
  const double fine = mixed3(model, s.y, z, u, v, 0.5 * h);
  return 0.25 * (4.0 * fine - coarse) / 3.0;
}

Mat g_y_matrix(const MetricModel& model, const TensorSample& s) {
  const int n = model.dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = g_y(model, s, Vec::Unit(n, i), Vec::Unit(n, j));
  }
  return g;
}

DefinitenessResult is_positive_definite(const MetricModel& model, const TensorSample& s) {
  Mat g = g_y_matrix(model, s);
  g = 0.5 * (g + g.transpose());
  Eigen::LDLT<Mat> ldlt(g);
  DefinitenessResult out;
  out.smallest_pivot = ldlt.vectorD().minCoeff();
  out.positive_definite = ldlt.info() == Eigen::Success && out.smallest_pivot > 0.0;
  return out;
}

double fd_relative_error(double closed, double fd, double scale) {
  return std::abs(closed - fd) / std::max(std::abs(fd), scale);
}

TensorVerification verify_tensors(const MetricModel& model, const RunConfig& cfg, int n_random_dirs) {
  Rng rng(cfg.seed);
  const SampleDraw draw = draw_flagpoles(rng, model, cfg.n_samples);
  const std::vector<Vec> dirs = direction_set(rng, model.inner(), n_random_dirs);
  const InnerProduct& a = model.inner();

  std::vector<double> dir_norm;
  for (const auto& d : dirs) dir_norm.push_back(a.norm(d));

  TensorVerification out;
  out.skipped_samples = draw.skipped;
  const std::size_t nd = dirs.size();
  for (const Vec& y : draw.ys) {
    const TensorSample s = make_sample(model, y);
    SampleTensorErrors errs;
    errs.y = y;
    for (std::size_t i = 0; i < nd; ++i) {
      for (std::size_t j = i; j < nd; ++j) {
        try {
          const double fd = g_y_fd(model, s, dirs[i], dirs[j]);
          const double cf = g_y(model, s, dirs[i], dirs[j]);
          errs.g_rel = std::max(errs.g_rel, fd_relative_error(cf, fd, s.scale() * dir_norm[i] * dir_norm[j]));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DomainError) throw;
          ++out.skipped_stencils;
        }
        for (std::size_t k = j; k < nd; ++k) {
          try {
            const double fd = cartan_fd(model, s, dirs[i], dirs[j], dirs[k]);
            const double cf = cartan(model, s, dirs[i], dirs[j], dirs[k]);
            const double sc = s.scale() * dir_norm[i] * dir_norm[j] * dir_norm[k];
            errs.cartan_rel = std::max(errs.cartan_rel, fd_relative_error(cf, fd, sc));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::DomainError) throw;
            ++out.skipped_stencils;
          }
        }
      }
    }
    out.max_g_rel = std::max(out.max_g_rel, errs.g_rel);
    out.max_cartan_rel = std::max(out.max_cartan_rel, errs.cartan_rel);
    out.samples.push_back(std::move(errs));
  }
  out.pass = !out.samples.empty() && out.max_g_rel <= cfg.tol.g_fd &&
             out.max_cartan_rel <= cfg.tol.cartan_fd;
  return out;
}

}  // namespace frhs
