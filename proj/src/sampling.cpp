#include "frhs/sampling.hpp"

#include <cmath>
#include <numbers>

namespace frhs {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * u2);
}

Vec unit_sphere_sample(Rng& rng, const InnerProduct& a) {
  const int n = a.dim();
  Vec g(n);
  double len = 0.0;
  do {
    for (int i = 0; i < n; ++i) g[i] = rng.normal();
    len = g.norm();
  } while (len < 1e-8);
  // y = L^{-T} g / |g| has a(y, y) = 1 and is uniform on the a-sphere.
  Vec y = a.cholesky_factor().transpose().triangularView<Eigen::Upper>().solve(g);
  return y / len;
}

std::vector<Vec> direction_set(Rng& rng, const InnerProduct& a, int n_random) {
  std::vector<Vec> dirs;
  const int n = a.dim();
  for (int i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  for (int i = 0; i < n_random; ++i) dirs.push_back(unit_sphere_sample(rng, a));
  return dirs;
}

SampleDraw draw_flagpoles(Rng& rng, const MetricModel& model, int n_draws) {
  SampleDraw out;
  for (int i = 0; i < n_draws; ++i) {
    Vec y = unit_sphere_sample(rng, model.inner());
    if (model.phi().in_domain(model.r_value(y))) {
      out.ys.push_back(std::move(y));
    } else {
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace frhs
