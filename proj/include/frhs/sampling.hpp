#pragma once

#include "frhs/metric_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace frhs {

/// Seeded generator whose output depends only on the seed (no
/// implementation-defined std:: distributions).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform on the a-unit sphere of m.
Vec unit_sphere_sample(Rng& rng, const InnerProduct& a);

/// The m basis vectors followed by n_random a-unit random directions.
std::vector<Vec> direction_set(Rng& rng, const InnerProduct& a, int n_random);

/// n_draws unit-sphere vectors, keeping those inside the phi domain.
struct SampleDraw {
  std::vector<Vec> ys;
  int skipped = 0;
};
SampleDraw draw_flagpoles(Rng& rng, const MetricModel& model, int n_draws);

}  // namespace frhs
