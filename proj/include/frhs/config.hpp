#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace frhs {

/// Every numeric gate in the workbench, addressable by name from the CLI
/// (`--tol.<name>=v`) and from the model file's `config.tolerances` object.
struct Tolerances {
  double jacobi = 1e-12;
  double alpha_floor = 1e-12;
  double nr = 1e-10;
  double nr_finsler = 1e-8;
  double phiprime = 1e-8;
  double denom_floor = 1e-12;
  double curvature_agree = 1e-8;
  double g_fd = 1e-6;
  double cartan_fd = 1e-4;

  /// Throws Error{InvalidModel} for unknown names or non-positive values.
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
  static const std::vector<std::string>& names();

  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  std::uint64_t seed = 42;
  int n_samples = 64;
  int grid_points = 101;
  bool sweep_b = false;
  Tolerances tol;

  bool operator==(const RunConfig&) const = default;
};

}  // namespace frhs
