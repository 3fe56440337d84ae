#pragma once

#include "frhs/config.hpp"
#include "frhs/lie_algebra.hpp"
#include "frhs/metric_core.hpp"

namespace frhs {

/// A homogeneous space G/H with an invariant (alpha, beta)-metric, evaluated at the origin.
struct Model {
  ReductiveDecomposition dec;
  MetricModel metric;
  RunConfig config;

  const LieAlgebra& algebra() const { return dec.algebra(); }
};

/// Validates the algebra, the decomposition and the metric data (A and X over m).
Model make_model(const StructureConstants& sc, std::vector<int> h_indices, Mat metric, Vec drift,
                 PhiFamily phi, RunConfig config = {});

}  // namespace frhs
