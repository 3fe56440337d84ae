#include "frhs/model.hpp"

#include "frhs/error.hpp"

namespace frhs {

Model make_model(const StructureConstants& sc, std::vector<int> h_indices, Mat metric, Vec drift,
                 PhiFamily phi, RunConfig config) {
  LieAlgebra alg = LieAlgebra::validate(sc, config.tol.jacobi);
  ReductiveDecomposition dec = decompose(alg, std::move(h_indices), config.tol.jacobi);
  if (metric.rows() != dec.dim_m()) {
    throw Error(ErrorCode::InvalidModel, "metric is " + std::to_string(metric.rows()) +
                                             "x" + std::to_string(metric.cols()) + " but m has dimension " +
                                             std::to_string(dec.dim_m()));
  }
  MetricModel mm(InnerProduct::from_matrix(std::move(metric)), std::move(drift), std::move(phi),
                 config.tol.alpha_floor);
  return Model{std::move(dec), std::move(mm), config};
}

}  // namespace frhs
