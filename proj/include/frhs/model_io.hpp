#pragma once

#include "frhs/curvature.hpp"
#include "frhs/model.hpp"
#include "frhs/reductivity.hpp"
#include "frhs/tensor_engine.hpp"

#include "json.hpp"

#include <string>

namespace frhs {

using Json = nlohmann::json;

/// Model file:
///   dim         int
///   brackets    [[i, j, k, value], ...]
///   h_indices   [int, ...]                (may be empty)
///   metric      rows over m, or a flat row-major list
///   X           vector over m
///   phi         {"family": randers|kropina|matsumoto|polynomial, "params": {...}}
///   config      optional {seed, n_samples, grid_points, sweep_b, tolerances: {name: value}}
///
/// Throws Error{ParseError} naming the offending field, or the validation
/// error of whichever module rejects the data.
Model parse_model(const Json& doc, bool* seed_specified = nullptr);
Model load_model(const std::string& path, bool* seed_specified = nullptr);

/// Inverse of parse_model; config fields equal to their defaults are omitted.
Json model_to_json(const Model& model);
void save_model(const Model& model, const std::string& path);

Json to_json(const AdmissibilityReport& rep);
Json to_json(const CheckResult& res);
Json to_json(const ReductivityReport& rep);
Json to_json(const ScanSummary& summary);
Json to_json(const TensorVerification& ver);

}  // namespace frhs
