#pragma once

#include "frhs/model.hpp"
#include "frhs/reductivity.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace frhs {

/// What a catalog model must reproduce, and the tolerance the facts were computed at.
struct ExpectedFacts {
  Verdict verdict = Verdict::NaturallyReductive;
  bool admissible = true;
  /// Every scanned flag has this curvature.
  std::optional<double> constant_K;
  /// Smallest flag curvature over a scan that includes the basis flags.
  std::optional<double> min_K;
  double tolerance = 1e-10;
  /// Sampling is expected to hit the phi-domain guard.
  bool expect_domain_skips = false;
  std::string provenance;
};

struct CatalogEntry {
  std::string id;
  std::string notes;
  ExpectedFacts expected;
  std::function<Model()> build;
};

const std::vector<CatalogEntry>& catalog_list();
/// Throws Error{UnknownId}.
const CatalogEntry& catalog_entry(const std::string& id);
Model catalog_get(const std::string& id);
void catalog_export(const std::string& id, const std::string& path);

}  // namespace frhs
