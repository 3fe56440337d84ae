#include "frhs/catalog.hpp"

#include "frhs/error.hpp"
#include "frhs/model_io.hpp"

namespace frhs {

namespace {

StructureConstants su2() { return {3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}}; }

// su(2) plus a central e3.
StructureConstants u2() { return {4, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}}; }

StructureConstants heisenberg() { return {3, {{0, 1, 2, 1.0}}}; }

Vec along(int n, int i, double len) { return len * Vec::Unit(n, i); }

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;

  cat.push_back({"su2_biinvariant",
                 "su(2), H = {e}, identity metric, X = 0, phi = 1: bi-invariant Riemannian, constant K = 1/4",
                 {Verdict::NaturallyReductive, true, 0.25, std::nullopt, 1e-10, false,
                  "K = a(1/4 [y,[u,y]], u) = 1/4 |u x y|^2 for a-orthonormal u, y"},
                 [] {
                   return make_model(su2(), {}, Mat::Identity(3, 3), Vec::Zero(3),
                                     PhiFamily::polynomial({1.0}));
                 }});

  cat.push_back({"u2_randers",
                 "su(2) + center, H = {e}, identity metric, X = 0.5 e3 (central), Randers: bi-invariant Finsler",
                 {Verdict::NaturallyReductive, true, std::nullopt, 0.0, 1e-12, false,
                  "skew-adjoint ad and central X certify natural reductivity; central flagpoles give K = 0"},
                 [] {
                   return make_model(u2(), {}, Mat::Identity(4, 4), along(4, 3, 0.5), PhiFamily::randers());
                 }});

  cat.push_back({"u2_matsumoto",
                 "su(2) + center, X = 0.3 e3, Matsumoto (0.3 < b0 = 1/2)",
                 {Verdict::NaturallyReductive, true, std::nullopt, 0.0, 1e-12, false,
                  "same certificate as u2_randers; convexity 1 - 3s + 2b^2 > 0 for b < 1/2"},
                 [] {
                   return make_model(u2(), {}, Mat::Identity(4, 4), along(4, 3, 0.3), PhiFamily::matsumoto());
                 }});

  cat.push_back({"u2_kropina",
                 "su(2) + center, X = 0.5 e3, Kropina on the cone s >= 0.05",
                 {Verdict::NaturallyReductive, true, std::nullopt, std::nullopt, 1e-10, true,
                  "same certificate; unit flagpoles with a(X,y) < 0.05 fall outside the Kropina cone"},
                 [] {
                   return make_model(u2(), {}, Mat::Identity(4, 4), along(4, 3, 0.5), PhiFamily::kropina(0.05));
                 }});

  cat.push_back({"heisenberg_randers",
                 "Heisenberg [e0,e1] = e2, H = {e}, identity metric, X = 0.5 e2, Randers: not naturally reductive",
                 {Verdict::NotNaturallyReductive, true, std::nullopt, std::nullopt, 1e-12, false,
                  "<[e0,e1],e2> + <e1,[e0,e2]> = 1 + 0 by brute force"},
                 [] {
                   return make_model(heisenberg(), {}, Mat::Identity(3, 3), along(3, 2, 0.5),
                                     PhiFamily::randers());
                 }});

  cat.push_back({"so3_sphere",
                 "so(3)/so(2) with h = span{e2}, m = span{e0, e1}, identity metric, X = 0, phi = 1: round S^2, K = 1",
                 {Verdict::NaturallyReductive, true, 1.0, std::nullopt, 1e-10, false,
                  "u = e0, y = e1: [u,y] = e2 in h, so R(u,y)y = [e1, e2] = e0 and K = a(e0, e0) = 1"},
                 [] {
                   return make_model(su2(), {2}, Mat::Identity(2, 2), Vec::Zero(2), PhiFamily::polynomial({1.0}));
                 }});

  cat.push_back({"su2_randers_tilted",
                 "su(2), identity metric, X = 0.5 e2, Randers: a is bi-invariant but beta is not, so F is not",
                 {Verdict::NotNaturallyReductive, true, std::nullopt, std::nullopt, 1e-12, false,
                  "a(X,[e0,e1]) = 0.5 breaks the certificate; the Finsler identity residual is nonzero"},
                 [] {
                   return make_model(su2(), {}, Mat::Identity(3, 3), along(3, 2, 0.5), PhiFamily::randers());
                 }});

  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> kCatalog = build_catalog();
  return kCatalog;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog_list()) {
    if (e.id == id) return e;
  }
  throw Error(ErrorCode::UnknownId, "no catalog entry '" + id + "'");
}

Model catalog_get(const std::string& id) { return catalog_entry(id).build(); }

void catalog_export(const std::string& id, const std::string& path) { save_model(catalog_get(id), path); }

}  // namespace frhs
