#include "doctest.h"

#include "frhs/catalog.hpp"
#include "frhs/curvature.hpp"
#include "frhs/error.hpp"
#include "frhs/sampling.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace frhs;

namespace {

StructureConstants su2() { return {3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}}; }

Vec e(int n, int i) { return Vec::Unit(n, i); }

Vec mix(int n, std::initializer_list<std::pair<int, double>> parts) {
  Vec v = Vec::Zero(n);
  for (auto [i, c] : parts) v[i] = c;
  return v;
}

struct Fixture {
  Model model;
  ReductivityReport report;
  CurvatureEngine engine;
  explicit Fixture(Model m, bool force = false)
      : model(std::move(m)), report(reductivity_verdict(model, model.config)), engine(model, report, force) {}
};

/// Classical NR sectional curvature straight from the raw bracket table (h = empty).
double classical_K_no_h(const StructureConstants& sc, const Vec& u, const Vec& y) {
  const Vec R = 0.25 * oracle::bracket(sc, y, oracle::bracket(sc, u, y));
  return R.dot(u) / (y.dot(y) * u.dot(u) - y.dot(u) * y.dot(u));
}

double antisym_term(const Model& m, const Vec& u, const Vec& y) {
  return nr_curvature_form(m.dec, m.metric.inner(), u, y, y);
}

}  // namespace

TEST_CASE("curvature operator") {
  const Fixture su(catalog_get("su2_biinvariant"));
  const Vec R = su.engine.curvature_operator(e(3, 0), e(3, 1));
  CHECK((R - 0.25 * e(3, 0)).norm() <= 1e-15);
  CHECK((R - 0.25 * oracle::bracket(su2(), e(3, 1), oracle::bracket(su2(), e(3, 0), e(3, 1)))).norm() == 0.0);
  const Vec y = mix(3, {{0, 0.3}, {1, -1.2}, {2, 0.7}});
  CHECK(su.engine.curvature_operator(y, y).norm() == 0.0);

  const Fixture u2(catalog_get("u2_randers"));
  for (int i = 0; i < 4; ++i) CHECK(u2.engine.curvature_operator(e(4, i), e(4, 3)).norm() == 0.0);

  // so(3)/so(2): [e1,e0] = -e2 lies in h, then [e0, -e2] = e1.
  const Fixture sph(catalog_get("so3_sphere"));
  CHECK((sph.engine.curvature_operator(e(2, 1), e(2, 0)) - e(2, 1)).norm() <= 1e-15);
}

TEST_CASE("flag curvature by the general definition") {
  const Fixture su(catalog_get("su2_biinvariant"));
  CHECK(su.engine.flag_curvature_general({e(3, 1), e(3, 0)}) == doctest::Approx(0.25).epsilon(1e-14));

  const Fixture u2(catalog_get("u2_randers"));
  CHECK(std::abs(u2.engine.flag_curvature_general({e(4, 3), e(4, 0)})) <= 1e-15);
  CHECK(u2.engine.flag_curvature_general({e(4, 1), e(4, 0)}) == doctest::Approx(0.25).epsilon(1e-12));

  try {
    su.engine.flag_curvature_general({e(3, 1), 2.0 * e(3, 1)});
    FAIL("expected DegenerateFlag");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegenerateFlag);
  }
}

TEST_CASE("closed form against the general path") {
  const Fixture su(catalog_get("su2_biinvariant"));
  CHECK(*su.engine.evaluate({e(3, 1), e(3, 0)}).K_closed == doctest::Approx(0.25).epsilon(1e-14));

  const Fixture u2(catalog_get("u2_randers"));
  const FlagCurvatureResult basis = u2.engine.evaluate({e(4, 1), e(4, 0)});
  REQUIRE(basis.K_closed);
  CHECK(*basis.K_closed == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(basis.delta <= 1e-12);

  const Flag mixed{mix(4, {{1, 0.8}, {3, 0.6}}), e(4, 0)};
  const FlagCurvatureResult r = u2.engine.evaluate(mixed);
  REQUIRE(r.K_closed);
  CHECK(r.r == doctest::Approx(0.3));
  CHECK(r.delta <= 1e-8);
  CHECK(std::abs(r.K_general - 0.25) > 1e-3);  // r != 0 moves K off the Riemannian value

  const Fixture mat(catalog_get("u2_matsumoto"));
  const FlagCurvatureResult m = mat.engine.evaluate({e(4, 1), e(4, 0)});
  CHECK(std::abs(m.K_general - mat.engine.flag_curvature_corollary({e(4, 1), e(4, 0)})) <= 1e-8);
  CHECK(m.delta <= 1e-8);
}

TEST_CASE("theta matches its definition") {
  const Fixture u2(catalog_get("u2_randers"));
  const Vec y = mix(4, {{0, 0.6}, {3, 0.8}});
  const Vec u = e(4, 1) + 0.5 * e(4, 3);
  const FlagCurvatureResult res = u2.engine.evaluate({y, u});
  const Flag on = orthonormalize(u2.model.metric.inner(), {y, u}, 1e-12);
  const double r = 0.5 * on.y[3], xu = 0.5 * on.u[3];
  const double phi = 1 + r, p1 = 1.0;
  CHECK(res.r == doctest::Approx(r));
  CHECK(res.theta == doctest::Approx(phi * phi * (phi * phi + 0.0 * xu * xu - phi * p1 * r)));
}

TEST_CASE("two-block form against the three-block closed form on every NR catalog model") {
  for (const auto& entry : catalog_list()) {
    if (entry.expected.verdict != Verdict::NaturallyReductive) continue;
    const Fixture f(entry.build());
    Rng rng(77);
    int done = 0;
    for (int t = 0; t < 64 && done < 24; ++t) {
      const Vec y = unit_sphere_sample(rng, f.model.metric.inner());
      const Vec u = unit_sphere_sample(rng, f.model.metric.inner());
      if (!f.model.metric.phi().in_domain(f.model.metric.r_value(y))) continue;
      const FlagCurvatureResult r = f.engine.evaluate({y, u});
      if (!r.K_closed || !r.K_corollary) continue;
      ++done;
      CHECK_MESSAGE(std::abs(*r.K_corollary - *r.K_closed) <= 1e-10, entry.id);
      CHECK_MESSAGE(r.delta <= 1e-8, entry.id);
      CHECK_MESSAGE(std::abs(antisym_term(f.model, u, y)) <= 1e-10, entry.id);
    }
    CHECK_MESSAGE(done > 0, entry.id);
  }
}

TEST_CASE("plane choice and flagpole scale do not change K") {
  for (const char* id : {"u2_randers", "u2_matsumoto", "u2_kropina", "su2_biinvariant"}) {
    const Fixture f(catalog_get(id));
    Rng rng(101);
    int done = 0;
    for (int t = 0; t < 64 && done < 16; ++t) {
      const Vec y = unit_sphere_sample(rng, f.model.metric.inner());
      const Vec u = unit_sphere_sample(rng, f.model.metric.inner());
      if (!f.model.metric.phi().in_domain(f.model.metric.r_value(y))) continue;
      double K = 0.0;
      try {
        K = f.engine.flag_curvature_general({y, u});
      } catch (const Error&) {
        continue;
      }
      ++done;
      const Flag shifted = orthonormalize(f.model.metric.inner(), {y, u + 0.3 * y}, 1e-12);
      CHECK_MESSAGE(std::abs(f.engine.flag_curvature_general({y, shifted.u}) - K) <= 1e-9, id);
      CHECK_MESSAGE(std::abs(f.engine.flag_curvature_general({2.0 * y, u}) - K) <= 1e-9, id);
    }
    CHECK(done > 0);
  }
}

TEST_CASE("phi = 1 reduces every path to the classical sectional curvature") {
  const Fixture su(catalog_get("su2_biinvariant"));
  Rng rng(5);
  for (int t = 0; t < 32; ++t) {
    Vec y(3), u(3);
    for (int i = 0; i < 3; ++i) {
      y[i] = rng.normal();
      u[i] = rng.normal();
    }
    const double K = classical_K_no_h(su2(), u, y);
    CHECK(std::abs(su.engine.flag_curvature_general({y, u}) - K) <= 1e-10);
    CHECK(std::abs(su.engine.flag_curvature_closed({y, u}) - K) <= 1e-10);
    CHECK(std::abs(su.engine.flag_curvature_corollary({y, u}) - K) <= 1e-10);
  }
  const Fixture sph(catalog_get("so3_sphere"));
  CHECK(sph.engine.flag_curvature_closed({e(2, 0), e(2, 1) + e(2, 0)}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("curvature scans") {
  const Fixture su(catalog_get("su2_biinvariant"));
  const ScanTable t = su.engine.scan(16, 16, 42);
  CHECK_FALSE(t.summary.empty);
  CHECK(t.summary.rows + t.summary.skipped_degenerate == 256);
  for (const auto& row : t.rows) {
    CHECK(row.result.K_general == doctest::Approx(0.25).epsilon(1e-10));
    REQUIRE(row.result.K_closed);
    CHECK(*row.result.K_closed == doctest::Approx(0.25).epsilon(1e-10));
  }

  const Fixture u2(catalog_get("u2_randers"));
  const ScanTable s = u2.engine.scan(16, 16, 42);
  CHECK(std::abs(s.summary.min_K) <= 1e-12);
  CHECK(s.summary.max_delta <= 1e-8);
  CHECK(s.summary.max_K >= 0.25 - 1e-12);

  const ScanTable again = u2.engine.scan(16, 16, 42);
  REQUIRE(again.rows.size() == s.rows.size());
  for (size_t i = 0; i < s.rows.size(); ++i) CHECK(again.rows[i].result.K_general == s.rows[i].result.K_general);

  const ScanTable none = u2.engine.scan(0, 16, 42);
  CHECK(none.summary.empty);
  CHECK(none.rows.empty());

  const Fixture kr(catalog_get("u2_kropina"));
  const ScanTable k = kr.engine.scan(16, 4, 42);
  CHECK(k.summary.skipped_domain > 0);
  CHECK(k.summary.max_delta <= 1e-8);
}

TEST_CASE("gating, watermark and the FD numerator") {
  const Model heis = catalog_get("heisenberg_randers");
  const ReductivityReport rep = reductivity_verdict(heis, heis.config);
  REQUIRE(rep.verdict == Verdict::NotNaturallyReductive);
  try {
    CurvatureEngine eng(heis, rep);
    FAIL("expected NotNaturallyReductive");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotNaturallyReductive);
  }
  const CurvatureEngine forced(heis, rep, true);
  CHECK(forced.watermarked());
  CHECK(std::isfinite(forced.flag_curvature_general({e(3, 0), e(3, 1)})));

  const Fixture u2(catalog_get("u2_randers"));
  CHECK_FALSE(u2.engine.watermarked());
  const Flag flag{mix(4, {{0, 0.5}, {1, 0.5}, {3, 0.7}}), e(4, 2)};
  const double closed_g = u2.engine.flag_curvature_general(flag);
  CurvatureEngine fd(u2.model, u2.report);
  fd.use_fd_numerator(true);
  CHECK(std::abs(fd.flag_curvature_general(flag) - closed_g) <= 1e-6);
}

TEST_CASE("orthonormalize") {
  const InnerProduct a = InnerProduct::from_matrix((Mat(2, 2) << 2.0, 0.5, 0.5, 1.0).finished());
  const Flag f = orthonormalize(a, {e(2, 0) * 3.0, e(2, 0) + e(2, 1)}, 1e-12);
  CHECK(a(f.y, f.y) == doctest::Approx(1.0));
  CHECK(a(f.u, f.u) == doctest::Approx(1.0));
  CHECK(std::abs(a(f.y, f.u)) <= 1e-15);
  CHECK(f.y[1] == 0.0);
  try {
    orthonormalize(a, {e(2, 0), e(2, 0) * (1 + 1e-15)}, 1e-12);
    FAIL("expected DegenerateFlag");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegenerateFlag);
  }
}
