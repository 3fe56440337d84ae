#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace frhs {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One structure constant: [e_i, e_j] = ... + value * e_k + ...
struct BracketEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;

  bool operator==(const BracketEntry&) const = default;
};

/// Raw user-supplied structure constants, not yet validated.
struct StructureConstants {
  int dim = 0;
  std::vector<BracketEntry> entries;
};

inline constexpr double kDefaultJacobiTol = 1e-12;

/// A finite-dimensional real Lie algebra in a fixed basis.
///
/// Only constructible through validate(), so every instance has an
/// antisymmetric bracket satisfying Jacobi within the tolerance it was
/// validated with. Immutable afterwards.
class LieAlgebra {
public:
  /// Throws Error{IndexOutOfRange | AntisymmetryViolation | JacobiViolation}.
  static LieAlgebra validate(const StructureConstants& sc, double jacobi_tol = kDefaultJacobiTol);

  int dim() const { return dim_; }
  double jacobi_residual() const { return jacobi_residual_; }

  /// Canonical entries with i < j and nonzero value, sorted by (i, j, k).
  const std::vector<BracketEntry>& canonical_entries() const { return canonical_; }

  /// c(i, j, k) for any index pair, antisymmetry synthesized.
  double structure_constant(int i, int j, int k) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  Vec basis_bracket(int i, int j) const;

  /// Largest ||[e_i,[e_j,e_k]] + cyclic||_inf over basis triples, with its witness.
  static double jacobi_residual(const LieAlgebra& alg, std::array<int, 3>* witness = nullptr);

private:
  LieAlgebra() = default;

  int dim_ = 0;
  double jacobi_residual_ = 0.0;
  std::vector<BracketEntry> canonical_;
  // Dense c(i,j,k) at index (i*n + j)*n + k, materialized for small n only.
  std::vector<double> dense_;
};

/// Splitting g = h (+) m along basis indices, with [h,h] in h and [h,m] in m.
class ReductiveDecomposition {
public:
  const LieAlgebra& algebra() const { return alg_; }
  const std::vector<int>& h_indices() const { return h_; }
  const std::vector<int>& m_indices() const { return m_; }
  int dim_m() const { return static_cast<int>(m_.size()); }
  int dim_h() const { return static_cast<int>(h_.size()); }

  /// Projections in g-coordinates.
  Vec proj_m(const Vec& v) const;
  Vec proj_h(const Vec& v) const;

  /// m-coordinates <-> g-coordinates.
  Vec embed_m(const Vec& m_coords) const;
  Vec restrict_m(const Vec& g_coords) const;

  /// [u, v]_m for u, v given in m-coordinates; result in m-coordinates.
  Vec bracket_m(const Vec& u, const Vec& v) const;
  /// [u, v]_h for u, v given in m-coordinates; result in g-coordinates.
  Vec bracket_h(const Vec& u, const Vec& v) const;

  /// Matrix of v -> proj_m([x, v]) on m, x in g-coordinates.
  Mat ad_matrix_on_m(const Vec& x) const;

  double subalgebra_residual() const { return subalgebra_residual_; }
  double invariance_residual() const { return invariance_residual_; }

private:
  friend ReductiveDecomposition decompose(const LieAlgebra&, std::vector<int>, double);

  explicit ReductiveDecomposition(LieAlgebra alg) : alg_(std::move(alg)) {}

  LieAlgebra alg_;
  std::vector<int> h_;
  std::vector<int> m_;
  double subalgebra_residual_ = 0.0;
  double invariance_residual_ = 0.0;
};

/// Builds the decomposition with h spanned by the given basis indices.
/// Holds its own copy of the algebra.
/// Throws Error{IndexOutOfRange | NotSubalgebra | NotInvariant}.
ReductiveDecomposition decompose(const LieAlgebra& alg, std::vector<int> h_indices,
                                 double tol = kDefaultJacobiTol);

}  // namespace frhs
