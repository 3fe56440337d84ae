#include "frhs/lie_algebra.hpp"

#include "frhs/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace frhs {

namespace {

constexpr int kDenseLimit = 32;

std::string describe(const BracketEntry& e) {
  std::ostringstream os;
  os << "c(" << e.i << "," << e.j << "," << e.k << ")=" << e.value;
  return os.str();
}

}  // namespace

LieAlgebra LieAlgebra::validate(const StructureConstants& sc, double jacobi_tol) {
  if (sc.dim < 1) {
    throw Error(ErrorCode::IndexOutOfRange, "dim must be >= 1, got " + std::to_string(sc.dim));
  }
  const int n = sc.dim;

  // (i, j, k) with i < j -> value, plus the entry it came from for diagnostics.
  std::map<std::tuple<int, int, int>, std::pair<double, BracketEntry>> table;
  for (const auto& e : sc.entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  describe(e) + " has an index outside 0.." + std::to_string(n - 1));
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorCode::AntisymmetryViolation, describe(e) + " is not finite");
    }
    if (e.i == e.j) {
      if (e.value != 0.0) {
        throw Error(ErrorCode::AntisymmetryViolation, describe(e) + " but [e_i, e_i] must vanish");
      }
      continue;
    }
    const bool swap = e.i > e.j;
    const auto key = std::make_tuple(swap ? e.j : e.i, swap ? e.i : e.j, e.k);
    const double v = swap ? -e.value : e.value;
    auto [it, inserted] = table.emplace(key, std::make_pair(v, e));
    if (!inserted && it->second.first != v) {
      throw Error(ErrorCode::AntisymmetryViolation,
                  describe(it->second.second) + " conflicts with " + describe(e));
    }
  }

  LieAlgebra alg;
  alg.dim_ = n;
  for (const auto& [key, val] : table) {
    if (val.first == 0.0) continue;
    auto [i, j, k] = key;
    alg.canonical_.push_back({i, j, k, val.first});
  }
  if (n <= kDenseLimit) {
    alg.dense_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    for (const auto& e : alg.canonical_) {
      alg.dense_[(static_cast<std::size_t>(e.i) * n + e.j) * n + e.k] = e.value;
      alg.dense_[(static_cast<std::size_t>(e.j) * n + e.i) * n + e.k] = -e.value;
    }
  }

  std::array<int, 3> witness{};
  alg.jacobi_residual_ = jacobi_residual(alg, &witness);
  if (alg.jacobi_residual_ > jacobi_tol) {
    std::ostringstream os;
    os << "Jacobi residual " << alg.jacobi_residual_ << " > " << jacobi_tol << " at basis triple ("
       << witness[0] << "," << witness[1] << "," << witness[2] << ")";
    throw Error(ErrorCode::JacobiViolation, os.str());
  }
  return alg;
}

double LieAlgebra::structure_constant(int i, int j, int k) const {
  if (!dense_.empty()) {
    return dense_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  if (i == j) return 0.0;
  const bool swap = i > j;
  const BracketEntry probe{swap ? j : i, swap ? i : j, k, 0.0};
  auto it = std::lower_bound(canonical_.begin(), canonical_.end(), probe,
                             [](const BracketEntry& a, const BracketEntry& b) {
                               return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
                             });
  if (it == canonical_.end() || it->i != probe.i || it->j != probe.j || it->k != probe.k) {
    return 0.0;
  }
  return swap ? -it->value : it->value;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  // Each term is c_ij^k (x_i y_j - x_j y_i) with i < j, so swapping x and y
  // negates every summand exactly and the result is antisymmetric bit-for-bit.
  Vec out = Vec::Zero(dim_);
  for (const auto& e : canonical_) {
    out[e.k] += e.value * (x[e.i] * y[e.j] - x[e.j] * y[e.i]);
  }
  return out;
}

Vec LieAlgebra::basis_bracket(int i, int j) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = structure_constant(i, j, k);
  return out;
}

double LieAlgebra::jacobi_residual(const LieAlgebra& alg, std::array<int, 3>* witness) {
  const int n = alg.dim_;
  double worst = 0.0;
  if (witness) *witness = {0, 0, 0};
  // Triples with a repeated index cancel identically under antisymmetry.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), ek = Vec::Unit(n, k);
        Vec cyc = alg.bracket(ei, alg.basis_bracket(j, k)) + alg.bracket(ej, alg.basis_bracket(k, i)) +
                  alg.bracket(ek, alg.basis_bracket(i, j));
        const double r = cyc.cwiseAbs().maxCoeff();
        if (r > worst) {
          worst = r;
          if (witness) *witness = {i, j, k};
        }
      }
    }
  }
  return worst;
}

Vec ReductiveDecomposition::proj_m(const Vec& v) const {
  Vec out = Vec::Zero(v.size());
  for (int i : m_) out[i] = v[i];
  return out;
}

Vec ReductiveDecomposition::proj_h(const Vec& v) const {
  Vec out = Vec::Zero(v.size());
  for (int i : h_) out[i] = v[i];
  return out;
}

Vec ReductiveDecomposition::embed_m(const Vec& m_coords) const {
  Vec out = Vec::Zero(alg_.dim());
  for (int a = 0; a < dim_m(); ++a) out[m_[a]] = m_coords[a];
  return out;
}

Vec ReductiveDecomposition::restrict_m(const Vec& g_coords) const {
  Vec out(dim_m());
  for (int a = 0; a < dim_m(); ++a) out[a] = g_coords[m_[a]];
  return out;
}

Vec ReductiveDecomposition::bracket_m(const Vec& u, const Vec& v) const {
  return restrict_m(alg_.bracket(embed_m(u), embed_m(v)));
}

Vec ReductiveDecomposition::bracket_h(const Vec& u, const Vec& v) const {
  return proj_h(alg_.bracket(embed_m(u), embed_m(v)));
}

Mat ReductiveDecomposition::ad_matrix_on_m(const Vec& x) const {
  const int dm = dim_m();
  Mat out(dm, dm);
  for (int b = 0; b < dm; ++b) {
    out.col(b) = restrict_m(alg_.bracket(x, Vec::Unit(alg_.dim(), m_[b])));
  }
  return out;
}

ReductiveDecomposition decompose(const LieAlgebra& alg, std::vector<int> h_indices, double tol) {
  const int n = alg.dim();
  std::sort(h_indices.begin(), h_indices.end());
  for (std::size_t a = 0; a < h_indices.size(); ++a) {
    if (h_indices[a] < 0 || h_indices[a] >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "h index " + std::to_string(h_indices[a]) +
                                                  " outside 0.." + std::to_string(n - 1));
    }
    if (a > 0 && h_indices[a] == h_indices[a - 1]) {
      throw Error(ErrorCode::IndexOutOfRange, "h index " + std::to_string(h_indices[a]) + " repeated");
    }
  }

  ReductiveDecomposition dec(alg);
  dec.h_ = h_indices;
  std::vector<bool> in_h(n, false);
  for (int i : h_indices) in_h[i] = true;
  for (int i = 0; i < n; ++i) {
    if (!in_h[i]) dec.m_.push_back(i);
  }
  if (dec.m_.empty()) {
    throw Error(ErrorCode::IndexOutOfRange, "h spans all of g; m must be non-trivial");
  }

  auto fail = [](ErrorCode code, const char* what, int a, int b, double r, double t) {
    std::ostringstream os;
    os << what << " at basis pair (" << a << "," << b << "): residual " << r << " > " << t;
    throw Error(code, os.str());
  };

  for (int a : dec.h_) {
    for (int b : dec.h_) {
      const double r = dec.proj_m(alg.basis_bracket(a, b)).cwiseAbs().maxCoeff();
      dec.subalgebra_residual_ = std::max(dec.subalgebra_residual_, r);
      if (r > tol) fail(ErrorCode::NotSubalgebra, "[h,h] leaves h", a, b, r, tol);
    }
    for (int b : dec.m_) {
      const double r = dec.proj_h(alg.basis_bracket(a, b)).cwiseAbs().maxCoeff();
      dec.invariance_residual_ = std::max(dec.invariance_residual_, r);
      if (r > tol) fail(ErrorCode::NotInvariant, "[h,m] leaves m", a, b, r, tol);
    }
  }
  return dec;
}

}  // namespace frhs
