#pragma once

// The order on pp formulas: implication through free realizations, the matrix
// criterion (simultaneous solvability of CX + YB = D and YA = CZ) as an
// independent decision path, and the kernel test for boundedness.

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"
#include "ppcalc/zlattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ppcalc {

/// f <= g: g holds of the generic tuple of f.
inline bool implies(const PpFormula& f, const PpFormula& g) {
  detail::require_compatible(f, g);
  FreeRealization fr = free_realization(f);
  return satisfies(g, fr.module, fr.tuple);
}

inline bool equiv(const PpFormula& f, const PpFormula& g) { return implies(f, g) && implies(g, f); }

struct PrestaResult {
  bool solvable = false;
  IntMatrix X, Y, Z;   // X: k2 x n, Y: m2 x m1, Z: k2 x k1
  std::string method;  // "exhaustive" or "lattice"
};

/// Search caps for the exhaustive strategy.
inline constexpr std::size_t kPrestaYCap = 20'000;
inline constexpr std::size_t kPrestaColumnCap = 20'000;

namespace detail {

// Working-ring product of matrices.
inline IntMatrix ring_product(const Ring& R, Side side, const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int s = 0;
      for (std::size_t p = 0; p < a.cols(); ++p) s = R.add(s, R.mul(side, a(i, p), b(p, j)));
      c(i, j) = s;
    }
  return c;
}

inline IntMatrix ring_sum(const Ring& R, const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = R.add(a(i, j), b(i, j));
  return c;
}

// Coordinates of x o b as a function of coords(x): matrix with row j = coords(g_j o b).
inline IntMatrix right_action(const Ring& R, Side side, const Int& b) {
  if (R.kind() != RingKind::FiniteTable) return IntMatrix{{b}};
  const auto gens = R.additive_generators();
  const std::size_t t = gens.size();
  IntMatrix m(t, t);
  for (std::size_t j = 0; j < t; ++j) {
    IntVector c = R.coords(R.mul(side, gens[j], b));
    for (std::size_t i = 0; i < t; ++i) m(j, i) = c[i];
  }
  return m;
}

inline PrestaResult presta_lattice(const PpFormula& f, const PpFormula& g) {
  const Ring& R = f.ring();
  const Side side = f.side();
  const IntMatrix &A = f.A(), &B = f.B(), &C = g.A(), &D = g.B();
  const std::size_t n = f.arity(), m1 = f.rows(), k1 = f.witnesses(), m2 = g.rows(), k2 = g.witnesses();
  const std::size_t s = R.additive_rank();
  // unknown layout: X (k2*n), then Y (m2*m1), then Z (k2*k1); each entry has s coordinates
  const std::size_t nx = k2 * n, ny = m2 * m1, nz = k2 * k1;
  const std::size_t unknowns = (nx + ny + nz) * s;
  const std::size_t eqs = (m2 * n + m2 * k1) * s;
  auto xi = [&](std::size_t i, std::size_t j) { return (i * n + j) * s; };
  auto yi = [&](std::size_t i, std::size_t j) { return (nx + i * m1 + j) * s; };
  auto zi = [&](std::size_t i, std::size_t j) { return (nx + ny + i * k1 + j) * s; };
  IntMatrix sys(unknowns, eqs);
  IntVector target(eqs);
  auto add_block = [&](std::size_t row0, std::size_t col0, const IntMatrix& blk, int sign) {
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        if (blk(a, b) != 0) sys(row0 + a, col0 + b) += sign * blk(a, b);
  };
  std::size_t e = 0;
  // (CX + YB)_il = D_il
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t l = 0; l < n; ++l, e += s) {
      for (std::size_t j = 0; j < k2; ++j)
        if (C(i, j) != 0) add_block(xi(j, l), e, R.regular_action(side, C(i, j)), 1);
      for (std::size_t j = 0; j < m1; ++j)
        if (B(j, l) != 0) add_block(yi(i, j), e, right_action(R, side, B(j, l)), 1);
      IntVector d = R.coords(D(i, l));
      for (std::size_t a = 0; a < s; ++a) target[e + a] = d[a];
    }
  // (YA - CZ)_ij = 0
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < k1; ++j, e += s) {
      for (std::size_t p = 0; p < m1; ++p)
        if (A(p, j) != 0) add_block(yi(i, p), e, right_action(R, side, A(p, j)), 1);
      for (std::size_t q = 0; q < k2; ++q)
        if (C(i, q) != 0) add_block(zi(q, j), e, R.regular_action(side, C(i, q)), -1);
    }
  // congruences modulo the additive relations of R
  ZLattice LR = R.additive_relations();
  IntMatrix full = sys;
  if (LR.rank() > 0 && eqs > 0) {
    IntMatrix rel = block_diagonal(LR.basis(), eqs / s);
    full = vstack(sys, rel);
  }
  PrestaResult res;
  res.method = "lattice";
  std::optional<IntVector> sol;
  if (eqs == 0) sol = IntVector(full.rows());
  else sol = solve_left(full, target);
  if (!sol) return res;
  res.solvable = true;
  auto entry = [&](std::size_t off) {
    IntVector c((*sol).begin() + static_cast<long>(off), (*sol).begin() + static_cast<long>(off + s));
    return R.is_integers() ? c[0] : R.from_coords(c);
  };
  res.X = IntMatrix(k2, n);
  res.Y = IntMatrix(m2, m1);
  res.Z = IntMatrix(k2, k1);
  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = 0; j < n; ++j) res.X(i, j) = entry(xi(i, j));
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < m1; ++j) res.Y(i, j) = entry(yi(i, j));
  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = 0; j < k1; ++j) res.Z(i, j) = entry(zi(i, j));
  return res;
}

inline double power(std::size_t q, std::size_t e) {
  double p = 1;
  for (std::size_t i = 0; i < e; ++i) p *= static_cast<double>(q);
  return p;
}

// Exhaustive over Y (lexicographic); X and Z column by column from a table of
// least preimages of v -> C v.
inline std::optional<PrestaResult> presta_exhaustive(const PpFormula& f, const PpFormula& g) {
  const Ring& R = f.ring();
  if (!R.is_finite()) return std::nullopt;
  const Side side = f.side();
  const std::size_t q = R.order();
  const IntMatrix &A = f.A(), &B = f.B(), &C = g.A(), &D = g.B();
  const std::size_t n = f.arity(), m1 = f.rows(), k1 = f.witnesses(), m2 = g.rows(), k2 = g.witnesses();
  if (power(q, m1 * m2) > static_cast<double>(kPrestaYCap) || power(q, k2) > static_cast<double>(kPrestaColumnCap))
    return std::nullopt;
  auto code = [q](const std::vector<int>& v) {
    std::size_t c = 0;
    for (int x : v) c = c * q + static_cast<std::size_t>(x);
    return c;
  };
  // least preimage (lexicographic) of each column image C v
  std::unordered_map<std::size_t, std::vector<int>> preimage_of;
  std::vector<std::vector<int>> Ci(m2, std::vector<int>(k2));
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < k2; ++j) Ci[i][j] = static_cast<int>(C(i, j));
  detail::for_each_vector(R, k2, [&](const std::vector<int>& v) {
    std::vector<int> img(m2, 0);
    for (std::size_t i = 0; i < m2; ++i)
      for (std::size_t j = 0; j < k2; ++j) img[i] = R.fadd(img[i], R.fmul(side, Ci[i][j], v[j]));
    preimage_of.emplace(code(img), v);
    return true;
  });
  std::vector<std::vector<int>> Bi(m1, std::vector<int>(n)), Ai(m1, std::vector<int>(k1)), Di(m2, std::vector<int>(n));
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = 0; j < n; ++j) Bi[i][j] = static_cast<int>(B(i, j));
    for (std::size_t j = 0; j < k1; ++j) Ai[i][j] = static_cast<int>(A(i, j));
  }
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < n; ++j) Di[i][j] = static_cast<int>(D(i, j));
  PrestaResult res;
  res.method = "exhaustive";
  std::vector<std::vector<int>> xcols(n), zcols(k1);
  detail::for_each_vector(R, m2 * m1, [&](const std::vector<int>& y) {
    auto Y = [&](std::size_t i, std::size_t j) { return y[i * m1 + j]; };
    std::vector<int> col(m2);
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < m2; ++i) {
        int yb = 0;
        for (std::size_t j = 0; j < m1; ++j) yb = R.fadd(yb, R.fmul(side, Y(i, j), Bi[j][l]));
        col[i] = R.fadd(Di[i][l], R.fneg(yb));
      }
      auto it = preimage_of.find(code(col));
      if (it == preimage_of.end()) return true;
      xcols[l] = it->second;
    }
    for (std::size_t j = 0; j < k1; ++j) {
      for (std::size_t i = 0; i < m2; ++i) {
        int ya = 0;
        for (std::size_t p = 0; p < m1; ++p) ya = R.fadd(ya, R.fmul(side, Y(i, p), Ai[p][j]));
        col[i] = ya;
      }
      auto it = preimage_of.find(code(col));
      if (it == preimage_of.end()) return true;
      zcols[j] = it->second;
    }
    res.solvable = true;
    res.Y = IntMatrix(m2, m1);
    for (std::size_t i = 0; i < m2; ++i)
      for (std::size_t j = 0; j < m1; ++j) res.Y(i, j) = Y(i, j);
    res.X = IntMatrix(k2, n);
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < k2; ++i) res.X(i, l) = xcols[l][i];
    res.Z = IntMatrix(k2, k1);
    for (std::size_t j = 0; j < k1; ++j)
      for (std::size_t i = 0; i < k2; ++i) res.Z(i, j) = zcols[j][i];
    return false;
  });
  return res;
}

}  // namespace detail

enum class PrestaStrategy { Auto, Exhaustive, Lattice };

/// Decides f <= g by solving CX + YB = D and YA = CZ in the (working) ring.
inline PrestaResult presta_solve(const PpFormula& f, const PpFormula& g, PrestaStrategy strategy = PrestaStrategy::Auto) {
  detail::require_compatible(f, g);
  if (strategy != PrestaStrategy::Lattice) {
    auto r = detail::presta_exhaustive(f, g);
    if (r) return *r;
    if (strategy == PrestaStrategy::Exhaustive) throw Error(ErrorKind::CapExceeded, "exhaustive matrix search too large");
  }
  return detail::presta_lattice(f, g);
}

/// Checks a witness triple by multiplication.
inline bool verify_presta(const PpFormula& f, const PpFormula& g, const PrestaResult& r) {
  if (!r.solvable) return false;
  const Ring& R = f.ring();
  const Side side = f.side();
  IntMatrix lhs = detail::ring_sum(R, detail::ring_product(R, side, g.A(), r.X), detail::ring_product(R, side, r.Y, f.B()));
  if (!(lhs == g.B())) return false;
  return detail::ring_product(R, side, r.Y, f.A()) == detail::ring_product(R, side, g.A(), r.Z);
}

struct KernelBound {
  bool bounded = false;
  IntVector t;  // t A = 0 and t b = r != 0
  Int r = 0;
};

/// Boundedness through the kernel of A: some t with tA = 0 and tb != 0.
inline KernelBound bounded_by_kernel(const PpFormula& f) {
  detail::require_unary(f, "bounded_by_kernel");
  const Ring& R = f.ring();
  const Side side = f.side();
  const IntMatrix& A = f.A();
  const std::size_t m = f.rows();
  KernelBound kb;
  if (R.is_integers()) {
    IntMatrix K = A.cols() == 0 ? IntMatrix::identity(m) : left_kernel(A);
    Int g = 0;
    IntVector t(m);
    for (std::size_t i = 0; i < K.rows(); ++i) {
      Int v = 0;
      for (std::size_t p = 0; p < m; ++p) v += K(i, p) * f.B()(p, 0);
      if (v == 0) continue;
      ExtGcd eg = ext_gcd(g, v);
      for (std::size_t p = 0; p < m; ++p) t[p] = eg.s * t[p] + eg.t * K(i, p);
      g = eg.g;
    }
    if (g == 0) return kb;
    kb.bounded = true;
    kb.t = t;
    kb.r = g;
    return kb;
  }
  std::vector<std::vector<int>> a(m, std::vector<int>(A.cols()));
  std::vector<int> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = static_cast<int>(f.B()(i, 0));
    for (std::size_t j = 0; j < A.cols(); ++j) a[i][j] = static_cast<int>(A(i, j));
  }
  detail::for_each_vector(R, m, [&](const std::vector<int>& t) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      int s = 0;
      for (std::size_t i = 0; i < m; ++i) s = R.fadd(s, R.fmul(side, t[i], a[i][j]));
      if (s != 0) return true;
    }
    int r = 0;
    for (std::size_t i = 0; i < m; ++i) r = R.fadd(r, R.fmul(side, t[i], b[i]));
    if (r == 0) return true;
    kb.bounded = true;
    kb.t = detail::to_int_vector(t);
    kb.r = r;
    return false;
  });
  return kb;
}

}  // namespace ppcalc
