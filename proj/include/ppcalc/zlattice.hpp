#pragma once

// Integer lattices in row convention: a lattice is the Z-span of the rows of a
// matrix, stored canonically in Hermite normal form. Everything that needs exact
// linear algebra over Z (kernels, preimages, membership, Smith invariants) goes
// through this header.

#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ppcalc {

namespace detail {

// rows r and i of m (starting at column `from`) replaced by
//   r <- s*r + t*i,   i <- -y*r + x*i      with s*x + t*y == 1
inline void combine_rows(IntMatrix& m, std::size_t r, std::size_t i, const Int& s, const Int& t,
                         const Int& x, const Int& y, std::size_t from = 0) {
  for (std::size_t c = from; c < m.cols(); ++c) {
    const Int a = m(r, c);
    const Int b = m(i, c);
    if (a == 0 && b == 0) continue;
    m(r, c) = s * a + t * b;
    m(i, c) = x * b - y * a;
  }
}

// row i -= q * row r
inline void sub_multiple(IntMatrix& m, std::size_t i, std::size_t r, const Int& q,
                         std::size_t from = 0) {
  if (q == 0) return;
  for (std::size_t c = from; c < m.cols(); ++c)
    if (m(r, c) != 0) m(i, c) -= q * m(r, c);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace detail

/// Result of row-reducing a generator matrix G: transform * G == reduced, where
/// the first `rank` rows of `reduced` are the Hermite normal form and the rest are zero.
struct Echelon {
  IntMatrix reduced;
  IntMatrix transform;  // empty unless requested
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Row Hermite normal form: pivots strictly increasing, pivot entries positive,
/// entries above a pivot reduced into [0, pivot).
inline Echelon echelonize(IntMatrix g, bool with_transform) {
  Echelon e;
  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  if (with_transform) e.transform = IntMatrix::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclidean pivoting: the row with the smallest entry reduces the others, which keeps entries small
    bool any = false;
    for (;;) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (g(i, c) != 0 && (p == rows || abs_int(g(i, c)) < abs_int(g(p, c)))) p = i;
      if (p == rows) break;
      any = true;
      if (p != r) {
        g.swap_rows(p, r);
        if (with_transform) e.transform.swap_rows(p, r);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (g(i, c) == 0) continue;
        Int q = g(i, c) / g(r, c);  // truncated, so |remainder| < |pivot|
        detail::sub_multiple(g, i, r, q, c);
        if (with_transform) detail::sub_multiple(e.transform, i, r, q);
        if (g(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (!any) continue;
    if (g(r, c) < 0) {
      detail::negate_row(g, r);
      if (with_transform) detail::negate_row(e.transform, r);
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (g(j, c) == 0) continue;
      Int q = floor_div(g(j, c), g(r, c));
      detail::sub_multiple(g, j, r, q, c);
      if (with_transform) detail::sub_multiple(e.transform, j, r, q);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  e.reduced = std::move(g);
  return e;
}

/// Rows v with v * g == 0, as a Hermite basis.
inline IntMatrix left_kernel(const IntMatrix& g);

/// Lattice in Z^dim spanned by row vectors, kept in Hermite normal form.
class ZLattice {
 public:
  ZLattice() = default;
  explicit ZLattice(std::size_t dim) : dim_(dim), basis_(0, dim) {}

  static ZLattice span(const IntMatrix& generators) {
    ZLattice l(generators.cols());
    if (generators.rows() == 0) return l;
    Echelon e = echelonize(generators, false);
    l.basis_ = std::move(e.reduced);
    l.basis_.truncate_rows(e.rank);
    l.pivots_ = std::move(e.pivots);
    return l;
  }

  static ZLattice full(std::size_t dim) { return span(IntMatrix::identity(dim)); }

  static ZLattice from_hermite_unchecked(IntMatrix basis, std::vector<std::size_t> pivots) {
    ZLattice l(basis.cols());
    l.basis_ = std::move(basis);
    l.pivots_ = std::move(pivots);
    return l;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_zero() const noexcept { return basis_.rows() == 0; }
  bool is_full_rank() const noexcept { return basis_.rows() == dim_; }

  /// Canonical representative of v modulo the lattice; pivot coordinates land in [0, pivot).
  IntVector reduce(IntVector v) const {
    check_dim(v.size());
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      const std::size_t c = pivots_[r];
      if (v[c] == 0) continue;
      Int q = floor_div(v[c], basis_(r, c));
      if (q == 0) continue;
      for (std::size_t j = c; j < dim_; ++j)
        if (basis_(r, j) != 0) v[j] -= q * basis_(r, j);
    }
    return v;
  }

  /// Integer coefficients c with c * basis == v, if v lies in the lattice.
  std::optional<IntVector> coefficients(std::span<const Int> v) const {
    check_dim(v.size());
    IntVector w(v.begin(), v.end());
    IntVector coef(basis_.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (r < basis_.rows() && pivots_[r] == c) {
        if (w[c] % basis_(r, c) != 0) return std::nullopt;
        Int q = w[c] / basis_(r, c);
        if (q != 0)
          for (std::size_t j = c; j < dim_; ++j)
            if (basis_(r, j) != 0) w[j] -= q * basis_(r, j);
        coef[r] = std::move(q);
        ++r;
      } else if (w[c] != 0) {
        return std::nullopt;
      }
    }
    return coef;
  }

  bool contains(std::span<const Int> v) const { return coefficients(v).has_value(); }

  bool contains(const ZLattice& other) const {
    for (std::size_t i = 0; i < other.rank(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Index [Z^dim : L] for full-rank lattices.
  Int index() const {
    if (!is_full_rank()) throw Error(ErrorKind::Unsupported, "index of a lattice that is not full rank");
    Int p = 1;
    for (std::size_t r = 0; r < basis_.rows(); ++r) p *= basis_(r, pivots_[r]);
    return p;
  }

  friend ZLattice operator+(const ZLattice& a, const ZLattice& b) {
    a.check_dim(b.dim_);
    return span(vstack(a.basis_, b.basis_));
  }

  friend ZLattice intersect(const ZLattice& a, const ZLattice& b) {
    a.check_dim(b.dim_);
    if (a.is_zero() || b.is_zero()) return ZLattice(a.dim_);
    // (u, w) with u*A + w*B == 0  gives  u*A in A ∩ B
    IntMatrix k = left_kernel(vstack(a.basis_, b.basis_));
    IntMatrix gens(0, a.dim_);
    for (std::size_t i = 0; i < k.rows(); ++i) {
      std::span<const Int> u = k.row(i).subspan(0, a.rank());
      gens.append_row(multiply(u, a.basis_));
    }
    return span(gens);
  }

  /// Image of the lattice under v -> v * m (plus nothing else).
  ZLattice image(const IntMatrix& m) const {
    check_dim(m.rows());
    if (is_zero()) return ZLattice(m.cols());
    return span(multiply(basis_, m));
  }

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  void check_dim(std::size_t d) const {
    if (d != dim_) throw Error(ErrorKind::DimensionMismatch, "lattice ambient dimension");
  }

  std::size_t dim_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline IntMatrix left_kernel(const IntMatrix& g) {
  Echelon e = echelonize(g, true);
  IntMatrix k(0, g.rows());
  for (std::size_t i = e.rank; i < g.rows(); ++i) k.append_row(e.transform.row(i));
  if (k.rows() == 0) return k;
  return ZLattice::span(k).basis();
}

/// Solves v * g == b over Z; returns one solution (deterministic) or nothing.
inline std::optional<IntVector> solve_left(const IntMatrix& g, std::span<const Int> b) {
  if (b.size() != g.cols()) throw Error(ErrorKind::DimensionMismatch, "solve_left target length");
  Echelon e = echelonize(g, true);
  IntMatrix h = e.reduced;
  h.truncate_rows(e.rank);
  ZLattice l = ZLattice::from_hermite_unchecked(std::move(h), e.pivots);
  auto coef = l.coefficients(b);
  if (!coef) return std::nullopt;
  IntVector v(g.rows());
  for (std::size_t r = 0; r < e.rank; ++r) {
    const Int& c = (*coef)[r];
    if (c == 0) continue;
    for (std::size_t j = 0; j < g.rows(); ++j) v[j] += c * e.transform(r, j);
  }
  return v;
}

/// Preimage {v in Z^m : v * t in target} of a lattice under the linear map t (m x dim).
inline ZLattice preimage(const IntMatrix& t, const ZLattice& target) {
  if (t.cols() != target.dim()) throw Error(ErrorKind::DimensionMismatch, "preimage map shape");
  IntMatrix stacked = vstack(t, target.basis());
  if (stacked.rows() == 0) return ZLattice(t.rows());
  IntMatrix k = left_kernel(stacked);
  IntMatrix gens(0, t.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) gens.append_row(k.row(i).subspan(0, t.rows()));
  return ZLattice::span(gens);
}

/// Smith normal form data for the quotient Z^cols / rowspace(g).
struct SmithForm {
  std::vector<Int> invariants;  // nonzero diagonal entries d1 | d2 | ... (units included)
  std::size_t free_rank = 0;    // cols - rank
  IntMatrix column_transform;   // V: coordinates v map to v * V in the diagonal basis
};

inline SmithForm smith_form(const IntMatrix& g) {
  const std::size_t n = g.cols();
  IntMatrix m = g;
  IntMatrix v = IntMatrix::identity(n);
  auto is_diagonal = [](const IntMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (i != j && a(i, j) != 0) return false;
    return true;
  };
  for (;;) {
    for (;;) {
      Echelon rows = echelonize(m, false);
      m = std::move(rows.reduced);
      m.truncate_rows(rows.rank);
      if (is_diagonal(m)) break;
      // column reduction: rows of m^T with transform W give m * W^T
      Echelon cols = echelonize(m.transpose(), true);
      m = cols.reduced.transpose();
      v = multiply(v, cols.transform.transpose());
      if (is_diagonal(m)) break;
    }
    // enforce divisibility chain
    const std::size_t d = std::min(m.rows(), m.cols());
    bool fixed = true;
    for (std::size_t i = 0; i + 1 < d && fixed; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (m(j, j) != 0 && (m(i, i) == 0 || m(j, j) % m(i, i) != 0)) {
          // column i += column j, then re-diagonalize
          for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) += m(r, j);
          for (std::size_t r = 0; r < n; ++r) v(r, i) += v(r, j);
          fixed = false;
          break;
        }
      }
    }
    if (fixed) break;
  }
  SmithForm s;
  const std::size_t d = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < d; ++i)
    if (m(i, i) != 0) s.invariants.push_back(abs_int(m(i, i)));
  s.free_rank = n - s.invariants.size();
  s.column_transform = std::move(v);
  return s;
}

}  // namespace ppcalc
