#pragma once

// pp formulas in divisibility normal form  exists y (A y = B x).
//
// A right formula over R is stored as a left formula over the opposite ring:
// row i reads  sum_j A_ij o y_j = sum_l B_il o x_l  where a o b is the product of
// the working ring (a*b on the left side, b*a on the right side). All transforms
// are written once against that convention.

#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/ring.hpp"

#include <cstddef>
#include <vector>

namespace ppcalc {

class PpFormula {
 public:
  /// Builds and canonicalizes. A is m x k, B is m x n.
  PpFormula(Ring ring, Side side, IntMatrix A, IntMatrix B)
      : ring_(std::move(ring)), side_(side), n_(B.cols()), A_(std::move(A)), B_(std::move(B)) {
    if (n_ == 0) throw Error(ErrorKind::DimensionMismatch, "formula needs at least one free variable");
    if (A_.rows() != B_.rows()) {
      if (A_.rows() == 0 && A_.cols() == 0) A_ = IntMatrix(B_.rows(), 0);
      else throw Error(ErrorKind::DimensionMismatch, "A and B must have the same number of rows");
    }
    for (IntMatrix* m : {&A_, &B_})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) = ring_.normalize((*m)(i, j));
    canonicalize();
  }

  /// x = x in n variables.
  static PpFormula top(const Ring& R, Side side, std::size_t n = 1) {
    return PpFormula(R, side, IntMatrix(0, 0), IntMatrix(0, n));
  }

  /// x = 0 in n variables.
  static PpFormula bottom(const Ring& R, Side side, std::size_t n = 1) {
    return PpFormula(R, side, IntMatrix(n, 0), IntMatrix::identity(n));
  }

  /// r | s x
  static PpFormula divisibility(const Ring& R, Side side, const Int& r, const Int& s = 1) {
    return PpFormula(R, side, IntMatrix{{r}}, IntMatrix{{s}});
  }

  /// s x = 0
  static PpFormula annihilation(const Ring& R, Side side, const Int& s) {
    return PpFormula(R, side, IntMatrix(1, 0), IntMatrix{{s}});
  }

  const Ring& ring() const noexcept { return ring_; }
  Side side() const noexcept { return side_; }
  std::size_t arity() const noexcept { return n_; }
  std::size_t witnesses() const noexcept { return A_.cols(); }
  std::size_t rows() const noexcept { return B_.rows(); }
  const IntMatrix& A() const noexcept { return A_; }
  const IntMatrix& B() const noexcept { return B_; }
  bool is_unary() const noexcept { return n_ == 1; }
  bool is_quantifier_free() const noexcept { return A_.cols() == 0; }
  bool is_top() const { return A_.cols() == 0 && B_.is_zero(); }

  /// m + k + n + number of nonzero entries.
  std::size_t size() const {
    std::size_t nnz = 0;
    for (const IntMatrix* m : {&A_, &B_})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j)
          if ((*m)(i, j) != 0) ++nnz;
    return rows() + witnesses() + n_ + nnz;
  }

  friend bool operator==(const PpFormula& a, const PpFormula& b) {
    return a.ring_ == b.ring_ && a.side_ == b.side_ && a.A_ == b.A_ && a.B_ == b.B_;
  }

 private:
  void canonicalize() {
    const std::size_t k = A_.cols();
    std::vector<bool> keep_col(k, false);
    IntMatrix A(0, k), B(0, n_);
    for (std::size_t i = 0; i < B_.rows(); ++i) {
      if (is_zero_vector(A_.row(i)) && is_zero_vector(B_.row(i))) continue;
      A.append_row(A_.row(i));
      B.append_row(B_.row(i));
      for (std::size_t j = 0; j < k; ++j)
        if (A_(i, j) != 0) keep_col[j] = true;
    }
    std::size_t kept = 0;
    for (bool b : keep_col) kept += b ? 1 : 0;
    IntMatrix A2(A.rows(), kept);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (keep_col[j]) A2(i, c++) = A(i, j);
    }
    if (B.rows() == 0) {
      A_ = IntMatrix(1, 0);
      B_ = IntMatrix(1, n_);
      return;
    }
    A_ = std::move(A2);
    B_ = std::move(B);
  }

  Ring ring_;
  Side side_;
  std::size_t n_;
  IntMatrix A_;
  IntMatrix B_;
};

namespace detail {

inline void require_compatible(const PpFormula& a, const PpFormula& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "formulas over different rings");
  if (a.side() != b.side()) throw Error(ErrorKind::SideMismatch, "formulas on different sides");
  if (a.arity() != b.arity()) throw Error(ErrorKind::DimensionMismatch, "formulas of different arity");
}

inline void require_unary(const PpFormula& f, const char* what) {
  if (!f.is_unary()) throw Error(ErrorKind::Unsupported, std::string(what) + " needs a unary formula");
}

// copies src into dst at (r0, c0)
inline void place(IntMatrix& dst, const IntMatrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
}

}  // namespace detail

/// Elementary dual  exists z (x = zB and zA = 0), on the opposite side.
inline PpFormula dual(const PpFormula& f) {
  const std::size_t m = f.rows(), k = f.witnesses(), n = f.arity();
  IntMatrix A(n + k, m), B(n + k, n);
  detail::place(A, f.B().transpose(), 0, 0);
  detail::place(A, f.A().transpose(), n, 0);
  detail::place(B, IntMatrix::identity(n), 0, 0);
  return PpFormula(f.ring(), opposite(f.side()), std::move(A), std::move(B));
}

/// r f :  exists y (x = r o y and f(y)).
inline PpFormula multiple(const Int& r, const PpFormula& f) {
  detail::require_unary(f, "multiple");
  const Ring& R = f.ring();
  const std::size_t m = f.rows(), k = f.witnesses();
  IntMatrix A(m + 1, k + 1), B(m + 1, 1);
  A(0, 0) = R.normalize(r);
  B(0, 0) = 1;
  for (std::size_t i = 0; i < m; ++i) {
    A(i + 1, 0) = R.neg(f.B()(i, 0));
    for (std::size_t j = 0; j < k; ++j) A(i + 1, j + 1) = f.A()(i, j);
  }
  return PpFormula(R, f.side(), std::move(A), std::move(B));
}

/// r^-1 f :  f(r o x).
inline PpFormula inverse(const Int& r, const PpFormula& f) {
  detail::require_unary(f, "inverse");
  const Ring& R = f.ring();
  const Int rr = R.normalize(r);
  IntMatrix B(f.rows(), 1);
  for (std::size_t i = 0; i < f.rows(); ++i) B(i, 0) = R.mul(f.side(), f.B()(i, 0), rr);
  return PpFormula(R, f.side(), f.A(), std::move(B));
}

/// Conjunction.
inline PpFormula meet(const PpFormula& f, const PpFormula& g) {
  detail::require_compatible(f, g);
  const std::size_t m1 = f.rows(), m2 = g.rows(), k1 = f.witnesses(), k2 = g.witnesses();
  IntMatrix A(m1 + m2, k1 + k2), B(m1 + m2, f.arity());
  detail::place(A, f.A(), 0, 0);
  detail::place(A, g.A(), m1, k1);
  detail::place(B, f.B(), 0, 0);
  detail::place(B, g.B(), m1, 0);
  return PpFormula(f.ring(), f.side(), std::move(A), std::move(B));
}

/// Sum:  exists u (f(u) and g(x - u)).
inline PpFormula join(const PpFormula& f, const PpFormula& g) {
  detail::require_compatible(f, g);
  const Ring& R = f.ring();
  const std::size_t n = f.arity();
  const std::size_t m1 = f.rows(), m2 = g.rows(), k1 = f.witnesses(), k2 = g.witnesses();
  IntMatrix A(m1 + m2, n + k1 + k2), B(m1 + m2, n);
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t l = 0; l < n; ++l) A(i, l) = R.neg(f.B()(i, l));
    for (std::size_t j = 0; j < k1; ++j) A(i, n + j) = f.A()(i, j);
  }
  for (std::size_t i = 0; i < m2; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      A(m1 + i, l) = g.B()(i, l);
      B(m1 + i, l) = g.B()(i, l);
    }
    for (std::size_t j = 0; j < k2; ++j) A(m1 + i, n + k1 + j) = g.A()(i, j);
  }
  return PpFormula(R, f.side(), std::move(A), std::move(B));
}

namespace detail {

// Appends the rows of  g(v)  to (A, B) where v is column `col` of a block of
// variables; `in_witness` says whether that block is the witness block.
inline void append_gamma(IntMatrix& A, IntMatrix& B, const PpFormula& g, std::size_t col, bool in_witness,
                         const Ring& R) {
  const std::size_t kg = g.witnesses();
  const std::size_t k0 = A.cols();
  IntMatrix A2(A.rows() + g.rows(), k0 + kg), B2(B.rows() + g.rows(), B.cols());
  place(A2, A, 0, 0);
  place(B2, B, 0, 0);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const std::size_t r = A.rows() + i;
    for (std::size_t j = 0; j < kg; ++j) A2(r, k0 + j) = g.A()(i, j);
    if (in_witness) A2(r, col) = R.neg(g.B()(i, 0));
    else B2(r, col) = g.B()(i, 0);
  }
  A = std::move(A2);
  B = std::move(B2);
}

inline void require_gamma(const PpFormula& f, const PpFormula& g) {
  if (f.ring() != g.ring()) throw Error(ErrorKind::RingMismatch, "gamma over a different ring");
  if (f.side() != g.side()) throw Error(ErrorKind::SideMismatch, "gamma on a different side");
  require_unary(g, "gamma");
}

}  // namespace detail

/// f and g(x_1) and ... and g(x_n).
inline PpFormula gamma_subscript(const PpFormula& f, const PpFormula& g) {
  detail::require_gamma(f, g);
  IntMatrix A = f.A(), B = f.B();
  for (std::size_t l = 0; l < f.arity(); ++l) detail::append_gamma(A, B, g, l, false, f.ring());
  return PpFormula(f.ring(), f.side(), std::move(A), std::move(B));
}

/// exists y (A y = B x and g at every free and every witness variable).
inline PpFormula gamma_superscript(const PpFormula& f, const PpFormula& g) {
  detail::require_gamma(f, g);
  IntMatrix A = f.A(), B = f.B();
  const std::size_t k = f.witnesses();
  for (std::size_t l = 0; l < f.arity(); ++l) detail::append_gamma(A, B, g, l, false, f.ring());
  for (std::size_t j = 0; j < k; ++j) detail::append_gamma(A, B, g, j, true, f.ring());
  return PpFormula(f.ring(), f.side(), std::move(A), std::move(B));
}

}  // namespace ppcalc
