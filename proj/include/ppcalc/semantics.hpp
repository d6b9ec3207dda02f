#pragma once

// Evaluation of pp formulas in concrete modules, free realizations, and the
// module-theoretic tests built on evaluation (flatness and absolute purity
// defects, divisibility, purity of submodules).

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/zlattice.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ppcalc {

namespace detail {

inline void require_match(const PpFormula& f, const Module& M) {
  if (f.ring() != M.ring()) throw Error(ErrorKind::RingMismatch, "formula and module over different rings");
  if (f.side() != M.side())
    throw Error(ErrorKind::SideMismatch, std::string("a ") + to_string(f.side()) + " formula cannot be evaluated in a " +
                                             to_string(M.side()) + " module");
}

// Block matrix whose (row-block p, col-block i) is act(E(i, p)): the linear map
// v -> (sum_p E(i,p) o v_p)_i on coordinates.
inline IntMatrix lift_matrix(const Module& M, const IntMatrix& E) {
  const std::size_t t = M.gens();
  IntMatrix out(t * E.cols(), t * E.rows());
  std::map<Int, IntMatrix> cache;
  for (std::size_t i = 0; i < E.rows(); ++i)
    for (std::size_t p = 0; p < E.cols(); ++p) {
      const Int& e = E(i, p);
      if (e == 0) continue;
      auto it = cache.find(e);
      if (it == cache.end()) it = cache.emplace(e, M.action(e)).first;
      place(out, it->second, p * t, i * t);
    }
  return out;
}

// span of the A-part plus the relations: the set of right-hand sides reachable by witnesses.
inline ZLattice witness_image(const PpFormula& f, const Module& M) {
  const std::size_t dim = M.gens() * f.rows();
  ZLattice rel = power_relations(M, f.rows());
  if (f.witnesses() == 0 || dim == 0) return rel;
  return ZLattice::span(vstack(lift_matrix(M, f.A()), rel.rank() ? rel.basis() : IntMatrix(0, dim)));
}

}  // namespace detail

/// The subgroup f(M) of M^n.
inline Subgroup evaluate(const PpFormula& f, const Module& M) {
  detail::require_match(f, M);
  const std::size_t n = f.arity();
  if (M.gens() == 0) return Subgroup::zero(M, n);
  ZLattice image = detail::witness_image(f, M);
  IntMatrix TB = detail::lift_matrix(M, f.B());
  return Subgroup(M, n, preimage(TB, image));
}

/// Whether the tuple (coordinates of length t*n) satisfies f in M.
inline bool satisfies(const PpFormula& f, const Module& M, const IntVector& tuple) {
  detail::require_match(f, M);
  if (tuple.size() != M.gens() * f.arity()) throw Error(ErrorKind::DimensionMismatch, "tuple length");
  if (M.gens() == 0) return true;
  ZLattice image = detail::witness_image(f, M);
  IntMatrix TB = detail::lift_matrix(M, f.B());
  return image.contains(multiply(std::span<const Int>(tuple), TB));
}

/// Left (or right) regular module, cached on the ring.
inline const Module& regular_module(const Ring& R, Side side) {
  auto p = R.cached(side == Side::Left ? 0 : 1, [&]() -> std::shared_ptr<const void> {
    return std::make_shared<const Module>(Module::regular(R, side));
  });
  return *static_cast<const Module*>(p.get());
}

/// Ring element for a coordinate vector of the regular module.
inline Int ring_element(const Ring& R, const IntVector& coords) { return R.from_coords(coords); }

/// f(R) as a set of ring elements (finite rings), in element order.
inline std::vector<Int> value_in_ring(const PpFormula& f) {
  Subgroup s = evaluate(f, regular_module(f.ring(), f.side()));
  std::vector<Int> out;
  for (const auto& v : s.elements()) out.push_back(f.ring().from_coords(v));
  std::sort(out.begin(), out.end());
  return out;
}

/// Additive generators of a subgroup of the regular module, as ring elements.
inline std::vector<Int> ring_generators(const Subgroup& s) {
  const Ring& R = s.module().ring();
  std::vector<Int> out;
  const ZLattice& l = s.lattice();
  for (std::size_t i = 0; i < l.rank(); ++i) {
    IntVector v = l.basis().row_vector(i);
    Int e = R.is_integers() ? v[0] : R.from_coords(v);
    if (e != 0) out.push_back(e);
  }
  return out;
}

struct FreeRealization {
  Module module;
  IntVector tuple;  // length gens * arity
};

/// R^(n+k) modulo the submodule generated by the rows (B | -A); the tuple is the image of x.
inline FreeRealization free_realization(const PpFormula& f) {
  const Ring& R = f.ring();
  const Side side = f.side();
  const std::size_t n = f.arity(), k = f.witnesses(), vars = n + k;
  const std::size_t s = R.additive_rank();
  const ZLattice LR = R.additive_relations();
  IntMatrix rel(0, s * vars);
  if (LR.rank() > 0) {
    IntMatrix blocks = block_diagonal(LR.basis(), vars);
    for (std::size_t i = 0; i < blocks.rows(); ++i) rel.append_row(blocks.row(i));
  }
  const std::vector<Int> gens = R.additive_generators();
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (const Int& g : gens) {
      IntVector row;
      row.reserve(s * vars);
      for (std::size_t l = 0; l < vars; ++l) {
        Int entry = l < n ? f.B()(i, l) : R.neg(f.A()(i, l - n));
        IntVector c = R.coords(R.mul(side, g, entry));
        row.insert(row.end(), c.begin(), c.end());
      }
      rel.append_row(row);
    }
  std::vector<IntMatrix> act;
  if (R.kind() == RingKind::FiniteTable)
    for (std::size_t r = 0; r < R.order(); ++r) act.push_back(block_diagonal(R.regular_action(side, Int(r)), vars));
  Module M = Module::presented(R, side, rel.rows() ? ZLattice::span(rel) : ZLattice(s * vars), std::move(act),
                               "free realization");
  IntVector tuple;
  const IntVector one = R.coords(Int(1));
  // tuple component l is the generator x_l, i.e. coordinates of 1 in block l
  tuple.assign(s * vars * n, Int(0));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t c = 0; c < s; ++c) tuple[l * s * vars + l * s + c] = one[c];
  for (std::size_t l = 0; l < n; ++l) {
    IntVector comp(tuple.begin() + static_cast<long>(l * s * vars), tuple.begin() + static_cast<long>((l + 1) * s * vars));
    IntVector red = M.reduce(comp);
    std::copy(red.begin(), red.end(), tuple.begin() + static_cast<long>(l * s * vars));
  }
  return {std::move(M), std::move(tuple)};
}

/// Module structure of a finitely generated module over Z or Z/n: (free rank, invariant factors > 1).
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
};

inline AbelianInvariants abelian_invariants(const Module& M) {
  AbelianInvariants out;
  if (M.gens() == 0) return out;
  SmithForm sf = smith_form(M.relation_matrix());
  out.free_rank = sf.free_rank;
  for (const Int& d : sf.invariants)
    if (d != 1) out.torsion.push_back(d);
  return out;
}

/// A subgroup that is closed under the action, as a module of its own.
struct Submodule {
  Module module;
  IntMatrix embedding;  // rows: images of the new generators in the parent's coordinates
  Module parent;

  /// Image of a subgroup of `module`^n in `parent`^n.
  Subgroup embed(const Subgroup& s) const {
    const std::size_t n = s.arity();
    IntMatrix E = block_diagonal(embedding, n);
    if (s.lattice().rank() == 0) return Subgroup::zero(parent, n);
    return Subgroup(parent, n, s.lattice().image(E));
  }

  /// Preimage of a subgroup of `parent`^n.
  Subgroup restrict(const Subgroup& s) const {
    const std::size_t n = s.arity();
    IntMatrix E = block_diagonal(embedding, n);
    return Subgroup(module, n, preimage(E, s.lattice()));
  }
};

inline Submodule as_module(const Subgroup& S) {
  if (S.arity() != 1) throw Error(ErrorKind::Unsupported, "submodule of M^n with n > 1");
  const Module& M = S.module();
  const Ring& R = M.ring();
  const ZLattice& lat = S.lattice();
  const std::size_t r = lat.rank();
  const IntMatrix& H = lat.basis();
  auto coeffs = [&](std::span<const Int> v) {
    auto c = lat.coefficients(v);
    if (!c) throw Error(ErrorKind::Precondition, "subgroup is not closed under the ring action");
    return *c;
  };
  IntMatrix rel(0, r);
  for (std::size_t i = 0; i < M.relations().rank(); ++i) rel.append_row(coeffs(M.relations().basis().row(i)));
  auto action_in_basis = [&](const Int& a) {
    IntMatrix act = multiply(H, M.action(a));
    IntMatrix out(0, r);
    for (std::size_t j = 0; j < r; ++j) out.append_row(coeffs(act.row(j)));
    if (r == 0) out = IntMatrix(0, 0);
    return out;
  };
  std::vector<IntMatrix> act;
  if (R.kind() == RingKind::FiniteTable) {
    for (std::size_t a = 0; a < R.order(); ++a) act.push_back(action_in_basis(Int(a)));
  } else if (R.is_finite()) {
    for (std::size_t a = 0; a < R.order(); ++a) (void)action_in_basis(Int(a));  // closure check
  }
  Module sub = Module::presented(R, M.side(), rel.rows() ? ZLattice::span(rel) : ZLattice(r), std::move(act),
                                 "submodule of " + M.label());
  return {std::move(sub), r ? H : IntMatrix(0, M.gens()), M};
}

struct DefectPair {
  Subgroup value;      // f(M)
  Subgroup reference;  // f(R) M, or ann_M Df(R_R)
  bool has_defect() const { return value != reference; }
};

/// (f(M), f(R) M). Equality for every f characterizes flat modules.
inline DefectPair flat_defect(const PpFormula& f, const Module& M) {
  detail::require_unary(f, "flat_defect");
  detail::require_match(f, M);
  Subgroup value = evaluate(f, M);
  Subgroup ideal = evaluate(f, regular_module(f.ring(), f.side()));
  std::vector<IntVector> gens;
  for (const Int& s : ring_generators(ideal))
    for (std::size_t j = 0; j < M.gens(); ++j) {
      IntVector g(M.gens());
      g[j] = 1;
      gens.push_back(M.act_on(s, g));
    }
  return {std::move(value), Subgroup::generated(M, 1, gens)};
}

/// {a in M : d o a = 0 for every d in D}.
inline Subgroup annihilator_in(const Module& M, const std::vector<Int>& D) {
  ZLattice rel = M.relations();
  ZLattice acc = ZLattice::full(M.gens());
  for (const Int& d : D) acc = intersect(acc, preimage(M.action(d), rel));
  return Subgroup(M, 1, acc);
}

/// (f(M), ann_M Df(R_R)). Equality for every f characterizes absolutely pure modules.
inline DefectPair abspure_defect(const PpFormula& f, const Module& M) {
  detail::require_unary(f, "abspure_defect");
  detail::require_match(f, M);
  if (!f.ring().is_finite()) throw Error(ErrorKind::Unsupported, "abspure_defect is run over finite rings only");
  Subgroup value = evaluate(f, M);
  Subgroup d = evaluate(dual(f), regular_module(f.ring(), opposite(f.side())));
  return {std::move(value), annihilator_in(M, ring_generators(d))};
}

struct DivisibilityReport {
  bool divisible = true;
  std::optional<Int> r;           // failing ring element
  std::optional<IntVector> a;     // element killed by l(r) but not in rM
};

/// Over finite rings: a in rM whenever l(r) a = 0. Over Z (f.g. modules): rM = M for all r != 0.
inline DivisibilityReport is_divisible(const Module& M) {
  DivisibilityReport rep;
  const Ring& R = M.ring();
  if (M.gens() == 0 || (M.is_finite() && M.order() == 1)) return rep;
  if (R.is_integers()) {
    Subgroup whole = Subgroup::whole(M);
    for (Int p = 2;; ++p) {
      bool prime = true;
      for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (!prime) continue;
      Subgroup pm = whole.scaled(p);
      if (pm != whole) {
        rep.divisible = false;
        rep.r = p;
        for (std::size_t j = 0; j < M.gens(); ++j) {
          IntVector g(M.gens());
          g[j] = 1;
          if (!pm.contains(g)) {
            rep.a = M.reduce(g);
            break;
          }
        }
        return rep;
      }
      if (p > 1000) throw Error(ErrorKind::Unsupported, "divisibility search exceeded");
    }
  }
  const Side side = M.side();
  const std::vector<IntVector> elems = M.elements();
  Subgroup whole = Subgroup::whole(M);
  for (const Int& r : R.elements()) {
    std::vector<Int> lr;
    for (const Int& t : R.elements())
      if (R.mul(side, t, r) == 0) lr.push_back(t);
    Subgroup killed = annihilator_in(M, lr);
    Subgroup rm = whole.scaled(r);
    if (killed.subset_of(rm)) continue;
    rep.divisible = false;
    rep.r = r;
    for (const auto& a : elems)
      if (killed.contains(a) && !rm.contains(a)) {
        rep.a = a;
        break;
      }
    return rep;
  }
  return rep;
}

}  // namespace ppcalc
