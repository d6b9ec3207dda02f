#pragma once

// High / low / bounded / cobounded verdicts for unary formulas, the table of
// basic divisibility formulas r|sx, essential formulas, and the annihilator
// membership probe.

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/order.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ppcalc {

enum class Region { N, S, E, WStar };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::N: return "N";
    case Region::S: return "S";
    case Region::E: return "E";
    case Region::WStar: return "W*";
  }
  return "?";
}

struct Classification {
  bool high = false;
  bool low = false;
  bool bounded = false;
  bool cobounded = false;
  Region region = Region::N;
  std::optional<Int> bound_witness;    // f <= r x = 0
  std::optional<Int> cobound_witness;  // s | x <= f
};

namespace detail {

// Least nonzero element of a subgroup of the regular module: element order for
// finite rings, the positive generator over Z.
inline std::optional<Int> least_nonzero(const Subgroup& s) {
  if (s.is_zero()) return std::nullopt;
  const Ring& R = s.module().ring();
  if (R.is_integers()) return abs_int(s.lattice().basis()(0, 0));
  std::optional<Int> best;
  for (const auto& v : s.elements()) {
    Int e = R.from_coords(v);
    if (e != 0 && (!best || e < *best)) best = e;
  }
  return best;
}

inline Region region_of(bool high, bool low, bool bounded, bool cobounded) {
  if (high && low) return Region::WStar;
  if (high && cobounded) return Region::N;
  if (low && bounded) return Region::S;
  return Region::E;
}

}  // namespace detail

/// low iff f(R) = 0 (in the regular module of its side); high iff Df(R) = 0 on the other side.
inline Classification classify(const PpFormula& f) {
  detail::require_unary(f, "classify");
  const Ring& R = f.ring();
  Classification c;
  Subgroup value = evaluate(f, regular_module(R, f.side()));
  Subgroup dual_value = evaluate(dual(f), regular_module(R, opposite(f.side())));
  c.low = value.is_zero();
  c.cobounded = !c.low;
  c.high = dual_value.is_zero();
  c.bounded = !c.high;
  c.cobound_witness = detail::least_nonzero(value);
  c.bound_witness = detail::least_nonzero(dual_value);
  c.region = detail::region_of(c.high, c.low, c.bounded, c.cobounded);
  return c;
}

/// One clause of the basic-divisibility classification and whether it agreed.
struct ClauseCheck {
  int clause;
  std::string property;  // "bounded", "high", "low", "cobounded"
  bool predicted;
  bool agrees;
};

struct RdEntry {
  Int r, s;
  PpFormula formula;
  Classification classification;
  bool direct_bounded, direct_high, direct_low, direct_cobounded;
  std::vector<ClauseCheck> clauses;
  bool agrees() const {
    if (direct_bounded != classification.bounded || direct_high != classification.high ||
        direct_low != classification.low || direct_cobounded != classification.cobounded)
      return false;
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseCheck& c) { return c.agrees; });
  }
};

namespace detail {

// Ring-side predicates for r|sx, computed from annihilators and ideals only.
struct RingFacts {
  const Ring& R;
  Side side;

  // t o a in the working ring
  Int mul(const Int& a, const Int& b) const { return R.mul(side, a, b); }

  // l(r) subset of l(s)
  bool left_ann_subset(const Int& r, const Int& s) const {
    if (R.is_integers()) {
      VectorSet lr = left_annihilator(R, IntMatrix{{r}});
      for (std::size_t i = 0; i < lr.basis.rows(); ++i)
        if (lr.basis(i, 0) * s != 0) return false;
      return true;
    }
    for (const Int& t : R.elements())
      if (mul(t, r) == 0 && mul(t, s) != 0) return false;
    return true;
  }

  // r(s) = 0
  bool right_ann_zero(const Int& s) const {
    if (R.is_integers()) {
      VectorSet v = right_annihilator(R, IntMatrix{{s}});
      return v.basis.rows() == 0;
    }
    for (const Int& c : R.elements())
      if (c != 0 && mul(s, c) == 0) return false;
    return true;
  }

  // sR cap rR = 0
  bool ideals_meet_trivially(const Int& r, const Int& s) const {
    if (R.is_integers()) {
      ZLattice a = ZLattice::span(IntMatrix{{s}}), b = ZLattice::span(IntMatrix{{r}});
      return intersect(a, b).is_zero();
    }
    std::vector<bool> in_r(R.order(), false);
    for (const Int& c : R.elements()) in_r[static_cast<std::size_t>(mul(r, c))] = true;
    for (const Int& c : R.elements()) {
      Int v = mul(s, c);
      if (v != 0 && in_r[static_cast<std::size_t>(v)]) return false;
    }
    return true;
  }

  // s R^0 cap rR nonempty
  bool nonzero_multiple_meets(const Int& r, const Int& s) const {
    if (R.is_integers()) {
      // { c : s c in rZ } contains a nonzero c
      ZLattice rz = r == 0 ? ZLattice(1) : ZLattice::span(IntMatrix{{r}});
      return preimage(IntMatrix{{s}}, rz).rank() > 0;
    }
    std::vector<bool> in_r(R.order(), false);
    for (const Int& c : R.elements()) in_r[static_cast<std::size_t>(mul(r, c))] = true;
    for (const Int& c : R.elements())
      if (c != 0 && in_r[static_cast<std::size_t>(mul(s, c))]) return true;
    return false;
  }

  bool right_zero_divisor(const Int& r) const { return !left_ann_subset(r, Int(1)); }  // some t != 0, t r = 0
  bool left_zero_divisor(const Int& s) const { return !right_ann_zero(s); }           // some c != 0, s c = 0

  bool is_domain() const {
    if (R.is_integers()) return true;
    for (const Int& a : R.elements())
      if (a != 0 && (right_zero_divisor(a) || left_zero_divisor(a))) return false;
    return true;
  }
};

}  // namespace detail

/// Classification of r|sx by evaluation and by the ring criteria, with the special-case clauses that apply.
inline RdEntry classify_rd(const Ring& R, const Int& r, const Int& s, Side side = Side::Left) {
  detail::RingFacts facts{R, side};
  PpFormula f = PpFormula::divisibility(R, side, r, s);
  RdEntry e{R.normalize(r), R.normalize(s), f, classify(f), false, false, false, false, {}};
  const Int rr = e.r, ss = e.s;
  const bool sub = facts.left_ann_subset(rr, ss);
  e.direct_bounded = !sub;
  e.direct_high = sub;
  e.direct_low = facts.ideals_meet_trivially(rr, ss) && facts.right_ann_zero(ss);
  e.direct_cobounded = facts.nonzero_multiple_meets(rr, ss);
  const Classification& c = e.classification;
  auto add = [&](int n, const char* prop, bool predicted) {
    bool actual = std::string(prop) == "bounded" ? c.bounded
                  : std::string(prop) == "high"  ? c.high
                  : std::string(prop) == "low"   ? c.low
                                                 : c.cobounded;
    e.clauses.push_back({n, prop, predicted, predicted == actual});
  };
  add(1, "bounded", e.direct_bounded);
  add(2, "high", e.direct_high);
  add(3, "low", e.direct_low);
  add(4, "cobounded", e.direct_cobounded);
  if (ss == 1) {
    add(5, "bounded", facts.right_zero_divisor(rr));
    add(6, "high", !facts.right_zero_divisor(rr));
    add(7, "low", rr == 0);
    add(8, "cobounded", rr != 0);
  }
  if (rr == 0) {
    add(9, "bounded", ss != 0);
    add(10, "high", ss == 0);
    add(11, "low", !facts.left_zero_divisor(ss));
    add(12, "cobounded", facts.left_zero_divisor(ss));
  }
  if (facts.is_domain()) {
    const bool meet_zero = facts.ideals_meet_trivially(rr, ss);
    add(13, "bounded", rr == 0 && ss != 0);
    add(14, "high", rr != 0 || ss == 0);
    add(15, "low", ss != 0 && meet_zero);
    add(16, "cobounded", ss == 0 || !meet_zero);
  }
  return e;
}

/// All r|sx over a finite ring, or r, s in [-range, range] over Z.
inline std::vector<RdEntry> rd_table(const Ring& R, long range = 5, Side side = Side::Left) {
  std::vector<Int> vals;
  if (R.is_finite()) vals = R.elements();
  else
    for (long v = -range; v <= range; ++v) vals.emplace_back(v);
  std::vector<RdEntry> out;
  for (const Int& r : vals)
    for (const Int& s : vals) out.push_back(classify_rd(R, r, s, side));
  return out;
}

/// f(R) meets every nonzero principal ideal aR (finite rings).
inline bool is_essential(const PpFormula& f) {
  detail::require_unary(f, "is_essential");
  const Ring& R = f.ring();
  if (!R.is_finite()) throw Error(ErrorKind::Unsupported, "is_essential needs a finite ring");
  std::vector<Int> value = value_in_ring(f);
  std::vector<bool> in_value(R.order(), false);
  for (const Int& v : value) in_value[static_cast<std::size_t>(v)] = true;
  for (const Int& a : R.elements()) {
    if (a == 0) continue;
    bool meets = false;
    for (const Int& r : R.elements()) {
      Int ar = R.mul(f.side(), a, r);
      if (ar != 0 && in_value[static_cast<std::size_t>(ar)]) {
        meets = true;
        break;
      }
    }
    if (!meets) return false;
  }
  return true;
}

struct PhiMembership {
  std::vector<Int> ideal;        // I = f(R)
  std::vector<Int> annihilator;  // l(I)
  std::vector<Int> dual_value;   // Df(R) on the other side
  bool member = false;
};

/// Df(R_R) == l(f(_R R)).
inline PhiMembership phi_membership(const PpFormula& f) {
  detail::require_unary(f, "phi_membership");
  const Ring& R = f.ring();
  if (!R.is_finite()) throw Error(ErrorKind::Unsupported, "phi_membership needs a finite ring");
  PhiMembership p;
  p.ideal = value_in_ring(f);
  for (const Int& t : R.elements()) {
    bool kills = true;
    for (const Int& i : p.ideal)
      if (R.mul(f.side(), t, i) != 0) {
        kills = false;
        break;
      }
    if (kills) p.annihilator.push_back(t);
  }
  p.dual_value = value_in_ring(dual(f));
  p.member = p.annihilator == p.dual_value;
  return p;
}

}  // namespace ppcalc
