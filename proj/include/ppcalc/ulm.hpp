#pragma once

// Ulm submodules. Two settings:
//  * height forests describing simply presented p-groups (generators are nodes,
//    p * node = parent, p * root = 0), with ordinal heights below omega^2 plus infinity;
//  * concrete modules, where the intersection over regular elements and a bounded
//    intersection of high subgroups are computed exactly.

#include "ppcalc/classify.hpp"
#include "ppcalc/enumerate.hpp"
#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ppcalc {

/// omega * a + b, or infinity.
class Ordinal {
 public:
  static constexpr long kOmegaCap = 1'000'000;  // a stays below this: everything is below omega^2

  constexpr Ordinal() = default;
  static constexpr Ordinal finite(long b) { return Ordinal(0, b, false); }
  static constexpr Ordinal omega(long a = 1, long b = 0) { return Ordinal(a, b, false); }
  static constexpr Ordinal infinity() { return Ordinal(0, 0, true); }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_ && a_ == 0; }
  constexpr long omega_coefficient() const { return a_; }
  constexpr long finite_part() const { return b_; }

  constexpr Ordinal successor() const { return inf_ ? *this : Ordinal(a_, b_ + 1, false); }

  /// Least ordinal >= every element of {this + n : n < omega}: the next limit.
  Ordinal next_limit() const {
    if (inf_) return *this;
    if (a_ + 1 >= kOmegaCap) throw Error(ErrorKind::Unsupported, "height reaches omega^2");
    return Ordinal(a_ + 1, 0, false);
  }

  constexpr auto operator<=>(const Ordinal& o) const {
    if (inf_ || o.inf_) return static_cast<int>(inf_) <=> static_cast<int>(o.inf_);
    if (a_ != o.a_) return a_ <=> o.a_;
    return b_ <=> o.b_;
  }
  constexpr bool operator==(const Ordinal& o) const = default;

  std::string str() const {
    if (inf_) return "inf";
    if (a_ == 0) return std::to_string(b_);
    std::string s = a_ == 1 ? "w" : "w*" + std::to_string(a_);
    if (b_ != 0) s += "+" + std::to_string(b_);
    return s;
  }

 private:
  constexpr Ordinal(long a, long b, bool inf) : a_(a), b_(b), inf_(inf) {}
  long a_ = 0;
  long b_ = 0;
  bool inf_ = false;
};

struct ForestNode {
  std::string name;
  int parent = -1;
  std::vector<int> children;
  bool rep_all = false;              // one chain of every finite length hangs below
  std::vector<long> rep_lengths;     // chains of these lengths hang below
  bool divisible = false;            // an infinite ascending chain sits above
};

class HeightForest {
 public:
  HeightForest() = default;
  explicit HeightForest(Int p) : p_(std::move(p)) {
    if (p_ < 2) throw Error(ErrorKind::Malformed, "forest prime must be >= 2");
    for (Int d = 2; d * d <= p_; ++d)
      if (p_ % d == 0) throw Error(ErrorKind::Malformed, "forest modulus must be prime");
  }

  /// Adds a node under `parent` (-1 for a root); returns its index.
  int add_node(const std::string& name, int parent = -1) {
    if (parent >= static_cast<int>(nodes_.size())) throw Error(ErrorKind::Malformed, "parent index out of range");
    ForestNode n;
    n.name = name;
    n.parent = parent;
    nodes_.push_back(n);
    const int id = static_cast<int>(nodes_.size()) - 1;
    if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  }

  /// Builds from a flat parent list, rejecting cycles and dangling parents.
  static HeightForest from_parents(Int p, const std::vector<std::string>& names, const std::vector<int>& parents) {
    if (names.size() != parents.size()) throw Error(ErrorKind::Malformed, "names and parents differ in length");
    const std::size_t n = names.size();
    for (std::size_t i = 0; i < n; ++i)
      if (parents[i] < -1 || parents[i] >= static_cast<int>(n)) throw Error(ErrorKind::Malformed, "parent out of range");
    for (std::size_t i = 0; i < n; ++i) {
      int cur = static_cast<int>(i);
      for (std::size_t steps = 0; cur >= 0; ++steps) {
        if (steps > n) throw Error(ErrorKind::Malformed, "cycle through node '" + names[i] + "'");
        cur = parents[static_cast<std::size_t>(cur)];
      }
    }
    HeightForest f(std::move(p));
    f.nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      f.nodes_[i].name = names[i];
      f.nodes_[i].parent = parents[i];
      if (parents[i] >= 0) f.nodes_[static_cast<std::size_t>(parents[i])].children.push_back(static_cast<int>(i));
    }
    return f;
  }

  const Int& prime() const noexcept { return p_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const ForestNode& node(std::size_t i) const { return nodes_.at(i); }
  ForestNode& node(std::size_t i) { return nodes_.at(i); }
  const std::vector<ForestNode>& nodes() const noexcept { return nodes_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].name == name) return i;
    return std::nullopt;
  }

  /// Disjoint union; node names get the prefixes "a." and "b.".
  static HeightForest disjoint_union(const HeightForest& a, const HeightForest& b) {
    if (a.p_ != b.p_) throw Error(ErrorKind::Malformed, "forests for different primes");
    HeightForest f(a.p_);
    for (const auto* src : {&a, &b}) {
      const int off = static_cast<int>(f.nodes_.size());
      const std::string prefix = src == &a ? "a." : "b.";
      for (const auto& n : src->nodes_) {
        ForestNode c = n;
        c.name = prefix + n.name;
        if (c.parent >= 0) c.parent += off;
        for (int& ch : c.children) ch += off;
        f.nodes_.push_back(std::move(c));
      }
    }
    return f;
  }

 private:
  Int p_ = 2;
  std::vector<ForestNode> nodes_;
};

/// Height of every node.
inline std::vector<Ordinal> heights(const HeightForest& F) {
  const std::size_t n = F.size();
  std::vector<Ordinal> h(n);
  std::vector<int> state(n, 0);  // 0 new, 1 open, 2 done
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] == 2) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [v, next_child] = stack.back();
      const ForestNode& nd = F.node(v);
      if (next_child < nd.children.size()) {
        const auto c = static_cast<std::size_t>(nd.children[next_child++]);
        if (state[c] == 1) throw Error(ErrorKind::Malformed, "cycle through node '" + F.node(c).name + "'");
        if (state[c] == 0) {
          state[c] = 1;
          stack.push_back({c, 0});
        }
        continue;
      }
      Ordinal best = Ordinal::finite(0);
      for (int c : nd.children) best = std::max(best, h[static_cast<std::size_t>(c)].successor());
      for (long len : nd.rep_lengths) best = std::max(best, Ordinal::finite(len));
      if (nd.rep_all) best = std::max(best, Ordinal::finite(0).next_limit());
      if (nd.divisible) best = Ordinal::infinity();
      h[v] = best;
      state[v] = 2;
      stack.pop_back();
    }
  }
  return h;
}

struct UlmLevel {
  std::size_t tau = 0;
  std::vector<std::string> nodes;     // explicit nodes of height >= omega * tau
  bool implicit_chains = false;       // replicated chain nodes belong to this level (tau = 0 only)
  bool divisible_part = false;        // some node carries an infinite ascending chain
  std::optional<std::vector<Int>> cyclic_decomposition;  // orders of cyclic summands when finite
};

struct UlmReport {
  std::vector<Ordinal> heights;
  std::vector<UlmLevel> levels;  // tau = 0 .. length (the last one equals its successor)
  std::size_t length = 0;
  std::vector<std::string> first_ulm_generators;
  std::string semantics = "tree semantics";
};

namespace detail {

// Group generated by a set of nodes closed under parents, with replicated chains
// optionally materialized up to `chain_limit` (0: leave them out).
inline Module forest_group(const HeightForest& F, const std::vector<bool>& keep, long chain_limit,
                           bool include_lists, std::vector<int>* index_of = nullptr) {
  const Int& p = F.prime();
  std::vector<int> id(F.size(), -1);
  int count = 0;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (keep[i]) id[i] = count++;
  struct Extra {
    int parent;  // generator index; p * extra = parent
  };
  std::vector<Extra> extra;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (!keep[i]) continue;
    const ForestNode& nd = F.node(i);
    std::vector<long> lens;
    if (include_lists) lens = nd.rep_lengths;
    if (nd.rep_all)
      for (long L = 1; L <= chain_limit; ++L) lens.push_back(L);
    for (long L : lens) {
      int parent = id[i];
      for (long j = 0; j < L; ++j) {
        extra.push_back({parent});
        parent = count + static_cast<int>(extra.size()) - 1;
      }
    }
    if (nd.divisible && chain_limit > 0) {
      // ascending chain a_1, ..., a_N above the node: p * a_1 = node, p * a_{j+1} = a_j
      int below = id[i];
      for (long j = 0; j < chain_limit; ++j) {
        extra.push_back({below});
        below = count + static_cast<int>(extra.size()) - 1;
      }
    }
  }
  const std::size_t t = static_cast<std::size_t>(count) + extra.size();
  IntMatrix rel(0, t);
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (!keep[i]) continue;
    IntVector row(t);
    row[static_cast<std::size_t>(id[i])] = p;
    const int par = F.node(i).parent;
    if (par >= 0) row[static_cast<std::size_t>(id[static_cast<std::size_t>(par)])] -= 1;
    rel.append_row(row);
  }
  for (std::size_t e = 0; e < extra.size(); ++e) {
    IntVector row(t);
    row[static_cast<std::size_t>(count) + e] = p;
    row[static_cast<std::size_t>(extra[e].parent)] -= 1;
    rel.append_row(row);
  }
  if (index_of) *index_of = id;
  return Module::presented(Ring::integers(), Side::Left, rel.rows() ? ZLattice::span(rel) : ZLattice(t), {},
                           "forest group");
}

}  // namespace detail

/// Ulm sequence of a forest: level tau holds the nodes of height >= omega * tau.
inline UlmReport ulm_sequence(const HeightForest& F) {
  UlmReport rep;
  rep.heights = heights(F);
  bool any_all = false, any_lists = false;
  for (const auto& nd : F.nodes()) {
    any_all = any_all || nd.rep_all;
    any_lists = any_lists || !nd.rep_lengths.empty();
  }
  auto level = [&](std::size_t tau) {
    UlmLevel L;
    L.tau = tau;
    std::vector<bool> keep(F.size(), false);
    for (std::size_t i = 0; i < F.size(); ++i)
      if (rep.heights[i] >= Ordinal::omega(static_cast<long>(tau))) {
        keep[i] = true;
        L.nodes.push_back(F.node(i).name);
      }
    L.implicit_chains = tau == 0 && (any_all || any_lists);
    for (std::size_t i = 0; i < F.size(); ++i)
      if (keep[i] && F.node(i).divisible) L.divisible_part = true;
    const bool infinite = L.divisible_part || (tau == 0 && any_all);
    if (!infinite) {
      Module G = detail::forest_group(F, keep, 0, tau == 0);
      AbelianInvariants inv = abelian_invariants(G);
      L.cyclic_decomposition = inv.torsion;
    }
    return L;
  };
  auto same = [](const UlmLevel& a, const UlmLevel& b) {
    return a.nodes == b.nodes && a.implicit_chains == b.implicit_chains && a.divisible_part == b.divisible_part;
  };
  rep.levels.push_back(level(0));
  for (std::size_t tau = 1;; ++tau) {
    rep.levels.push_back(level(tau));
    if (same(rep.levels[tau - 1], rep.levels[tau])) {
      rep.length = tau - 1;
      rep.levels.pop_back();
      break;
    }
    if (tau > static_cast<std::size_t>(Ordinal::kOmegaCap)) throw Error(ErrorKind::Unsupported, "Ulm sequence too long");
  }
  if (rep.levels.size() > 1) rep.first_ulm_generators = rep.levels[1].nodes;
  else rep.first_ulm_generators = rep.levels[0].nodes;
  return rep;
}

/// Height of `node` in the finite group obtained by cutting every replicated or
/// divisible chain at length N: the largest k with node in p^k G.
inline long truncated_height(const HeightForest& F, std::size_t node, long N) {
  std::vector<bool> keep(F.size(), true);
  std::vector<int> id;
  Module G = detail::forest_group(F, keep, N, true, &id);
  IntVector v(G.gens());
  v[static_cast<std::size_t>(id.at(node))] = 1;
  Subgroup whole = Subgroup::whole(G);
  Subgroup pk = whole;
  long k = 0;
  const long limit = static_cast<long>(G.gens()) + 1;
  while (k < limit) {
    Subgroup next = pk.scaled(F.prime());
    if (!next.contains(v)) return k;
    pk = next;
    ++k;
  }
  return k;
}

/// Intersection of r M over the elements r whose left annihilator is zero.
inline Subgroup ulm_div(const Module& M) {
  const Ring& R = M.ring();
  if (R.is_integers()) {
    // finitely generated abelian groups are reduced: the intersection of all nM is zero
    return Subgroup::zero(M);
  }
  Subgroup acc = Subgroup::whole(M);
  for (const Int& r : R.elements()) {
    bool regular = true;
    for (const Int& t : R.elements())
      if (t != 0 && R.mul(M.side(), t, r) == 0) regular = false;
    if (regular) acc = intersect(acc, Subgroup::whole(M).scaled(r));
  }
  return acc;
}

/// High unary formulas of size <= bound, in enumeration order.
inline std::vector<PpFormula> high_formulas(const Ring& R, Side side, std::size_t bound) {
  std::vector<PpFormula> out;
  for (auto& f : unary_formulas(R, side, bound))
    if (classify(f).high) out.push_back(std::move(f));
  return out;
}

struct UlmBounded {
  Subgroup value;
  std::size_t bound;
  bool stabilized;  // the value at bound - 1 is the same
};

/// Intersection of f(M) over the given high formulas of size <= bound.
inline UlmBounded ulm_bounded(const Module& M, std::size_t bound, const std::vector<PpFormula>& highs) {
  Subgroup acc = Subgroup::whole(M);
  std::optional<Subgroup> before;
  for (const auto& g : highs) {
    if (g.size() > bound) break;
    if (g.size() == bound && !before) before = acc;
    acc = intersect(acc, evaluate(g, M));
  }
  if (!before) before = acc;
  return {acc, bound, *before == acc};
}

inline UlmBounded ulm_bounded(const Module& M, std::size_t bound) {
  return ulm_bounded(M, bound, high_formulas(M.ring(), M.side(), bound));
}

/// Classifies g-superscript of d; both inputs must be high.
inline bool check_gamma_high(const PpFormula& gamma, const PpFormula& delta) {
  if (!classify(gamma).high || !classify(delta).high) throw Error(ErrorKind::Precondition, "both formulas must be high");
  return classify(gamma_superscript(delta, gamma)).high;
}

struct PurityReport {
  bool pure = true;
  std::size_t bound = 0;
  std::size_t formulas_checked = 0;
  std::optional<PpFormula> counterexample;
};

/// Checks f(N) = N cap f(M) for every unary f of size <= bound.
inline PurityReport is_pure_submodule(const Subgroup& N, std::size_t bound = 6) {
  const Module& M = N.module();
  Submodule sub = as_module(N);
  PurityReport rep;
  rep.bound = bound;
  for (const auto& f : unary_formulas(M.ring(), M.side(), bound)) {
    ++rep.formulas_checked;
    Subgroup inside = sub.embed(evaluate(f, sub.module));
    if (inside != intersect(N, evaluate(f, M))) {
      rep.pure = false;
      rep.counterexample = f;
      return rep;
    }
  }
  return rep;
}

}  // namespace ppcalc
