#pragma once

// Brute-force reference computations used to cross-check the lattice methods.
// They only walk element lists, so they are limited to small finite modules.

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/ring.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace ppcalc::oracle {

inline constexpr std::size_t kBruteForceCap = 2'000'000;

/// Position of each element in M.elements().
inline std::map<IntVector, std::size_t> element_positions(const Module& M) {
  std::map<IntVector, std::size_t> pos;
  for (const auto& e : M.elements()) pos.emplace(M.reduce(e), pos.size());
  return pos;
}

/// Element-index tables for a finite module: sum and scalar action.
struct Tables {
  std::size_t q = 0;
  std::vector<std::size_t> add;  // q * q
  std::vector<std::size_t> act;  // |R| * q for finite rings
  std::size_t zero = 0;
  bool integers = false;

  std::size_t times(long k, std::size_t a) const {  // k * a by repeated addition, k >= 0
    std::size_t acc = zero;
    for (long i = 0; i < k; ++i) acc = add[acc * q + a];
    return acc;
  }
};

/// Over Z and Z/n the action is computed by repeated addition, independently of the action matrices.
inline Tables tables(const Module& M) {
  if (!M.is_finite()) throw Error(ErrorKind::Unsupported, "oracle needs a finite module");
  const auto els = M.elements();
  const auto pos = element_positions(M);
  auto index = [&](const IntVector& v) { return pos.at(M.reduce(v)); };
  Tables t;
  t.q = els.size();
  if (t.q * t.q > kBruteForceCap) throw Error(ErrorKind::CapExceeded, "module too large for the oracle");
  t.add.resize(t.q * t.q);
  for (std::size_t a = 0; a < t.q; ++a)
    for (std::size_t b = 0; b < t.q; ++b) t.add[a * t.q + b] = index(M.add(els[a], els[b]));
  t.zero = index(IntVector(M.gens()));
  const Ring& R = M.ring();
  t.integers = R.is_integers();
  if (R.is_finite()) {
    t.act.resize(R.order() * t.q);
    for (std::size_t r = 0; r < R.order(); ++r)
      for (std::size_t a = 0; a < t.q; ++a) {
        if (R.kind() == RingKind::FiniteTable) t.act[r * t.q + a] = index(M.act_on(Int(r), els[a]));
        else t.act[r * t.q + a] = t.times(static_cast<long>(r), a);
      }
  }
  return t;
}

inline std::size_t scalar(const Tables& t, const Int& r, std::size_t a) {
  if (!t.integers) return t.act[static_cast<std::size_t>(r) * t.q + a];
  // Z acts through the element order; reduce r to a nonnegative representative
  std::size_t ord = 1;
  for (std::size_t x = a; x != t.zero; x = t.add[x * t.q + a]) ++ord;
  long k = static_cast<long>(floor_mod(r, Int(static_cast<long>(ord))));
  return t.times(k, a);
}

/// f(M) as a set of tuples of element indices, by scanning M^(n+k).
inline std::set<std::vector<std::size_t>> evaluate(const PpFormula& f, const Module& M) {
  const Tables t = tables(M);
  const std::size_t n = f.arity(), k = f.witnesses(), m = f.rows();
  double total = 1;
  for (std::size_t i = 0; i < n + k; ++i) total *= static_cast<double>(t.q);
  if (total > static_cast<double>(kBruteForceCap)) throw Error(ErrorKind::CapExceeded, "oracle search space too large");
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> v(n + k, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      std::size_t lhs = t.zero, rhs = t.zero;
      for (std::size_t j = 0; j < k; ++j) lhs = t.add[lhs * t.q + scalar(t, f.A()(i, j), v[n + j])];
      for (std::size_t l = 0; l < n; ++l) rhs = t.add[rhs * t.q + scalar(t, f.B()(i, l), v[l])];
      ok = lhs == rhs;
    }
    if (ok) out.insert(std::vector<std::size_t>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
    std::size_t p = v.size();
    while (p > 0 && ++v[p - 1] == t.q) v[--p] = 0;
    if (p == 0) break;
  }
  return out;
}

/// The same set read off a computed subgroup.
inline std::set<std::vector<std::size_t>> as_index_set(const Subgroup& s) {
  const Module& M = s.module();
  const auto pos = element_positions(M);
  std::set<std::vector<std::size_t>> out;
  for (const auto& tuple : s.elements()) {
    std::vector<std::size_t> idx;
    for (std::size_t l = 0; l < s.arity(); ++l) idx.push_back(pos.at(M.reduce(s.component(tuple, l))));
    out.insert(idx);
  }
  return out;
}

}  // namespace ppcalc::oracle
