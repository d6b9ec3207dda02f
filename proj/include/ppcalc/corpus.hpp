#pragma once

// The bundled rings: Z, Z/n, small rings of matrices over F2, and a randomly
// relabelled table ring that goes through the file loader.

#include "ppcalc/enumerate.hpp"
#include "ppcalc/error.hpp"
#include "ppcalc/io.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#ifndef PPCALC_CORPUS_DIR
#define PPCALC_CORPUS_DIR "corpus"
#endif

namespace ppcalc {

/// PPCALC_CORPUS overrides the directory baked in at build time.
inline std::filesystem::path corpus_dir() {
  if (const char* env = std::getenv("PPCALC_CORPUS"); env && *env) return env;
  return PPCALC_CORPUS_DIR;
}

namespace detail {

// k x k matrices over F2 packed row-major into the low k*k bits
inline std::uint32_t f2_matmul(std::uint32_t a, std::uint32_t b, unsigned k) {
  std::uint32_t c = 0;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      unsigned bit = 0;
      for (unsigned l = 0; l < k; ++l) bit ^= ((a >> (i * k + l)) & 1u) & ((b >> (l * k + j)) & 1u);
      c |= bit << (i * k + j);
    }
  return c;
}

inline std::uint32_t f2_identity(unsigned k) {
  std::uint32_t id = 0;
  for (unsigned i = 0; i < k; ++i) id |= 1u << (i * k + i);
  return id;
}

}  // namespace detail

/// The F2-span of `basis` inside k x k matrices; must contain 1 and be closed under products.
inline Ring f2_matrix_ring(const std::string& name, unsigned k, const std::vector<std::uint32_t>& basis) {
  std::vector<std::uint32_t> elems{0};
  for (std::uint32_t b : basis) {
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t v = elems[i] ^ b;
      if (std::find(elems.begin(), elems.end(), v) == elems.end()) elems.push_back(v);
    }
  }
  std::sort(elems.begin(), elems.end());
  const std::uint32_t one = detail::f2_identity(k);
  auto index = [&](std::uint32_t v) {
    auto it = std::find(elems.begin(), elems.end(), v);
    if (it == elems.end()) throw Error(ErrorKind::Malformed, name + ": span is not closed under multiplication");
    return static_cast<int>(it - elems.begin());
  };
  const std::size_t q = elems.size();
  std::vector<std::string> names;
  std::vector<int> add(q * q), mul(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    std::string bits = "m";  // row-major entries
    for (unsigned b = 0; b < k * k; ++b) bits += (elems[i] >> b) & 1u ? '1' : '0';
    names.push_back(bits);
    for (std::size_t j = 0; j < q; ++j) {
      add[i * q + j] = index(elems[i] ^ elems[j]);
      mul[i * q + j] = index(detail::f2_matmul(elems[i], elems[j], k));
    }
  }
  // name the identity "1" and the zero "0"
  const int one_idx = index(one);
  names[0] = "0";
  names[static_cast<std::size_t>(one_idx)] = "1";
  return Ring::from_tables(name, names, 0, one_idx, add, mul);
}

/// Upper triangular 2 x 2 matrices over Z/2 (8 elements, not self-injective).
inline Ring ut2_f2() { return f2_matrix_ring("UT2(F2)", 2, {0b0001, 0b0010, 0b1000}); }

/// Names of the built-in table rings.
inline const std::vector<std::string>& table_ring_names() {
  static const std::vector<std::string> names{"F2[x]/(x^3)", "F4", "F2[x]/(x^2)", "UT2(F2)", "M2(F2)"};
  return names;
}

inline Ring table_ring(const std::string& name) {
  if (name == "UT2(F2)") return ut2_f2();
  if (name == "M2(F2)") return f2_matrix_ring(name, 2, {0b0001, 0b0010, 0b0100, 0b1000});
  if (name == "F4") return f2_matrix_ring(name, 2, {0b1001, 0b1110});          // I and [[0,1],[1,1]]
  if (name == "F2[x]/(x^2)") return f2_matrix_ring(name, 2, {0b1001, 0b0010});  // I and a square-zero shift
  if (name == "F2[x]/(x^3)") return f2_matrix_ring(name, 3, {0b100010001, 0b000100010, 0b000000100});
  throw Error(ErrorKind::Malformed, "unknown table ring '" + name + "'");
}

/// Same ring with elements renamed e0, e1, ... in random order, loaded back through the JSON reader.
inline Ring relabelled(const Ring& R, Rng& rng) {
  Json j = ring_to_json(R);
  const std::size_t q = R.order();
  std::vector<std::size_t> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < q; ++i) rename[R.element_name(Int(i))] = "e" + std::to_string(perm[i]);
  Json out;
  out["name"] = R.name() + " relabelled";
  Json elems = Json::array();
  std::vector<std::string> order(q);
  for (std::size_t i = 0; i < q; ++i) order[perm[i]] = R.element_name(Int(i));
  for (const auto& nm : order) elems.push_back(rename[nm]);
  out["elements"] = elems;
  out["zero"] = rename[j["zero"].get<std::string>()];
  out["one"] = rename[j["one"].get<std::string>()];
  for (const char* table : {"add", "mul"}) {
    Json t = Json::array();
    for (const auto& nm_a : order) {
      const std::size_t a = static_cast<std::size_t>(*R.parse_element(nm_a));
      Json row = Json::array();
      for (const auto& nm_b : order) {
        const std::size_t b = static_cast<std::size_t>(*R.parse_element(nm_b));
        row.push_back(rename[j[table][a][b].get<std::string>()]);
      }
      t.push_back(row);
    }
    out[table] = t;
  }
  return ring_from_json(out);
}

/// An 8-element unital, distributive but non-associative table: F2-span of 1, a, b with
/// a*a = b, a*b = 0, b*a = 1, b*b = 0, so (a*a)*a = 1 while a*(a*a) = 0.
inline Json nonassociative_ring_json() {
  // bit 0: 1, bit 1: a, bit 2: b
  const unsigned prod[3][3] = {{1, 2, 4}, {2, 4, 0}, {4, 1, 0}};
  auto mul = [&](unsigned x, unsigned y) {
    unsigned z = 0;
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j)
        if (((x >> i) & 1u) && ((y >> j) & 1u)) z ^= prod[i][j];
    return z;
  };
  Json j;
  j["name"] = "broken associativity";
  Json elems = Json::array(), add = Json::array(), m = Json::array();
  for (unsigned x = 0; x < 8; ++x) elems.push_back("u" + std::to_string(x));
  for (unsigned x = 0; x < 8; ++x) {
    Json ra = Json::array(), rm = Json::array();
    for (unsigned y = 0; y < 8; ++y) {
      ra.push_back("u" + std::to_string(x ^ y));
      rm.push_back("u" + std::to_string(mul(x, y)));
    }
    add.push_back(ra);
    m.push_back(rm);
  }
  j["elements"] = elems;
  j["zero"] = "u0";
  j["one"] = "u1";
  j["add"] = add;
  j["mul"] = m;
  return j;
}

/// Ring by name: "Z", "Z/n", a built-in table ring, a file under corpus/rings, or a path.
inline Ring resolve_ring(const std::string& ref) {
  if (auto r = detail::builtin_ring(ref)) return *r;
  const auto& names = table_ring_names();
  if (std::find(names.begin(), names.end(), ref) != names.end()) return table_ring(ref);
  if (ref == "UT2") return ut2_f2();
  for (const auto& cand : {corpus_dir() / "rings" / (ref + ".json"), corpus_dir() / "rings" / ref, std::filesystem::path(ref)})
    if (std::filesystem::is_regular_file(cand)) return load_ring_file(cand.string());
  throw Error(ErrorKind::Malformed, "unknown ring '" + ref + "'");
}

/// File path as given, or relative to the corpus subdirectory.
inline std::filesystem::path resolve_corpus_file(const std::string& ref, const char* subdir) {
  std::filesystem::path p(ref);
  if (std::filesystem::is_regular_file(p)) return p;
  for (const auto& cand : {corpus_dir() / subdir / ref, corpus_dir() / ref})
    if (std::filesystem::is_regular_file(cand)) return cand;
  throw Error(ErrorKind::Malformed, "cannot find '" + ref + "'");
}

/// M / N for a subgroup N that is closed under the action.
inline Module quotient_module(const Subgroup& N, const std::string& label = "") {
  if (N.arity() != 1) throw Error(ErrorKind::Unsupported, "quotient by a subgroup of M^n with n > 1");
  (void)as_module(N);  // rejects subgroups that are not submodules
  const Module& M = N.module();
  const Ring& R = M.ring();
  std::vector<IntMatrix> act;
  if (R.kind() == RingKind::FiniteTable)
    for (const Int& r : R.elements()) act.push_back(M.action(r));
  return Module::presented(R, M.side(), N.lattice(), std::move(act), label.empty() ? M.label() + " / N" : label);
}

/// Submodule generated by the given elements (finite rings, or Z/n and Z via scalars).
inline Subgroup submodule_generated(const Module& M, const std::vector<IntVector>& gens) {
  std::vector<IntVector> all;
  const Ring& R = M.ring();
  for (const auto& g : gens) {
    if (R.kind() == RingKind::FiniteTable)
      for (const Int& r : R.elements()) all.push_back(M.act_on(r, g));
    else all.push_back(g);
  }
  return Subgroup::generated(M, 1, all);
}

/// Invariant-factor chains d1 | d2 | ... with product <= max_order and each d dividing `exponent` (0: no limit).
inline std::vector<std::vector<Int>> abelian_group_types(long max_order, long exponent = 0) {
  std::vector<std::vector<Int>> out{{}};
  std::vector<std::vector<long>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& chain : frontier) {
      long prod = 1;
      for (long d : chain) prod *= d;
      const long start = chain.empty() ? 2 : chain.back();
      for (long d = start; prod * d <= max_order; d += chain.empty() ? 1 : chain.back()) {
        if (exponent != 0 && exponent % d != 0) continue;
        auto c = chain;
        c.push_back(d);
        next.push_back(c);
        std::vector<Int> ints;
        for (long v : c) ints.emplace_back(v);
        out.push_back(ints);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Finite modules of order <= max_order used by the property suites.
///  Z, Z/n: every abelian group of that size (exponent dividing n over Z/n).
///  table rings: 0, R, R (+) R when small enough, Ra and R/Ra for every a.
inline std::vector<Module> corpus_modules(const Ring& R, long max_order, Side side = Side::Left) {
  std::vector<Module> out;
  if (R.kind() != RingKind::FiniteTable) {
    const long exponent = R.is_integers() ? 0 : static_cast<long>(R.modulus());
    for (const auto& t : abelian_group_types(max_order, exponent)) out.push_back(Module::fg_abelian(R, 0, t, side));
    return out;
  }
  const Module& reg = regular_module(R, side);
  out.push_back(Module::zero(R, side));
  out.push_back(reg);
  if (static_cast<long>(R.order() * R.order()) <= max_order) out.push_back(Module::direct_sum(reg, reg));
  std::vector<Subgroup> seen;
  for (const Int& a : R.elements()) {
    if (a == 0 || a == 1) continue;
    Subgroup ra = submodule_generated(reg, {R.coords(a)});
    if (std::find(seen.begin(), seen.end(), ra) != seen.end()) continue;
    seen.push_back(ra);
    out.push_back(as_module(ra).module);
    out.push_back(quotient_module(ra, R.name() + " / " + R.name() + R.element_name(a)));
  }
  return out;
}

struct CorpusRing {
  std::string name;
  Ring ring;
};

/// Z; Z/n for n in {2,3,4,5,6,8,9,12}; UT2(F2); one seeded random relabelled table ring.
inline std::vector<CorpusRing> default_corpus(std::uint64_t seed) {
  std::vector<CorpusRing> out;
  out.push_back({"Z", Ring::integers()});
  for (int n : {2, 3, 4, 5, 6, 8, 9, 12}) out.push_back({"Z/" + std::to_string(n), Ring::integers_mod(Int(n))});
  out.push_back({"UT2(F2)", ut2_f2()});
  Rng rng(seed);
  const auto& names = table_ring_names();
  const std::string pick = names[rng() % names.size()];
  Ring R = relabelled(table_ring(pick), rng);
  out.push_back({R.name(), R});
  return out;
}

inline std::vector<CorpusRing> finite_corpus(std::uint64_t seed) {
  auto all = default_corpus(seed);
  std::erase_if(all, [](const CorpusRing& c) { return !c.ring.is_finite(); });
  return all;
}

}  // namespace ppcalc
