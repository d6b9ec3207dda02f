#pragma once

// Property suites over the bundled corpus. Each returns a SuiteResult with the
// number of cases, failures and the first few counterexamples. The numbered
// acceptance checks and the wider invariant suites share this code.

#include "ppcalc/classify.hpp"
#include "ppcalc/corpus.hpp"
#include "ppcalc/enumerate.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/oracle.hpp"
#include "ppcalc/order.hpp"
#include "ppcalc/parser.hpp"
#include "ppcalc/regions.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"
#include "ppcalc/ulm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ppcalc::suites {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
  std::string error;  // an exception escaped the suite
  double seconds = 0;
  bool passed() const { return failures == 0 && error.empty(); }
};

class Recorder {
 public:
  static constexpr std::size_t kKeep = 5;

  explicit Recorder(std::string name) { r_.name = std::move(name); }

  bool expect(bool ok, const std::function<std::string()>& what) {
    ++r_.cases;
    if (!ok) {
      ++r_.failures;
      if (r_.counterexamples.size() < kKeep) r_.counterexamples.push_back(what());
    }
    return ok;
  }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }
  SuiteResult& result() { return r_; }

 private:
  SuiteResult r_;
};

/// Runs body(recorder), timing it and turning escaped exceptions into a failed result.
inline SuiteResult run(const std::string& name, const std::function<void(Recorder&)>& body) {
  Recorder rec(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.result().error = e.what();
  }
  rec.result().seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec.result();
}

inline std::string show(const PpFormula& f) { return print(f) + " over " + f.ring().name(); }

// per-ring stream derived from the suite seed
inline Rng ring_rng(std::uint64_t seed, std::size_t ring_index, std::uint64_t salt) {
  return Rng(seed * 0x9E3779B97F4A7C15ull + ring_index * 1315423911ull + salt);
}

// ---------------------------------------------------------------------------
// numbered acceptance checks

/// The four unary classes over Z/4 form a chain, the middle two lie in E, and Z/2 + Z/4 separates them.
inline SuiteResult z4_regions() {
  return run("z4 lattice chain", [](Recorder& rec) {
    const Ring R = Ring::integers_mod(Int(4));
    const Module sep = module_from_json(read_json_file(resolve_corpus_file("z2_plus_z4.json", "modules").string()), R);
    rec.expect(abelian_invariants(sep).torsion == std::vector<Int>{Int(2), Int(4)}, [&] { return "corpus separator is " + sep.label(); });
    RegionsReport rep = formula_regions(R, Side::Left, 6, {regular_module(R, Side::Left), sep});
    const std::vector<PpFormula> chain{parse("x = 0", R, Side::Left), parse("2|x", R, Side::Left),
                                       parse("2x = 0", R, Side::Left), parse("x = x", R, Side::Left)};
    rec.expect(rep.classes.size() == 4, [&] { return std::to_string(rep.classes.size()) + " classes instead of 4"; });
    rec.expect(rep.is_chain, [] { return std::string("classes do not form a chain"); });
    for (std::size_t i = 0; i < chain.size() && i < rep.classes.size(); ++i)
      rec.expect(equiv(rep.classes[i].representative, chain[i]),
                 [&] { return "class " + std::to_string(i) + " is " + print(rep.classes[i].representative); });
    for (std::size_t i : {1u, 2u}) {
      const Classification c = classify(chain[i]);
      rec.expect(c.region == Region::E && c.bounded && c.cobounded, [&] { return print(chain[i]) + " is not in E"; });
    }
    rec.expect(classify(chain[0]).region == Region::S, [] { return std::string("x = 0 is not in S"); });
    rec.expect(classify(chain[3]).region == Region::N, [] { return std::string("x = x is not in N"); });
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      Subgroup lo = evaluate(chain[i], sep), hi = evaluate(chain[i + 1], sep);
      rec.expect(lo.subset_of(hi) && lo != hi,
                 [&] { return print(chain[i]) + " and " + print(chain[i + 1]) + " are not strictly ordered in " + sep.label(); });
    }
    // in the regular module the two middle classes coincide, so the separator is needed
    rec.expect(evaluate(chain[1], regular_module(R, Side::Left)) == evaluate(chain[2], regular_module(R, Side::Left)),
               [] { return std::string("2|x and 2x = 0 differ on Z/4 itself"); });
  });
}

/// high XOR bounded and low XOR cobounded, each side computed independently.
inline SuiteResult dichotomies(std::uint64_t seed, std::size_t per_ring = 500) {
  return run("dichotomies", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 2);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng);
        const Classification c = classify(f);
        // bounded: the kernel witness, checked by implication
        const KernelBound kb = bounded_by_kernel(f);
        bool bounded = kb.bounded && implies(f, PpFormula::annihilation(R, Side::Left, kb.r));
        // low: f(R) = 0, read off the regular module
        const bool low = evaluate(f, regular_module(R, Side::Left)).is_zero();
        // cobounded: some s != 0 with s|x <= f, decided through free realizations
        bool cobounded = false;
        if (R.is_finite()) {
          for (const Int& s : R.elements())
            if (s != 0 && implies(PpFormula::divisibility(R, Side::Left, s), f)) {
              cobounded = true;
              break;
            }
        } else if (c.cobound_witness) {
          cobounded = implies(PpFormula::divisibility(R, Side::Left, *c.cobound_witness), f);
        } else {
          for (long s = 1; s <= 60 && !cobounded; ++s) cobounded = implies(PpFormula::divisibility(R, Side::Left, Int(s)), f);
        }
        rec.expect(c.high != bounded, [&] { return "high/bounded: " + show(f); });
        rec.expect(low != cobounded, [&] { return "low/cobounded: " + show(f); });
        rec.expect(c.low == low && c.bounded == bounded && c.cobounded == cobounded,
                   [&] { return "classifier disagrees with direct criteria: " + show(f); });
        rec.expect(c.region == detail::region_of(c.high, c.low, c.bounded, c.cobounded), [&] { return "region: " + show(f); });
      }
    }
  });
}

/// high(f) = low(Df), bounded(f) = cobounded(Df), DDf ~ f.
inline SuiteResult duality(std::uint64_t seed, std::size_t per_ring = 500) {
  return run("duality", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 3);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng);
        const PpFormula d = dual(f);
        const Classification cf = classify(f), cd = classify(d);
        rec.expect(cf.high == cd.low, [&] { return "high(f) != low(Df): " + show(f); });
        rec.expect(cf.bounded == cd.cobounded, [&] { return "bounded(f) != cobounded(Df): " + show(f); });
        rec.expect(cf.low == cd.high && cf.cobounded == cd.bounded, [&] { return "low/high mirror: " + show(f); });
        rec.expect(equiv(dual(d), f), [&] { return "DDf not equivalent: " + show(f); });
      }
    }
  });
}

/// presta_solve agrees with the free-realization decision; half the pairs are built to be true.
inline SuiteResult presta_agreement(std::uint64_t seed, std::size_t per_finite_ring = 500, std::size_t over_z = 200) {
  return run("presta vs free realization", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    std::size_t positives = 0;
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 4);
      const std::size_t count = R.is_finite() ? per_finite_ring : over_z;
      for (std::size_t i = 0; i < count; ++i) {
        PpFormula f = random_formula(R, Side::Left, rng);
        PpFormula g = random_formula(R, Side::Left, rng);
        if (i % 4 == 1) g = join(f, g);          // f <= f + g
        else if (i % 4 == 3) f = meet(g, f);     // g & f <= g
        const bool imp = implies(f, g);
        const PrestaResult p = presta_solve(f, g);
        positives += imp;
        rec.expect(p.solvable == imp, [&] { return "presta " + std::string(p.solvable ? "solvable" : "unsolvable") + " for " + show(f) + " <= " + print(g); });
        if (p.solvable) rec.expect(verify_presta(f, g, p), [&] { return "presta witness fails: " + show(f) + " <= " + print(g); });
      }
    }
    rec.note(std::to_string(positives) + " implications held");
  });
}

/// No basic r|sx lands in E over Z; over Z/4 and Z/6 one does. Every row agrees with the ring criteria.
inline SuiteResult domain_regions() {
  return run("domain characterization", [](Recorder& rec) {
    auto table_check = [&](const Ring& R, bool expect_e) {
      bool found = false;
      for (const RdEntry& e : rd_table(R, 5)) {
        found = found || e.classification.region == Region::E;
        rec.expect(e.agrees(), [&] { return "criteria disagree at r = " + e.r.str() + ", s = " + e.s.str() + " over " + R.name(); });
        if (!expect_e)
          rec.expect(e.classification.region != Region::E, [&] { return show(e.formula) + " lands in E"; });
      }
      if (expect_e) rec.expect(found, [&] { return "no E-region basic formula over " + R.name(); });
    };
    table_check(Ring::integers(), false);
    table_check(Ring::integers_mod(Int(6)), true);
    table_check(Ring::integers_mod(Int(4)), true);
  });
}

/// bounded_by_kernel matches the classifier on every formula of size <= max_size.
inline SuiteResult kernel_bound_crosscheck(std::size_t max_size = 4) {
  return run("kernel criterion, size <= " + std::to_string(max_size), [=](Recorder& rec) {
    for (int n : {4, 6, 8}) {
      const Ring R = Ring::integers_mod(Int(n));
      for (const PpFormula& f : unary_formulas(R, Side::Left, max_size)) {
        const KernelBound kb = bounded_by_kernel(f);
        const Classification c = classify(f);
        rec.expect(kb.bounded == c.bounded, [&] { return "kernel criterion disagrees: " + show(f); });
        if (kb.bounded)
          rec.expect(kb.r != 0 && implies(f, PpFormula::annihilation(R, Side::Left, kb.r)),
                     [&] { return "bound r = " + kb.r.str() + " does not bound " + show(f); });
      }
    }
  });
}

namespace detail {

inline HeightForest chain_forest(const Int& p, int n) {
  HeightForest F(p);
  int parent = -1;
  for (int i = 0; i < n; ++i) parent = F.add_node("c" + std::to_string(i), parent);
  return F;
}

inline HeightForest h_omega_plus_one(const Int& p) {
  HeightForest F(p);
  F.node(static_cast<std::size_t>(F.add_node("a"))).rep_all = true;
  return F;
}

inline HeightForest prufer_forest(const Int& p) {
  HeightForest F(p);
  F.node(static_cast<std::size_t>(F.add_node("a"))).divisible = true;
  return F;
}

inline HeightForest random_forest(Rng& rng) {
  static const long primes[] = {2, 3, 5};
  HeightForest F(Int(primes[rng() % 3]));
  const std::size_t n = rng() % 7;
  for (std::size_t i = 0; i < n; ++i) {
    const int parent = (i == 0 || rng() % 3 == 0) ? -1 : static_cast<int>(rng() % i);
    ForestNode& nd = F.node(static_cast<std::size_t>(F.add_node("n" + std::to_string(i), parent)));
    switch (rng() % 6) {
      case 0: nd.rep_all = true; break;
      case 1: nd.rep_lengths = {1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 4)}; break;
      case 2: nd.divisible = rng() % 2 == 0; break;
      default: break;
    }
  }
  return F;
}

inline HeightForest with_prime(HeightForest F, const Int& p) {
  HeightForest G(p);
  for (const auto& nd : F.nodes()) {
    ForestNode& c = G.node(static_cast<std::size_t>(G.add_node(nd.name, nd.parent)));
    c.rep_all = nd.rep_all;
    c.rep_lengths = nd.rep_lengths;
    c.divisible = nd.divisible;
  }
  return G;
}

}  // namespace detail

/// Ulm lengths of the basic forests, direct-sum commutation, truncation evidence for h = omega.
inline SuiteResult ulm_trees(std::uint64_t seed, std::size_t pairs = 100) {
  return run("ulm forests", [=](Recorder& rec) {
    for (long p : {2L, 3L, 5L})
      for (int n = 1; n <= 6; ++n) {
        const HeightForest F = detail::chain_forest(Int(p), n);
        const UlmReport u = ulm_sequence(F);
        rec.expect(u.length == 1 && u.heights.front() == Ordinal::finite(n - 1) && u.heights.back() == Ordinal::finite(0),
                   [&] { return "Z/" + std::to_string(p) + "^" + std::to_string(n) + " forest"; });
        rec.expect(u.levels.size() > 1 && u.levels[1].nodes.empty(), [&] { return "first Ulm submodule of a chain is not 0"; });
      }
    for (long p : {2L, 3L}) {
      const UlmReport pr = ulm_sequence(detail::prufer_forest(Int(p)));
      rec.expect(pr.length == 0 && pr.heights[0].is_infinite(), [&] { return "Prufer forest for p = " + std::to_string(p); });
      const UlmReport h = ulm_sequence(detail::h_omega_plus_one(Int(p)));
      rec.expect(h.length == 2 && h.heights[0] == Ordinal::omega(), [&] { return "H_(w+1) length " + std::to_string(h.length); });
      rec.expect(h.levels.size() == 3 && h.levels[1].nodes == std::vector<std::string>{"a"} &&
                     h.levels[1].cyclic_decomposition == std::vector<Int>{Int(p)} && h.levels[2].nodes.empty(),
                 [] { return std::string("first Ulm submodule of H_(w+1) is not Z/p on the root"); });
      for (long N : {3L, 5L, 8L}) {
        const long th = truncated_height(detail::h_omega_plus_one(Int(p)), 0, N);
        rec.expect(th >= N, [&] { return "truncation at N = " + std::to_string(N) + " gives height " + std::to_string(th); });
      }
    }
    // the bundled forest files describe the same groups
    const UlmReport hf = ulm_sequence(load_forest_file(resolve_corpus_file("h_omega_plus_1.forest", "forests").string()));
    rec.expect(hf.length == 2 && hf.levels.size() == 3 && hf.levels[1].cyclic_decomposition &&
                   hf.levels[1].cyclic_decomposition->size() == 1,
               [&] { return "h_omega_plus_1.forest has Ulm length " + std::to_string(hf.length); });
    const UlmReport pf = ulm_sequence(load_forest_file(resolve_corpus_file("prufer.forest", "forests").string()));
    rec.expect(pf.length == 0, [&] { return "prufer.forest has Ulm length " + std::to_string(pf.length); });
    const UlmReport cf = ulm_sequence(load_forest_file(resolve_corpus_file("cyclic.forest", "forests").string()));
    rec.expect(cf.length == 1, [&] { return "cyclic.forest has Ulm length " + std::to_string(cf.length); });
    Rng rng(seed ^ 0x51ull);
    for (std::size_t i = 0; i < pairs; ++i) {
      const HeightForest F1 = detail::random_forest(rng);
      const HeightForest F2 = detail::with_prime(detail::random_forest(rng), F1.prime());
      const UlmReport u1 = ulm_sequence(F1), u2 = ulm_sequence(F2);
      const UlmReport u = ulm_sequence(HeightForest::disjoint_union(F1, F2));
      rec.expect(u.length == std::max(u1.length, u2.length),
                 [&] { return "length of sum " + std::to_string(u.length) + " vs " + std::to_string(u1.length) + ", " + std::to_string(u2.length); });
      const std::size_t top = std::max({u.levels.size(), u1.levels.size(), u2.levels.size()}) + 1;
      for (std::size_t tau = 0; tau < top; ++tau) {
        auto level = [&](const UlmReport& r, const char* prefix) {
          std::vector<std::string> out;
          const auto& lv = tau < r.levels.size() ? r.levels[tau].nodes : r.levels.back().nodes;
          for (const auto& nm : lv) out.push_back(prefix + nm);
          return out;
        };
        std::vector<std::string> expected = level(u1, "a.");
        for (auto& s : level(u2, "b.")) expected.push_back(s);
        rec.expect(level(u, "") == expected, [&] { return "level " + std::to_string(tau) + " of a direct sum"; });
      }
    }
  });
}

/// Finite modules: the bounded Ulm submodule stabilizes by the bound and is idempotent.
inline SuiteResult pure_injective_bound(std::size_t bound = 4, std::size_t zn_extra_bound = 6) {
  return run("finite modules have Ulm length <= 1", [=](Recorder& rec) {
    auto check = [&](const Module& M, const std::vector<PpFormula>& highs, std::size_t B) {
      const UlmBounded u = ulm_bounded(M, B, highs);
      rec.expect(u.stabilized, [&] { return "no stabilization at " + std::to_string(B) + " for " + M.label() + " over " + M.ring().name(); });
      const Submodule sub = as_module(u.value);
      const UlmBounded again = ulm_bounded(sub.module, B, highs);
      rec.expect(sub.embed(again.value) == u.value, [&] { return "not idempotent at " + std::to_string(B) + " for " + M.label() + " over " + M.ring().name(); });
    };
    {
      const Ring Z = Ring::integers();
      const auto highs = high_formulas(Z, Side::Left, bound);
      for (const Module& M : corpus_modules(Z, 64)) check(M, highs, bound);
    }
    for (int n : {4, 6, 8, 9, 12}) {
      const Ring R = Ring::integers_mod(Int(n));
      const auto highs = high_formulas(R, Side::Left, std::max(bound, zn_extra_bound));
      for (const Module& M : corpus_modules(R, 64)) {
        check(M, highs, bound);
        if (zn_extra_bound > bound) check(M, highs, zn_extra_bound);
      }
    }
  });
}

/// Over Z/4 and Z/6 every high formula is trivial and the divisible part is everything.
inline SuiteResult absolutely_pure_rings(std::size_t bound = 4, std::size_t extra_bound = 6) {
  return run("absolutely pure rings", [=](Recorder& rec) {
    for (int n : {4, 6}) {
      const Ring R = Ring::integers_mod(Int(n));
      const PpFormula top = PpFormula::top(R, Side::Left);
      for (const PpFormula& f : high_formulas(R, Side::Left, std::max(bound, extra_bound)))
        rec.expect(equiv(f, top), [&] { return "high but not trivial: " + show(f); });
      for (const Module& M : corpus_modules(R, 64))
        rec.expect(ulm_div(M).is_whole(), [&] { return "divisible part of " + M.label() + " over " + R.name() + " is proper"; });
      rec.expect(ulm_div(regular_module(R, Side::Left)).is_whole(), [&] { return "divisible part of " + R.name(); });
    }
  });
}

/// Regular modules are flat and (at these sizes) absolutely pure; Z/2 over Z/4 shows both defects.
inline SuiteResult fact_defects(std::uint64_t seed, std::size_t bound = 4) {
  return run("flat and absolutely pure defects", [=](Recorder& rec) {
    for (const auto& c : finite_corpus(seed)) {
      const Module& reg = regular_module(c.ring, Side::Left);
      for (const PpFormula& f : unary_formulas(c.ring, Side::Left, bound)) {
        rec.expect(!flat_defect(f, reg).has_defect(), [&] { return "flat defect in the regular module: " + show(f); });
        rec.expect(!abspure_defect(f, reg).has_defect(), [&] { return "absolutely pure defect in the regular module: " + show(f); });
      }
    }
    const Ring R = Ring::integers_mod(Int(4));
    const Module M = Module::abelian(R, 0, {Int(2)});
    const DefectPair flat = flat_defect(parse("2x = 0", R, Side::Left), M);
    rec.expect(flat.has_defect() && flat.value.is_whole() && flat.reference.is_zero(),
               [] { return std::string("Z/2 over Z/4: no flat defect at 2x = 0"); });
    const DefectPair ap = abspure_defect(parse("2|x", R, Side::Left), M);
    rec.expect(ap.has_defect() && ap.value.is_zero() && ap.reference.is_whole(),
               [] { return std::string("Z/2 over Z/4: no absolutely pure defect at 2|x"); });
  });
}

/// r f(M) = 0 gives an ascending chain r^-n f(M); where it stalls, r^(n+1) M meets f(M) trivially.
inline SuiteResult rinverse_chains(std::uint64_t seed, std::size_t triples = 200) {
  return run("inverse chains", [=](Recorder& rec) {
    const auto corpus = finite_corpus(seed);
    std::vector<std::pair<Ring, std::vector<Module>>> pools;
    for (const auto& c : corpus) pools.emplace_back(c.ring, corpus_modules(c.ring, 64));
    Rng rng(seed ^ 0xC4A1ull);
    std::size_t done = 0, attempts = 0;
    while (done < triples) {
      if (++attempts > triples * 200) throw Error(ErrorKind::CapExceeded, "could not draw enough triples");
      const auto& [R, mods] = pools[rng() % pools.size()];
      const Module& M = mods[rng() % mods.size()];
      const PpFormula f = random_formula(R, M.side(), rng);
      const Subgroup value = evaluate(f, M);
      std::vector<Int> killers;
      for (const Int& r : R.elements())
        if (value.scaled(r).is_zero()) killers.push_back(r);
      const Int r = killers[rng() % killers.size()];  // 0 always qualifies
      ++done;
      const auto describe = [&] { return "r = " + R.element_name(r) + ", " + show(f) + ", M = " + M.label(); };
      PpFormula fn = f;  // r^-n f
      Subgroup cur = value;
      Subgroup whole = Subgroup::whole(M);
      Subgroup rn1 = whole.scaled(r);  // r^(n+1) M
      for (std::size_t n = 0; n <= M.gens() * 8 + 2; ++n) {
        const PpFormula next_f = inverse(r, fn);
        const Subgroup next = evaluate(next_f, M);
        rec.expect(next == cur.preimage_under(r), [&] { return "inverse formula value at n = " + std::to_string(n) + ": " + describe(); });
        rec.expect(cur.subset_of(next), [&] { return "chain not ascending at n = " + std::to_string(n) + ": " + describe(); });
        Subgroup killed = cur;
        for (std::size_t j = 0; j <= n; ++j) killed = killed.scaled(r);
        rec.expect(killed.is_zero(), [&] { return "r^(n+1) does not kill r^-n f(M) at n = " + std::to_string(n) + ": " + describe(); });
        if (next == cur)
          rec.expect(intersect(rn1, value).is_zero(), [&] { return "stalled at n = " + std::to_string(n) + " but r^(n+1)M meets f(M): " + describe(); });
        fn = next_f;
        cur = next;
        rn1 = rn1.scaled(r);
      }
    }
  });
}

// ---------------------------------------------------------------------------
// wider invariant suites

/// t in l(A) iff tA = 0, for random matrices over the finite corpus rings.
inline SuiteResult annihilators(std::uint64_t seed, std::size_t per_ring = 30) {
  return run("annihilators", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 11);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const std::size_t m = 1 + rng() % 2, n = 1 + rng() % 2;
        IntMatrix A(m, n);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < n; ++b) A(a, b) = random_element(R, rng);
        const VectorSet l = left_annihilator(R, A);
        auto kills = [&](const IntVector& t) {
          for (std::size_t b = 0; b < n; ++b) {
            Int s = 0;
            for (std::size_t a = 0; a < m; ++a) s = R.add(s, R.mul(t[a], A(a, b)));
            if (s != 0) return false;
          }
          return true;
        };
        if (R.is_finite()) {
          std::set<IntVector> members(l.elements.begin(), l.elements.end());
          for (const auto& t : l.elements) rec.expect(kills(t), [&] { return "returned vector does not annihilate over " + R.name(); });
          for (int j = 0; j < 100; ++j) {
            IntVector t(m);
            for (auto& x : t) x = random_element(R, rng);
            if (!members.count(t)) rec.expect(!kills(t), [&] { return "annihilating vector missing over " + R.name(); });
          }
        } else {
          for (std::size_t b = 0; b < l.basis.rows(); ++b)
            rec.expect(kills(l.basis.row_vector(b)), [&] { return "kernel basis row fails over Z"; });
          IntVector t(m);
          for (auto& x : t) x = random_element(R, rng);
          ZLattice lat = l.basis.rows() ? ZLattice::span(l.basis) : ZLattice(m);
          rec.expect(kills(t) == lat.contains(t), [&] { return "kernel membership over Z"; });
        }
      }
      if (R.is_finite()) {
        rec.expect(left_annihilator(R, IntMatrix::identity(2)).elements.size() == 1, [&] { return "l(I) != 0 over " + R.name(); });
        rec.expect(left_annihilator(R, IntMatrix(1, 1)).elements.size() == R.order(), [&] { return "l(0) != R over " + R.name(); });
      }
    }
  });
}

/// Evaluation agrees with brute force, and with meet, join, multiples and inverses.
inline SuiteResult evaluation(std::uint64_t seed, std::size_t per_ring = 40) {
  return run("evaluation", [=](Recorder& rec) {
    const auto corpus = finite_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 12);
      const auto mods = corpus_modules(R, 16);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const Module& M = mods[rng() % mods.size()];
        const PpFormula f = random_formula(R, Side::Left, rng), g = random_formula(R, Side::Left, rng);
        const Int r = random_element(R, rng);
        const Subgroup vf = evaluate(f, M), vg = evaluate(g, M);
        auto ctx = [&] { return show(f) + " / " + print(g) + " in " + M.label(); };
        if (std::pow(static_cast<double>(M.order()), static_cast<double>(1 + f.witnesses())) < 2e5)
          rec.expect(oracle::evaluate(f, M) == oracle::as_index_set(vf), [&] { return "brute force differs: " + ctx(); });
        rec.expect(evaluate(meet(f, g), M) == intersect(vf, vg), [&] { return "meet: " + ctx(); });
        rec.expect(evaluate(join(f, g), M) == vf + vg, [&] { return "join: " + ctx(); });
        rec.expect(evaluate(multiple(r, f), M) == vf.scaled(r), [&] { return "multiple by " + R.element_name(r) + ": " + ctx(); });
        rec.expect(evaluate(inverse(r, f), M) == vf.preimage_under(r), [&] { return "inverse by " + R.element_name(r) + ": " + ctx(); });
        if (M.order() <= 8) {
          const PpFormula h = random_formula(R, Side::Left, rng, 2);
          Subgroup vh = evaluate(h, M);
          if (std::pow(static_cast<double>(M.order()), static_cast<double>(2 + h.witnesses())) < 2e5)
            rec.expect(oracle::evaluate(h, M) == oracle::as_index_set(vh), [&] { return "binary brute force differs: " + show(h); });
        }
      }
    }
  });
}

/// Homomorphisms carry f(M) into f(M'); checked for multiplication maps and projections of sums.
inline SuiteResult monotonicity(std::uint64_t seed, std::size_t per_ring = 30) {
  return run("monotonicity", [=](Recorder& rec) {
    const auto corpus = finite_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 13);
      const auto mods = corpus_modules(R, 16);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng);
        const Module& A = mods[rng() % mods.size()];
        const Module& B = mods[rng() % mods.size()];
        const Module S = Module::direct_sum(A, B);
        // projection S -> A and inclusion A -> S
        const Subgroup vs = evaluate(f, S), va = evaluate(f, A);
        std::vector<IntVector> proj, incl;
        for (const auto& v : vs.elements()) proj.push_back(IntVector(v.begin(), v.begin() + static_cast<long>(A.gens())));
        for (const auto& v : va.elements()) {
          IntVector w(S.gens());
          std::copy(v.begin(), v.end(), w.begin());
          incl.push_back(w);
        }
        rec.expect(Subgroup::generated(A, 1, proj).subset_of(va), [&] { return "projection: " + show(f) + " on " + S.label(); });
        rec.expect(Subgroup::generated(S, 1, incl).subset_of(vs), [&] { return "inclusion: " + show(f) + " on " + S.label(); });
        if (R.is_commutative()) {
          const Int r = random_element(R, rng);
          rec.expect(va.scaled(r).subset_of(va), [&] { return "multiplication by " + R.element_name(r) + ": " + show(f); });
        }
      }
    }
  });
}

/// Syntax round trips and the lattice identities of the transforms.
inline SuiteResult syntax(std::uint64_t seed, std::size_t per_ring = 40) {
  return run("syntax transforms", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 14);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng), g = random_formula(R, Side::Left, rng),
                        h = random_formula(R, Side::Left, rng), gm = random_formula(R, Side::Left, rng);
        const Int s = random_element(R, rng);
        rec.expect(parse(print(f), R, Side::Left) == f, [&] { return "print/parse: " + show(f); });
        rec.expect(print(parse(print(f), R, Side::Left)) == print(f), [&] { return "parse/print: " + show(f); });
        rec.expect(equiv(dual(meet(f, g)), join(dual(f), dual(g))), [&] { return "D(f & g): " + show(f) + ", " + print(g); });
        rec.expect(equiv(dual(join(f, g)), meet(dual(f), dual(g))), [&] { return "D(f + g): " + show(f) + ", " + print(g); });
        rec.expect(equiv(dual(multiple(s, f)), inverse(s, dual(f))), [&] { return "D(s f) at s = " + R.element_name(s) + ": " + show(f); });
        rec.expect(implies(f, g) == implies(dual(g), dual(f)), [&] { return "duality is not order reversing: " + show(f) + ", " + print(g); });
        rec.expect(equiv(meet(gamma_subscript(f, gm), gamma_subscript(h, gm)), gamma_subscript(meet(f, h), gm)),
                   [&] { return "subscript and meet: " + show(f); });
        rec.expect(equiv(meet(gamma_superscript(f, gm), gamma_superscript(h, gm)), gamma_superscript(meet(f, h), gm)),
                   [&] { return "superscript and meet: " + show(f); });
        rec.expect(equiv(gamma_superscript(f, PpFormula::top(R, Side::Left)), f), [&] { return "superscript by x = x: " + show(f); });
        // transitivity and antisymmetry
        if (implies(f, g) && implies(g, h)) rec.expect(implies(f, h), [&] { return "transitivity: " + show(f); });
        rec.expect(implies(f, f) && implies(PpFormula::bottom(R, Side::Left), f) && implies(f, PpFormula::top(R, Side::Left)),
                   [&] { return "bounds: " + show(f); });
      }
    }
  });
}

/// psi holds of the generic tuple of f iff f <= psi in every corpus module tested.
inline SuiteResult free_realizations(std::uint64_t seed, std::size_t per_ring = 40) {
  return run("free realizations", [=](Recorder& rec) {
    const auto corpus = finite_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 15);
      const auto mods = corpus_modules(R, 16);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng), g = random_formula(R, Side::Left, rng);
        const FreeRealization fr = free_realization(f);
        const bool holds = satisfies(g, fr.module, fr.tuple);
        rec.expect(holds == presta_solve(f, g).solvable, [&] { return "free realization vs presta: " + show(f) + ", " + print(g); });
        if (holds) {
          for (const Module& M : mods)
            rec.expect(evaluate(f, M).subset_of(evaluate(g, M)), [&] { return "unsound in " + M.label() + ": " + show(f) + " <= " + print(g); });
        } else {
          // a separating module exists; the free realization itself is one
          rec.expect(satisfies(f, fr.module, fr.tuple), [&] { return "generic tuple fails its own formula: " + show(f); });
        }
      }
    }
  });
}

/// Witnesses of the classifier are valid; essential formulas are cobounded; W* never occurs.
inline SuiteResult classifier(std::uint64_t seed, std::size_t per_ring = 100) {
  return run("classifier", [=](Recorder& rec) {
    const auto corpus = default_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 16);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula f = random_formula(R, Side::Left, rng);
        const Classification c = classify(f);
        rec.expect(c.region != Region::WStar, [&] { return "W* region: " + show(f); });
        if (c.bound_witness)
          rec.expect(implies(f, PpFormula::annihilation(R, Side::Left, *c.bound_witness)), [&] { return "bound witness: " + show(f); });
        if (c.cobound_witness)
          rec.expect(implies(PpFormula::divisibility(R, Side::Left, *c.cobound_witness), f), [&] { return "cobound witness: " + show(f); });
        rec.expect(c.bounded == c.bound_witness.has_value() && c.cobounded == c.cobound_witness.has_value(),
                   [&] { return "witness presence: " + show(f); });
        if (R.is_finite() && is_essential(f)) rec.expect(c.cobounded, [&] { return "essential but not cobounded: " + show(f); });
        if (R.is_integers()) rec.expect(c.high || c.low, [&] { return "neither high nor low over Z: " + show(f); });
        const Classification cr = classify(random_formula(R, Side::Right, rng));
        rec.expect(cr.region != Region::WStar, [&] { return "W* region on the right over " + R.name(); });
      }
    }
    const Ring Z4 = Ring::integers_mod(Int(4));
    for (const PpFormula& f : unary_formulas(Z4, Side::Left, 4)) {
      rec.expect(phi_membership(f).member, [&] { return "Z/4 formula outside the annihilator set: " + show(f); });
      if (classify(f).high) rec.expect(equiv(f, PpFormula::top(Z4, Side::Left)), [&] { return "nontrivial high formula over Z/4: " + show(f); });
    }
    bool ut2_fails = false;
    for (const PpFormula& f : unary_formulas(ut2_f2(), Side::Left, 3)) ut2_fails = ut2_fails || !phi_membership(f).member;
    rec.expect(ut2_fails, [] { return std::string("every small UT2(F2) formula passes the annihilator membership test"); });
  });
}

/// High formulas are closed under the superscript decoration.
inline SuiteResult gamma_high(std::uint64_t seed, std::size_t per_ring = 200) {
  return run("decorated high formulas", [=](Recorder& rec) {
    const auto corpus = finite_corpus(seed);
    for (std::size_t ri = 0; ri < corpus.size(); ++ri) {
      const Ring& R = corpus[ri].ring;
      Rng rng = ring_rng(seed, ri, 17);
      std::vector<PpFormula> highs;
      for (std::size_t tries = 0; highs.size() < 24 && tries < 4000; ++tries) {
        PpFormula f = random_formula(R, Side::Left, rng);
        if (classify(f).high) highs.push_back(f);
      }
      for (auto& f : high_formulas(R, Side::Left, 5)) highs.push_back(f);
      for (std::size_t i = 0; i < per_ring; ++i) {
        const PpFormula& g = highs[rng() % highs.size()];
        const PpFormula& d = highs[rng() % highs.size()];
        rec.expect(check_gamma_high(g, d), [&] { return "decoration by " + print(g) + " of " + show(d) + " is not high"; });
      }
    }
  });
}

/// Ulm bounds inside the divisible part; divisibility formulas generate the high filter over Z.
inline SuiteResult ulm_modules(std::uint64_t seed, std::size_t z_formulas = 150) {
  return run("ulm on modules", [=](Recorder& rec) {
    for (const auto& c : finite_corpus(seed)) {
      const auto highs = high_formulas(c.ring, Side::Left, 6);
      for (const Module& M : corpus_modules(c.ring, 32))
        for (std::size_t B : {4u, 6u})
          rec.expect(ulm_bounded(M, B, highs).value.subset_of(ulm_div(M)),
                     [&] { return "bounded Ulm submodule not inside the divisible part: " + M.label() + " over " + c.ring.name(); });
    }
    const Ring Z = Ring::integers();
    Rng rng(seed ^ 0x2Aull);
    std::size_t seen = 0;
    for (std::size_t tries = 0; seen < z_formulas && tries < z_formulas * 50; ++tries) {
      const PpFormula f = random_formula(Z, Side::Left, rng);
      if (!classify(f).high) continue;
      ++seen;
      // f(Z) = gZ with g != 0 since high formulas over Z are cobounded; g | x <= f
      const Classification c = classify(f);
      bool found = false;
      if (c.cobound_witness && *c.cobound_witness <= 1000)
        for (Int n = 1; n <= *c.cobound_witness && !found; ++n) found = implies(PpFormula::divisibility(Z, Side::Left, n), f);
      rec.expect(found, [&] { return "no n <= 1000 with n|x <= " + show(f); });
    }
    rec.note(std::to_string(seen) + " high formulas over Z");
    const Ring Z6 = Ring::integers_mod(Int(6));
    rec.expect(ulm_bounded(regular_module(Z6, Side::Left), 4).stabilized, [] { return std::string("Z/6 not stabilized at 4"); });
    rec.expect(ulm_div(Module::abelian(Z, 0, {Int(2), Int(4)})).is_zero(), [] { return std::string("Z/2 + Z/4 has a divisible part"); });
  });
}

/// A table ring whose multiplication is not associative is rejected at load time.
inline SuiteResult corrupted_ring() {
  return run("corrupted ring rejected", [](Recorder& rec) {
    auto check = [&](const std::string& what, const std::function<Ring()>& load) {
      bool rejected = false;
      std::string why;
      try {
        (void)load();
      } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::Malformed && std::string(e.what()).find("associativity") != std::string::npos;
        why = e.what();
      }
      rec.expect(rejected, [&] { return what + ": broken table accepted"; });
      if (rejected) rec.note(what + " rejected: " + why);
    };
    check("generated table", [] { return ring_from_json(nonassociative_ring_json()); });
    check("broken_assoc.json", [] { return load_ring_file(resolve_corpus_file("broken_assoc.json", "rings").string()); });
  });
}

struct Sizes {
  std::size_t random_formulas = 500;
  std::size_t presta_finite = 500;
  std::size_t presta_z = 200;
  std::size_t forest_pairs = 100;
  std::size_t chain_triples = 200;
};

/// The eleven numbered checks, in order.
inline std::vector<std::function<SuiteResult()>> acceptance_checks(std::uint64_t seed, const Sizes& s = {}) {
  return {
      [] { return z4_regions(); },
      [=] { return dichotomies(seed, s.random_formulas); },
      [=] { return duality(seed, s.random_formulas); },
      [=] { return presta_agreement(seed, s.presta_finite, s.presta_z); },
      [] { return domain_regions(); },
      [] { return kernel_bound_crosscheck(4); },
      [=] { return ulm_trees(seed, s.forest_pairs); },
      [] { return pure_injective_bound(4, 6); },
      [] { return absolutely_pure_rings(4, 6); },
      [=] { return fact_defects(seed, 4); },
      [=] { return rinverse_chains(seed, s.chain_triples); },
  };
}

/// Everything: the numbered checks followed by the wider invariant suites.
inline std::vector<std::function<SuiteResult()>> all_suites(std::uint64_t seed, const Sizes& s = {}) {
  auto out = acceptance_checks(seed, s);
  out.push_back([] { return kernel_bound_crosscheck(6); });
  out.push_back([=] { return annihilators(seed); });
  out.push_back([=] { return evaluation(seed); });
  out.push_back([=] { return monotonicity(seed); });
  out.push_back([=] { return syntax(seed); });
  out.push_back([=] { return free_realizations(seed); });
  out.push_back([=] { return classifier(seed); });
  out.push_back([=] { return gamma_high(seed); });
  out.push_back([=] { return ulm_modules(seed); });
  out.push_back([] { return corrupted_ring(); });
  return out;
}

}  // namespace ppcalc::suites
