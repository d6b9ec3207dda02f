#pragma once

// Bounded enumeration and random generation of pp formulas.

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/ring.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ppcalc {

/// Entry range used over Z for enumeration and random generation.
inline constexpr long kIntegerEntryRange = 5;

using Rng = std::mt19937_64;

/// Nonzero scalars that enumeration may place in a matrix.
inline std::vector<Int> nonzero_scalars(const Ring& R, long int_range = kIntegerEntryRange) {
  std::vector<Int> out;
  if (R.is_finite()) {
    for (std::size_t i = 1; i < R.order(); ++i) out.emplace_back(i);
  } else {
    for (long v = 1; v <= int_range; ++v) {
      out.emplace_back(v);
      out.emplace_back(-v);
    }
  }
  return out;
}

/// Every canonical unary formula of size <= max_size (entries over Z limited to [-int_range, int_range]),
/// ordered by size, then shape, then entries.
inline std::vector<PpFormula> unary_formulas(const Ring& R, Side side, std::size_t max_size,
                                             long int_range = kIntegerEntryRange) {
  std::vector<PpFormula> out;
  if (max_size < 2) return out;
  const std::vector<Int> vals = nonzero_scalars(R, int_range);
  std::vector<std::vector<PpFormula>> by_size(max_size + 1);
  by_size[2].push_back(PpFormula::top(R, side));
  for (std::size_t m = 1; m + 1 + 1 <= max_size; ++m)
    for (std::size_t k = 0; m + k + 1 + std::max(m, k) <= max_size; ++k) {
      const std::size_t cells = m * (k + 1);  // A entries then B entry per row
      const std::size_t budget = max_size - (m + k + 1);
      if (cells > 20) continue;
      for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
        const std::size_t nnz = static_cast<std::size_t>(std::popcount(mask));
        if (nnz > budget) continue;
        auto on = [&](std::size_t i, std::size_t j) { return (mask >> (i * (k + 1) + j)) & 1u; };
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
          bool any = false;
          for (std::size_t j = 0; j <= k; ++j) any = any || on(i, j);
          ok = any;
        }
        for (std::size_t j = 0; j < k && ok; ++j) {
          bool any = false;
          for (std::size_t i = 0; i < m; ++i) any = any || on(i, j);
          ok = any;
        }
        if (!ok) continue;
        std::vector<std::size_t> pos;
        for (std::size_t c = 0; c < cells; ++c)
          if ((mask >> c) & 1u) pos.push_back(c);
        std::vector<std::size_t> digit(pos.size(), 0);
        for (;;) {
          IntMatrix A(m, k), B(m, 1);
          for (std::size_t p = 0; p < pos.size(); ++p) {
            const std::size_t i = pos[p] / (k + 1), j = pos[p] % (k + 1);
            if (j < k) A(i, j) = vals[digit[p]];
            else B(i, 0) = vals[digit[p]];
          }
          PpFormula f(R, side, A, B);
          if (f.rows() == m && f.witnesses() == k) by_size[m + k + 1 + nnz].push_back(std::move(f));
          std::size_t p = pos.size();
          bool done = true;
          while (p > 0) {
            --p;
            if (++digit[p] < vals.size()) {
              done = false;
              break;
            }
            digit[p] = 0;
          }
          if (done) break;
        }
      }
    }
  for (auto& v : by_size)
    for (auto& f : v) out.push_back(std::move(f));
  return out;
}

inline Int random_element(const Ring& R, Rng& rng, long int_range = kIntegerEntryRange) {
  if (R.is_finite()) return Int(rng() % R.order());
  const auto span = static_cast<std::uint64_t>(2 * int_range + 1);
  return Int(static_cast<long>(rng() % span) - int_range);
}

/// m in 1..3 rows, k in 0..3 witnesses, uniform entries.
inline PpFormula random_formula(const Ring& R, Side side, Rng& rng, std::size_t arity = 1) {
  const std::size_t m = 1 + rng() % 3;
  const std::size_t k = rng() % 4;
  IntMatrix A(m, k), B(m, arity);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) A(i, j) = random_element(R, rng);
    for (std::size_t j = 0; j < arity; ++j) B(i, j) = random_element(R, rng);
  }
  return PpFormula(R, side, std::move(A), std::move(B));
}

}  // namespace ppcalc
