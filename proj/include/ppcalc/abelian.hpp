#pragma once

// Finite abelian groups given by an addition table, rewritten as Z^t / L.

#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/zlattice.hpp"

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace ppcalc {

/// Coordinates for a finite abelian group on elements 0..q-1.
/// generators[i] has order orders[i] modulo the previous generators;
/// relations is full rank and every element has a unique reduced coordinate vector.
struct AbelianPresentation {
  std::vector<int> generators;
  ZLattice relations;
  std::vector<IntVector> coords;            // element -> reduced coordinates
  std::unordered_map<std::size_t, int> by_code;  // mixed-radix code of reduced coords -> element

  std::size_t rank() const noexcept { return generators.size(); }

  /// Mixed-radix code of a reduced vector (pivot entries in [0, h_ii)).
  std::size_t code(const IntVector& reduced) const {
    std::size_t c = 0;
    const IntMatrix& h = relations.basis();
    for (std::size_t i = 0; i < reduced.size(); ++i)
      c = c * static_cast<std::size_t>(h(i, i)) + static_cast<std::size_t>(reduced[i]);
    return c;
  }

  int element_of(const IntVector& v) const {
    IntVector r = relations.reduce(v);
    auto it = by_code.find(code(r));
    if (it == by_code.end()) throw Error(ErrorKind::Malformed, "coordinates outside the group");
    return it->second;
  }
};

/// add is q*q row-major; zero is the neutral element. Assumes group axioms hold.
inline AbelianPresentation decompose_abelian(std::size_t q, const std::vector<int>& add, int zero) {
  AbelianPresentation p;
  std::vector<int> in_span(q, -1);  // element -> slot in `members`
  std::vector<int> members{zero};
  std::vector<IntVector> member_coords{IntVector{}};
  in_span[static_cast<std::size_t>(zero)] = 0;
  IntMatrix rel(0, 0);
  std::vector<std::vector<Int>> rel_rows;

  for (std::size_t g = 0; g < q; ++g) {
    if (in_span[g] >= 0) continue;
    // smallest k with k*g in the current span
    std::size_t k = 1;
    int mult = static_cast<int>(g);
    std::vector<int> multiples{zero, mult};
    while (in_span[static_cast<std::size_t>(mult)] < 0) {
      mult = add[static_cast<std::size_t>(mult) * q + g];
      multiples.push_back(mult);
      if (++k > q) throw Error(ErrorKind::Malformed, "addition table is not a group");
    }
    const std::size_t t = p.generators.size();
    for (auto& row : rel_rows) row.push_back(0);
    std::vector<Int> row = member_coords[static_cast<std::size_t>(in_span[static_cast<std::size_t>(mult)])];
    for (auto& v : row) v = -v;
    row.resize(t + 1);
    row[t] = Int(k);
    rel_rows.push_back(row);
    for (auto& c : member_coords) c.push_back(0);
    p.generators.push_back(static_cast<int>(g));
    // new span = old span + {j*g : 0 <= j < k}
    const std::size_t old = members.size();
    for (std::size_t j = 1; j < k; ++j) {
      for (std::size_t s = 0; s < old; ++s) {
        int e = add[static_cast<std::size_t>(members[s]) * q + static_cast<std::size_t>(multiples[j])];
        IntVector c = member_coords[s];
        c[t] = Int(j);
        if (in_span[static_cast<std::size_t>(e)] >= 0) throw Error(ErrorKind::Malformed, "addition table is not a group");
        in_span[static_cast<std::size_t>(e)] = static_cast<int>(members.size());
        members.push_back(e);
        member_coords.push_back(std::move(c));
      }
    }
  }
  const std::size_t t = p.generators.size();
  IntMatrix relm(0, t);
  for (const auto& r : rel_rows) relm.append_row(r);
  p.relations = ZLattice::span(relm);
  p.coords.assign(q, IntVector{});
  for (std::size_t s = 0; s < members.size(); ++s) {
    IntVector r = p.relations.reduce(member_coords[s]);
    p.by_code[p.code(r)] = members[s];
    p.coords[static_cast<std::size_t>(members[s])] = std::move(r);
  }
  if (members.size() != q) throw Error(ErrorKind::Malformed, "addition table is not a group");
  return p;
}

}  // namespace ppcalc
