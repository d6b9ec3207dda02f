#pragma once

// Equivalence classes of small unary formulas, their order, and modules that
// separate them.

#include "ppcalc/classify.hpp"
#include "ppcalc/enumerate.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/order.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace ppcalc {

struct FormulaClass {
  PpFormula representative;  // first in enumeration order, hence of least size
  std::size_t members = 0;
  Classification classification;
};

struct SeparatorRow {
  std::size_t lower, upper;  // class indices with lower < upper
  std::optional<std::string> module;  // label of a module where the values differ
};

struct RegionsReport {
  std::vector<FormulaClass> classes;                  // sorted so that lower classes come first
  std::vector<std::vector<bool>> below;               // below[i][j]: class i implies class j
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  bool is_chain = false;
  std::size_t formulas_scanned = 0;
  std::vector<SeparatorRow> separators;
};

/// Groups all unary formulas of size <= max_size by equivalence and orders the classes.
/// `separating` lists modules tried, in order, to witness each strict inequality.
inline RegionsReport formula_regions(const Ring& R, Side side, std::size_t max_size,
                                     const std::vector<Module>& separating = {}) {
  RegionsReport rep;
  auto all = unary_formulas(R, side, max_size);
  rep.formulas_scanned = all.size();
  std::vector<FormulaClass> classes;
  for (auto& f : all) {
    bool placed = false;
    for (auto& c : classes)
      if (equiv(c.representative, f)) {
        ++c.members;
        placed = true;
        break;
      }
    if (!placed) classes.push_back({f, 1, classify(f)});
  }
  const std::size_t n = classes.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) le[i][j] = i == j || implies(classes[i].representative, classes[j].representative);
  // classes below more others go later; ties keep enumeration order
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto depth = [&](std::size_t i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += le[j][i];
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth(a) < depth(b); });
  for (std::size_t i : order) rep.classes.push_back(classes[i]);
  rep.below.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rep.below[i][j] = le[order[i]][order[j]];
  rep.is_chain = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!rep.below[i][j] && !rep.below[j][i]) rep.is_chain = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !rep.below[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && rep.below[i][k] && rep.below[k][j]) cover = false;
      if (cover) rep.covers.emplace_back(i, j);
    }
  for (auto [i, j] : rep.covers) {
    SeparatorRow row{i, j, std::nullopt};
    for (const auto& M : separating)
      if (evaluate(rep.classes[i].representative, M) != evaluate(rep.classes[j].representative, M)) {
        row.module = M.label();
        break;
      }
    rep.separators.push_back(row);
  }
  return rep;
}

}  // namespace ppcalc
