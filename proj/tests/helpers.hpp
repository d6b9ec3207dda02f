#pragma once

#include "ppcalc/ppcalc.hpp"
#include "ppcalc/oracle.hpp"

#include <set>
#include <string>
#include <vector>

namespace testing_helpers {

using namespace ppcalc;

inline const Ring& Z() {
  static const Ring r = Ring::integers();
  return r;
}

inline Ring Zn(long n) { return Ring::integers_mod(Int(n)); }

inline PpFormula left(const std::string& src, const Ring& R) { return parse(src, R, Side::Left); }

/// Element names of a finite subgroup, as a set.
inline std::set<std::string> names(const Subgroup& s) {
  const auto v = s.element_names();
  return {v.begin(), v.end()};
}

inline std::set<std::string> names(const Ring& R, const std::vector<Int>& v) {
  std::set<std::string> out;
  for (const Int& x : v) out.insert(R.element_name(x));
  return out;
}

/// f(M) computed by the lattice method agrees with the brute-force scan.
inline bool matches_oracle(const PpFormula& f, const Module& M) {
  return oracle::as_index_set(evaluate(f, M)) == oracle::evaluate(f, M);
}

}  // namespace testing_helpers
