#pragma once

// Loading rings, modules and height forests from JSON documents and inline shorthand.

#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/ulm.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ppcalc {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline Side parse_side(const std::string& s) {
  if (s == "left" || s == "l") return Side::Left;
  if (s == "right" || s == "r") return Side::Right;
  throw Error(ErrorKind::Malformed, "side must be 'left' or 'right', got '" + s + "'");
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string json_name(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorKind::Malformed, "element names must be strings or integers");
}

inline std::vector<int> name_table(const Json& rows, const std::map<std::string, int>& index, std::size_t nrows,
                                   std::size_t ncols, const char* what) {
  if (!rows.is_array() || rows.size() != nrows) throw Error(ErrorKind::Malformed, std::string(what) + " table has the wrong number of rows");
  std::vector<int> out;
  out.reserve(nrows * ncols);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != ncols) throw Error(ErrorKind::Malformed, std::string(what) + " table row has the wrong length");
    for (const auto& cell : row) {
      auto it = index.find(json_name(cell));
      if (it == index.end()) throw Error(ErrorKind::Malformed, std::string(what) + " table names unknown element '" + json_name(cell) + "'");
      out.push_back(it->second);
    }
  }
  return out;
}

// "Z" or "Z/<n>"; nullopt for anything else
inline std::optional<Ring> builtin_ring(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "Z") return Ring::integers();
  if (s.size() > 2 && s.rfind("Z/", 0) == 0) {
    const std::string n = s.substr(2);
    if (!std::all_of(n.begin(), n.end(), [](unsigned char c) { return std::isdigit(c); }) || n.size() > 12)
      throw Error(ErrorKind::Malformed, "bad modulus in '" + s + "'");
    return Ring::integers_mod(Int(n));
  }
  return std::nullopt;
}

}  // namespace detail

/// {"name", "elements", "zero", "one", "add", "mul"}; tables are indexed by element names.
inline Ring ring_from_json(const Json& j, std::size_t cap = kDefaultTableCap) {
  if (j.contains("builtin")) {
    if (auto r = detail::builtin_ring(j.at("builtin").get<std::string>())) return *r;
    throw Error(ErrorKind::Malformed, "unknown builtin ring");
  }
  for (const char* key : {"elements", "zero", "one", "add", "mul"})
    if (!j.contains(key)) throw Error(ErrorKind::Malformed, std::string("ring document lacks '") + key + "'");
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) names.push_back(detail::json_name(e));
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], static_cast<int>(i)).second) throw Error(ErrorKind::Malformed, "duplicate element '" + names[i] + "'");
  auto lookup = [&](const Json& n) {
    auto it = index.find(detail::json_name(n));
    if (it == index.end()) throw Error(ErrorKind::Malformed, "unknown element '" + detail::json_name(n) + "'");
    return it->second;
  };
  const std::size_t q = names.size();
  if (q > cap) throw Error(ErrorKind::CapExceeded, "ring has " + std::to_string(q) + " elements, cap is " + std::to_string(cap));
  auto add = detail::name_table(j.at("add"), index, q, q, "add");
  auto mul = detail::name_table(j.at("mul"), index, q, q, "mul");
  return Ring::from_tables(j.value("name", std::string("table ring")), names, lookup(j.at("zero")), lookup(j.at("one")), add,
                           mul, cap);
}

inline Ring load_ring_file(const std::string& path, std::size_t cap = kDefaultTableCap) {
  return ring_from_json(read_json_file(path), cap);
}

/// Serializes a finite ring back into the table format.
inline Json ring_to_json(const Ring& R) {
  if (R.is_integers()) return Json{{"builtin", "Z"}};
  Json j;
  j["name"] = R.name();
  Json names = Json::array(), add = Json::array(), mul = Json::array();
  for (const Int& a : R.elements()) names.push_back(R.element_name(a));
  for (const Int& a : R.elements()) {
    Json ra = Json::array(), rm = Json::array();
    for (const Int& b : R.elements()) {
      ra.push_back(R.element_name(R.add(a, b)));
      rm.push_back(R.element_name(R.mul(a, b)));
    }
    add.push_back(ra);
    mul.push_back(rm);
  }
  j["elements"] = names;
  j["zero"] = R.element_name(Int(0));
  j["one"] = R.element_name(Int(1));
  j["add"] = add;
  j["mul"] = mul;
  return j;
}

/// "Z/2 + Z/4", "Z + Z/3", "R" (regular module), "0".
inline Module module_from_shorthand(const std::string& src, const Ring& R, Side side = Side::Left) {
  const std::string s = detail::trim(src);
  if (s == "0") return Module::zero(R, side);
  if (s == "R") return Module::regular(R, side);
  std::size_t rank = 0;
  std::vector<Int> orders;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    part = detail::trim(part);
    if (part == "Z") {
      ++rank;
      continue;
    }
    auto r = detail::builtin_ring(part);
    if (!r || r->is_integers()) throw Error(ErrorKind::Parse, "module summand '" + part + "' is not Z or Z/n");
    orders.push_back(r->modulus());
  }
  if (rank == 0 && orders.empty()) throw Error(ErrorKind::Parse, "empty module description");
  return Module::abelian(R, rank, orders, side);
}

/// {"ring", "side"?, "fg_abelian": {"rank", "divisors"}} or {"ring", "side"?, "explicit": {"elements", "add", "act"}}.
/// `act` has one row per ring element (ring order), each row listing the images of the module elements.
inline Module module_from_json(const Json& j, const Ring& R) {
  const Side side = parse_side(j.value("side", std::string("left")));
  const std::string label = j.value("name", std::string());
  if (j.contains("fg_abelian")) {
    const Json& a = j.at("fg_abelian");
    std::vector<Int> divs;
    for (const auto& d : a.value("divisors", Json::array())) divs.emplace_back(d.get<long long>());
    return Module::fg_abelian(R, a.value("rank", 0), divs, side);
  }
  if (j.contains("shorthand")) return module_from_shorthand(j.at("shorthand").get<std::string>(), R, side);
  if (!j.contains("explicit")) throw Error(ErrorKind::Malformed, "module document needs 'fg_abelian', 'explicit' or 'shorthand'");
  const Json& e = j.at("explicit");
  std::vector<std::string> names;
  for (const auto& n : e.at("elements")) names.push_back(detail::json_name(n));
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], static_cast<int>(i)).second) throw Error(ErrorKind::Malformed, "duplicate element '" + names[i] + "'");
  const std::size_t q = names.size();
  auto add = detail::name_table(e.at("add"), index, q, q, "add");
  std::vector<int> act;
  if (R.is_finite()) act = detail::name_table(e.at("act"), index, R.order(), q, "act");
  return Module::explicit_tables(R, side, names, add, act, label);
}

namespace detail {

inline void read_forest_node(const Json& j, HeightForest& F, int parent, std::size_t depth) {
  if (depth > 100000) throw Error(ErrorKind::Malformed, "forest nesting too deep");
  if (!j.is_object() || !j.contains("name")) throw Error(ErrorKind::Malformed, "forest node needs a name");
  const int id = F.add_node(json_name(j.at("name")), parent);
  ForestNode& nd = F.node(static_cast<std::size_t>(id));
  if (j.contains("rep_chains")) {
    const Json& r = j.at("rep_chains");
    if (r.is_string()) {
      if (r.get<std::string>() != "all") throw Error(ErrorKind::Malformed, "rep_chains must be \"all\" or a list of lengths");
      nd.rep_all = true;
    } else {
      for (const auto& len : r) {
        const long L = len.get<long>();
        if (L < 1) throw Error(ErrorKind::Malformed, "chain lengths must be >= 1");
        nd.rep_lengths.push_back(L);
      }
    }
  }
  nd.divisible = j.value("divisible", false);
  for (const auto& c : j.value("children", Json::array())) read_forest_node(c, F, id, depth + 1);
}

}  // namespace detail

/// {"p", "roots": [nested nodes]} or the flat form {"p", "nodes": [{name, parent, ...}]}.
inline HeightForest forest_from_json(const Json& j) {
  if (!j.contains("p")) throw Error(ErrorKind::Malformed, "forest needs a prime 'p'");
  const Int p(j.at("p").get<long long>());
  if (j.contains("roots")) {
    HeightForest F(p);
    for (const auto& r : j.at("roots")) detail::read_forest_node(r, F, -1, 0);
    std::map<std::string, int> seen;
    for (const auto& n : F.nodes())
      if (!seen.emplace(n.name, 0).second) throw Error(ErrorKind::Malformed, "duplicate node '" + n.name + "'");
    return F;
  }
  if (!j.contains("nodes")) throw Error(ErrorKind::Malformed, "forest needs 'roots' or 'nodes'");
  const Json& nodes = j.at("nodes");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const auto& n : nodes) {
    names.push_back(detail::json_name(n.at("name")));
    if (!index.emplace(names.back(), static_cast<int>(names.size()) - 1).second)
      throw Error(ErrorKind::Malformed, "duplicate node '" + names.back() + "'");
  }
  std::vector<int> parents;
  for (const auto& n : nodes) {
    if (!n.contains("parent") || n.at("parent").is_null()) {
      parents.push_back(-1);
      continue;
    }
    auto it = index.find(detail::json_name(n.at("parent")));
    if (it == index.end()) throw Error(ErrorKind::Malformed, "unknown parent '" + detail::json_name(n.at("parent")) + "'");
    parents.push_back(it->second);
  }
  HeightForest F = HeightForest::from_parents(p, names, parents);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Json copy = nodes[i];
    copy.erase("children");
    HeightForest tmp(p);
    copy["name"] = "tmp";
    detail::read_forest_node(copy, tmp, -1, 0);
    F.node(i).rep_all = tmp.node(0).rep_all;
    F.node(i).rep_lengths = tmp.node(0).rep_lengths;
    F.node(i).divisible = tmp.node(0).divisible;
  }
  return F;
}

inline HeightForest load_forest_file(const std::string& path) { return forest_from_json(read_json_file(path)); }

}  // namespace ppcalc
