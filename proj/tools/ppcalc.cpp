// Command-line front end.
// Exit codes: 0 success, 1 domain error (bad ring, formula, module, failed precondition), 2 usage error.

#include "ppcalc/ppcalc.hpp"
#include "ppcalc/suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ppcalc;

struct Options {
  std::string ring = "Z";
  std::string side = "left";
  std::string formula, phi, psi, module, tree, separator;
  std::size_t bound = 4;
  std::size_t max_size = 0;  // 0: per-command default
  long range = 5;
  std::uint64_t seed = 1;
  bool json = false;
  bool crosscheck = false;
  bool presta = false;
  bool timings = false;
  bool quick = false;
};

// ---- rendering helpers

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json opt_int(const std::optional<Int>& v, const Ring& R) {
  if (!v) return nullptr;
  return R.element_name(*v);
}

Json subgroup_json(const Subgroup& s) {
  Json j;
  const Module& M = s.module();
  Json gens = Json::array();
  const ZLattice& lat = s.lattice();
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    IntVector v = lat.basis().row_vector(i);
    IntVector reduced = power_relations(M, s.arity()).reduce(v);
    if (is_zero_vector(reduced)) continue;
    gens.push_back(s.tuple_name(reduced));
  }
  j["generators"] = gens;
  if (M.is_finite()) {
    j["order"] = s.order().str();
    if (s.order() <= 512) j["elements"] = s.element_names();
  } else {
    j["order"] = nullptr;
  }
  j["zero"] = s.is_zero();
  j["whole"] = s.is_whole();
  return j;
}

std::string subgroup_text(const Subgroup& s) {
  Json j = subgroup_json(s);
  std::ostringstream out;
  if (j.contains("elements")) {
    out << "{";
    bool first = true;
    for (const auto& e : j["elements"]) {
      out << (first ? "" : ", ") << e.get<std::string>();
      first = false;
    }
    out << "}";
  } else {
    out << "generated by {";
    bool first = true;
    for (const auto& e : j["generators"]) {
      out << (first ? "" : ", ") << e.get<std::string>();
      first = false;
    }
    out << "}";
  }
  if (j["order"].is_string()) out << "  (order " << j["order"].get<std::string>() << ")";
  return out.str();
}

Json classification_json(const Classification& c, const Ring& R) {
  return Json{{"high", c.high},
              {"low", c.low},
              {"bounded", c.bounded},
              {"cobounded", c.cobounded},
              {"region", to_string(c.region)},
              {"bound_witness", opt_int(c.bound_witness, R)},
              {"cobound_witness", opt_int(c.cobound_witness, R)}};
}

std::string matrix_string(const Ring& R, const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "[](" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + R.element_name(m(i, j));
  }
  return s + "]";
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

// Renders rows as an aligned table.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "  " : "") + (i + 1 < r.size() ? pad(r[i], width[i]) : r[i]);
    out << line << "\n";
  }
  return out.str();
}

// ---- argument resolution

struct Env {
  Options opt;
  Ring ring = Ring::integers();
  Side side = Side::Left;
};

PpFormula need_formula(const Env& env, const std::string& text, const char* flag) {
  if (text.empty()) throw CLI::ValidationError(flag, "is required for this command");
  return parse(text, env.ring, env.side);
}

Module load_module(const Env& env) {
  const std::string& ref = env.opt.module;
  if (ref.empty()) throw CLI::ValidationError("--module", "is required for this command");
  std::filesystem::path path;
  try {
    path = resolve_corpus_file(ref, "modules");
  } catch (const Error&) {
    return module_from_shorthand(ref, env.ring, env.side);
  }
  const Json j = read_json_file(path.string());
  if (j.contains("ring") && resolve_ring(j.at("ring").get<std::string>()) != env.ring)
    throw Error(ErrorKind::RingMismatch, "module '" + ref + "' is over " + j.at("ring").get<std::string>() + ", not " + env.ring.name());
  Module M = module_from_json(j, env.ring);
  if (M.side() != env.side) throw Error(ErrorKind::SideMismatch, "module '" + ref + "' is a " + to_string(M.side()) + " module");
  return M;
}

// ---- commands; each fills a JSON document and a text rendering

struct Output {
  Json doc = Json::object();
  std::ostringstream text;
};

void cmd_classify(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  detail::require_unary(f, "classify");
  const Classification c = classify(f);
  out.doc["formula"] = print(f);
  out.doc["ring"] = env.ring.name();
  out.doc["side"] = to_string(env.side);
  out.doc["classification"] = classification_json(c, env.ring);
  out.text << "formula    " << print(f) << "  (" << to_string(env.side) << ", over " << env.ring.name() << ")\n"
           << "high       " << yes_no(c.high) << "\n"
           << "low        " << yes_no(c.low) << "\n"
           << "bounded    " << yes_no(c.bounded) << (c.bound_witness ? "  by " + env.ring.element_name(*c.bound_witness) + "x = 0" : "") << "\n"
           << "cobounded  " << yes_no(c.cobounded) << (c.cobound_witness ? "  by " + env.ring.element_name(*c.cobound_witness) + "|x" : "") << "\n"
           << "region     " << to_string(c.region) << "\n";
  if (env.opt.crosscheck) {
    Json cc;
    const KernelBound kb = bounded_by_kernel(f);
    cc["kernel_bounded"] = kb.bounded;
    cc["kernel_bound"] = kb.bounded ? Json(env.ring.element_name(kb.r)) : Json(nullptr);
    cc["kernel_agrees"] = kb.bounded == c.bounded;
    out.text << "kernel criterion: bounded " << yes_no(kb.bounded) << (kb.bounded ? " by " + env.ring.element_name(kb.r) : "")
             << (kb.bounded == c.bounded ? "  (agrees)" : "  (DISAGREES)") << "\n";
    // basic formulas r|sx also go through the ring criteria
    if (f.rows() == 1 && f.witnesses() <= 1) {
      const Int r = f.witnesses() ? f.A()(0, 0) : Int(0), s = f.B()(0, 0);
      const RdEntry e = classify_rd(env.ring, r, s, env.side);
      cc["basic_formula"] = {{"r", env.ring.element_name(e.r)}, {"s", env.ring.element_name(e.s)}, {"agrees", e.agrees()}};
      Json clauses = Json::array();
      for (const auto& cl : e.clauses) clauses.push_back({{"clause", cl.clause}, {"property", cl.property}, {"predicted", cl.predicted}, {"agrees", cl.agrees}});
      cc["basic_formula"]["clauses"] = clauses;
      out.text << "ring criteria for " << env.ring.element_name(e.r) << "|" << env.ring.element_name(e.s) << "x: "
               << (e.agrees() ? "all agree" : "DISAGREE") << " (" << e.clauses.size() << " clauses)\n";
    }
    out.doc["crosscheck"] = cc;
  }
}

void cmd_dual(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  const PpFormula d = dual(f);
  out.doc["formula"] = print(f);
  out.doc["dual"] = print(d);
  out.doc["dual_side"] = to_string(d.side());
  out.doc["A"] = matrix_string(env.ring, d.A());
  out.doc["B"] = matrix_string(env.ring, d.B());
  out.text << print(d) << "  (" << to_string(d.side()) << ")\n";
}

void cmd_implies(const Env& env, Output& out, bool both) {
  const PpFormula f = need_formula(env, env.opt.phi, "--phi");
  const PpFormula g = need_formula(env, env.opt.psi, "--psi");
  detail::require_compatible(f, g);
  const bool fg = implies(f, g);
  out.doc["phi"] = print(f);
  out.doc["psi"] = print(g);
  out.doc["implies"] = fg;
  if (both) {
    const bool gf = implies(g, f);
    out.doc["implied_by"] = gf;
    out.doc["equivalent"] = fg && gf;
    out.text << (fg && gf ? "equivalent" : "not equivalent") << "  (phi <= psi: " << yes_no(fg) << ", psi <= phi: " << yes_no(gf) << ")\n";
  } else {
    out.text << (fg ? "phi <= psi" : "phi does not imply psi") << "\n";
  }
  if (env.opt.presta) {
    const PrestaResult p = presta_solve(f, g);
    out.doc["presta_agrees"] = p.solvable == fg;
    out.text << "matrix equations: " << (p.solvable ? "solvable" : "unsolvable") << (p.solvable == fg ? " (agrees)" : " (DISAGREES)") << "\n";
  }
}

void cmd_presta(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.phi, "--phi");
  const PpFormula g = need_formula(env, env.opt.psi, "--psi");
  detail::require_compatible(f, g);
  const PrestaResult p = presta_solve(f, g);
  out.doc["phi"] = print(f);
  out.doc["psi"] = print(g);
  out.doc["solvable"] = p.solvable;
  out.doc["method"] = p.method;
  out.text << (p.solvable ? "solvable" : "unsolvable") << "  (" << p.method << ")\n";
  if (p.solvable) {
    out.doc["X"] = matrix_string(env.ring, p.X);
    out.doc["Y"] = matrix_string(env.ring, p.Y);
    out.doc["Z"] = matrix_string(env.ring, p.Z);
    out.doc["verified"] = verify_presta(f, g, p);
    out.text << "X = " << matrix_string(env.ring, p.X) << "\nY = " << matrix_string(env.ring, p.Y) << "\nZ = " << matrix_string(env.ring, p.Z)
             << "\nverified by substitution: " << yes_no(verify_presta(f, g, p)) << "\n";
  }
}

void cmd_eval(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  const Module M = load_module(env);
  const Subgroup v = evaluate(f, M);
  out.doc["formula"] = print(f);
  out.doc["module"] = M.label();
  out.doc["value"] = subgroup_json(v);
  out.text << print(f) << " in " << M.label() << ": " << subgroup_text(v) << "\n";
}

void cmd_regions(const Env& env, Output& out) {
  const Ring& R = env.ring;
  const std::size_t max_size = env.opt.max_size ? env.opt.max_size : (R.is_finite() ? 6 : 4);
  std::vector<Module> seps{regular_module(R, env.side)};
  if (!env.opt.separator.empty()) seps.push_back(module_from_shorthand(env.opt.separator, R, env.side));
  else if (R.kind() == RingKind::IntegersModN) {
    // Z/p + Z/n for the least prime p dividing n
    Int p = 2;
    while (R.modulus() % p != 0) ++p;
    if (p != R.modulus()) seps.push_back(Module::abelian(R, 0, {p, R.modulus()}, env.side));
  }
  const RegionsReport rep = formula_regions(R, env.side, max_size, seps);
  Json classes = Json::array();
  std::vector<std::vector<std::string>> rows{{"#", "representative", "members", "high", "low", "bounded", "cobounded", "region"}};
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& c = rep.classes[i];
    classes.push_back({{"index", i}, {"representative", print(c.representative)}, {"members", c.members},
                       {"classification", classification_json(c.classification, R)}});
    rows.push_back({std::to_string(i), print(c.representative), std::to_string(c.members), yes_no(c.classification.high),
                    yes_no(c.classification.low), yes_no(c.classification.bounded), yes_no(c.classification.cobounded),
                    to_string(c.classification.region)});
  }
  out.doc["ring"] = R.name();
  out.doc["max_size"] = max_size;
  out.doc["formulas_scanned"] = rep.formulas_scanned;
  out.doc["classes"] = classes;
  out.doc["is_chain"] = rep.is_chain;
  Json covers = Json::array();
  for (std::size_t k = 0; k < rep.covers.size(); ++k) {
    const auto [i, j] = rep.covers[k];
    covers.push_back({{"lower", i}, {"upper", j}, {"separated_by", rep.separators[k].module ? Json(*rep.separators[k].module) : Json(nullptr)}});
  }
  out.doc["covers"] = covers;
  out.text << rep.formulas_scanned << " formulas of size <= " << max_size << " over " << R.name() << " fall into "
           << rep.classes.size() << " classes\n\n"
           << table(rows) << "\n";
  if (rep.is_chain) {
    out.text << "chain: ";
    for (std::size_t i = 0; i < rep.classes.size(); ++i) out.text << (i ? " < " : "") << print(rep.classes[i].representative);
    out.text << "\n";
  } else {
    out.text << "covering relations:\n";
  }
  for (std::size_t k = 0; k < rep.covers.size(); ++k) {
    const auto [i, j] = rep.covers[k];
    out.text << "  " << print(rep.classes[i].representative) << " < " << print(rep.classes[j].representative) << "  separated in "
             << rep.separators[k].module.value_or("(none of the given modules)") << "\n";
  }
  if (seps.size() > 1) {
    Json sep_values = Json::object();
    out.text << "\nvalues in " << seps.back().label() << ":\n";
    std::vector<std::vector<std::string>> vrows;
    for (const auto& c : rep.classes) {
      const Subgroup v = evaluate(c.representative, seps.back());
      sep_values[print(c.representative)] = subgroup_json(v);
      vrows.push_back({"  " + print(c.representative), subgroup_text(v)});
    }
    out.text << table(vrows);
    out.doc["separator"] = {{"module", seps.back().label()}, {"values", sep_values}};
  }
  // basic divisibility formulas r|sx
  const auto rd = rd_table(R, env.opt.range, env.side);
  Json rdj = Json::array();
  std::vector<std::vector<std::string>> rdrows{{"r", "s", "formula", "region", "high", "low", "bounded", "cobounded"}};
  if (env.opt.crosscheck) rdrows[0].push_back("criteria");
  bool all_agree = true;
  for (const auto& e : rd) {
    Json row{{"r", R.element_name(e.r)}, {"s", R.element_name(e.s)}, {"formula", print(e.formula)},
             {"classification", classification_json(e.classification, R)}};
    std::vector<std::string> trow{R.element_name(e.r), R.element_name(e.s), print(e.formula), to_string(e.classification.region),
                                  yes_no(e.classification.high), yes_no(e.classification.low), yes_no(e.classification.bounded),
                                  yes_no(e.classification.cobounded)};
    all_agree = all_agree && e.agrees();
    if (env.opt.crosscheck) {
      Json fired = Json::array();
      std::string names;
      for (const auto& cl : e.clauses) {
        fired.push_back({{"clause", cl.clause}, {"property", cl.property}, {"predicted", cl.predicted}, {"agrees", cl.agrees}});
        names += (names.empty() ? "" : ",") + std::to_string(cl.clause) + (cl.agrees ? "" : "!");
      }
      row["direct"] = {{"bounded", e.direct_bounded}, {"high", e.direct_high}, {"low", e.direct_low}, {"cobounded", e.direct_cobounded}};
      row["clauses"] = fired;
      row["agrees"] = e.agrees();
      trow.push_back((e.agrees() ? "ok " : "MISMATCH ") + names);
    }
    rdj.push_back(row);
    rdrows.push_back(trow);
  }
  out.doc["basic_formulas"] = rdj;
  out.doc["basic_formulas_agree"] = all_agree;
  out.text << "\nbasic formulas r|sx:\n" << table(rdrows);
  if (env.opt.crosscheck) out.text << (all_agree ? "all rows agree with the ring criteria\n" : "SOME ROWS DISAGREE with the ring criteria\n");
}

void cmd_essential(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  const bool e = is_essential(f);
  out.doc["formula"] = print(f);
  out.doc["essential"] = e;
  out.doc["value_in_ring"] = Json::array();
  for (const Int& v : value_in_ring(f)) out.doc["value_in_ring"].push_back(env.ring.element_name(v));
  out.text << print(f) << (e ? " is essential" : " is not essential") << "\n";
}

void cmd_phi(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  const PhiMembership p = phi_membership(f);
  auto names = [&](const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(env.ring.element_name(x));
    return a;
  };
  auto set_text = [&](const std::vector<Int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + env.ring.element_name(v[i]);
    return s + "}";
  };
  out.doc["formula"] = print(f);
  out.doc["ideal"] = names(p.ideal);
  out.doc["annihilator"] = names(p.annihilator);
  out.doc["dual_value"] = names(p.dual_value);
  out.doc["member"] = p.member;
  out.text << "I = f(R)        " << set_text(p.ideal) << "\n"
           << "l(I)            " << set_text(p.annihilator) << "\n"
           << "Df(R), other side " << set_text(p.dual_value) << "\n"
           << (p.member ? "member" : "not a member") << "\n";
}

Json ordinal_json(const Ordinal& o) { return o.str(); }

void cmd_ulm(const Env& env, Output& out) {
  if (!env.opt.tree.empty()) {
    const HeightForest F = load_forest_file(resolve_corpus_file(env.opt.tree, "forests").string());
    const UlmReport u = ulm_sequence(F);
    Json nodes = Json::array();
    std::vector<std::vector<std::string>> rows{{"node", "height"}};
    for (std::size_t i = 0; i < F.size(); ++i) {
      nodes.push_back({{"name", F.node(i).name}, {"height", ordinal_json(u.heights[i])}});
      rows.push_back({F.node(i).name, u.heights[i].str()});
    }
    Json levels = Json::array();
    for (const auto& L : u.levels) {
      Json l{{"tau", L.tau}, {"nodes", L.nodes}, {"replicated_chains", L.implicit_chains}, {"divisible_part", L.divisible_part}};
      if (L.cyclic_decomposition) {
        Json cyc = Json::array();
        for (const Int& d : *L.cyclic_decomposition) cyc.push_back(d.str());
        l["cyclic_orders"] = cyc;
      } else {
        l["cyclic_orders"] = nullptr;
      }
      levels.push_back(l);
    }
    out.doc["prime"] = F.prime().str();
    out.doc["nodes"] = nodes;
    out.doc["levels"] = levels;
    out.doc["ulm_length"] = u.length;
    out.doc["first_ulm_generators"] = u.first_ulm_generators;
    out.doc["semantics"] = u.semantics;
    out.text << table(rows) << "\n";
    for (const auto& L : u.levels) {
      out.text << "level " << L.tau << ": {";
      for (std::size_t i = 0; i < L.nodes.size(); ++i) out.text << (i ? ", " : "") << L.nodes[i];
      out.text << "}";
      if (L.implicit_chains) out.text << " + replicated chains";
      if (L.divisible_part) out.text << " + divisible chains";
      if (L.cyclic_decomposition) {
        out.text << "  group:";
        if (L.cyclic_decomposition->empty()) out.text << " 0";
        for (std::size_t i = 0; i < L.cyclic_decomposition->size(); ++i) out.text << (i ? " +" : "") << " Z/" << (*L.cyclic_decomposition)[i];
      }
      out.text << "\n";
    }
    out.text << "Ulm length " << u.length << " (" << u.semantics << ")\n";
    return;
  }
  const Module M = load_module(env);
  const std::size_t B = env.opt.bound;
  const auto highs = high_formulas(env.ring, env.side, B);
  const UlmBounded u = ulm_bounded(M, B, highs);
  const Subgroup div = ulm_div(M);
  out.doc["module"] = M.label();
  out.doc["bound"] = B;
  out.doc["high_formulas"] = highs.size();
  out.doc["value"] = subgroup_json(u.value);
  out.doc["stabilized"] = u.stabilized;
  out.doc["ulm_div"] = subgroup_json(div);
  out.doc["agrees_with_ulm_div"] = u.value == div;
  out.text << "intersection of " << highs.size() << " high formulas of size <= " << B << " in " << M.label() << ":\n  "
           << subgroup_text(u.value) << "\n"
           << "stabilized between " << B - 1 << " and " << B << ": " << yes_no(u.stabilized) << "\n"
           << "intersection of rM over regular r: " << subgroup_text(div) << "\n"
           << (u.value == div ? "the two agree" : "the two differ") << "\n";
}

void cmd_ulm_div(const Env& env, Output& out) {
  const Module M = load_module(env);
  const Subgroup d = ulm_div(M);
  out.doc["module"] = M.label();
  out.doc["ulm_div"] = subgroup_json(d);
  out.text << subgroup_text(d) << "\n";
}

void cmd_defects(const Env& env, Output& out) {
  const PpFormula f = need_formula(env, env.opt.formula, "--formula");
  const Module M = load_module(env);
  const DefectPair flat = flat_defect(f, M);
  out.doc["formula"] = print(f);
  out.doc["module"] = M.label();
  out.doc["flat"] = {{"value", subgroup_json(flat.value)}, {"reference", subgroup_json(flat.reference)}, {"defect", flat.has_defect()}};
  out.text << "f(M)              " << subgroup_text(flat.value) << "\n"
           << "f(R) M            " << subgroup_text(flat.reference) << "   flat defect: " << yes_no(flat.has_defect()) << "\n";
  if (env.ring.is_finite()) {
    const DefectPair ap = abspure_defect(f, M);
    out.doc["absolutely_pure"] = {{"value", subgroup_json(ap.value)}, {"reference", subgroup_json(ap.reference)}, {"defect", ap.has_defect()}};
    out.text << "ann_M Df(R)       " << subgroup_text(ap.reference) << "   absolutely pure defect: " << yes_no(ap.has_defect()) << "\n";
  }
  if (M.is_finite()) {
    const DivisibilityReport dv = is_divisible(M);
    out.doc["divisible"] = dv.divisible;
    if (!dv.divisible) out.doc["divisibility_witness"] = {{"r", env.ring.element_name(*dv.r)}, {"a", M.element_name(*dv.a)}};
    out.text << "divisible: " << yes_no(dv.divisible);
    if (!dv.divisible) out.text << "  (r = " << env.ring.element_name(*dv.r) << ", a = " << M.element_name(*dv.a) << ")";
    out.text << "\n";
  }
}

int cmd_selftest(const Env& env, Output& out) {
  suites::Sizes sizes;
  if (env.opt.quick) sizes = {50, 50, 20, 10, 20};
  std::size_t failed = 0;
  Json results = Json::array();
  std::vector<std::vector<std::string>> rows{{"suite", "cases", "failures", "status"}};
  if (env.opt.timings) rows[0].push_back("seconds");
  for (const auto& suite : suites::all_suites(env.opt.seed, sizes)) {
    const suites::SuiteResult r = suite();
    failed += !r.passed();
    Json j{{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"passed", r.passed()},
           {"counterexamples", r.counterexamples}, {"notes", r.notes}, {"error", r.error}};
    std::vector<std::string> row{r.name, std::to_string(r.cases), std::to_string(r.failures), r.passed() ? "pass" : "FAIL"};
    if (env.opt.timings) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(2) << r.seconds;
      row.push_back(t.str());
      j["seconds"] = r.seconds;
    }
    results.push_back(j);
    rows.push_back(row);
    for (const auto& c : r.counterexamples) rows.push_back({"  counterexample: " + c});
    if (!r.error.empty()) rows.push_back({"  error: " + r.error});
    for (const auto& n : r.notes) rows.push_back({"  note: " + n});
  }
  out.doc["seed"] = env.opt.seed;
  out.doc["corpus"] = Json::array();
  for (const auto& c : default_corpus(env.opt.seed)) out.doc["corpus"].push_back(c.name);
  out.doc["suites"] = results;
  out.doc["failed_suites"] = failed;
  out.text << "seed " << env.opt.seed << ", corpus:";
  for (const auto& c : default_corpus(env.opt.seed)) out.text << " " << c.name << ";";
  out.text << "\n\n" << table(rows) << "\n" << (failed ? std::to_string(failed) + " suite(s) failed" : std::string("all suites passed")) << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pp formula calculator"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--ring", opt.ring, "Z, Z/<n>, a corpus ring name or a ring file")->capture_default_str();
    sub->add_option("--side", opt.side, "left or right")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
    sub->add_flag("--json", opt.json, "machine-readable output");
  };
  struct Cmd {
    const char* name;
    const char* help;
  };
  const std::vector<Cmd> cmds{{"classify", "high/low/bounded/cobounded verdicts and region"},
                              {"dual", "elementary dual"},
                              {"implies", "decide phi <= psi"},
                              {"equiv", "decide phi ~ psi"},
                              {"presta", "solve the matrix equations for phi <= psi"},
                              {"eval", "value of a formula in a module"},
                              {"regions", "classes of small formulas and the table of r|sx"},
                              {"essential", "is f(R) essential"},
                              {"phi", "annihilator membership test"},
                              {"ulm", "Ulm sequence of a forest, or bounded Ulm submodule of a module"},
                              {"ulm-div", "intersection of rM over regular r"},
                              {"defects", "flat and absolutely pure defects"},
                              {"selftest", "run every property suite on the corpus"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : cmds) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    common(s);
    subs[c.name] = s;
  }
  for (const char* n : {"classify", "dual", "eval", "essential", "phi", "defects"})
    subs[n]->add_option("--formula,-f", opt.formula, "formula text")->required();
  for (const char* n : {"implies", "equiv", "presta"}) {
    subs[n]->add_option("--phi", opt.phi, "left-hand formula")->required();
    subs[n]->add_option("--psi", opt.psi, "right-hand formula")->required();
  }
  for (const char* n : {"implies", "equiv"}) subs[n]->add_flag("--presta", opt.presta, "cross-check with the matrix equations");
  for (const char* n : {"eval", "ulm-div", "defects"})
    subs[n]->add_option("--module,-m", opt.module, "module file, corpus name, or shorthand like \"Z/2 + Z/4\"")->required();
  subs["ulm"]->add_option("--module,-m", opt.module, "module file, corpus name, or shorthand");
  subs["ulm"]->add_option("--tree,-t", opt.tree, "height forest file");
  subs["ulm"]->add_option("--bound,-B", opt.bound, "formula size bound")->capture_default_str();
  subs["classify"]->add_flag("--criteria-crosscheck", opt.crosscheck, "also run the kernel and ring criteria");
  subs["regions"]->add_flag("--criteria-crosscheck", opt.crosscheck, "check every r|sx row against the ring criteria");
  subs["regions"]->add_option("--max-size", opt.max_size, "formula size bound (default 6, 4 over Z)");
  subs["regions"]->add_option("--separator", opt.separator, "extra module tried for separating classes");
  subs["regions"]->add_option("--range", opt.range, "r, s range over Z")->capture_default_str();
  subs["selftest"]->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  subs["selftest"]->add_flag("--quick", opt.quick, "fewer random cases per suite");
  subs["selftest"]->add_flag("--timings", opt.timings, "include wall-clock times (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  Env env;
  env.opt = opt;
  Output out;
  int code = 0;
  try {
    env.ring = resolve_ring(opt.ring);
    env.side = parse_side(opt.side);
    if (name == "ulm" && opt.tree.empty() == opt.module.empty()) throw CLI::ValidationError("ulm", "give exactly one of --tree and --module");
    if (name == "classify") cmd_classify(env, out);
    else if (name == "dual") cmd_dual(env, out);
    else if (name == "implies") cmd_implies(env, out, false);
    else if (name == "equiv") cmd_implies(env, out, true);
    else if (name == "presta") cmd_presta(env, out);
    else if (name == "eval") cmd_eval(env, out);
    else if (name == "regions") cmd_regions(env, out);
    else if (name == "essential") cmd_essential(env, out);
    else if (name == "phi") cmd_phi(env, out);
    else if (name == "ulm") cmd_ulm(env, out);
    else if (name == "ulm-div") cmd_ulm_div(env, out);
    else if (name == "defects") cmd_defects(env, out);
    else if (name == "selftest") code = cmd_selftest(env, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (opt.json) {
    out.doc["command"] = name;
    std::cout << out.doc.dump(2) << "\n";
  } else {
    std::cout << out.text.str();
  }
  return code;
}
