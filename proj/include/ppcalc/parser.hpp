#pragma once

// Text form of pp formulas.
//
//   formula := sum
//   sum     := conj { "+" conj }
//   conj    := atom { "&" atom }
//   atom    := matrix | scalar "|" term | term "=" rhs | "(" formula ")"
//   rhs     := "0" | term
//   term    := [scalar] var
//   matrix  := "[" rows "]" "|" "[" rows "]" "(" var { "," var } ")"
//   rows    := entries { ";" entries }      ("[]" means no witness columns)
//
// Variables are x, x1, x2, ... with x the same as x1. "&" and "+" are expanded
// into meet and join while parsing.

#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/ring.hpp"

#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ppcalc {

namespace detail {

enum class Tok { Number, Ident, LBracket, RBracket, LParen, RParen, Semi, Comma, Bar, Amp, Plus, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, src[i]), start});
      ++i;
    };
    switch (c) {
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ';': single(Tok::Semi); continue;
      case ',': single(Tok::Comma); continue;
      case '|': single(Tok::Bar); continue;
      case '&': single(Tok::Amp); continue;
      case '+': single(Tok::Plus); continue;
      case '=': single(Tok::Eq); continue;
      default: break;
    }
    if (std::isdigit(c) || (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      ++i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Number, src.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      ++i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\'')) ++i;
      out.push_back({Tok::Ident, src.substr(start, i - start), start});
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + src[i] + "'");
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

// One linear constraint row over variables x1..xn, with optional witnesses.
// Atoms are collected with variable indices and combined once the arity is known.
struct Atom {
  enum Kind { Divides, Equation, Matrix } kind = Divides;
  std::size_t pos = 0;
  Int r = 0;                         // Divides: r | s v
  Int s = 1;
  std::size_t var = 0;               // 1-based
  Int lhs_coef = 1, rhs_coef = 0;    // Equation: lhs_coef v = rhs_coef w  (rhs_coef 0 when "= 0")
  std::size_t lhs_var = 0, rhs_var = 0;
  IntMatrix A, B;                    // Matrix
  std::vector<std::size_t> vars;     // Matrix variable list
};

// Expression tree: leaves are atoms, inner nodes meet/join.
struct Node {
  enum Kind { Leaf, Meet, Join } kind = Leaf;
  Atom atom;
  std::vector<Node> kids;
};

class Parser {
 public:
  Parser(const std::string& src, const Ring& R) : toks_(tokenize(src)), R_(R) {}

  Node parse_all() {
    Node n = parse_sum();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return n;
  }

  std::size_t max_var() const { return max_var_; }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(i_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++i_;
  }

  bool is_var(const Token& t) const { return t.kind == Tok::Ident && is_variable_name(t.text); }
  bool is_scalar(const Token& t) const { return (t.kind == Tok::Number || t.kind == Tok::Ident) && !is_var(t); }

  std::size_t var_index(const Token& t) {
    std::size_t v = t.text.size() == 1 ? 1 : std::stoul(t.text.substr(1));
    if (v == 0) throw ParseError(t.pos, "variables are numbered from 1");
    if (v > 64) throw ParseError(t.pos, "too many variables");
    max_var_ = std::max(max_var_, v);
    return v;
  }

  Int scalar(const Token& t) {
    auto v = R_.parse_element(t.text);
    if (!v) throw ParseError(t.pos, "'" + t.text + "' is not an element of " + R_.name());
    return *v;
  }

  Node parse_sum() {
    Node first = parse_conj();
    if (peek().kind != Tok::Plus) return first;
    Node n;
    n.kind = Node::Join;
    n.kids.push_back(std::move(first));
    while (peek().kind == Tok::Plus) {
      next();
      n.kids.push_back(parse_conj());
    }
    return n;
  }

  Node parse_conj() {
    Node first = parse_atom();
    if (peek().kind != Tok::Amp) return first;
    Node n;
    n.kind = Node::Meet;
    n.kids.push_back(std::move(first));
    while (peek().kind == Tok::Amp) {
      next();
      n.kids.push_back(parse_atom());
    }
    return n;
  }

  // [scalar] var
  std::pair<Int, std::size_t> parse_term() {
    Int c = 1;
    if (is_scalar(peek())) c = scalar(next());
    if (!is_var(peek())) fail("expected a variable");
    return {c, var_index(next())};
  }

  Node parse_atom() {
    Node n;
    const Token& t = peek();
    n.atom.pos = t.pos;
    if (t.kind == Tok::LParen) {
      next();
      Node inner = parse_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::LBracket) {
      n.atom = parse_matrix();
      return n;
    }
    if (is_scalar(t) && peek(1).kind == Tok::Bar) {
      n.atom.kind = Atom::Divides;
      n.atom.r = scalar(next());
      next();
      auto [s, v] = parse_term();
      n.atom.s = s;
      n.atom.var = v;
      return n;
    }
    auto [c, v] = parse_term();
    expect(Tok::Eq, "'=' or '|'");
    n.atom.kind = Atom::Equation;
    n.atom.lhs_coef = c;
    n.atom.lhs_var = v;
    if (is_scalar(peek()) && !is_var(peek(1))) {
      // a literal 0 is accepted even when the ring names its zero differently
      const Token& z = next();
      if (z.text != "0" && scalar(z) != 0) fail("right-hand side must be 0 or a term");
      n.atom.rhs_coef = 0;
      n.atom.rhs_var = v;
      return n;
    }
    auto [c2, v2] = parse_term();
    n.atom.rhs_coef = c2;
    n.atom.rhs_var = v2;
    return n;
  }

  // "[" rows "]"; returns rows (possibly with zero columns for "[]")
  std::vector<std::vector<Int>> parse_rows() {
    expect(Tok::LBracket, "'['");
    std::vector<std::vector<Int>> rows(1);
    while (peek().kind != Tok::RBracket) {
      if (peek().kind == Tok::Semi) {
        next();
        rows.emplace_back();
        continue;
      }
      if (!is_scalar(peek())) fail("expected a matrix entry");
      rows.back().push_back(scalar(next()));
    }
    next();
    if (rows.size() == 1 && rows[0].empty()) rows.clear();
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) fail("ragged matrix");
    return rows;
  }

  Atom parse_matrix() {
    Atom a;
    a.kind = Atom::Matrix;
    a.pos = peek().pos;
    auto ra = parse_rows();
    expect(Tok::Bar, "'|'");
    auto rb = parse_rows();
    expect(Tok::LParen, "'(' before the variable list");
    while (true) {
      if (!is_var(peek())) fail("expected a variable");
      a.vars.push_back(var_index(next()));
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')'");
    const std::size_t m = rb.size();
    if (!ra.empty() && ra.size() != m) throw ParseError(a.pos, "A and B need the same number of rows");
    const std::size_t k = ra.empty() ? 0 : ra[0].size();
    if (m > 0 && rb[0].size() != a.vars.size()) throw ParseError(a.pos, "B needs one column per variable");
    a.A = IntMatrix(m, k);
    a.B = IntMatrix(m, a.vars.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < k; ++j) a.A(i, j) = ra[i][j];
      for (std::size_t j = 0; j < a.vars.size(); ++j) a.B(i, j) = rb[i][j];
    }
    return a;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Ring& R_;
  std::size_t max_var_ = 0;
};

inline PpFormula build(const Node& node, const Ring& R, Side side, std::size_t n) {
  if (node.kind == Node::Meet || node.kind == Node::Join) {
    PpFormula acc = build(node.kids[0], R, side, n);
    for (std::size_t i = 1; i < node.kids.size(); ++i) {
      PpFormula next = build(node.kids[i], R, side, n);
      acc = node.kind == Node::Meet ? meet(acc, next) : join(acc, next);
    }
    return acc;
  }
  const Atom& a = node.atom;
  switch (a.kind) {
    case Atom::Divides: {
      IntMatrix B(1, n);
      B(0, a.var - 1) = a.s;
      return PpFormula(R, side, IntMatrix{{a.r}}, std::move(B));
    }
    case Atom::Equation: {
      IntMatrix B(1, n);
      B(0, a.lhs_var - 1) = a.lhs_coef;
      B(0, a.rhs_var - 1) = R.sub(B(0, a.rhs_var - 1), a.rhs_coef);
      return PpFormula(R, side, IntMatrix(1, 0), std::move(B));
    }
    case Atom::Matrix: {
      IntMatrix B(a.B.rows(), n);
      for (std::size_t i = 0; i < a.B.rows(); ++i)
        for (std::size_t j = 0; j < a.vars.size(); ++j) {
          Int& cell = B(i, a.vars[j] - 1);
          cell = R.add(cell, a.B(i, j));
        }
      return PpFormula(R, side, a.A, std::move(B));
    }
  }
  throw Error(ErrorKind::Parse, "unknown atom");
}

}  // namespace detail

/// Parses a formula. The arity is the largest variable index used, or `arity` if larger.
inline PpFormula parse(const std::string& src, const Ring& R, Side side, std::size_t arity = 0) {
  detail::Parser p(src, R);
  detail::Node root = p.parse_all();
  const std::size_t n = std::max<std::size_t>({p.max_var(), arity, 1});
  return detail::build(root, R, side, n);
}

namespace detail {

inline std::string var_name(std::size_t l, std::size_t n) { return n == 1 ? "x" : "x" + std::to_string(l + 1); }

inline std::string matrix_text(const Ring& R, const IntMatrix& m) {
  if (m.cols() == 0) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + R.element_name(m(i, j));
  }
  return s + "]";
}

}  // namespace detail

/// Canonical text; parse(print(f)) == f for canonical formulas.
inline std::string print(const PpFormula& f) {
  const Ring& R = f.ring();
  const std::size_t n = f.arity();
  if (n == 1) {
    if (f.is_top()) return "x = x";
    if (f.witnesses() == 0 && f.rows() == 1) {
      const Int& s = f.B()(0, 0);
      return s == 1 ? "x = 0" : R.element_name(s) + " x = 0";
    }
    if (f.witnesses() == 1 && f.rows() == 1) {
      const Int& s = f.B()(0, 0);
      const std::string r = R.element_name(f.A()(0, 0));
      return s == 1 ? r + "|x" : r + "|" + R.element_name(s) + " x";
    }
  }
  std::string vars = "(";
  for (std::size_t l = 0; l < n; ++l) vars += (l ? ", " : "") + detail::var_name(l, n);
  vars += ")";
  return detail::matrix_text(R, f.A()) + " | " + detail::matrix_text(R, f.B()) + " " + vars;
}

}  // namespace ppcalc
