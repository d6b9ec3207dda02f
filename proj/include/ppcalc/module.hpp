#pragma once

// Concrete modules presented as Z^t / L together with the action of every ring
// element as a t x t integer matrix (row convention: coords(r o a) = coords(a) * act(r)).
// Subgroups of M^n are lattices in Z^(t n) containing L^n, kept in Hermite form.

#include "ppcalc/abelian.hpp"
#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/zlattice.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ppcalc {

/// Element cap for listing or constructing explicit modules.
inline constexpr std::size_t kModuleCap = 20'000;

enum class ModuleKind { FgAbelian, Explicit, Presented };

class Module {
 public:
  Module() : Module(zero(Ring::integers(), Side::Left)) {}

  /// Z^rank (+) Z/d_1 (+) ... ; torsion coordinates come first.
  /// Over Z/n the module must be torsion with every d dividing n.
  static Module abelian(const Ring& R, std::size_t rank, const std::vector<Int>& orders, Side side = Side::Left) {
    if (R.kind() == RingKind::FiniteTable) throw Error(ErrorKind::Unsupported, "abelian-group modules need Z or Z/n");
    for (const Int& d : orders)
      if (d < 2) throw Error(ErrorKind::Malformed, "cyclic orders must be >= 2");
    if (R.kind() == RingKind::IntegersModN) {
      if (rank != 0) throw Error(ErrorKind::Malformed, "a Z/n-module has no free part");
      for (const Int& d : orders)
        if (R.modulus() % d != 0) throw Error(ErrorKind::Malformed, "cyclic order must divide n");
    }
    const std::size_t t = orders.size() + rank;
    IntMatrix rel(0, t);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      IntVector row(t);
      row[i] = orders[i];
      rel.append_row(row);
    }
    auto d = std::make_shared<Data>(R, side);
    d->kind = ModuleKind::FgAbelian;
    d->t = t;
    d->rel = ZLattice::span(rel.rows() ? rel : IntMatrix(0, t));
    d->rank = rank;
    d->orders = orders;
    std::string label;
    for (const Int& o : orders) label += (label.empty() ? "" : " + ") + std::string("Z/") + o.str();
    for (std::size_t i = 0; i < rank; ++i) label += (label.empty() ? "" : " + ") + std::string("Z");
    d->label = label.empty() ? "0" : label;
    return Module(std::move(d));
  }

  /// Invariant-factor form d_1 | d_2 | ... (checked).
  static Module fg_abelian(const Ring& R, std::size_t rank, const std::vector<Int>& divisors, Side side = Side::Left) {
    for (std::size_t i = 0; i + 1 < divisors.size(); ++i)
      if (divisors[i] == 0 || divisors[i + 1] % divisors[i] != 0)
        throw Error(ErrorKind::Malformed, "divisors must form a chain d1 | d2 | ...");
    return abelian(R, rank, divisors, side);
  }

  static Module zero(const Ring& R, Side side) {
    auto d = std::make_shared<Data>(R, side);
    d->kind = ModuleKind::FgAbelian;
    d->t = 0;
    d->rel = ZLattice(0);
    d->label = "0";
    return Module(std::move(d));
  }

  /// Finite module by tables: add is q*q, act is |R|*q with act[r*q + a] = r o a.
  /// Over Z only the addition table is used.
  static Module explicit_tables(const Ring& R, Side side, std::vector<std::string> names, const std::vector<int>& add,
                                const std::vector<int>& act, std::string label = "") {
    const std::size_t q = names.size();
    if (q == 0) throw Error(ErrorKind::Malformed, "module needs at least one element");
    if (q > kModuleCap) throw Error(ErrorKind::CapExceeded, "module larger than " + std::to_string(kModuleCap));
    if (add.size() != q * q) throw Error(ErrorKind::Malformed, "addition table shape");
    for (int v : add)
      if (v < 0 || static_cast<std::size_t>(v) >= q) throw Error(ErrorKind::Malformed, "addition entry out of range");
    int zero_el = -1;
    for (std::size_t a = 0; a < q && zero_el < 0; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < q && ok; ++b) ok = add[a * q + b] == static_cast<int>(b);
      if (ok) zero_el = static_cast<int>(a);
    }
    if (zero_el < 0) throw Error(ErrorKind::Malformed, "addition has no neutral element");
    auto d = std::make_shared<Data>(R, side);
    d->kind = ModuleKind::Explicit;
    d->pres = decompose_abelian(q, add, zero_el);
    if (d->pres.by_code.size() != q) throw Error(ErrorKind::Malformed, "addition table is not a group");
    d->t = d->pres.rank();
    d->rel = d->pres.relations;
    // the coordinate map must be additive, which certifies the group axioms
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        IntVector s = d->pres.coords[a];
        const IntVector& cb = d->pres.coords[b];
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += cb[i];
        if (d->rel.reduce(s) != d->pres.coords[static_cast<std::size_t>(add[a * q + b])])
          throw Error(ErrorKind::Malformed, "addition is not an abelian group law at (" + names[a] + ", " + names[b] + ")");
      }
    d->names = std::move(names);
    d->label = label.empty() ? "explicit(" + std::to_string(q) + ")" : std::move(label);
    if (R.is_finite()) {
      const std::size_t qr = R.order();
      if (act.size() != qr * q) throw Error(ErrorKind::Malformed, "action table shape");
      for (int v : act)
        if (v < 0 || static_cast<std::size_t>(v) >= q) throw Error(ErrorKind::Malformed, "action entry out of range");
      const std::size_t t = d->t;
      std::vector<IntMatrix> mats(qr, IntMatrix(t, t));
      for (std::size_t r = 0; r < qr; ++r)
        for (std::size_t j = 0; j < t; ++j) {
          const IntVector& c = d->pres.coords[static_cast<std::size_t>(act[r * q + static_cast<std::size_t>(d->pres.generators[j])])];
          for (std::size_t i = 0; i < t; ++i) mats[r](j, i) = c[i];
        }
      // additivity in the module argument
      for (std::size_t r = 0; r < qr; ++r)
        for (std::size_t a = 0; a < q; ++a) {
          IntVector img = d->rel.reduce(multiply(std::span<const Int>(d->pres.coords[a]), mats[r]));
          if (img != d->pres.coords[static_cast<std::size_t>(act[r * q + a])])
            throw Error(ErrorKind::Malformed, "action is not additive at (" + R.element_name(Int(r)) + ", " + d->names[a] + ")");
        }
      auto same_mod_rel = [&](const IntMatrix& x, const IntMatrix& y) {
        for (std::size_t j = 0; j < t; ++j) {
          IntVector diff(t);
          for (std::size_t i = 0; i < t; ++i) diff[i] = x(j, i) - y(j, i);
          if (!d->rel.contains(diff)) return false;
        }
        return true;
      };
      if (!same_mod_rel(mats[1], IntMatrix::identity(t))) throw Error(ErrorKind::Malformed, "1 does not act as identity");
      for (std::size_t r = 0; r < qr; ++r)
        for (std::size_t s = 0; s < qr; ++s) {
          IntMatrix sum(t, t);
          for (std::size_t j = 0; j < t; ++j)
            for (std::size_t i = 0; i < t; ++i) sum(j, i) = mats[r](j, i) + mats[s](j, i);
          if (!same_mod_rel(mats[static_cast<std::size_t>(R.add(Int(r), Int(s)))], sum))
            throw Error(ErrorKind::Malformed, "action is not additive in the ring argument");
          // (r o s) acts as "first s, then r"
          Int rs = R.mul(side, Int(r), Int(s));
          if (!same_mod_rel(mats[static_cast<std::size_t>(rs)], multiply(mats[s], mats[r])))
            throw Error(ErrorKind::Malformed, "action is not associative at (" + R.element_name(Int(r)) + ", " + R.element_name(Int(s)) + ")");
        }
      if (R.kind() == RingKind::FiniteTable) d->act = std::move(mats);
    }
    return Module(std::move(d));
  }

  /// The ring as a module over itself on the given side.
  static Module regular(const Ring& R, Side side) {
    if (R.is_integers()) {
      Module m = abelian(R, 1, {}, side);
      std::shared_ptr<Data> d = std::make_shared<Data>(*m.d_);
      d->label = side == Side::Left ? "RR (left regular)" : "RR (right regular)";
      return Module(std::move(d));
    }
    const std::size_t q = R.order();
    std::vector<std::string> names;
    std::vector<int> add(q * q), act(q * q);
    for (std::size_t a = 0; a < q; ++a) {
      names.push_back(R.element_name(Int(a)));
      for (std::size_t b = 0; b < q; ++b) {
        add[a * q + b] = static_cast<int>(R.add(Int(a), Int(b)));
        act[a * q + b] = static_cast<int>(R.mul(side, Int(a), Int(b)));
      }
    }
    return explicit_tables(R, side, std::move(names), add, act,
                           R.name() + (side == Side::Left ? " (left regular)" : " (right regular)"));
  }

  /// Z^t / rel with the given action; for table rings `act` holds one matrix per ring element.
  static Module presented(const Ring& R, Side side, ZLattice rel, std::vector<IntMatrix> act, std::string label) {
    auto d = std::make_shared<Data>(R, side);
    d->kind = ModuleKind::Presented;
    d->t = rel.dim();
    d->rel = std::move(rel);
    d->act = std::move(act);
    d->label = std::move(label);
    if (R.kind() == RingKind::FiniteTable && d->act.size() != R.order())
      throw Error(ErrorKind::Malformed, "presented module needs one action matrix per ring element");
    return Module(std::move(d));
  }

  static Module direct_sum(const Module& a, const Module& b) {
    if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "direct sum over different rings");
    if (a.side() != b.side()) throw Error(ErrorKind::SideMismatch, "direct sum of modules on different sides");
    ZLattice rel = ZLattice::span(block_diagonal(a.relation_matrix(), b.relation_matrix()));
    if (rel.dim() != a.gens() + b.gens()) rel = ZLattice(a.gens() + b.gens());
    std::vector<IntMatrix> act;
    if (a.ring().kind() == RingKind::FiniteTable)
      for (std::size_t r = 0; r < a.ring().order(); ++r) act.push_back(block_diagonal(a.action(Int(r)), b.action(Int(r))));
    return presented(a.ring(), a.side(), std::move(rel), std::move(act), a.label() + " (+) " + b.label());
  }

  const Ring& ring() const noexcept { return d_->ring; }
  Side side() const noexcept { return d_->side; }
  ModuleKind kind() const noexcept { return d_->kind; }
  const std::string& label() const noexcept { return d_->label; }
  std::size_t gens() const noexcept { return d_->t; }
  const ZLattice& relations() const noexcept { return d_->rel; }
  bool is_finite() const { return d_->rel.is_full_rank(); }
  bool is_zero() const { return d_->t == 0 || (is_finite() && order() == 1); }

  Int order() const {
    if (!is_finite()) throw Error(ErrorKind::Unsupported, "order of an infinite module");
    return d_->t == 0 ? Int(1) : d_->rel.index();
  }

  /// Relation basis as a t-column matrix (possibly with zero rows).
  IntMatrix relation_matrix() const {
    if (d_->rel.rank() == 0) return IntMatrix(0, d_->t);
    return d_->rel.basis();
  }

  IntMatrix action(const Int& r) const {
    if (d_->t == 0) return IntMatrix(0, 0);
    if (d_->ring.kind() == RingKind::FiniteTable) return d_->act.at(static_cast<std::size_t>(r));
    return scalar_matrix(d_->t, r);
  }

  IntVector reduce(IntVector v) const { return d_->rel.reduce(std::move(v)); }

  IntVector act_on(const Int& r, const IntVector& v) const { return reduce(multiply(std::span<const Int>(v), action(r))); }

  IntVector add(const IntVector& a, const IntVector& b) const {
    IntVector s = a;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
    return reduce(std::move(s));
  }

  /// Coordinates of the explicit element with index e.
  IntVector element(std::size_t e) const {
    require_explicit();
    return d_->pres.coords.at(e);
  }

  std::size_t element_index(const IntVector& v) const {
    require_explicit();
    return static_cast<std::size_t>(d_->pres.element_of(v));
  }

  std::string element_name(const IntVector& v) const {
    if (d_->kind == ModuleKind::Explicit) return d_->names[element_index(v)];
    IntVector r = reduce(v);
    if (r.size() == 1) return r[0].str();
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].str();
    return s + ")";
  }

  /// All elements as canonical coordinate vectors, in a fixed order
  /// (table order for explicit modules, lexicographic otherwise).
  std::vector<IntVector> elements() const {
    if (!is_finite()) throw Error(ErrorKind::Unsupported, "elements of an infinite module");
    if (order() > kModuleCap) throw Error(ErrorKind::CapExceeded, "module too large to list");
    if (d_->kind == ModuleKind::Explicit) return d_->pres.coords;
    std::vector<IntVector> out;
    const std::size_t t = d_->t;
    IntVector v(t);
    const IntMatrix& h = d_->rel.basis();
    for (;;) {
      out.push_back(v);
      std::size_t i = t;
      bool done = true;
      while (i > 0) {
        --i;
        if (++v[i] < h(i, i)) {
          done = false;
          break;
        }
        v[i] = 0;
      }
      if (done) break;
    }
    return out;
  }

  std::size_t rank_part() const noexcept { return d_->rank; }
  const std::vector<Int>& cyclic_orders() const noexcept { return d_->orders; }

 private:
  struct Data {
    Data(Ring r, Side s) : ring(std::move(r)), side(s) {}
    Ring ring;
    Side side;
    ModuleKind kind = ModuleKind::Presented;
    std::size_t t = 0;
    ZLattice rel;
    std::vector<IntMatrix> act;  // table rings only
    std::string label;
    // explicit
    std::vector<std::string> names;
    AbelianPresentation pres;
    // abelian
    std::size_t rank = 0;
    std::vector<Int> orders;
  };

  explicit Module(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  void require_explicit() const {
    if (d_->kind != ModuleKind::Explicit) throw Error(ErrorKind::Unsupported, "module has no element table");
  }

  std::shared_ptr<const Data> d_;
};

/// Relation lattice of M^n.
inline ZLattice power_relations(const Module& M, std::size_t n) {
  const std::size_t t = M.gens();
  if (M.relations().rank() == 0) return ZLattice(t * n);
  return ZLattice::span(block_diagonal(M.relations().basis(), n));
}

/// Action of r on M^n.
inline IntMatrix power_action(const Module& M, std::size_t n, const Int& r) { return block_diagonal(M.action(r), n); }

/// A subgroup of M^n.
class Subgroup {
 public:
  Subgroup(Module M, std::size_t n, const ZLattice& lattice)
      : M_(std::move(M)), n_(n), rel_(power_relations(M_, n)), lat_(lattice + rel_) {
    if (lattice.dim() != M_.gens() * n) throw Error(ErrorKind::DimensionMismatch, "subgroup ambient dimension");
  }

  static Subgroup whole(const Module& M, std::size_t n = 1) { return Subgroup(M, n, ZLattice::full(M.gens() * n)); }
  static Subgroup zero(const Module& M, std::size_t n = 1) { return Subgroup(M, n, ZLattice(M.gens() * n)); }

  /// Subgroup generated by the given tuples (each of length t*n).
  static Subgroup generated(const Module& M, std::size_t n, const std::vector<IntVector>& gens) {
    IntMatrix g(0, M.gens() * n);
    for (const auto& v : gens) g.append_row(v);
    return Subgroup(M, n, g.rows() ? ZLattice::span(g) : ZLattice(M.gens() * n));
  }

  const Module& module() const noexcept { return M_; }
  std::size_t arity() const noexcept { return n_; }
  const ZLattice& lattice() const noexcept { return lat_; }

  bool is_zero() const { return lat_ == rel_; }
  bool is_whole() const { return lat_.is_full_rank() && lat_.index() == 1; }

  bool contains(const IntVector& tuple) const { return lat_.contains(tuple); }
  bool subset_of(const Subgroup& o) const {
    check_same(o);
    return o.lat_.contains(lat_);
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    a.check_same(b);
    return a.lat_ == b.lat_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

  friend Subgroup operator+(const Subgroup& a, const Subgroup& b) {
    a.check_same(b);
    return Subgroup(a.M_, a.n_, a.lat_ + b.lat_);
  }

  friend Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    a.check_same(b);
    return Subgroup(a.M_, a.n_, intersect(a.lat_, b.lat_));
  }

  /// r o S
  Subgroup scaled(const Int& r) const { return Subgroup(M_, n_, lat_.image(power_action(M_, n_, r))); }

  /// {a : r o a in S}
  Subgroup preimage_under(const Int& r) const { return Subgroup(M_, n_, preimage(power_action(M_, n_, r), lat_)); }

  Int order() const {
    if (!M_.is_finite()) throw Error(ErrorKind::Unsupported, "order of an infinite subgroup");
    if (n_ * M_.gens() == 0) return 1;
    return rel_.index() / lat_.index();
  }

  /// Elements of S / L^n as canonical tuples, sorted.
  std::vector<IntVector> elements() const {
    if (!M_.is_finite()) throw Error(ErrorKind::Unsupported, "elements of an infinite subgroup");
    if (order() > kModuleCap) throw Error(ErrorKind::CapExceeded, "subgroup too large to list");
    const std::size_t dim = lat_.dim();
    std::set<IntVector> seen{IntVector(dim)};
    std::vector<IntVector> frontier{IntVector(dim)};
    while (!frontier.empty()) {
      std::vector<IntVector> next;
      for (const auto& e : frontier)
        for (std::size_t g = 0; g < lat_.rank(); ++g) {
          IntVector s = e;
          auto row = lat_.basis().row(g);
          for (std::size_t i = 0; i < dim; ++i) s[i] += row[i];
          s = rel_.reduce(std::move(s));
          if (seen.insert(s).second) next.push_back(std::move(s));
        }
      frontier = std::move(next);
    }
    std::vector<IntVector> out(seen.begin(), seen.end());
    if (M_.kind() == ModuleKind::Explicit) {
      auto key = [&](const IntVector& v) {
        std::vector<std::size_t> k;
        const std::size_t t = M_.gens();
        for (std::size_t l = 0; l < n_; ++l) k.push_back(M_.element_index(IntVector(v.begin() + static_cast<long>(l * t), v.begin() + static_cast<long>((l + 1) * t))));
        return k;
      };
      std::sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) { return key(a) < key(b); });
    }
    return out;
  }

  /// Component l of a tuple.
  IntVector component(const IntVector& tuple, std::size_t l) const {
    const std::size_t t = M_.gens();
    return IntVector(tuple.begin() + static_cast<long>(l * t), tuple.begin() + static_cast<long>((l + 1) * t));
  }

  std::string tuple_name(const IntVector& tuple) const {
    if (n_ == 1) return M_.element_name(tuple);
    std::string s = "(";
    for (std::size_t l = 0; l < n_; ++l) s += (l ? ", " : "") + M_.element_name(component(tuple, l));
    return s + ")";
  }

  std::vector<std::string> element_names() const {
    std::vector<std::string> out;
    for (const auto& e : elements()) out.push_back(tuple_name(e));
    return out;
  }

 private:
  void check_same(const Subgroup& o) const {
    if (o.lat_.dim() != lat_.dim() || o.n_ != n_ || !(o.rel_ == rel_))
      throw Error(ErrorKind::DimensionMismatch, "subgroups of different modules");
  }

  Module M_;
  std::size_t n_;
  ZLattice rel_;
  ZLattice lat_;
};

}  // namespace ppcalc
