#pragma once

// Computable rings: Z, Z/n, and finite rings given by operation tables.
// Elements are Int values: the integer itself for Z, the residue in [0, n) for Z/n,
// and the element index for table rings. Table rings are relabelled on load so
// that index 0 is zero and index 1 is one, which makes Int(0) and Int(1) the
// additive and multiplicative identities for every ring kind.

#include "ppcalc/abelian.hpp"
#include "ppcalc/error.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/zlattice.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ppcalc {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

enum class RingKind { Integers, IntegersModN, FiniteTable };

/// Default cap on the number of elements of a table ring.
inline constexpr std::size_t kDefaultTableCap = 64;
/// Cap on exhaustive scans over R^m.
inline constexpr std::size_t kScanCap = 2'000'000;

/// True for names the formula language reserves for variables: x, x1, x2, ...
inline bool is_variable_name(const std::string& s) {
  if (s.empty() || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// Result of an annihilator computation. Over Z it is a lattice basis (HNF rows);
/// over finite rings an explicit list of vectors in lexicographic order.
struct VectorSet {
  bool is_lattice = false;
  IntMatrix basis;
  std::vector<IntVector> elements;

  bool is_zero() const {
    if (is_lattice) return basis.rows() == 0;
    return elements.size() == 1;
  }
};

struct RegularSets {
  bool all_nonzero = false;  // Z: every nonzero element is regular
  std::vector<Int> left;     // l(r) = 0
  std::vector<Int> right;    // r(r) = 0
  std::vector<Int> regular;
};

class Ring {
 public:
  Ring() : Ring(integers()) {}

  static Ring integers() {
    auto d = std::make_shared<Data>();
    d->kind = RingKind::Integers;
    d->name = "Z";
    d->commutative = true;
    return Ring(std::move(d));
  }

  static Ring integers_mod(const Int& n) {
    if (n < 2) throw Error(ErrorKind::Malformed, "Z/n needs n >= 2");
    if (n > Int(1) << 30) throw Error(ErrorKind::Unsupported, "modulus too large");
    auto d = std::make_shared<Data>();
    d->kind = RingKind::IntegersModN;
    d->modulus = n;
    d->q = static_cast<std::size_t>(n);
    d->name = "Z/" + n.str();
    d->commutative = true;
    for (std::size_t i = 0; i < d->q; ++i) d->names.push_back(std::to_string(i));
    return Ring(std::move(d));
  }

  /// Table ring; add and mul are q*q row-major tables of element indices.
  /// Every ring axiom is checked exhaustively.
  static Ring from_tables(std::string name, std::vector<std::string> names, int zero, int one,
                          const std::vector<int>& add, const std::vector<int>& mul,
                          std::size_t cap = kDefaultTableCap) {
    const std::size_t q = names.size();
    if (q < 2) throw Error(ErrorKind::Malformed, "ring needs at least two elements");
    if (q > cap) throw Error(ErrorKind::CapExceeded, "ring has " + std::to_string(q) + " elements, cap is " + std::to_string(cap));
    if (add.size() != q * q || mul.size() != q * q) throw Error(ErrorKind::Malformed, "table shape");
    auto in_range = [q](int v) { return v >= 0 && static_cast<std::size_t>(v) < q; };
    if (!in_range(zero) || !in_range(one)) throw Error(ErrorKind::Malformed, "zero/one index");
    for (std::size_t i = 0; i < q * q; ++i)
      if (!in_range(add[i]) || !in_range(mul[i])) throw Error(ErrorKind::Malformed, "table entry out of range");
    {
      std::vector<std::string> sorted = names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::Malformed, "duplicate element name");
    }
    for (const auto& nm : names) {
      if (nm.empty()) throw Error(ErrorKind::Malformed, "empty element name");
      if (is_variable_name(nm)) throw Error(ErrorKind::Malformed, "element name '" + nm + "' clashes with a variable");
      bool ident = std::isalpha(static_cast<unsigned char>(nm[0])) || nm[0] == '_';
      bool number = true;
      for (std::size_t i = 0; i < nm.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(nm[i]);
        if (!std::isdigit(c) && !(i == 0 && c == '-' && nm.size() > 1)) number = false;
        if (!std::isalnum(c) && c != '_' && c != '\'') ident = false;
      }
      if (!ident && !number) throw Error(ErrorKind::Malformed, "element name '" + nm + "' is not a number or identifier");
    }
    if (zero == one) throw Error(ErrorKind::Malformed, "zero ring is not supported");

    // relabel: zero -> 0, one -> 1, others in original order
    std::vector<int> perm(q), inv(q);
    {
      std::size_t next = 2;
      for (std::size_t i = 0; i < q; ++i) {
        int ii = static_cast<int>(i);
        perm[i] = ii == zero ? 0 : ii == one ? 1 : static_cast<int>(next++);
      }
      for (std::size_t i = 0; i < q; ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    }
    auto d = std::make_shared<Data>();
    d->kind = RingKind::FiniteTable;
    d->name = std::move(name);
    d->q = q;
    d->names.resize(q);
    d->add.resize(q * q);
    d->mul.resize(q * q);
    for (std::size_t a = 0; a < q; ++a) {
      d->names[a] = names[static_cast<std::size_t>(inv[a])];
      for (std::size_t b = 0; b < q; ++b) {
        std::size_t oa = static_cast<std::size_t>(inv[a]), ob = static_cast<std::size_t>(inv[b]);
        d->add[a * q + b] = perm[static_cast<std::size_t>(add[oa * q + ob])];
        d->mul[a * q + b] = perm[static_cast<std::size_t>(mul[oa * q + ob])];
      }
    }
    validate_tables(*d);
    d->commutative = true;
    for (std::size_t a = 0; a < q && d->commutative; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (d->mul[a * q + b] != d->mul[b * q + a]) {
          d->commutative = false;
          break;
        }
    d->neg.resize(q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (d->add[a * q + b] == 0) d->neg[a] = static_cast<int>(b);
    d->additive = decompose_abelian(q, d->add, 0);
    for (std::size_t i = 0; i < q; ++i) d->index[d->names[i]] = static_cast<int>(i);
    return Ring(std::move(d));
  }

  RingKind kind() const noexcept { return d_->kind; }
  const std::string& name() const noexcept { return d_->name; }
  bool is_finite() const noexcept { return d_->kind != RingKind::Integers; }
  bool is_integers() const noexcept { return d_->kind == RingKind::Integers; }
  bool is_commutative() const noexcept { return d_->commutative; }
  const Int& modulus() const noexcept { return d_->modulus; }

  /// Number of elements; throws for Z.
  std::size_t order() const {
    require_finite("order");
    return d_->q;
  }

  std::vector<Int> elements() const {
    require_finite("elements");
    std::vector<Int> out;
    out.reserve(d_->q);
    for (std::size_t i = 0; i < d_->q; ++i) out.emplace_back(i);
    return out;
  }

  Int normalize(const Int& a) const {
    switch (d_->kind) {
      case RingKind::Integers: return a;
      case RingKind::IntegersModN: return floor_mod(a, d_->modulus);
      case RingKind::FiniteTable:
        if (a < 0 || a >= d_->q) throw Error(ErrorKind::Malformed, "not an element of " + d_->name);
        return a;
    }
    return a;
  }

  bool contains(const Int& a) const {
    if (d_->kind == RingKind::Integers) return true;
    return a >= 0 && a < d_->q;
  }

  Int add(const Int& a, const Int& b) const {
    switch (d_->kind) {
      case RingKind::Integers: return a + b;
      case RingKind::IntegersModN: return floor_mod(a + b, d_->modulus);
      case RingKind::FiniteTable: return d_->add[idx(a) * d_->q + idx(b)];
    }
    return 0;
  }

  Int neg(const Int& a) const {
    switch (d_->kind) {
      case RingKind::Integers: return -a;
      case RingKind::IntegersModN: return floor_mod(-a, d_->modulus);
      case RingKind::FiniteTable: return d_->neg[idx(a)];
    }
    return 0;
  }

  Int sub(const Int& a, const Int& b) const { return add(a, neg(b)); }

  /// Ring product a*b.
  Int mul(const Int& a, const Int& b) const {
    switch (d_->kind) {
      case RingKind::Integers: return a * b;
      case RingKind::IntegersModN: return floor_mod(a * b, d_->modulus);
      case RingKind::FiniteTable: return d_->mul[idx(a) * d_->q + idx(b)];
    }
    return 0;
  }

  /// Product in the working ring of a side: R for left, the opposite ring for right.
  Int mul(Side side, const Int& a, const Int& b) const { return side == Side::Left ? mul(a, b) : mul(b, a); }

  // Index arithmetic for exhaustive loops over finite rings.
  int fadd(int a, int b) const {
    if (d_->kind == RingKind::FiniteTable) return d_->add[static_cast<std::size_t>(a) * d_->q + static_cast<std::size_t>(b)];
    return static_cast<int>((static_cast<long long>(a) + b) % static_cast<long long>(d_->q));
  }
  int fneg(int a) const {
    if (d_->kind == RingKind::FiniteTable) return d_->neg[static_cast<std::size_t>(a)];
    return a == 0 ? 0 : static_cast<int>(d_->q) - a;
  }
  int fmul(Side side, int a, int b) const {
    if (side == Side::Right) std::swap(a, b);
    if (d_->kind == RingKind::FiniteTable) return d_->mul[static_cast<std::size_t>(a) * d_->q + static_cast<std::size_t>(b)];
    return static_cast<int>((static_cast<long long>(a) * b) % static_cast<long long>(d_->q));
  }

  std::string element_name(const Int& a) const {
    if (d_->kind == RingKind::FiniteTable) return d_->names[idx(a)];
    return a.str();
  }

  std::optional<Int> parse_element(const std::string& s) const {
    if (d_->kind == RingKind::FiniteTable) {
      auto it = d_->index.find(s);
      if (it == d_->index.end()) return std::nullopt;
      return Int(it->second);
    }
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    Int v(s[0] == '+' ? s.substr(1) : s);
    return normalize(v);
  }

  /// Additive group as Z^t / L.
  std::size_t additive_rank() const {
    return d_->kind == RingKind::FiniteTable ? d_->additive.rank() : 1;
  }

  ZLattice additive_relations() const {
    switch (d_->kind) {
      case RingKind::Integers: return ZLattice(1);
      case RingKind::IntegersModN: return ZLattice::span(IntMatrix{{d_->modulus}});
      case RingKind::FiniteTable: return d_->additive.relations;
    }
    return ZLattice(1);
  }

  IntVector coords(const Int& a) const {
    if (d_->kind == RingKind::FiniteTable) return d_->additive.coords[idx(a)];
    return IntVector{a};
  }

  Int from_coords(const IntVector& v) const {
    if (d_->kind == RingKind::FiniteTable) return Int(d_->additive.element_of(v));
    return normalize(v.at(0));
  }

  std::vector<Int> additive_generators() const {
    if (d_->kind == RingKind::FiniteTable) {
      std::vector<Int> g;
      for (int e : d_->additive.generators) g.emplace_back(e);
      return g;
    }
    return {Int(1)};
  }

  /// Matrix of left multiplication by r in the working ring of `side`,
  /// acting on additive coordinates: coords(r o a) = coords(a) * act.
  IntMatrix regular_action(Side side, const Int& r) const {
    if (d_->kind != RingKind::FiniteTable) return IntMatrix{{r}};
    const std::size_t t = additive_rank();
    IntMatrix m(t, t);
    for (std::size_t j = 0; j < t; ++j) {
      IntVector c = coords(mul(side, r, Int(d_->additive.generators[j])));
      for (std::size_t i = 0; i < t; ++i) m(j, i) = c[i];
    }
    return m;
  }

  /// Lazily computed per-ring value, shared by all copies of this handle.
  std::shared_ptr<const void> cached(std::size_t slot, const std::function<std::shared_ptr<const void>()>& make) const {
    std::lock_guard<std::mutex> lock(d_->cache_mutex);
    if (slot >= d_->cache.size()) d_->cache.resize(slot + 1);
    if (!d_->cache[slot]) d_->cache[slot] = make();
    return d_->cache[slot];
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    if (a.d_ == b.d_) return true;
    const Data& x = *a.d_;
    const Data& y = *b.d_;
    if (x.kind != y.kind) return false;
    if (x.kind == RingKind::IntegersModN) return x.modulus == y.modulus;
    if (x.kind == RingKind::Integers) return true;
    return x.add == y.add && x.mul == y.mul && x.names == y.names;
  }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  struct Data {
    RingKind kind = RingKind::Integers;
    std::string name;
    Int modulus = 0;
    std::size_t q = 0;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<int> add, mul, neg;
    bool commutative = true;
    AbelianPresentation additive;
    mutable std::mutex cache_mutex;
    mutable std::vector<std::shared_ptr<const void>> cache;
  };

  explicit Ring(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::size_t idx(const Int& a) const {
    if (a < 0 || a >= d_->q) throw Error(ErrorKind::Malformed, "not an element of " + d_->name);
    return static_cast<std::size_t>(a);
  }

  void require_finite(const char* what) const {
    if (!is_finite()) throw Error(ErrorKind::Unsupported, std::string(what) + " needs a finite ring");
  }

  static void validate_tables(const Data& d) {
    const std::size_t q = d.q;
    auto A = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(d.add[a * q + b]); };
    auto M = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(d.mul[a * q + b]); };
    auto fail = [&](const std::string& law, std::size_t a, std::size_t b, std::size_t c) {
      throw Error(ErrorKind::Malformed, law + " fails at (" + d.names[a] + ", " + d.names[b] + ", " + d.names[c] + ")");
    };
    for (std::size_t a = 0; a < q; ++a) {
      if (A(0, a) != a || A(a, 0) != a) fail("additive identity", a, 0, 0);
      if (M(1, a) != a || M(a, 1) != a) fail("multiplicative identity", a, 1, 1);
      bool has_neg = false;
      for (std::size_t b = 0; b < q; ++b) {
        if (A(a, b) != A(b, a)) fail("additive commutativity", a, b, 0);
        if (A(a, b) == 0) has_neg = true;
      }
      if (!has_neg) fail("additive inverse", a, 0, 0);
    }
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t c = 0; c < q; ++c) {
          if (A(A(a, b), c) != A(a, A(b, c))) fail("additive associativity", a, b, c);
          if (M(M(a, b), c) != M(a, M(b, c))) fail("associativity", a, b, c);
          if (M(a, A(b, c)) != A(M(a, b), M(a, c))) fail("left distributivity", a, b, c);
          if (M(A(a, b), c) != A(M(a, c), M(b, c))) fail("right distributivity", a, b, c);
        }
  }

  std::shared_ptr<const Data> d_;
};

/// Ring element matrix checks.
inline void check_entries(const Ring& R, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!R.contains(m(i, j)) || (R.kind() == RingKind::IntegersModN && R.normalize(m(i, j)) != m(i, j)))
        throw Error(ErrorKind::Malformed, "matrix entry is not a normalized ring element");
}

namespace detail {

// Calls f(v) for every v in R^len, lexicographic on element indices.
template <class F>
void for_each_vector(const Ring& R, std::size_t len, F&& f) {
  const std::size_t q = R.order();
  double total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= static_cast<double>(q);
  if (total > static_cast<double>(kScanCap)) throw Error(ErrorKind::CapExceeded, "exhaustive scan over R^" + std::to_string(len));
  std::vector<int> v(len, 0);
  for (;;) {
    if (!f(static_cast<const std::vector<int>&>(v))) return;
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (++v[i] < static_cast<int>(q)) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (len == 0) return;
  }
}

inline IntVector to_int_vector(const std::vector<int>& v) { return IntVector(v.begin(), v.end()); }

}  // namespace detail

/// {t in R^m : tA = 0}.
inline VectorSet left_annihilator(const Ring& R, const IntMatrix& A) {
  VectorSet out;
  if (R.is_integers()) {
    out.is_lattice = true;
    out.basis = A.rows() == 0 ? IntMatrix(0, 0) : left_kernel(A);
    return out;
  }
  check_entries(R, A);
  std::vector<std::vector<int>> a(A.rows(), std::vector<int>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) a[i][j] = static_cast<int>(A(i, j));
  detail::for_each_vector(R, A.rows(), [&](const std::vector<int>& t) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      int s = 0;
      for (std::size_t i = 0; i < A.rows(); ++i) s = R.fadd(s, R.fmul(Side::Left, t[i], a[i][j]));
      if (s != 0) return true;
    }
    out.elements.push_back(detail::to_int_vector(t));
    return true;
  });
  return out;
}

/// {c in R^n : Ac = 0}.
inline VectorSet right_annihilator(const Ring& R, const IntMatrix& A) {
  VectorSet out;
  if (R.is_integers()) {
    out.is_lattice = true;
    out.basis = A.cols() == 0 ? IntMatrix(0, 0) : left_kernel(A.transpose());
    return out;
  }
  check_entries(R, A);
  std::vector<std::vector<int>> a(A.rows(), std::vector<int>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) a[i][j] = static_cast<int>(A(i, j));
  detail::for_each_vector(R, A.cols(), [&](const std::vector<int>& c) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      int s = 0;
      for (std::size_t j = 0; j < A.cols(); ++j) s = R.fadd(s, R.fmul(Side::Left, a[i][j], c[j]));
      if (s != 0) return true;
    }
    out.elements.push_back(detail::to_int_vector(c));
    return true;
  });
  return out;
}

/// S_left = {r : l(r) = 0}, S_right = {r : r(r) = 0}, S_reg = both.
inline RegularSets regular_sets(const Ring& R) {
  RegularSets s;
  if (R.is_integers()) {
    s.all_nonzero = true;
    return s;
  }
  const int q = static_cast<int>(R.order());
  for (int r = 0; r < q; ++r) {
    bool left_reg = true, right_reg = true;
    for (int t = 1; t < q; ++t) {
      if (R.fmul(Side::Left, t, r) == 0) left_reg = false;
      if (R.fmul(Side::Left, r, t) == 0) right_reg = false;
    }
    if (left_reg) s.left.emplace_back(r);
    if (right_reg) s.right.emplace_back(r);
    if (left_reg && right_reg) s.regular.emplace_back(r);
  }
  return s;
}

inline bool in_left_regular(const Ring& R, const Int& r) {
  if (R.is_integers()) return r != 0;
  const int q = static_cast<int>(R.order());
  const int ri = static_cast<int>(r);
  for (int t = 1; t < q; ++t)
    if (R.fmul(Side::Left, t, ri) == 0) return false;
  return true;
}

}  // namespace ppcalc
