#pragma once

// Vector spaces over the prime field Z/q, RREF-canonical subspaces, the
// lattice Sub A, and images/preimages under linear maps.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfk/order.hpp"
#include "pfk/space.hpp"

namespace pfk {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

/// Arithmetic in Z/q for a prime q small enough for single-character digits.
class Field {
 public:
  explicit Field(Scalar q = 2) : q_(q) {
    if (q < 2 || q > 36) throw InvalidInput("field size must be a prime between 2 and 36");
    for (Scalar d = 2; d * d <= q; ++d)
      if (q % d == 0) throw InvalidInput("field size " + std::to_string(q) + " is not prime");
  }

  Scalar q() const { return q_; }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % q_; }
  Scalar sub(Scalar a, Scalar b) const { return (a + q_ - b) % q_; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % q_; }
  Scalar neg(Scalar a) const { return (q_ - a) % q_; }
  Scalar inv(Scalar a) const {
    if (a % q_ == 0) throw InvalidInput("division by zero in Z/q");
    Scalar r = 1;  // a^(q-2)
    for (Scalar k = 0; k + 2 < q_; ++k) r = mul(r, a);
    return r;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Scalar q_;
};

namespace detail {

inline char digit_char(Scalar d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) throw CapExceeded("q^dim exceeds the enumeration cap");
    r *= base;
  }
  return r;
}

/// In-place reduced row-echelon form; drops zero rows. Returns pivot columns.
inline std::vector<std::size_t> rref(const Field& f, std::vector<Vector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Scalar inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Scalar factor = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of {x : M x = 0} for M with `ncols` columns.
inline std::vector<Vector> nullspace(const Field& f, std::vector<Vector> m, std::size_t ncols) {
  auto pivots = rref(f, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(ncols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// A linear subspace of F_q^n, stored as its RREF basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n) { return Subspace(n, {}); }
  static Subspace whole(const Field& f, std::size_t n) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Vector v(n, 0);
      v[i] = 1;
      rows.push_back(std::move(v));
    }
    return span(f, n, rows);
  }
  static Subspace span(const Field& f, std::size_t n, std::vector<Vector> vectors) {
    for (const auto& v : vectors)
      if (v.size() != n) throw InvalidInput("span: vector of the wrong dimension");
    detail::rref(f, vectors, n);
    return Subspace(n, std::move(vectors));
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }

  /// "dim:concatenated RREF rows", e.g. "1:01" for the line through (0,1).
  std::string key() const {
    std::string s = std::to_string(dim()) + ":";
    for (const auto& r : rows_)
      for (auto d : r) s += detail::digit_char(d);
    return s;
  }

  /// Canonical coset representative of a modulo this subspace.
  Vector reduce(const Field& f, Vector a) const {
    for (const auto& r : rows_) {
      std::size_t p = 0;
      while (r[p] == 0) ++p;
      const Scalar c = a[p];
      if (c == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) a[k] = f.sub(a[k], f.mul(c, r[k]));
    }
    return a;
  }

  bool contains(const Field& f, const Vector& a) const {
    if (a.size() != n_) throw InvalidInput("member: vector of the wrong dimension");
    auto r = reduce(f, a);
    return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
  }

  bool is_subspace_of(const Field& f, const Subspace& o) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vector& r) { return o.contains(f, r); });
  }

  /// Pivot columns of the RREF basis.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (const auto& r : rows_) {
      std::size_t p = 0;
      while (r[p] == 0) ++p;
      out.push_back(p);
    }
    return out;
  }

  /// Every vector of the subspace, in increasing coefficient order.
  std::vector<Vector> elements(const Field& f) const {
    std::vector<Vector> out{Vector(n_, 0)};
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      std::vector<Vector> next;
      for (Scalar c = 0; c < f.q(); ++c)
        for (const auto& v : out) {
          Vector w = v;
          for (std::size_t k = 0; k < n_; ++k) w[k] = f.add(w[k], f.mul(c, (*it)[k]));
          next.push_back(std::move(w));
        }
      out = std::move(next);
    }
    return out;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;
  /// Canonical order: dimension, then RREF rows lexicographically.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

 private:
  Subspace(std::size_t n, std::vector<Vector> rows) : n_(n), rows_(std::move(rows)) {}

  std::size_t n_ = 0;
  std::vector<Vector> rows_;
};

inline Subspace sum(const Field& f, const Subspace& v, const Subspace& w) {
  if (v.ambient_dim() != w.ambient_dim()) throw InvalidInput("sum: dimension mismatch");
  auto rows = v.rows();
  rows.insert(rows.end(), w.rows().begin(), w.rows().end());
  return Subspace::span(f, v.ambient_dim(), std::move(rows));
}

/// Vectors orthogonal to every row of v under the standard bilinear form.
inline std::vector<Vector> annihilator(const Field& f, const Subspace& v) {
  return detail::nullspace(f, v.rows(), v.ambient_dim());
}

inline Subspace intersect(const Field& f, const Subspace& v, const Subspace& w) {
  if (v.ambient_dim() != w.ambient_dim()) throw InvalidInput("intersect: dimension mismatch");
  auto constraints = annihilator(f, v);
  auto more = annihilator(f, w);
  constraints.insert(constraints.end(), more.begin(), more.end());
  return Subspace::span(f, v.ambient_dim(), detail::nullspace(f, std::move(constraints), v.ambient_dim()));
}

/// F_q^dim together with a topology on its q^dim vectors.
///
/// Vectors are indexed by reading their digit string as a base-q numeral, so
/// point i of `carrier` is the i-th vector in lexicographic order.
class FqSpace {
 public:
  FqSpace() : FqSpace(Field(2), 0) {}
  FqSpace(Field f, std::size_t dim, const Limits& limits = {}) : field_(f), dim_(dim) {
    count_ = detail::checked_pow(f.q(), dim, limits.enumeration);
    carrier_ = FinSpace::discrete(vector_ids());
    carrier_kind_ = "discrete";
  }

  static FqSpace discrete(Scalar q, std::size_t dim) { return FqSpace(Field(q), dim); }
  static FqSpace indiscrete(Scalar q, std::size_t dim) {
    FqSpace a(Field(q), dim);
    a.carrier_ = FinSpace::indiscrete(a.vector_ids());
    a.carrier_kind_ = "indiscrete";
    return a;
  }
  /// Carrier topology on the vector set; points may be listed in any order.
  static FqSpace with_carrier(Scalar q, std::size_t dim, const FinSpace& carrier) {
    FqSpace a(Field(q), dim);
    if (carrier.size() != a.count_) throw InvalidInput("carrier topology must have exactly q^dim points");
    std::vector<Point> to_canonical(carrier.size());
    for (Point p = 0; p < carrier.size(); ++p) to_canonical[p] = a.index(a.parse(carrier.id(p)));
    std::vector<Bitset> nb(a.count_, Bitset(a.count_));
    for (Point p = 0; p < carrier.size(); ++p)
      carrier.nbhd(p).for_each([&](std::size_t r) { nb[to_canonical[p]].set(to_canonical[r]); });
    a.carrier_ = FinSpace::from_neighbourhoods(a.vector_ids(), std::move(nb));
    a.carrier_kind_ = "custom";
    return a;
  }

  const Field& field() const { return field_; }
  Scalar q() const { return field_.q(); }
  std::size_t dim() const { return dim_; }
  std::size_t vector_count() const { return count_; }
  const FinSpace& carrier() const { return carrier_; }
  /// "discrete", "indiscrete" or "custom".
  const std::string& carrier_kind() const { return carrier_kind_; }
  bool carrier_is_discrete() const {
    for (Point p = 0; p < carrier_.size(); ++p)
      if (carrier_.nbhd(p).count() != 1) return false;
    return true;
  }

  Vector vector(std::size_t index) const {
    Vector v(dim_, 0);
    for (std::size_t k = dim_; k-- > 0;) {
      v[k] = static_cast<Scalar>(index % q());
      index /= q();
    }
    return v;
  }
  std::size_t index(const Vector& v) const {
    if (v.size() != dim_) throw InvalidInput("vector of the wrong dimension");
    std::size_t i = 0;
    for (auto d : v) i = i * q() + d;
    return i;
  }
  std::string format(const Vector& v) const {
    std::string s;
    for (auto d : v) s += detail::digit_char(d);
    return s;
  }
  Vector parse(const std::string& s) const {
    if (s.size() != dim_)
      throw InvalidInput("vector '" + s + "' has length " + std::to_string(s.size()) + ", expected " +
                         std::to_string(dim_));
    Vector v;
    for (char c : s) {
      Scalar d;
      if (c >= '0' && c <= '9') d = static_cast<Scalar>(c - '0');
      else if (c >= 'a' && c <= 'z') d = static_cast<Scalar>(c - 'a' + 10);
      else throw InvalidInput("vector '" + s + "' has a non-digit character");
      if (d >= q()) throw InvalidInput("vector '" + s + "' has a digit outside Z/" + std::to_string(q()));
      v.push_back(d);
    }
    return v;
  }

  Vector zero() const { return Vector(dim_, 0); }
  Vector add(const Vector& a, const Vector& b) const {
    Vector r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = field_.add(a[k], b[k]);
    return r;
  }
  Vector scale(Scalar c, const Vector& a) const {
    Vector r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = field_.mul(c, a[k]);
    return r;
  }

  Subspace span(std::vector<Vector> vs) const { return Subspace::span(field_, dim_, std::move(vs)); }
  Subspace zero_subspace() const { return Subspace::zero(dim_); }
  Subspace whole() const { return Subspace::whole(field_, dim_); }
  /// Subspace from basis digit strings (any spanning list is accepted).
  Subspace subspace(const std::vector<std::string>& basis) const {
    std::vector<Vector> vs;
    for (const auto& s : basis) vs.push_back(parse(s));
    return span(std::move(vs));
  }
  /// Members of a subspace as carrier points.
  Bitset point_set(const Subspace& v) const {
    Bitset b(count_);
    for (const auto& a : v.elements(field_)) b.set(index(a));
    return b;
  }

  std::vector<std::string> vector_ids() const {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < count_; ++i) ids.push_back(format(vector(i)));
    return ids;
  }

 private:

  Field field_;
  std::size_t dim_ = 0;
  std::size_t count_ = 1;
  FinSpace carrier_;
  std::string carrier_kind_;
};

enum class SubspaceOp { span, sum, intersect };

/// Linear map F_q^source -> F_q^target as a target × source matrix.
struct FqLinearMap {
  Field field;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Vector> matrix;  // target_dim rows of length source_dim

  static FqLinearMap from_rows(const Field& f, std::size_t source_dim, std::vector<Vector> rows) {
    FqLinearMap m{f, source_dim, rows.size(), std::move(rows)};
    for (const auto& r : m.matrix) {
      if (r.size() != source_dim) throw InvalidInput("linear map: ragged matrix");
      for (auto x : r)
        if (x >= f.q()) throw InvalidInput("linear map: entry outside Z/q");
    }
    return m;
  }
  static FqLinearMap identity(const Field& f, std::size_t n) {
    FqLinearMap m{f, n, n, std::vector<Vector>(n, Vector(n, 0))};
    for (std::size_t i = 0; i < n; ++i) m.matrix[i][i] = 1;
    return m;
  }
  static FqLinearMap zero(const Field& f, std::size_t source_dim, std::size_t target_dim) {
    return {f, source_dim, target_dim, std::vector<Vector>(target_dim, Vector(source_dim, 0))};
  }

  Vector apply(const Vector& a) const {
    if (a.size() != source_dim) throw InvalidInput("linear map: argument of the wrong dimension");
    Vector r(target_dim, 0);
    for (std::size_t i = 0; i < target_dim; ++i)
      for (std::size_t j = 0; j < source_dim; ++j) r[i] = field.add(r[i], field.mul(matrix[i][j], a[j]));
    return r;
  }

  bool invertible() const {
    if (source_dim != target_dim) return false;
    auto rows = matrix;
    return detail::rref(field, rows, source_dim).size() == source_dim;
  }

  friend bool operator==(const FqLinearMap& a, const FqLinearMap& b) {
    return a.field == b.field && a.source_dim == b.source_dim && a.target_dim == b.target_dim &&
           a.matrix == b.matrix;
  }
};

/// g ∘ f.
inline FqLinearMap compose(const FqLinearMap& g, const FqLinearMap& f) {
  if (f.target_dim != g.source_dim) throw InvalidInput("compose: dimension mismatch");
  FqLinearMap out = FqLinearMap::zero(f.field, f.source_dim, g.target_dim);
  for (std::size_t i = 0; i < g.target_dim; ++i)
    for (std::size_t j = 0; j < f.source_dim; ++j) {
      Scalar acc = 0;
      for (std::size_t k = 0; k < f.target_dim; ++k) acc = f.field.add(acc, f.field.mul(g.matrix[i][k], f.matrix[k][j]));
      out.matrix[i][j] = acc;
    }
  return out;
}

/// Every linear map F_q^source -> F_q^target, in lexicographic matrix order.
inline std::vector<FqLinearMap> all_linear_maps(const Field& f, std::size_t source_dim, std::size_t target_dim,
                                                const Limits& limits = {}) {
  const auto entries = source_dim * target_dim;
  const auto total = detail::checked_pow(f.q(), entries, limits.enumeration);
  std::vector<FqLinearMap> out;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    auto m = FqLinearMap::zero(f, source_dim, target_dim);
    auto c = code;
    for (std::size_t e = entries; e-- > 0;) {
      m.matrix[e / source_dim][e % source_dim] = static_cast<Scalar>(c % f.q());
      c /= f.q();
    }
    out.push_back(std::move(m));
  }
  return out;
}

enum class MapDirection { image, preimage };

inline Subspace image(const FqLinearMap& f, const Subspace& v) {
  if (v.ambient_dim() != f.source_dim) throw InvalidInput("image: dimension mismatch");
  std::vector<Vector> rows;
  for (const auto& r : v.rows()) rows.push_back(f.apply(r));
  return Subspace::span(f.field, f.target_dim, std::move(rows));
}

/// f⁻¹(W) as the nullspace of ann(W)·F.
inline Subspace preimage(const FqLinearMap& f, const Subspace& w) {
  if (w.ambient_dim() != f.target_dim) throw InvalidInput("preimage: dimension mismatch");
  std::vector<Vector> constraints;
  for (const auto& c : annihilator(f.field, w)) {
    Vector row(f.source_dim, 0);
    for (std::size_t j = 0; j < f.source_dim; ++j)
      for (std::size_t i = 0; i < f.target_dim; ++i) row[j] = f.field.add(row[j], f.field.mul(c[i], f.matrix[i][j]));
    constraints.push_back(std::move(row));
  }
  return Subspace::span(f.field, f.source_dim, detail::nullspace(f.field, std::move(constraints), f.source_dim));
}

inline Subspace map_subspace(const FqLinearMap& f, const Subspace& v, MapDirection dir) {
  return dir == MapDirection::image ? image(f, v) : preimage(f, v);
}

inline Subspace kernel(const FqLinearMap& f) { return preimage(f, Subspace::zero(f.target_dim)); }

/// Sub A: every subspace in canonical order, as a lattice under inclusion
/// whose element ids are the subspace keys.
struct SubLattice {
  Field field;
  std::size_t dim = 0;
  std::vector<Subspace> subspaces;
  FinLattice lattice;
  std::unordered_map<std::string, Elem> by_key;

  Elem element(const Subspace& v) const {
    auto it = by_key.find(v.key());
    if (it == by_key.end()) throw InvalidInput("subspace " + v.key() + " is not in this lattice");
    return it->second;
  }
  const Subspace& subspace(Elem e) const { return subspaces.at(e); }
  std::size_t size() const { return subspaces.size(); }
};

inline SubLattice enumerate_subspaces(const FqSpace& a, const Limits& limits = {}) {
  SubLattice sl;
  sl.field = a.field();
  sl.dim = a.dim();
  std::map<std::string, Subspace> found;
  std::vector<Subspace> frontier{a.zero_subspace()};
  found.emplace(frontier.front().key(), frontier.front());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& v : frontier) {
      for (std::size_t i = 0; i < a.vector_count(); ++i) {
        auto x = a.vector(i);
        if (v.contains(a.field(), x)) continue;
        auto rows = v.rows();
        rows.push_back(std::move(x));
        auto w = a.span(std::move(rows));
        if (found.emplace(w.key(), w).second) {
          if (found.size() > limits.enumeration) throw CapExceeded("subspace enumeration exceeds cap");
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& [k, v] : found) sl.subspaces.push_back(v);
  std::sort(sl.subspaces.begin(), sl.subspaces.end());
  std::vector<std::string> ids;
  for (Elem e = 0; e < sl.subspaces.size(); ++e) {
    ids.push_back(sl.subspaces[e].key());
    sl.by_key.emplace(ids.back(), e);
  }
  const auto& subs = sl.subspaces;
  const auto& field = sl.field;
  sl.lattice = FinLattice::from_predicate(std::move(ids), [&](std::size_t i, std::size_t j) {
    return subs[i].is_subspace_of(field, subs[j]);
  });
  return sl;
}

/// Sub f : Sub A -> Sub B, V ↦ f(V).
inline LatticeMap sub_map(const FqLinearMap& f, const SubLattice& sa, const SubLattice& sb) {
  LatticeMap m{sa.lattice, sb.lattice, std::vector<Elem>(sa.size())};
  for (Elem e = 0; e < sa.size(); ++e) m.table[e] = sb.element(image(f, sa.subspace(e)));
  return m;
}

/// f⁻¹ : Sub B -> Sub A.
inline LatticeMap preimage_map(const FqLinearMap& f, const SubLattice& sa, const SubLattice& sb) {
  LatticeMap m{sb.lattice, sa.lattice, std::vector<Elem>(sb.size())};
  for (Elem e = 0; e < sb.size(); ++e) m.table[e] = sa.element(preimage(f, sb.subspace(e)));
  return m;
}

struct QuotientFiber {
  Subspace kernel;
  std::vector<Vector> representatives;  // canonical, in vector order

  std::size_t coset_count() const { return representatives.size(); }
};

/// Coset representatives of A / V: the vectors vanishing on V's pivot columns.
inline QuotientFiber quotient_fiber(const FqSpace& a, const Subspace& v) {
  if (v.ambient_dim() != a.dim()) throw InvalidInput("quotient_fiber: dimension mismatch");
  QuotientFiber out{v, {}};
  auto pivots = v.pivots();
  for (std::size_t i = 0; i < a.vector_count(); ++i) {
    auto x = a.vector(i);
    if (std::all_of(pivots.begin(), pivots.end(), [&](std::size_t p) { return x[p] == 0; }))
      out.representatives.push_back(std::move(x));
  }
  return out;
}

}  // namespace pfk
