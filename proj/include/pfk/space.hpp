#pragma once

// Finite topological spaces, stored as the minimal open neighbourhood N(x)
// of each point. Open sets are enumerated on demand.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pfk/bitset.hpp"
#include "pfk/error.hpp"

namespace pfk {

using Point = std::size_t;

class FinSpace {
 public:
  FinSpace() : FinSpace(std::vector<std::string>{}, std::vector<Bitset>{}) {}

  /// From minimal neighbourhoods; they must satisfy x ∈ N(x) and
  /// y ∈ N(x) ⟹ N(y) ⊆ N(x).
  static FinSpace from_neighbourhoods(std::vector<std::string> ids, std::vector<Bitset> nbhds,
                                      std::optional<std::vector<Bitset>> subbasis = std::nullopt) {
    const auto n = ids.size();
    if (nbhds.size() != n) throw InvalidInput("one neighbourhood per point required");
    for (Point x = 0; x < n; ++x) {
      if (nbhds[x].size() != n) throw InvalidInput("neighbourhood of '" + ids[x] + "' has the wrong length");
      if (!nbhds[x].test(x)) throw InvalidInput("neighbourhood of '" + ids[x] + "' does not contain it");
      nbhds[x].for_each([&](std::size_t y) {
        if (!nbhds[y].is_subset_of(nbhds[x]))
          throw InvalidInput("neighbourhoods are not minimal open sets at '" + ids[x] + "'");
      });
    }
    return FinSpace(std::move(ids), std::move(nbhds), std::move(subbasis));
  }

  static FinSpace discrete(std::vector<std::string> ids) {
    std::vector<Bitset> nb;
    for (Point x = 0; x < ids.size(); ++x) nb.push_back(Bitset(ids.size(), {x}));
    return FinSpace(std::move(ids), std::move(nb));
  }

  static FinSpace indiscrete(std::vector<std::string> ids) {
    std::vector<Bitset> nb(ids.size(), Bitset::full(ids.size()));
    return FinSpace(std::move(ids), std::move(nb));
  }

  std::size_t size() const { return impl_->ids.size(); }
  const std::vector<std::string>& ids() const { return impl_->ids; }
  const std::string& id(Point x) const { return impl_->ids.at(x); }
  std::optional<Point> find(const std::string& id) const {
    auto it = impl_->index.find(id);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }
  Point index(const std::string& id) const {
    if (auto p = find(id)) return *p;
    throw InvalidInput("unknown point id '" + id + "'");
  }

  Bitset empty_set() const { return Bitset(size()); }
  Bitset full_set() const { return Bitset::full(size()); }

  /// Smallest open set containing x.
  const Bitset& nbhd(Point x) const { return impl_->nbhd[x]; }
  const std::vector<Bitset>& nbhds() const { return impl_->nbhd; }
  const std::optional<std::vector<Bitset>>& subbasis() const { return impl_->subbasis; }

  /// Specialization preorder: x ⊑ y iff every open containing x contains y.
  bool specializes(Point x, Point y) const { return nbhd(x).test(y); }

  bool is_open(const Bitset& s) const {
    bool ok = true;
    s.for_each([&](std::size_t x) { ok = ok && nbhd(x).is_subset_of(s); });
    return ok;
  }
  bool is_closed(const Bitset& s) const { return is_open(s.complement()); }

  Bitset interior(const Bitset& s) const {
    Bitset out(size());
    for (Point x = 0; x < size(); ++x)
      if (nbhd(x).is_subset_of(s)) out.set(x);
    return out;
  }
  Bitset closure(const Bitset& s) const {
    Bitset out(size());
    for (Point x = 0; x < size(); ++x)
      if (nbhd(x).intersects(s)) out.set(x);
    return out;
  }
  /// Smallest open set containing s.
  Bitset open_hull(const Bitset& s) const {
    Bitset out(size());
    s.for_each([&](std::size_t x) { out |= nbhd(x); });
    return out;
  }

  /// All open sets, canonically sorted. Throws CapExceeded past the limit.
  std::vector<Bitset> opens(const Limits& limits = {}) const {
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<Bitset> frontier{empty_set()};
    seen.insert(empty_set());
    while (!frontier.empty()) {
      std::vector<Bitset> next;
      for (const auto& o : frontier) {
        for (Point x = 0; x < size(); ++x) {
          if (o.test(x)) continue;
          Bitset u = o | nbhd(x);
          if (seen.insert(u).second) {
            if (seen.size() > limits.enumeration) throw CapExceeded("open-set enumeration exceeds cap");
            next.push_back(std::move(u));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Bitset> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string format(const Bitset& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](std::size_t x) {
      if (!first) out += ",";
      first = false;
      out += id(x);
    });
    return out + "}";
  }
  std::vector<std::string> names(const Bitset& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t x) { out.push_back(id(x)); });
    return out;
  }
  Bitset set_of(const std::vector<std::string>& names) const {
    Bitset b(size());
    for (const auto& n : names) b.set(index(n));
    return b;
  }

  /// Same points in the same order with the same topology.
  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.impl_ == b.impl_ || (a.impl_->ids == b.impl_->ids && a.impl_->nbhd == b.impl_->nbhd);
  }

 private:
  struct Impl {
    std::vector<std::string> ids;
    std::unordered_map<std::string, Point> index;
    std::vector<Bitset> nbhd;
    std::optional<std::vector<Bitset>> subbasis;
  };

  FinSpace(std::vector<std::string> ids, std::vector<Bitset> nbhds,
           std::optional<std::vector<Bitset>> subbasis = std::nullopt) {
    auto impl = std::make_shared<Impl>();
    for (Point x = 0; x < ids.size(); ++x)
      if (!impl->index.emplace(ids[x], x).second) throw InvalidInput("duplicate point id '" + ids[x] + "'");
    impl->ids = std::move(ids);
    impl->nbhd = std::move(nbhds);
    impl->subbasis = std::move(subbasis);
    impl_ = std::move(impl);
  }

  std::shared_ptr<const Impl> impl_;
};

/// Smallest topology on `ids` containing every set of `subbasis`; the
/// subbasis is recorded on the result.
inline FinSpace generate_topology(std::vector<std::string> ids, std::vector<Bitset> subbasis) {
  const auto n = ids.size();
  std::vector<Bitset> nb(n, Bitset::full(n));
  for (const auto& s : subbasis) {
    if (s.size() != n) throw InvalidInput("subbasis set over the wrong point set");
    s.for_each([&](std::size_t x) { nb[x] &= s; });
  }
  return FinSpace::from_neighbourhoods(std::move(ids), std::move(nb), std::move(subbasis));
}

struct OpensClosure {
  FinSpace space;
  std::vector<std::string> notes;
};

/// Topology from an explicit open-set family, closing it under unions and
/// intersections; notes say what had to be added.
inline OpensClosure space_from_opens(std::vector<std::string> ids, const std::vector<Bitset>& given,
                                     const Limits& limits = {}) {
  const auto n = ids.size();
  std::vector<Bitset> nb(n, Bitset::full(n));
  std::unordered_set<Bitset, BitsetHash> distinct;
  for (const auto& s : given) {
    if (s.size() != n) throw InvalidInput("open set over the wrong point set");
    distinct.insert(s);
    s.for_each([&](std::size_t x) { nb[x] &= s; });
  }
  OpensClosure out{FinSpace::from_neighbourhoods(std::move(ids), std::move(nb)), {}};
  if (!distinct.count(Bitset(n))) out.notes.push_back("added the empty set");
  if (!distinct.count(Bitset::full(n))) out.notes.push_back("added the full set");
  const auto total = out.space.opens(limits).size();
  std::size_t missing = total - distinct.size();
  missing -= !distinct.count(Bitset(n));
  missing -= !distinct.count(Bitset::full(n));
  if (missing > 0) out.notes.push_back("added " + std::to_string(missing) + " union(s)/intersection(s)");
  return out;
}

/// Point map between finite spaces.
struct CtsMap {
  FinSpace source;
  FinSpace target;
  std::vector<Point> table;

  Point operator()(Point x) const { return table.at(x); }

  static CtsMap identity(const FinSpace& x) {
    CtsMap m{x, x, std::vector<Point>(x.size())};
    for (Point p = 0; p < x.size(); ++p) m.table[p] = p;
    return m;
  }

  Bitset image(const Bitset& s) const {
    Bitset out(target.size());
    s.for_each([&](std::size_t x) { out.set(table[x]); });
    return out;
  }
  Bitset preimage(const Bitset& s) const {
    Bitset out(source.size());
    for (Point x = 0; x < source.size(); ++x)
      if (s.test(table[x])) out.set(x);
    return out;
  }
  bool injective() const {
    Bitset seen(target.size());
    for (auto y : table) {
      if (seen.test(y)) return false;
      seen.set(y);
    }
    return true;
  }
  bool surjective() const { return image(source.full_set()).all(); }

  friend bool operator==(const CtsMap& a, const CtsMap& b) {
    return a.table == b.table && a.source == b.source && a.target == b.target;
  }
};

/// g ∘ f.
inline CtsMap compose(const CtsMap& g, const CtsMap& f) {
  if (!(f.target == g.source)) throw InvalidInput("compose: target of first map is not source of second");
  CtsMap out{f.source, g.target, std::vector<Point>(f.source.size())};
  for (Point x = 0; x < f.source.size(); ++x) out.table[x] = g(f(x));
  return out;
}

struct ContinuityReport {
  bool continuous = true;
  std::optional<Bitset> witness;  // open set of the target with non-open preimage
};

/// Continuity tested on the minimal neighbourhoods of the target, which
/// form a basis.
inline ContinuityReport check_continuous(const CtsMap& f) {
  if (f.table.size() != f.source.size()) throw InvalidInput("map is not total on its source");
  for (Point y = 0; y < f.target.size(); ++y) {
    const Bitset& u = f.target.nbhd(y);
    if (!f.source.is_open(f.preimage(u))) return {false, u};
  }
  return {};
}

/// Continuity with respect to a given subbasis of the target topology.
inline ContinuityReport check_continuous_on(const CtsMap& f, const std::vector<Bitset>& subbasis) {
  for (const auto& s : subbasis)
    if (!f.source.is_open(f.preimage(s))) return {false, s};
  return {};
}

inline bool is_open_map(const CtsMap& f) {
  for (Point x = 0; x < f.source.size(); ++x)
    if (!f.target.is_open(f.image(f.source.nbhd(x)))) return false;
  return true;
}

inline bool is_homeomorphism(const CtsMap& f) {
  return f.injective() && f.surjective() && check_continuous(f).continuous && is_open_map(f);
}

enum class Closure { closure, interior };

inline Bitset closure_interior(const FinSpace& x, const Bitset& s, Closure which) {
  if (s.size() != x.size()) throw InvalidInput("subset over the wrong point set");
  return which == Closure::closure ? x.closure(s) : x.interior(s);
}

/// Product topology generated by {U × Y} ∪ {X × V}; points are ordered
/// x-major and named "(x,y)".
inline FinSpace product(const FinSpace& x, const FinSpace& y) {
  std::vector<std::string> ids;
  const auto n = x.size() * y.size();
  ids.reserve(n);
  for (Point a = 0; a < x.size(); ++a)
    for (Point b = 0; b < y.size(); ++b) ids.push_back("(" + x.id(a) + "," + y.id(b) + ")");
  std::vector<Bitset> subbasis;
  for (Point a = 0; a < x.size(); ++a) {
    Bitset s(n);
    x.nbhd(a).for_each([&](std::size_t a2) {
      for (Point b = 0; b < y.size(); ++b) s.set(a2 * y.size() + b);
    });
    subbasis.push_back(std::move(s));
  }
  for (Point b = 0; b < y.size(); ++b) {
    Bitset s(n);
    y.nbhd(b).for_each([&](std::size_t b2) {
      for (Point a = 0; a < x.size(); ++a) s.set(a * y.size() + b2);
    });
    subbasis.push_back(std::move(s));
  }
  return generate_topology(std::move(ids), std::move(subbasis));
}

/// Quotient topology {S : q⁻¹(S) open} for a surjection q onto `target_ids`.
inline FinSpace quotient(const FinSpace& x, std::vector<std::string> target_ids, const std::vector<Point>& q) {
  const auto m = target_ids.size();
  if (q.size() != x.size()) throw InvalidInput("quotient map is not total");
  Bitset hit(m);
  for (auto t : q) {
    if (t >= m) throw InvalidInput("quotient map leaves the target");
    hit.set(t);
  }
  if (!hit.all()) throw InvalidInput("quotient map is not surjective");
  // S is open iff it is closed under q(x) -> q(x') for x' ∈ N(x).
  std::vector<Bitset> step(m, Bitset(m));
  for (Point p = 0; p < x.size(); ++p) {
    step[q[p]].set(q[p]);
    x.nbhd(p).for_each([&](std::size_t p2) { step[q[p]].set(q[p2]); });
  }
  std::vector<Bitset> nb = step;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (nb[i].test(k)) nb[i] |= nb[k];
  return FinSpace::from_neighbourhoods(std::move(target_ids), std::move(nb));
}

/// Subspace topology on the points of `s` (kept in order).
inline FinSpace subspace(const FinSpace& x, const Bitset& s) {
  auto pts = s.members();
  std::vector<std::size_t> pos(x.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
  std::vector<std::string> ids;
  std::vector<Bitset> nb;
  for (auto p : pts) {
    ids.push_back(x.id(p));
    Bitset b(pts.size());
    (x.nbhd(p) & s).for_each([&](std::size_t q) { b.set(pos[q]); });
    nb.push_back(std::move(b));
  }
  return FinSpace::from_neighbourhoods(std::move(ids), std::move(nb));
}

struct PrimeOpenReport {
  bool prime = true;
  /// Two basic opens whose intersection lies in P while neither does.
  std::optional<std::pair<Bitset, Bitset>> witness;
};

/// Primality of an open set P in the frame of opens, decided on the basis of
/// minimal neighbourhoods: P is prime iff P ≠ X and N(x) ∩ N(y) ⊄ P for all
/// x, y ∉ P.
inline PrimeOpenReport prime_open_check(const FinSpace& x, const Bitset& p) {
  if (!x.is_open(p)) throw InvalidInput("prime_open_check: set is not open");
  if (p.all()) return {false, std::nullopt};
  const auto outside = p.complement().members();
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = i; j < outside.size(); ++j) {
      const Bitset& a = x.nbhd(outside[i]);
      const Bitset& b = x.nbhd(outside[j]);
      if ((a & b).is_subset_of(p)) return {false, std::pair{a, b}};
    }
  return {};
}

}  // namespace pfk
