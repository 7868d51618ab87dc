#pragma once

// Topologies on Sub A (lower Vietoris, open support, Fell analog), the sets
// 𝒰_{V1,V2} with a primality probe, topology comparison, and Max A.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pfk/frame.hpp"
#include "pfk/linfq.hpp"

namespace pfk {

enum class TopologyKind { vietoris, open_support, fell };

inline const char* to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::vietoris: return "vietoris";
    case TopologyKind::open_support: return "open_support";
    case TopologyKind::fell: return "fell";
  }
  return "?";
}

inline TopologyKind parse_topology_kind(const std::string& s) {
  if (s == "vietoris") return TopologyKind::vietoris;
  if (s == "open_support" || s == "open-support") return TopologyKind::open_support;
  if (s == "fell") return TopologyKind::fell;
  throw InvalidInput("unknown topology kind '" + s + "'");
}

struct SpectrumTopology {
  SubLattice sub_lattice;
  FinSpace space;  // points are the subspaces of sub_lattice, named by key
  TopologyKind kind = TopologyKind::vietoris;
  std::vector<Bitset> subbasis;
};

namespace detail {

/// Point set of every subspace, indexed like the sub lattice.
inline std::vector<Bitset> subspace_point_sets(const FqSpace& a, const SubLattice& sl) {
  std::vector<Bitset> out;
  out.reserve(sl.size());
  for (const auto& v : sl.subspaces) out.push_back(a.point_set(v));
  return out;
}

inline void sort_unique(std::vector<Bitset>& sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace detail

/// Ũ = {P : P ∩ U ≠ ∅}. Taking U over the minimal carrier neighbourhoods
/// gives a subbasis of the same topology as taking all carrier opens,
/// because U ↦ Ũ preserves unions.
inline std::vector<Bitset> vietoris_subbasis(const FqSpace& a, const SubLattice& sl) {
  const auto members = detail::subspace_point_sets(a, sl);
  std::vector<Bitset> out;
  for (Point x = 0; x < a.vector_count(); ++x) {
    Bitset s(sl.size());
    for (Elem p = 0; p < sl.size(); ++p)
      if (members[p].intersects(a.carrier().nbhd(x))) s.set(p);
    out.push_back(std::move(s));
  }
  detail::sort_unique(out);
  return out;
}

/// ǎ = {P : a ∉ P}.
inline std::vector<Bitset> check_sets(const FqSpace& a, const SubLattice& sl) {
  const auto members = detail::subspace_point_sets(a, sl);
  std::vector<Bitset> out;
  for (Point x = 0; x < a.vector_count(); ++x) {
    Bitset s(sl.size());
    for (Elem p = 0; p < sl.size(); ++p)
      if (!members[p].test(x)) s.set(p);
    out.push_back(std::move(s));
  }
  detail::sort_unique(out);
  return out;
}

/// Ǩ = {P : P ∩ K = ∅} for every subset K of A.
inline std::vector<Bitset> fell_sets(const FqSpace& a, const SubLattice& sl, const Limits& limits = {}) {
  const auto n = a.vector_count();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.subset_scan)
    throw CapExceeded("Fell subbasis needs 2^" + std::to_string(n) + " compact sets");
  const auto members = detail::subspace_point_sets(a, sl);
  std::vector<Bitset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bitset k(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) k.set(i);
    Bitset s(sl.size());
    for (Elem p = 0; p < sl.size(); ++p)
      if (!members[p].intersects(k)) s.set(p);
    out.push_back(std::move(s));
  }
  detail::sort_unique(out);
  return out;
}

inline SpectrumTopology spectrum_topology(const FqSpace& a, TopologyKind kind, const Limits& limits = {}) {
  SpectrumTopology t;
  t.kind = kind;
  t.sub_lattice = enumerate_subspaces(a, limits);
  t.subbasis = vietoris_subbasis(a, t.sub_lattice);
  if (kind != TopologyKind::vietoris) {
    auto extra = kind == TopologyKind::open_support ? check_sets(a, t.sub_lattice) : fell_sets(a, t.sub_lattice, limits);
    t.subbasis.insert(t.subbasis.end(), extra.begin(), extra.end());
    detail::sort_unique(t.subbasis);
  }
  t.space = generate_topology(t.sub_lattice.lattice.ids(), t.subbasis);
  return t;
}

enum class TopologyRelation { equal, first_strictly_coarser, second_strictly_coarser, incomparable };

inline const char* to_string(TopologyRelation r) {
  switch (r) {
    case TopologyRelation::equal: return "equal";
    case TopologyRelation::first_strictly_coarser: return "first_strictly_coarser";
    case TopologyRelation::second_strictly_coarser: return "second_strictly_coarser";
    case TopologyRelation::incomparable: return "incomparable";
  }
  return "?";
}

struct TopologyComparison {
  TopologyRelation relation = TopologyRelation::equal;
  std::optional<Bitset> only_in_first;   // open in the first, not in the second
  std::optional<Bitset> only_in_second;  // open in the second, not in the first
};

/// Compares two topologies on the same points through their minimal
/// neighbourhoods.
inline TopologyComparison topology_compare(const FinSpace& t1, const FinSpace& t2) {
  if (t1.ids() != t2.ids()) throw InvalidInput("topology_compare: point sets differ");
  TopologyComparison c;
  for (Point x = 0; x < t1.size() && !c.only_in_first; ++x)
    if (!t2.is_open(t1.nbhd(x))) c.only_in_first = t1.nbhd(x);
  for (Point x = 0; x < t2.size() && !c.only_in_second; ++x)
    if (!t1.is_open(t2.nbhd(x))) c.only_in_second = t2.nbhd(x);
  if (c.only_in_first && c.only_in_second)
    c.relation = TopologyRelation::incomparable;
  else if (c.only_in_first)
    c.relation = TopologyRelation::second_strictly_coarser;
  else if (c.only_in_second)
    c.relation = TopologyRelation::first_strictly_coarser;
  return c;
}

inline TopologyComparison topology_compare(const SpectrumTopology& t1, const SpectrumTopology& t2) {
  return topology_compare(t1.space, t2.space);
}

/// Max A: the carrier-closed subspaces, with closure Sub A -> Max A left
/// adjoint to the inclusion.
struct MaxSubspaces {
  SubLattice sub;
  std::vector<Elem> closed;  // elements of sub.lattice, in canonical order
  Bitset closed_set;         // the same, as a point set of Sub A
  FinLattice lattice;        // Max A ordered by inclusion
  LatticeMap closure;        // Sub A -> Max A
  LatticeMap inclusion;      // Max A -> Sub A
  AdjunctionReport adjunction;
};

/// Throws UnsupportedCarrier when the closure of some subspace is not a
/// subspace.
inline MaxSubspaces max_subspaces(const FqSpace& a, const Limits& limits = {}) {
  MaxSubspaces m;
  m.sub = enumerate_subspaces(a, limits);
  const auto members = detail::subspace_point_sets(a, m.sub);
  std::vector<Elem> cl(m.sub.size());
  for (Elem e = 0; e < m.sub.size(); ++e) {
    const Bitset c = a.carrier().closure(members[e]);
    std::vector<Vector> pts;
    c.for_each([&](std::size_t i) { pts.push_back(a.vector(i)); });
    auto span = a.span(std::move(pts));
    const Elem s = m.sub.element(span);
    if (members[s] != c)
      throw UnsupportedCarrier("closure of subspace " + m.sub.subspace(e).key() + " is not a subspace",
                               {m.sub.subspace(e).key()});
    cl[e] = s;
  }
  m.closed_set = Bitset(m.sub.size());
  std::vector<std::size_t> pos(m.sub.size(), 0);
  std::vector<std::string> ids;
  for (Elem e = 0; e < m.sub.size(); ++e)
    if (cl[e] == e) {
      pos[e] = m.closed.size();
      m.closed.push_back(e);
      m.closed_set.set(e);
      ids.push_back(m.sub.lattice.id(e));
    }
  const auto& closed = m.closed;
  const auto& sub = m.sub;
  m.lattice = FinLattice::from_predicate(std::move(ids), [&](std::size_t i, std::size_t j) {
    return sub.lattice.leq(closed[i], closed[j]);
  });
  m.closure = LatticeMap{m.sub.lattice, m.lattice, std::vector<Elem>(m.sub.size())};
  for (Elem e = 0; e < m.sub.size(); ++e) m.closure.table[e] = pos[cl[e]];
  m.inclusion = LatticeMap{m.lattice, m.sub.lattice, m.closed};
  m.adjunction = verify_adjunction(m.closure, m.inclusion);
  if (!m.adjunction.holds) throw InternalError("closure is not left adjoint to the inclusion of Max A");
  return m;
}

/// T1 check of a spectrum topology restricted to Max A; nullopt when the
/// carrier does not support Max A.
inline std::optional<bool> max_t1(const FqSpace& a, const SpectrumTopology& t, const Limits& limits = {}) {
  try {
    auto m = max_subspaces(a, limits);
    auto y = subspace(t.space, m.closed_set);
    for (Point x = 0; x < y.size(); ++x)
      if (y.nbhd(x).count() != 1) return false;
    return true;
  } catch (const UnsupportedCarrier&) {
    return std::nullopt;
  }
}

struct UInterval {
  Bitset set;         // points of Sub A
  bool open = false;  // open in the subspace topology on Max A
  std::optional<bool> prime;
  std::optional<std::pair<Bitset, Bitset>> witness;  // basic opens meeting inside the set
};

/// 𝒰_{V1,V2} = Max A ∖ {V : V1 ⊆ V ⊆ V2}. When the set is open in Max A
/// (with the subspace topology from `t`) its primality is decided by the
/// neighbourhood criterion and cross-checked against the frame of opens when
/// that frame has at most 256 elements.
inline UInterval u_interval(const FqSpace& a, const SpectrumTopology& t, const Subspace& v1, const Subspace& v2,
                            const Limits& limits = {}) {
  const auto& sl = t.sub_lattice;
  const Elem e1 = sl.element(v1), e2 = sl.element(v2);
  if (!sl.lattice.leq(e1, e2)) throw InvalidInput("u_interval: " + v1.key() + " is not contained in " + v2.key());
  auto m = max_subspaces(a, limits);
  UInterval u{Bitset(sl.size()), false, std::nullopt, std::nullopt};
  for (auto e : m.closed)
    if (!(sl.lattice.leq(e1, e) && sl.lattice.leq(e, e2))) u.set.set(e);

  auto y = subspace(t.space, m.closed_set);
  Bitset local(m.closed.size());
  for (std::size_t i = 0; i < m.closed.size(); ++i)
    if (u.set.test(m.closed[i])) local.set(i);
  u.open = y.is_open(local);
  if (!u.open) return u;

  auto r = prime_open_check(y, local);
  u.prime = r.prime;
  if (r.witness) {
    auto lift = [&](const Bitset& s) {
      Bitset out(sl.size());
      s.for_each([&](std::size_t i) { out.set(m.closed[i]); });
      return out;
    };
    u.witness = std::pair{lift(r.witness->first), lift(r.witness->second)};
  }
  try {
    Limits small = limits;
    small.enumeration = std::min<std::uint64_t>(limits.enumeration, 256);
    auto oy = open_locale(y, small);
    if (is_prime(oy.locale, oy.element(local)).prime != r.prime)
      throw InternalError("u_interval: primality criteria disagree");
  } catch (const CapExceeded&) {
  }
  return u;
}

}  // namespace pfk
