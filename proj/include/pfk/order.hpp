#pragma once

// Finite posets, lattices and Galois adjunctions between them.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfk/bitset.hpp"
#include "pfk/error.hpp"

namespace pfk {

/// Index of an element in the canonical element list of a FinLattice.
using Elem = std::size_t;

/// Order data as read from input: ids plus an arbitrary set of `a <= b` pairs.
struct RawOrder {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> leq;
};

enum class LatticeLevel { poset, suplattice, frame };

inline const char* to_string(LatticeLevel l) {
  switch (l) {
    case LatticeLevel::poset: return "poset";
    case LatticeLevel::suplattice: return "suplattice";
    case LatticeLevel::frame: return "frame";
  }
  return "?";
}

/// One checked law. `witness` is empty on success.
struct AxiomCheck {
  std::string axiom;
  Verdict verdict = Verdict::pass;
  std::string method;  // "exhaustive", "finitary", "pairwise", ...
  std::vector<std::string> witness;
  std::string detail;

  bool passed() const { return verdict == Verdict::pass; }
};

struct ValidationReport {
  LatticeLevel level = LatticeLevel::poset;
  std::vector<AxiomCheck> checks;
  std::vector<std::string> notes;  // what the loader added while closing the relation

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
  const AxiomCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed()) return &c;
    return nullptr;
  }
};

namespace detail {

struct ClosedOrder {
  std::vector<std::string> ids;
  std::vector<Bitset> up;  // up[a] = {b : a <= b}
  std::size_t added_pairs = 0;
};

inline ClosedOrder close_order(const RawOrder& raw) {
  ClosedOrder out;
  out.ids = raw.ids;
  const std::size_t n = raw.ids.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(raw.ids[i], i).second)
      throw InvalidInput("duplicate element id '" + raw.ids[i] + "'");
  }
  out.up.assign(n, Bitset(n));
  std::size_t given = 0;
  for (const auto& [a, b] : raw.leq) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw InvalidInput("unknown element id '" + a + "' in leq");
    if (ib == index.end()) throw InvalidInput("unknown element id '" + b + "' in leq");
    if (!out.up[ia->second].test(ib->second)) {
      out.up[ia->second].set(ib->second);
      ++given;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.up[i].set(i);
  // Warshall on bitset rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (out.up[i].test(k)) out.up[i] |= out.up[k];
  std::size_t total = 0;
  for (const auto& row : out.up) total += row.count();
  out.added_pairs = total - given;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (out.up[i].test(j) && out.up[j].test(i))
        throw InvalidInput("relation is not antisymmetric: '" + raw.ids[i] + "' and '" + raw.ids[j] +
                           "' are mutually below each other");
  return out;
}

/// Least element of `candidates` w.r.t. `up`, if one exists.
inline std::optional<std::size_t> least_of(const std::vector<Bitset>& up, const Bitset& candidates) {
  std::optional<std::size_t> found;
  candidates.for_each([&](std::size_t u) {
    if (!found && candidates.is_subset_of(up[u])) found = u;
  });
  return found;
}

inline std::optional<std::size_t> greatest_of(const std::vector<Bitset>& down, const Bitset& candidates) {
  return least_of(down, candidates);
}

/// Calls `f(subset)` for every subset of {0..n-1}, by size and then
/// lexicographically, until `f` returns false.
template <class F>
bool for_each_subset_by_size(std::size_t n, F&& f) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k <= n; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return false;
      // next combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

inline bool exhaustive_affordable(std::size_t n, std::uint64_t budget) {
  if (n >= 40) return false;
  return static_cast<std::uint64_t>(n + 1) * (std::uint64_t{1} << n) <= budget;
}

inline bool finitary_affordable(std::size_t n, std::uint64_t budget) {
  auto n3 = static_cast<std::uint64_t>(n) * n * n;
  return n3 <= budget * 64;
}

}  // namespace detail

/// A finite lattice: canonical element list, order as bitset rows, and
/// precomputed binary join/meet tables. Immutable; copies share storage.
class FinLattice {
 public:
  FinLattice() = default;

  /// Closes `raw` reflexively and transitively and checks that it is a
  /// lattice. Structural problems throw InvalidInput; a missing join or meet
  /// throws Rejected with the offending pair.
  static FinLattice from_order(const RawOrder& raw) {
    return from_closed(detail::close_order(raw));
  }

  /// Builds from an order predicate on ids (must already be a partial order).
  static FinLattice from_predicate(std::vector<std::string> ids,
                                   const std::function<bool(std::size_t, std::size_t)>& leq) {
    detail::ClosedOrder c;
    const std::size_t n = ids.size();
    c.ids = std::move(ids);
    c.up.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq(i, j)) c.up[i].set(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.up[i].test(i)) throw InvalidInput("order predicate is not reflexive at '" + c.ids[i] + "'");
      for (std::size_t j = i + 1; j < n; ++j)
        if (c.up[i].test(j) && c.up[j].test(i))
          throw InvalidInput("order predicate is not antisymmetric at '" + c.ids[i] + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
      Bitset reach = c.up[i];
      c.up[i].for_each([&](std::size_t j) { reach |= c.up[j]; });
      if (reach != c.up[i]) throw InvalidInput("order predicate is not transitive at '" + c.ids[i] + "'");
    }
    return from_closed(std::move(c));
  }

  std::size_t size() const { return impl_ ? impl_->ids.size() : 0; }
  const std::vector<std::string>& ids() const { return impl_->ids; }
  const std::string& id(Elem e) const { return impl_->ids.at(e); }

  std::optional<Elem> find(const std::string& id) const {
    auto it = impl_->index.find(id);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }
  Elem index(const std::string& id) const {
    if (auto e = find(id)) return *e;
    throw InvalidInput("unknown element id '" + id + "'");
  }

  bool leq(Elem a, Elem b) const { return impl_->up[a].test(b); }
  const Bitset& up(Elem a) const { return impl_->up[a]; }
  const Bitset& down(Elem a) const { return impl_->down[a]; }

  Elem bottom() const { return impl_->bottom; }
  Elem top() const { return impl_->top; }
  Elem join(Elem a, Elem b) const { return impl_->join[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return impl_->meet[a * size() + b]; }

  /// Join of a subset; the empty join is bottom.
  template <class Range>
  Elem join_of(const Range& elems) const {
    Elem acc = bottom();
    for (Elem e : elems) acc = join(acc, e);
    return acc;
  }
  Elem join_of(const Bitset& elems) const {
    Elem acc = bottom();
    elems.for_each([&](std::size_t e) { acc = join(acc, e); });
    return acc;
  }
  /// Meet of a subset; the empty meet is top.
  template <class Range>
  Elem meet_of(const Range& elems) const {
    Elem acc = top();
    for (Elem e : elems) acc = meet(acc, e);
    return acc;
  }
  Elem meet_of(const Bitset& elems) const {
    Elem acc = top();
    elems.for_each([&](std::size_t e) { acc = meet(acc, e); });
    return acc;
  }

  /// Pairs (a, b) with a covered by b, in canonical order.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    const auto n = size();
    for (Elem a = 0; a < n; ++a) {
      Bitset strict = up(a);
      strict.reset(a);
      strict.for_each([&](std::size_t b) {
        Bitset between = strict & down(b);
        between.reset(b);
        if (between.none()) out.emplace_back(a, b);
      });
    }
    return out;
  }

  /// Same ids in the same order with the same order relation.
  friend bool operator==(const FinLattice& x, const FinLattice& y) {
    if (x.impl_ == y.impl_) return true;
    if (!x.impl_ || !y.impl_) return false;
    return x.impl_->ids == y.impl_->ids && x.impl_->up == y.impl_->up;
  }

 private:
  struct Impl {
    std::vector<std::string> ids;
    std::unordered_map<std::string, Elem> index;
    std::vector<Bitset> up, down;
    std::vector<Elem> join, meet;
    Elem bottom = 0, top = 0;
  };

  static FinLattice from_closed(detail::ClosedOrder c) {
    auto impl = std::make_shared<Impl>();
    const std::size_t n = c.ids.size();
    impl->ids = std::move(c.ids);
    for (std::size_t i = 0; i < n; ++i) impl->index.emplace(impl->ids[i], i);
    impl->up = std::move(c.up);
    impl->down.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) impl->up[i].for_each([&](std::size_t j) { impl->down[j].set(i); });
    const Bitset all = Bitset::full(n);
    auto bot = detail::least_of(impl->up, all);
    if (!bot) throw Rejected("no least element", {});
    auto top = detail::greatest_of(impl->down, all);
    if (!top) throw Rejected("no greatest element", {});
    impl->bottom = *bot;
    impl->top = *top;
    impl->join.assign(n * n, 0);
    impl->meet.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        auto j = detail::least_of(impl->up, impl->up[a] & impl->up[b]);
        if (!j) throw Rejected("no least upper bound", {impl->ids[a], impl->ids[b]});
        auto m = detail::greatest_of(impl->down, impl->down[a] & impl->down[b]);
        if (!m) throw Rejected("no greatest lower bound", {impl->ids[a], impl->ids[b]});
        impl->join[a * n + b] = impl->join[b * n + a] = *j;
        impl->meet[a * n + b] = impl->meet[b * n + a] = *m;
      }
    }
    FinLattice out;
    out.impl_ = std::move(impl);
    return out;
  }

  std::shared_ptr<const Impl> impl_;
};

enum class JoinOrMeet { join, meet };

/// Join or meet of the named elements; unknown ids throw InvalidInput.
inline Elem join_meet(const FinLattice& lattice, const std::vector<std::string>& subset, JoinOrMeet which) {
  std::vector<Elem> elems;
  elems.reserve(subset.size());
  for (const auto& id : subset) elems.push_back(lattice.index(id));
  return which == JoinOrMeet::join ? lattice.join_of(elems) : lattice.meet_of(elems);
}

inline std::string format_subset(const FinLattice& l, const std::vector<std::size_t>& elems) {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ",";
    s += l.id(elems[i]);
  }
  return s + "}";
}

/// Checks the frame law a ∧ ⋁B = ⋁{a ∧ b : b ∈ B} on `l`.
///
/// Scans every (a, B) when affordable; otherwise checks the equivalent
/// finitary form (empty and binary joins), which is exact for finite
/// lattices. The witness is (a, B) with B minimal in size.
inline AxiomCheck check_distributivity(const FinLattice& l, const Limits& limits = {}) {
  AxiomCheck check{"frame distributivity", Verdict::pass, "exhaustive", {}, {}};
  const auto n = l.size();
  if (detail::exhaustive_affordable(n, limits.subset_scan)) {
    for (Elem a = 0; a < n && check.verdict == Verdict::pass; ++a)
      detail::for_each_subset_by_size(n, [&](const std::vector<std::size_t>& subset) {
        Elem rhs = l.bottom();
        for (Elem b : subset) rhs = l.join(rhs, l.meet(a, b));
        const Elem lhs = l.meet(a, l.join_of(subset));
        if (lhs == rhs) return true;
        check.verdict = Verdict::fail;
        check.witness = {l.id(a), format_subset(l, subset)};
        check.detail = "a∧⋁B = " + l.id(lhs) + " but ⋁(a∧B) = " + l.id(rhs);
        return false;
      });
    return check;
  }
  if (!detail::finitary_affordable(n, limits.subset_scan)) {
    check.verdict = Verdict::unverified;
    check.method = "none";
    check.detail = "lattice too large for the configured scan budget";
    return check;
  }
  check.method = "finitary";
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = b + 1; c < n; ++c) {
        const Elem lhs = l.meet(a, l.join(b, c));
        const Elem rhs = l.join(l.meet(a, b), l.meet(a, c));
        if (lhs != rhs) {
          check.verdict = Verdict::fail;
          check.witness = {l.id(a), format_subset(l, {b, c})};
          check.detail = "a∧⋁B = " + l.id(lhs) + " but ⋁(a∧B) = " + l.id(rhs);
          return check;
        }
      }
  return check;
}

/// Validates raw order data at the requested level. Duplicate ids, unknown
/// ids and antisymmetry violations are structural and throw InvalidInput;
/// axiom failures are reported with witnesses.
inline ValidationReport validate_lattice(const RawOrder& raw, LatticeLevel level, const Limits& limits = {}) {
  ValidationReport report;
  report.level = level;
  auto closed = detail::close_order(raw);
  const auto n = closed.ids.size();
  if (closed.added_pairs > 0)
    report.notes.push_back("closed leq reflexively-transitively: added " + std::to_string(closed.added_pairs) +
                           " pair(s)");
  report.checks.push_back({"reflexive", Verdict::pass, "closure", {}, {}});
  report.checks.push_back({"antisymmetric", Verdict::pass, "pairwise", {}, {}});
  report.checks.push_back({"transitive", Verdict::pass, "closure", {}, {}});
  if (level == LatticeLevel::poset) return report;

  std::vector<Bitset> down(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) closed.up[i].for_each([&](std::size_t j) { down[j].set(i); });
  const Bitset all = Bitset::full(n);

  AxiomCheck bottom{"least element (empty join)", Verdict::pass, "pairwise", {}, {}};
  if (!detail::least_of(closed.up, all)) bottom.verdict = Verdict::fail;
  AxiomCheck top{"greatest element (empty meet)", Verdict::pass, "pairwise", {}, {}};
  if (!detail::greatest_of(down, all)) top.verdict = Verdict::fail;
  AxiomCheck joins{"binary joins", Verdict::pass, "pairwise", {}, {}};
  AxiomCheck meets{"binary meets", Verdict::pass, "pairwise", {}, {}};
  for (std::size_t a = 0; a < n && (joins.passed() || meets.passed()); ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (joins.passed() && !detail::least_of(closed.up, closed.up[a] & closed.up[b]))
        joins = {"binary joins", Verdict::fail, "pairwise", {closed.ids[a], closed.ids[b]}, "no least upper bound"};
      if (meets.passed() && !detail::greatest_of(down, down[a] & down[b]))
        meets = {"binary meets", Verdict::fail, "pairwise", {closed.ids[a], closed.ids[b]}, "no greatest lower bound"};
    }
  const bool is_lattice = bottom.passed() && top.passed() && joins.passed() && meets.passed();
  report.checks.push_back(std::move(bottom));
  report.checks.push_back(std::move(top));
  report.checks.push_back(std::move(joins));
  report.checks.push_back(std::move(meets));
  if (level == LatticeLevel::suplattice) return report;
  if (!is_lattice) {
    report.checks.push_back({"frame distributivity", Verdict::unverified, "none", {}, "not a lattice"});
    return report;
  }
  auto lattice = FinLattice::from_predicate(closed.ids, [&](std::size_t i, std::size_t j) { return closed.up[i].test(j); });
  report.checks.push_back(check_distributivity(lattice, limits));
  return report;
}

/// A total map between the element sets of two lattices.
struct LatticeMap {
  FinLattice source;
  FinLattice target;
  std::vector<Elem> table;

  Elem operator()(Elem e) const { return table.at(e); }

  static LatticeMap identity(const FinLattice& l) {
    LatticeMap m{l, l, std::vector<Elem>(l.size())};
    for (Elem e = 0; e < l.size(); ++e) m.table[e] = e;
    return m;
  }

  /// Builds from an id -> id table; unknown or missing ids throw InvalidInput.
  static LatticeMap from_ids(const FinLattice& source, const FinLattice& target,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
    LatticeMap m{source, target, std::vector<Elem>(source.size(), target.size())};
    for (const auto& [a, b] : pairs) m.table[source.index(a)] = target.index(b);
    for (Elem e = 0; e < source.size(); ++e)
      if (m.table[e] == target.size()) throw InvalidInput("map is not total: no image for '" + source.id(e) + "'");
    return m;
  }

  friend bool operator==(const LatticeMap& a, const LatticeMap& b) {
    return a.table == b.table && a.source == b.source && a.target == b.target;
  }
};

/// g ∘ f.
inline LatticeMap compose(const LatticeMap& g, const LatticeMap& f) {
  if (!(f.target == g.source)) throw InvalidInput("compose: target of first map is not source of second");
  LatticeMap out{f.source, g.target, std::vector<Elem>(f.source.size())};
  for (Elem e = 0; e < f.source.size(); ++e) out.table[e] = g(f(e));
  return out;
}

struct MapProps {
  AxiomCheck monotone;
  AxiomCheck join_preserving;
  AxiomCheck finite_meet_preserving;
  AxiomCheck all_meet_preserving;
};

namespace detail {

inline AxiomCheck check_monotone(const LatticeMap& f) {
  AxiomCheck c{"monotone", Verdict::pass, "pairwise", {}, {}};
  const auto& L = f.source;
  const auto& M = f.target;
  for (Elem a = 0; a < L.size(); ++a) {
    bool bad = false;
    L.up(a).for_each([&](std::size_t b) {
      if (!bad && !M.leq(f(a), f(b))) {
        bad = true;
        c.verdict = Verdict::fail;
        c.witness = {L.id(a), L.id(b)};
      }
    });
    if (bad) break;
  }
  return c;
}

/// Exhaustive scan of f(⊕S) = ⊕f(S) over all subsets S, where ⊕ is join or meet.
inline AxiomCheck check_preserves_all(const LatticeMap& f, JoinOrMeet which, const std::string& name,
                                      const Limits& limits) {
  AxiomCheck c{name, Verdict::pass, "exhaustive", {}, {}};
  const auto& L = f.source;
  const auto& M = f.target;
  const auto n = L.size();
  auto op_l = [&](Elem acc, Elem e) { return which == JoinOrMeet::join ? L.join(acc, e) : L.meet(acc, e); };
  auto op_m = [&](Elem acc, Elem e) { return which == JoinOrMeet::join ? M.join(acc, e) : M.meet(acc, e); };
  const Elem unit_l = which == JoinOrMeet::join ? L.bottom() : L.top();
  const Elem unit_m = which == JoinOrMeet::join ? M.bottom() : M.top();
  if (detail::exhaustive_affordable(n, limits.subset_scan)) {
    detail::for_each_subset_by_size(n, [&](const std::vector<std::size_t>& s) {
      Elem lhs = unit_l;
      Elem rhs = unit_m;
      for (Elem e : s) {
        lhs = op_l(lhs, e);
        rhs = op_m(rhs, f(e));
      }
      if (f(lhs) != rhs) {
        c.verdict = Verdict::fail;
        c.witness = {format_subset(L, s)};
        return false;
      }
      return true;
    });
    return c;
  }
  c.method = "finitary";
  if (f(unit_l) != unit_m) {
    c.verdict = Verdict::fail;
    c.witness = {"{}"};
    return c;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (f(op_l(a, b)) != op_m(f(a), f(b))) {
        c.verdict = Verdict::fail;
        c.witness = {format_subset(L, {a, b})};
        return c;
      }
  return c;
}

inline AxiomCheck check_preserves_finite(const LatticeMap& f, JoinOrMeet which, const std::string& name) {
  AxiomCheck c{name, Verdict::pass, "finitary", {}, {}};
  const auto& L = f.source;
  const auto& M = f.target;
  const bool j = which == JoinOrMeet::join;
  if (f(j ? L.bottom() : L.top()) != (j ? M.bottom() : M.top())) {
    c.verdict = Verdict::fail;
    c.witness = {"{}"};
    return c;
  }
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = a + 1; b < L.size(); ++b) {
      const Elem lhs = f(j ? L.join(a, b) : L.meet(a, b));
      const Elem rhs = j ? M.join(f(a), f(b)) : M.meet(f(a), f(b));
      if (lhs != rhs) {
        c.verdict = Verdict::fail;
        c.witness = {format_subset(L, {a, b})};
        return c;
      }
    }
  return c;
}

}  // namespace detail

inline MapProps map_props(const LatticeMap& f, const Limits& limits = {}) {
  if (f.table.size() != f.source.size()) throw InvalidInput("map table is not total on its source");
  MapProps p;
  p.monotone = detail::check_monotone(f);
  p.join_preserving = detail::check_preserves_all(f, JoinOrMeet::join, "join preserving", limits);
  p.finite_meet_preserving = detail::check_preserves_finite(f, JoinOrMeet::meet, "finite meet preserving");
  p.all_meet_preserving = detail::check_preserves_all(f, JoinOrMeet::meet, "all meet preserving", limits);
  return p;
}

inline bool is_join_preserving(const LatticeMap& f, const Limits& limits = {}) {
  return detail::check_preserves_all(f, JoinOrMeet::join, "join preserving", limits).passed();
}

inline bool is_frame_homomorphism(const LatticeMap& f) {
  return detail::check_preserves_finite(f, JoinOrMeet::join, "join preserving").passed() &&
         detail::check_preserves_finite(f, JoinOrMeet::meet, "finite meet preserving").passed();
}

enum class AdjointSide { right_of_join_preserving, left_of_meet_preserving };

/// Right adjoint g(b) = ⋁{a : f(a) ≤ b} of a join-preserving f, or left
/// adjoint g(b) = ⋀{a : b ≤ f(a)} of a meet-preserving f. A failed
/// precondition throws Rejected carrying the violating subset.
inline LatticeMap adjoint(const LatticeMap& f, AdjointSide side, const Limits& limits = {}) {
  const auto& L = f.source;
  const auto& M = f.target;
  const bool right = side == AdjointSide::right_of_join_preserving;
  auto pre = detail::check_preserves_all(f, right ? JoinOrMeet::join : JoinOrMeet::meet,
                                         right ? "join preserving" : "all meet preserving", limits);
  if (pre.verdict == Verdict::fail)
    throw Rejected(std::string("adjoint: map does not preserve all ") + (right ? "joins" : "meets"), pre.witness);
  LatticeMap g{M, L, std::vector<Elem>(M.size())};
  for (Elem b = 0; b < M.size(); ++b) {
    Elem acc = right ? L.bottom() : L.top();
    for (Elem a = 0; a < L.size(); ++a) {
      if (right && M.leq(f(a), b)) acc = L.join(acc, a);
      if (!right && M.leq(b, f(a))) acc = L.meet(acc, a);
    }
    g.table[b] = acc;
  }
  return g;
}

struct AdjunctionReport {
  bool holds = true;
  /// (a, b) with exactly one of f(a) ≤ b, a ≤ g(b); the direction says which held.
  std::optional<std::pair<Elem, Elem>> witness;
  std::string direction;
};

/// Checks f(a) ≤ b ⟺ a ≤ g(b) for all a in L, b in M. The forward
/// implication is scanned over all pairs before the backward one.
inline AdjunctionReport verify_adjunction(const LatticeMap& f, const LatticeMap& g) {
  if (!(f.target == g.source) || !(g.target == f.source))
    throw InvalidInput("verify_adjunction: f: L -> M and g: M -> L required");
  const auto& L = f.source;
  const auto& M = f.target;
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < M.size(); ++b)
      if (M.leq(f(a), b) && !L.leq(a, g(b))) return {false, std::pair{a, b}, "f(a) <= b but not a <= g(b)"};
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < M.size(); ++b)
      if (L.leq(a, g(b)) && !M.leq(f(a), b)) return {false, std::pair{a, b}, "a <= g(b) but not f(a) <= b"};
  return {};
}

/// Pointwise order on maps with a common source and target.
inline bool pointwise_leq(const LatticeMap& f, const LatticeMap& g) {
  for (Elem e = 0; e < f.source.size(); ++e)
    if (!f.target.leq(f(e), g(e))) return false;
  return true;
}

}  // namespace pfk
