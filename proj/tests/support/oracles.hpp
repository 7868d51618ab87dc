#pragma once

// Brute-force oracles built from the raw order, raw vector arithmetic and
// subset scans; no library join tables, RREF or neighbourhood bases.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "pfk/order.hpp"

namespace pfk::oracle {

/// All maps L -> M (as tables) that preserve every join, found by checking
/// f(⋁S) against upper-bound sets computed from the raw order.
inline std::vector<std::vector<Elem>> join_preserving_maps(const FinLattice& l, const FinLattice& m) {
  const auto n = l.size();
  const auto k = m.size();
  // least upper bound from the order only
  auto lub = [](const FinLattice& lat, const std::vector<Elem>& s) {
    for (Elem u = 0; u < lat.size(); ++u) {
      bool upper = true;
      for (auto e : s) upper = upper && lat.leq(e, u);
      if (!upper) continue;
      bool least = true;
      for (Elem v = 0; v < lat.size(); ++v) {
        bool vupper = true;
        for (auto e : s) vupper = vupper && lat.leq(e, v);
        if (vupper && !lat.leq(u, v)) least = false;
      }
      if (least) return u;
    }
    return lat.size();
  };
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> table(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Elem> s, fs;
        for (std::size_t e = 0; e < n; ++e)
          if (mask >> e & 1) {
            s.push_back(e);
            fs.push_back(table[e]);
          }
        if (table[lub(l, s)] != lub(m, fs)) return;
      }
      out.push_back(table);
      return;
    }
    for (Elem v = 0; v < k; ++v) {
      table[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// f ⊣ g by direct evaluation of f(a) ≤ b ⟺ a ≤ g(b) on every pair.
inline bool adjunction_holds(const FinLattice& l, const FinLattice& m, const std::vector<Elem>& f,
                             const std::vector<Elem>& g) {
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < m.size(); ++b)
      if (m.leq(f[a], b) != l.leq(a, g[b])) return false;
  return true;
}

/// Families of subsets of {0..n-1} containing ∅ and the full set, closed
/// under pairwise union and intersection. Counts labeled topologies.
inline std::size_t count_topologies_brute_force(std::size_t n) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> middle;
  for (std::uint32_t s = 1; s < full; ++s) middle.push_back(s);
  std::size_t count = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << middle.size()); ++pick) {
    std::vector<bool> in(full + 1, false);
    in[0] = in[full] = true;
    for (std::size_t i = 0; i < middle.size(); ++i)
      if (pick >> i & 1) in[middle[i]] = true;
    bool closed = true;
    for (std::uint32_t a = 0; a <= full && closed; ++a) {
      if (!in[a]) continue;
      for (std::uint32_t b = 0; b <= full; ++b)
        if (in[b] && (!in[a | b] || !in[a & b])) {
          closed = false;
          break;
        }
    }
    count += closed;
  }
  return count;
}

/// Subsets of F_q^n (vectors as base-q integers) containing 0 and closed
/// under addition and scalar multiplication, by direct subset scan.
inline std::size_t count_subspaces_subset_scan(unsigned q, unsigned n) {
  std::size_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= q;
  auto digits = [&](std::size_t v) {
    std::vector<unsigned> d(n);
    for (unsigned k = n; k-- > 0;) {
      d[k] = v % q;
      v /= q;
    }
    return d;
  };
  auto number = [&](const std::vector<unsigned>& d) {
    std::size_t v = 0;
    for (auto x : d) v = v * q + x;
    return v;
  };
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    if (!(mask & 1)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < total && closed; ++a) {
      if (!(mask >> a & 1)) continue;
      auto da = digits(a);
      for (unsigned c = 0; c < q && closed; ++c) {
        std::vector<unsigned> s(n);
        for (unsigned k = 0; k < n; ++k) s[k] = (c * da[k]) % q;
        if (!(mask >> number(s) & 1)) closed = false;
      }
      for (std::size_t b = 0; b < total && closed; ++b) {
        if (!(mask >> b & 1)) continue;
        auto db = digits(b);
        std::vector<unsigned> s(n);
        for (unsigned k = 0; k < n; ++k) s[k] = (da[k] + db[k]) % q;
        if (!(mask >> number(s) & 1)) closed = false;
      }
    }
    count += closed;
  }
  return count;
}

/// Subspaces found by closing vector sets under + and scalars (no RREF);
/// feasible for q^n up to 64.
inline std::size_t count_subspaces_by_closure(unsigned q, unsigned n) {
  std::size_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= q;
  auto add = [&](std::size_t a, std::size_t b) {
    std::size_t r = 0, place = 1;
    for (unsigned k = 0; k < n; ++k) {
      r += ((a % q + b % q) % q) * place;
      a /= q;
      b /= q;
      place *= q;
    }
    return r;
  };
  auto close = [&](std::vector<bool> s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < total; ++a)
        if (s[a])
          for (std::size_t b = 0; b < total; ++b)
            if (s[b] && !s[add(a, b)]) {
              s[add(a, b)] = true;
              changed = true;
            }
    }
    return s;  // over a prime field, additive closure already gives scalar closure
  };
  std::set<std::vector<bool>> found;
  std::vector<std::vector<bool>> frontier;
  std::vector<bool> zero(total, false);
  zero[0] = true;
  found.insert(zero);
  frontier.push_back(zero);
  while (!frontier.empty()) {
    std::vector<std::vector<bool>> next;
    for (const auto& s : frontier)
      for (std::size_t v = 0; v < total; ++v) {
        if (s[v]) continue;
        auto t = s;
        t[v] = true;
        t = close(t);
        if (found.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return found.size();
}

/// Σ_k [n choose k]_q.
inline std::size_t gaussian_binomial_sum(unsigned q, unsigned n) {
  std::size_t total = 0;
  for (unsigned k = 0; k <= n; ++k) {
    double num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
      double qi = 1, qk = 1;
      for (unsigned j = 0; j < n - i; ++j) qi *= q;
      for (unsigned j = 0; j < i + 1; ++j) qk *= q;
      num *= qi - 1;
      den *= qk - 1;
    }
    total += static_cast<std::size_t>(num / den + 0.5);
  }
  return total;
}

/// Binary join and meet read off the order relation alone.
struct OrderOps {
  std::vector<std::vector<Elem>> join, meet;
  Elem bottom = 0, top = 0;
};

inline OrderOps order_ops(const FinLattice& l) {
  const auto n = l.size();
  OrderOps o;
  o.join.assign(n, std::vector<Elem>(n, n));
  o.meet.assign(n, std::vector<Elem>(n, n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem u = 0; u < n; ++u) {
        bool upper = l.leq(a, u) && l.leq(b, u), lower = l.leq(u, a) && l.leq(u, b);
        for (Elem v = 0; v < n && (upper || lower); ++v) {
          if (upper && l.leq(a, v) && l.leq(b, v) && !l.leq(u, v)) upper = false;
          if (lower && l.leq(v, a) && l.leq(v, b) && !l.leq(v, u)) lower = false;
        }
        if (upper) o.join[a][b] = u;
        if (lower) o.meet[a][b] = u;
      }
  for (Elem e = 0; e < n; ++e) {
    bool least = true, greatest = true;
    for (Elem v = 0; v < n; ++v) {
      least = least && l.leq(e, v);
      greatest = greatest && l.leq(v, e);
    }
    if (least) o.bottom = e;
    if (greatest) o.top = e;
  }
  return o;
}

/// f(0) = 0 and f(a ∨ b) = f(a) ∨ f(b); enough for all joins on a finite lattice.
inline bool preserves_joins_pairwise(const OrderOps& lo, const OrderOps& mo, const std::vector<Elem>& f) {
  if (f[lo.bottom] != mo.bottom) return false;
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      if (f[lo.join[a][b]] != mo.join[f[a]][f[b]]) return false;
  return true;
}

inline bool is_frame_hom(const OrderOps& lo, const OrderOps& mo, const std::vector<Elem>& f) {
  if (!preserves_joins_pairwise(lo, mo, f) || f[lo.top] != mo.top) return false;
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      if (f[lo.meet[a][b]] != mo.meet[f[a]][f[b]]) return false;
  return true;
}

inline bool distributive(const OrderOps& o) {
  const auto n = o.join.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (o.meet[a][o.join[b][c]] != o.join[o.meet[a][b]][o.meet[a][c]]) return false;
  return true;
}

/// p ≠ 1 with a ∧ b ≤ p ⟹ a ≤ p or b ≤ p.
inline std::vector<Elem> primes(const FinLattice& l, const OrderOps& o) {
  std::vector<Elem> out;
  for (Elem p = 0; p < l.size(); ++p) {
    if (p == o.top) continue;
    bool prime = true;
    for (Elem a = 0; a < l.size() && prime; ++a)
      for (Elem b = 0; b < l.size() && prime; ++b)
        if (l.leq(o.meet[a][b], p) && !l.leq(a, p) && !l.leq(b, p)) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

/// Up-sets of a finite poset given by leq, as sorted member lists.
inline std::set<std::vector<std::size_t>> upsets(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
  std::set<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool up = true;
    for (std::size_t a = 0; a < n && up; ++a)
      if (mask >> a & 1)
        for (std::size_t b = 0; b < n; ++b)
          if (leq(a, b) && !(mask >> b & 1)) {
            up = false;
            break;
          }
    if (!up) continue;
    std::vector<std::size_t> s;
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1) s.push_back(a);
    out.insert(s);
  }
  return out;
}

}  // namespace pfk::oracle
