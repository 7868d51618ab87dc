#pragma once

// Locales (finite frames), prime elements, spectra and spatialization.

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfk/order.hpp"
#include "pfk/space.hpp"

namespace pfk {

/// A finite lattice that has passed the frame distributivity check.
class Locale {
 public:
  Locale() = default;

  /// Throws Rejected (with the distributivity witness) if `l` is not a frame,
  /// CapExceeded if the check could not be completed.
  explicit Locale(FinLattice l, const Limits& limits = {}) : lattice_(std::move(l)) {
    auto check = check_distributivity(lattice_, limits);
    if (check.verdict == Verdict::fail) throw Rejected("lattice is not a frame: " + check.detail, check.witness);
    if (check.verdict == Verdict::unverified) throw CapExceeded("frame distributivity could not be verified");
  }

  const FinLattice& lattice() const { return lattice_; }
  std::size_t size() const { return lattice_.size(); }
  const std::string& id(Elem e) const { return lattice_.id(e); }
  Elem top() const { return lattice_.top(); }
  Elem bottom() const { return lattice_.bottom(); }

  friend bool operator==(const Locale& a, const Locale& b) { return a.lattice_ == b.lattice_; }

 private:
  FinLattice lattice_;
};

struct PrimeReport {
  bool prime = true;
  bool is_top = false;
  std::optional<std::pair<Elem, Elem>> witness;  // a ∧ b ≤ p, a ≰ p, b ≰ p
};

/// p is prime iff p ≠ 1 and a ∧ b ≤ p implies a ≤ p or b ≤ p. Pairs are
/// scanned from the top of the canonical order down, so witnesses are as
/// large as possible.
inline PrimeReport is_prime(const Locale& locale, Elem p) {
  const auto& l = locale.lattice();
  if (p >= l.size()) throw InvalidInput("is_prime: unknown element");
  if (p == l.top()) return {false, true, std::nullopt};
  const Bitset& below = l.down(p);
  for (std::size_t ia = l.size(); ia-- > 0;) {
    if (below.test(ia)) continue;
    for (std::size_t ib = ia + 1; ib-- > 0;) {
      if (below.test(ib)) continue;
      if (below.test(l.meet(ia, ib))) return {false, false, std::pair{ia, ib}};
    }
  }
  return {};
}

inline PrimeReport is_prime(const Locale& locale, const std::string& id) {
  return is_prime(locale, locale.lattice().index(id));
}

inline std::vector<Elem> primes(const Locale& locale) {
  std::vector<Elem> out;
  for (Elem p = 0; p < locale.size(); ++p)
    if (is_prime(locale, p).prime) out.push_back(p);
  return out;
}

struct Spectrum {
  FinSpace space;
  std::vector<Elem> primes;  // point i of `space` is primes[i]
  std::vector<Bitset> u;     // u[a] = {p : a ≰ p}, one per element of the locale

  /// Point index of a prime element, if it is one.
  std::optional<Point> point_of(Elem p) const {
    for (Point i = 0; i < primes.size(); ++i)
      if (primes[i] == p) return i;
    return std::nullopt;
  }
};

/// The prime spectrum with opens U_a = {p : a ≰ p}. The three laws
/// U_1 = Σ, U_{a∧b} = U_a ∩ U_b, U_{a∨b} = U_a ∪ U_b (and U_0 = ∅) are
/// re-checked and a failure raises InternalError.
inline Spectrum spectrum(const Locale& locale) {
  const auto& l = locale.lattice();
  Spectrum s;
  s.primes = primes(locale);
  const auto m = s.primes.size();
  std::vector<std::string> ids;
  for (auto p : s.primes) ids.push_back(l.id(p));
  s.u.assign(l.size(), Bitset(m));
  for (Elem a = 0; a < l.size(); ++a)
    for (Point i = 0; i < m; ++i)
      if (!l.leq(a, s.primes[i])) s.u[a].set(i);
  if (!s.u[l.top()].all()) throw InternalError("spectrum: U_1 is not the whole spectrum");
  if (s.u[l.bottom()].any()) throw InternalError("spectrum: U_0 is not empty");
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = a + 1; b < l.size(); ++b) {
      if (s.u[l.meet(a, b)] != (s.u[a] & s.u[b])) throw InternalError("spectrum: U_{a∧b} ≠ U_a ∩ U_b");
      if (s.u[l.join(a, b)] != (s.u[a] | s.u[b])) throw InternalError("spectrum: U_{a∨b} ≠ U_a ∪ U_b");
    }
  s.space = generate_topology(std::move(ids), s.u);
  return s;
}

inline FinSpace spectrum_space(const Locale& locale) { return spectrum(locale).space; }

/// The frame of opens of a finite space, with the element <-> open set
/// correspondence. Elements are named by their point sets, e.g. "{x0,x1}".
struct OpenLocale {
  FinSpace space;
  Locale locale;
  std::vector<Bitset> opens;
  std::unordered_map<Bitset, Elem, BitsetHash> index;

  Elem element(const Bitset& open) const {
    auto it = index.find(open);
    if (it == index.end()) throw InvalidInput("not an open set: " + space.format(open));
    return it->second;
  }
  const Bitset& open(Elem e) const { return opens.at(e); }
};

inline OpenLocale open_locale(const FinSpace& x, const Limits& limits = {}) {
  OpenLocale out;
  out.space = x;
  out.opens = x.opens(limits);
  std::vector<std::string> ids;
  for (Elem e = 0; e < out.opens.size(); ++e) {
    ids.push_back(x.format(out.opens[e]));
    out.index.emplace(out.opens[e], e);
  }
  const auto& opens = out.opens;
  auto lattice = FinLattice::from_predicate(std::move(ids), [&](std::size_t i, std::size_t j) {
    return opens[i].is_subset_of(opens[j]);
  });
  out.locale = Locale(std::move(lattice), limits);
  return out;
}

struct Spatialization {
  Spectrum spectrum;
  OpenLocale spectral_opens;  // 𝒪(Σ L)
  LatticeMap map;             // a ↦ U_a, L -> 𝒪(Σ L)
  bool is_spatial = false;
};

/// a ↦ U_a, verified to be a frame homomorphism; spatial iff bijective.
inline Spatialization spatialization(const Locale& locale, const Limits& limits = {}) {
  Spatialization s;
  s.spectrum = spectrum(locale);
  s.spectral_opens = open_locale(s.spectrum.space, limits);
  s.map = LatticeMap{locale.lattice(), s.spectral_opens.locale.lattice(), std::vector<Elem>(locale.size())};
  for (Elem a = 0; a < locale.size(); ++a) s.map.table[a] = s.spectral_opens.element(s.spectrum.u[a]);
  if (!is_frame_homomorphism(s.map)) throw InternalError("spatialization is not a frame homomorphism");
  Bitset hit(s.spectral_opens.opens.size());
  bool injective = true;
  for (auto e : s.map.table) {
    injective = injective && !hit.test(e);
    hit.set(e);
  }
  s.is_spatial = injective && hit.all();
  return s;
}

/// A map of locales M -> L, presented by its inverse image L -> M.
struct LocaleMap {
  Locale source;  // M
  Locale target;  // L
  LatticeMap inverse_image;

  /// Throws Rejected when the inverse image is not a frame homomorphism.
  static LocaleMap from_inverse_image(Locale source, Locale target, LatticeMap inv) {
    if (!(inv.source == target.lattice()) || !(inv.target == source.lattice()))
      throw InvalidInput("locale map: inverse image must go from the target frame to the source frame");
    auto j = detail::check_preserves_finite(inv, JoinOrMeet::join, "join preserving");
    if (!j.passed()) throw Rejected("locale map: inverse image does not preserve joins", j.witness);
    auto m = detail::check_preserves_finite(inv, JoinOrMeet::meet, "finite meet preserving");
    if (!m.passed()) throw Rejected("locale map: inverse image does not preserve finite meets", m.witness);
    return {std::move(source), std::move(target), std::move(inv)};
  }

  static LocaleMap identity(const Locale& l) { return {l, l, LatticeMap::identity(l.lattice())}; }

  /// Right adjoint of the inverse image, M -> L.
  LatticeMap direct_image() const { return adjoint(inverse_image, AdjointSide::right_of_join_preserving); }
};

/// (g ∘ f) for locale maps f: M -> L, g: L -> K; inverse image f* ∘ g*.
inline LocaleMap compose(const LocaleMap& g, const LocaleMap& f) {
  return {f.source, g.target, compose(f.inverse_image, g.inverse_image)};
}

/// Σ(f)(p) = ⋁{a : f*(a) ≤ p}, i.e. the direct image restricted to primes.
inline CtsMap spectrum_map(const LocaleMap& f) {
  auto sm = spectrum(f.source);
  auto sl = spectrum(f.target);
  const auto direct = f.direct_image();
  CtsMap out{sm.space, sl.space, std::vector<Point>(sm.primes.size())};
  for (Point i = 0; i < sm.primes.size(); ++i) {
    auto pt = sl.point_of(direct(sm.primes[i]));
    if (!pt) throw InternalError("spectrum_map: direct image of a prime is not prime");
    out.table[i] = *pt;
  }
  if (!check_continuous(out).continuous) throw InternalError("spectrum_map: result is not continuous");
  return out;
}

}  // namespace pfk
