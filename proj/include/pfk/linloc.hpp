#pragma once

// Linearized locales, the Spec and Ω functors between them and spectral
// bundles, unit/counit, adjunction transposes and the Max variant.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pfk/bundle.hpp"

namespace pfk {

/// (Λ, A, σ) with σ: Sub A -> Λ join preserving and γ its right adjoint.
struct LinLocale {
  Locale frame;
  FqSpace carrier;
  SpectrumTopology vietoris;  // lower Vietoris on Sub A
  Spectrum spectrum;          // Σ(Λ)
  LatticeMap sigma;           // Sub A -> Λ
  LatticeMap gamma;           // Λ -> Sub A
  std::vector<Elem> kfrak;    // γ on primes, per point of the spectrum

  const SubLattice& sub() const { return vietoris.sub_lattice; }
  /// σ as subspace key -> frame id, in canonical subspace order.
  std::vector<std::pair<std::string, std::string>> sigma_ids() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (Elem v = 0; v < sub().size(); ++v) out.emplace_back(sub().lattice.id(v), frame.id(sigma(v)));
    return out;
  }
};

inline bool same_linloc(const LinLocale& a, const LinLocale& b) {
  return a.frame == b.frame && a.carrier.q() == b.carrier.q() && a.carrier.dim() == b.carrier.dim() &&
         a.carrier.carrier() == b.carrier.carrier() && a.sigma.table == b.sigma.table;
}

/// Validates σ (join preservation) and the continuity of 𝔨 into lower
/// Vietoris. Comparable primes are checked to have 𝔨-values with equal
/// carrier closures.
inline LinLocale build_linloc(const Locale& frame, const FqSpace& carrier, const LatticeMap& sigma,
                              const Limits& limits = {}) {
  LinLocale l;
  l.frame = frame;
  l.carrier = carrier;
  l.vietoris = spectrum_topology(carrier, TopologyKind::vietoris, limits);
  if (!(sigma.source == l.sub().lattice) || !(sigma.target == frame.lattice()) ||
      sigma.table.size() != sigma.source.size())
    throw InvalidInput("linearized locale: σ must be a total map from Sub A to the frame");
  l.sigma = sigma;
  l.gamma = adjoint(sigma, AdjointSide::right_of_join_preserving, limits);
  l.spectrum = spectrum(frame);
  const auto m = l.spectrum.primes.size();
  l.kfrak.resize(m);
  for (Point i = 0; i < m; ++i) l.kfrak[i] = l.gamma(l.spectrum.primes[i]);
  auto cont = check_continuous(CtsMap{l.spectrum.space, l.vietoris.space, l.kfrak});
  if (!cont.continuous)
    throw Rejected("spectral kernel is not continuous into lower Vietoris", l.vietoris.space.names(*cont.witness));

  const auto& c = carrier.carrier();
  const auto members = detail::subspace_point_sets(carrier, l.sub());
  const auto& lat = frame.lattice();
  for (Point i = 0; i < m; ++i)
    for (Point j = 0; j < m; ++j)
      if (lat.leq(l.spectrum.primes[i], l.spectrum.primes[j]) &&
          c.closure(members[l.kfrak[i]]) != c.closure(members[l.kfrak[j]]))
        throw InternalError("comparable primes have 𝔨-values with different closures");
  return l;
}

/// σ given on the lines only (keys of 1-dimensional subspaces), extended by
/// σ(V) = ⋁{σ(L) : L ⊆ V}; the extension is then validated like any table.
inline LinLocale build_linloc_from_lines(const Locale& frame, const FqSpace& carrier,
                                         const std::map<std::string, Elem>& on_lines, const Limits& limits = {}) {
  auto sl = enumerate_subspaces(carrier, limits);
  std::vector<Elem> lines;
  for (Elem v = 0; v < sl.size(); ++v)
    if (sl.subspace(v).dim() == 1) lines.push_back(v);
  for (const auto& [key, _] : on_lines) {
    auto it = sl.by_key.find(key);
    if (it == sl.by_key.end() || sl.subspace(it->second).dim() != 1)
      throw InvalidInput("σ on lines: '" + key + "' is not a line of the carrier");
  }
  LatticeMap sigma{sl.lattice, frame.lattice(), std::vector<Elem>(sl.size(), frame.bottom())};
  for (Elem v = 0; v < sl.size(); ++v)
    for (auto line : lines)
      if (sl.lattice.leq(line, v)) {
        auto it = on_lines.find(sl.lattice.id(line));
        if (it == on_lines.end()) throw InvalidInput("σ on lines: no value for line " + sl.lattice.id(line));
        sigma.table[v] = frame.lattice().join(sigma.table[v], it->second);
      }
  return build_linloc(frame, carrier, sigma, limits);
}

/// Every valid σ on (Λ, A), in lexicographic table order (canonical
/// subspace order, first subspace most significant).
inline std::vector<LinLocale> enumerate_linlocs(const Locale& frame, const FqSpace& carrier, const Limits& limits = {}) {
  auto sl = enumerate_subspaces(carrier, limits);
  const auto& lat = frame.lattice();
  const auto n = sl.size();
  std::vector<LinLocale> out;
  LatticeMap sigma{sl.lattice, lat, std::vector<Elem>(n, lat.bottom())};
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, Elem v) -> void {
    if (++nodes > limits.enumeration) throw CapExceeded("linearized locale enumeration exceeds the cap");
    if (v == n) {
      if (!detail::check_preserves_finite(sigma, JoinOrMeet::join, "join preserving").passed()) return;
      try {
        out.push_back(build_linloc(frame, carrier, sigma, limits));
      } catch (const Rejected&) {
      }
      return;
    }
    for (Elem d = 0; d < lat.size(); ++d) {
      if (v == sl.lattice.bottom() && d != lat.bottom()) continue;
      bool ok = true;
      for (Elem u = 0; u < v && ok; ++u) {
        if (sl.lattice.leq(u, v) && !lat.leq(sigma(u), d)) ok = false;
        if (sl.lattice.leq(v, u) && !lat.leq(d, sigma(u))) ok = false;
      }
      if (!ok) continue;
      sigma.table[v] = d;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// Spec 𝔄: the bundle over Σ(Λ) with kernel 𝔨. It is checked to classify as
/// spectral and sober, and {p : a ∉ γ(p)} = U_{σ⟨a⟩} is checked per vector.
inline QVBundle spec_bundle(const LinLocale& l, const Limits& limits = {}) {
  auto ctx = make_context(l.spectrum.space, l.carrier, limits);
  std::vector<Elem> kappa;
  for (auto k : l.kfrak) kappa.push_back(ctx->sub().element(l.sub().subspace(k)));
  auto b = build_bundle(ctx, std::move(kappa), limits);
  auto cls = classify_bundle(b, limits);
  if (!cls.spectral || !cls.sober) throw InternalError("Spec of a linearized locale is not a sober spectral bundle");
  const auto& a = l.carrier;
  const auto m = l.spectrum.primes.size();
  for (std::size_t v = 0; v < a.vector_count(); ++v) {
    const auto line = l.sub().element(a.span({a.vector(v)}));
    Bitset vanish(m);
    for (Point i = 0; i < m; ++i)
      if (!a.point_set(l.sub().subspace(l.kfrak[i])).test(v)) vanish.set(i);
    if (vanish != l.spectrum.u[l.sigma(line)]) throw InternalError("{p : a ∉ γ(p)} differs from U_{σ⟨a⟩}");
  }
  return b;
}

/// Ω𝒜 = (𝒪(X), A, σ) for a spectral bundle.
inline LinLocale omega_linloc(const QVBundle& b, const Limits& limits = {}) {
  auto cls = classify_bundle(b, limits);
  if (!cls.spectral) {
    std::vector<std::string> w;
    if (cls.osp_pointwise_witness) w.push_back(b.carrier().format(*cls.osp_pointwise_witness));
    else if (cls.kfrak_witness) w = b.ctx->vietoris.space.names(*cls.kfrak_witness);
    throw Rejected("Ω needs a spectral bundle", w);
  }
  auto sg = verify_sigma_gamma(b);
  auto l = build_linloc(b.ctx->opens().locale, b.carrier(), sg.sigma, limits);
  if (l.gamma.table != sg.gamma.table) throw InternalError("Ω: adjoint of σ differs from the bundle's γ");
  return l;
}

/// 𝔣: 𝔅 -> 𝔄 given by a locale map Λ_B -> Λ_A (inverse image Λ_A -> Λ_B) and
/// a linear map A -> B, subject to σ_B(f̄V) ≤ f*(σ_A V).
struct LLMorphism {
  LinLocale source;  // 𝔅
  LinLocale target;  // 𝔄
  LocaleMap underline;
  FqLinearMap overline;
  bool strict = true;
  std::optional<Elem> strict_witness;  // V ∈ Sub A with σ_B(f̄V) < f*(σ_A V)
};

inline LLMorphism check_ll_morphism(const LinLocale& src, const LinLocale& dst, const LocaleMap& underline,
                                    const FqLinearMap& overline) {
  if (!(underline.source == src.frame) || !(underline.target == dst.frame))
    throw InvalidInput("linearized locale morphism: locale map must go from the source frame to the target frame");
  if (overline.source_dim != dst.carrier.dim() || overline.target_dim != src.carrier.dim() ||
      overline.field.q() != dst.carrier.q() || dst.carrier.q() != src.carrier.q())
    throw InvalidInput("linearized locale morphism: linear map must go from the target carrier to the source carrier");
  if (!is_frame_homomorphism(underline.inverse_image))
    throw Rejected("linearized locale morphism: inverse image is not a frame homomorphism", {});
  LLMorphism f{src, dst, underline, overline, true, std::nullopt};
  const auto& lb = src.frame.lattice();
  for (Elem v = 0; v < dst.sub().size(); ++v) {
    const auto img = src.sub().element(image(overline, dst.sub().subspace(v)));
    const Elem lhs = src.sigma(img);
    const Elem rhs = underline.inverse_image(dst.sigma(v));
    if (!lb.leq(lhs, rhs)) throw Rejected("linearized locale morphism violates the lax law", {dst.sub().lattice.id(v)});
    if (lhs != rhs && f.strict) {
      f.strict = false;
      f.strict_witness = v;
    }
  }
  return f;
}

inline LLMorphism identity_ll(const LinLocale& l) {
  return check_ll_morphism(l, l, LocaleMap::identity(l.frame), FqLinearMap::identity(l.carrier.field(), l.carrier.dim()));
}

/// f ∘ g for g: ℭ -> 𝔅 and f: 𝔅 -> 𝔄: underline parts compose as locale
/// maps, overline parts in the opposite order. The lax law is re-checked.
inline LLMorphism compose_ll(const LLMorphism& f, const LLMorphism& g) {
  if (!same_linloc(g.target, f.source)) throw InvalidInput("compose: morphisms are not composable");
  LLMorphism h;
  try {
    h = check_ll_morphism(g.source, f.target, compose(f.underline, g.underline), compose(g.overline, f.overline));
  } catch (const Rejected&) {
    throw InternalError("composite of linearized locale morphisms violates the lax law");
  }
  if (f.strict && g.strict && !h.strict) throw InternalError("composite of strict morphisms is not strict");
  return h;
}

inline bool same_ll_morphism(const LLMorphism& f, const LLMorphism& g) {
  return same_linloc(f.source, g.source) && same_linloc(f.target, g.target) &&
         f.underline.inverse_image.table == g.underline.inverse_image.table && f.overline == g.overline;
}

inline bool is_iso(const LLMorphism& f) {
  const auto& t = f.underline.inverse_image.table;
  std::set<Elem> hit(t.begin(), t.end());
  return f.strict && f.overline.invertible() && hit.size() == t.size() && t.size() == f.source.frame.size();
}

/// Spec 𝔣 = (Σ(underline f), overline f) between given Spec bundles.
inline BundleMorphism spec_on_morphism(const LLMorphism& f, const QVBundle& spec_src, const QVBundle& spec_dst,
                                       const Limits& limits = {}) {
  auto flat = spectrum_map(f.underline);
  BundleMorphism m;
  try {
    m = check_morphism(spec_src, spec_dst, flat, f.overline, limits);
  } catch (const Rejected&) {
    throw InternalError("Spec of a linearized locale morphism violates the lax law");
  }
  if (f.strict && !m.strict) throw InternalError("Spec of a strict morphism is not strict");
  return m;
}

inline BundleMorphism spec_on_morphism(const LLMorphism& f, const Limits& limits = {}) {
  return spec_on_morphism(f, spec_bundle(f.source, limits), spec_bundle(f.target, limits), limits);
}

/// Ω f = (f♭⁻¹, f*) for f: ℬ -> 𝒜 between spectral bundles, with the Ω
/// linearized locales supplied.
inline LLMorphism omega_on_morphism(const BundleMorphism& f, const LinLocale& omega_src, const LinLocale& omega_dst) {
  const auto& ox = f.target.ctx->opens();
  const auto& oy = f.source.ctx->opens();
  auto inv = inverse_image(f.flat, oy, ox);
  auto lm = LocaleMap::from_inverse_image(omega_src.frame, omega_dst.frame, inv);
  LLMorphism out;
  try {
    out = check_ll_morphism(omega_src, omega_dst, lm, f.star);
  } catch (const Rejected&) {
    throw InternalError("Ω of a bundle morphism violates the lax law");
  }
  if (f.strict && !out.strict) throw InternalError("Ω of a strict morphism is not strict");
  return out;
}

inline LLMorphism omega_on_morphism(const BundleMorphism& f, const Limits& limits = {}) {
  return omega_on_morphism(f, omega_linloc(f.source, limits), omega_linloc(f.target, limits));
}

struct Unit {
  LinLocale omega;           // Ω𝒜
  QVBundle spec;             // Spec Ω𝒜
  BundleMorphism morphism;   // (sob_X, id_A): 𝒜 -> Spec Ω𝒜
  bool iso = false;
};

/// sob_𝒜; strict always, iso exactly when the bundle is sober.
inline Unit unit_sob(const QVBundle& b, const Limits& limits = {}) {
  Unit u;
  u.omega = omega_linloc(b, limits);
  u.spec = spec_bundle(u.omega, limits);
  const auto& a = b.carrier();
  u.morphism = check_morphism(b, u.spec, b.ctx->sob.sob, FqLinearMap::identity(a.field(), a.dim()), limits);
  if (!u.morphism.strict) throw InternalError("unit is not strict");
  u.iso = is_iso(u.morphism);
  if (u.iso != classify_bundle(b, limits).sober) throw InternalError("unit iso disagrees with soberness");
  return u;
}

struct Counit {
  QVBundle spec;          // Spec 𝔄
  LinLocale omega;        // Ω Spec 𝔄
  LLMorphism morphism;    // (a ↦ U_a, id_A): Ω Spec 𝔄 -> 𝔄
  bool iso = false;
};

/// spat_𝔄; strictness is the identity σ̃(V) = U_{σ(V)}, checked directly.
inline Counit counit_spat(const LinLocale& l, const Limits& limits = {}) {
  Counit c;
  c.spec = spec_bundle(l, limits);
  c.omega = omega_linloc(c.spec, limits);
  const auto& opens = c.spec.ctx->opens();
  LatticeMap inv{l.frame.lattice(), c.omega.frame.lattice(), std::vector<Elem>(l.frame.size())};
  for (Elem d = 0; d < l.frame.size(); ++d) inv.table[d] = opens.element(l.spectrum.u[d]);
  for (Elem v = 0; v < l.sub().size(); ++v)
    if (c.omega.sigma(v) != inv(l.sigma(v))) throw InternalError("σ of Ω Spec differs from U_σ");
  auto lm = LocaleMap::from_inverse_image(c.omega.frame, l.frame, inv);
  c.morphism = check_ll_morphism(c.omega, l, lm, FqLinearMap::identity(l.carrier.field(), l.carrier.dim()));
  if (!c.morphism.strict) throw InternalError("counit is not strict");
  c.iso = is_iso(c.morphism);
  if (c.iso != spatialization(l.frame, limits).is_spatial) throw InternalError("counit iso disagrees with spatiality");
  return c;
}

namespace detail {

/// Every frame homomorphism L -> M, by backtracking over monotone tables.
template <class Visit>
void for_each_frame_hom(const FinLattice& l, const FinLattice& m, const Limits& limits, Visit&& visit) {
  const auto n = l.size();
  LatticeMap f{l, m, std::vector<Elem>(n, 0)};
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, Elem e) -> void {
    if (++nodes > limits.enumeration) throw CapExceeded("frame homomorphism enumeration exceeds the cap");
    if (e == n) {
      if (is_frame_homomorphism(f)) visit(f);
      return;
    }
    for (Elem d = 0; d < m.size(); ++d) {
      if (e == l.bottom() && d != m.bottom()) continue;
      if (e == l.top() && d != m.top()) continue;
      bool ok = true;
      for (Elem u = 0; u < e && ok; ++u) {
        if (l.leq(u, e) && !m.leq(f(u), d)) ok = false;
        if (l.leq(e, u) && !m.leq(d, f(u))) ok = false;
        if (ok) {
          const Elem j = l.join(u, e), k = l.meet(u, e);
          if (j < e && f(j) != m.join(f(u), d)) ok = false;
          if (k < e && f(k) != m.meet(f(u), d)) ok = false;
        }
      }
      if (!ok) continue;
      f.table[e] = d;
      self(self, e + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

enum class Certificate { unique, not_unique, unverified };

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::unique: return "unique";
    case Certificate::not_unique: return "not_unique";
    case Certificate::unverified: return "unverified";
  }
  return "?";
}

struct Transpose {
  LLMorphism morphism;  // Ω𝒜 -> 𝔅
  Unit unit;
  bool round_trip = false;  // Spec(𝔣) ∘ sob_𝒜 = f
  Certificate certificate = Certificate::unverified;
  std::size_t candidates = 0;  // lax morphisms Ω𝒜 -> 𝔅 over f*, reproducing f
};

namespace detail {

inline LocaleMap transpose_underline(const BundleMorphism& f, const LinLocale& target, const Unit& u) {
  const auto& opens = f.source.ctx->opens();
  LatticeMap inv{target.frame.lattice(), u.omega.frame.lattice(), std::vector<Elem>(target.frame.size())};
  for (Elem d = 0; d < target.frame.size(); ++d) inv.table[d] = opens.element(f.flat.preimage(target.spectrum.u[d]));
  return LocaleMap::from_inverse_image(u.omega.frame, target.frame, inv);
}

}  // namespace detail

/// The transpose of f: 𝒜 -> Spec 𝔅 across Ω ⊣ Spec, f*(d) = f♭⁻¹(U_d) and
/// overline f = f_star. Uniqueness is certified by scanning every frame
/// homomorphism Λ_B -> 𝒪(X) paired with f_star, within limits.subset_scan
/// search nodes.
inline Transpose adjunction_transpose(const BundleMorphism& f, const LinLocale& target, const Limits& limits = {}) {
  Transpose t;
  t.unit = unit_sob(f.source, limits);
  if (!same_bundle(f.target, spec_bundle(target, limits)))
    throw InvalidInput("transpose: morphism does not land in Spec of the given linearized locale");
  auto lm = detail::transpose_underline(f, target, t.unit);
  t.morphism = check_ll_morphism(t.unit.omega, target, lm, f.star);
  if (f.strict && !t.morphism.strict) throw InternalError("transpose of a strict morphism is not strict");
  auto back = compose_morphisms(spec_on_morphism(t.morphism, t.unit.spec, f.target, limits), t.unit.morphism, limits);
  t.round_trip = same_morphism(back, f);
  if (!t.round_trip) throw InternalError("Spec(transpose) ∘ sob differs from the original morphism");

  try {
    const auto& sob = t.unit.morphism.flat;
    Limits scan = limits;
    scan.enumeration = limits.subset_scan;
    detail::for_each_frame_hom(target.frame.lattice(), t.unit.omega.frame.lattice(), scan, [&](const LatticeMap& g) {
      auto cand = LocaleMap{t.unit.omega.frame, target.frame, g};
      if (compose(spectrum_map(cand), sob).table != f.flat.table) return;
      try {
        check_ll_morphism(t.unit.omega, target, cand, f.star);
      } catch (const Rejected&) {
        return;
      }
      ++t.candidates;
    });
    t.certificate = t.candidates == 1 ? Certificate::unique : Certificate::not_unique;
  } catch (const CapExceeded&) {
    t.certificate = Certificate::unverified;
  }
  return t;
}

struct TriangleReport {
  bool spec_side = false;   // Spec(counit_𝔄) ∘ unit_{Spec 𝔄} = id
  bool omega_side = false;  // counit_{Ω𝒜} ∘ Ω(unit_𝒜) = id
};

inline bool triangle_spec_side(const LinLocale& l, const Limits& limits = {}) {
  auto c = counit_spat(l, limits);
  auto u = unit_sob(c.spec, limits);
  auto spec_counit = spec_on_morphism(c.morphism, u.spec, c.spec, limits);
  return same_morphism(compose_morphisms(spec_counit, u.morphism, limits), identity_morphism(c.spec));
}

inline bool triangle_omega_side(const QVBundle& b, const Limits& limits = {}) {
  auto u = unit_sob(b, limits);
  auto c = counit_spat(u.omega, limits);
  auto omega_unit = omega_on_morphism(u.morphism, u.omega, c.omega);
  return same_ll_morphism(compose_ll(c.morphism, omega_unit), identity_ll(u.omega));
}

struct HomSetCensus {
  std::size_t bundle_homs = 0;         // 𝒜 -> Spec 𝔅
  std::size_t ll_homs = 0;             // Ω𝒜 -> 𝔅
  std::size_t strict_bundle_homs = 0;
  std::size_t strict_ll_homs = 0;
  bool bijective = false;         // transposition is a bijection
  bool strict_bijective = false;  // and restricts to strict morphisms
};

/// Enumerates both hom-sets and checks that transposition matches them up.
inline HomSetCensus hom_set_census(const QVBundle& a, const LinLocale& target, const Limits& limits = {}) {
  HomSetCensus h;
  auto u = unit_sob(a, limits);
  auto spec = spec_bundle(target, limits);
  const auto& x = a.base();
  const auto& y = spec.base();
  auto linear = all_linear_maps(target.carrier.field(), target.carrier.dim(), a.carrier().dim(), limits);

  using Key = std::pair<std::vector<Elem>, std::vector<Vector>>;
  std::set<Key> ll, ll_strict;
  detail::for_each_frame_hom(target.frame.lattice(), u.omega.frame.lattice(), limits, [&](const LatticeMap& g) {
    LocaleMap lm{u.omega.frame, target.frame, g};
    for (const auto& s : linear) {
      try {
        auto m = check_ll_morphism(u.omega, target, lm, s);
        ll.insert({g.table, s.matrix});
        if (m.strict) ll_strict.insert({g.table, s.matrix});
      } catch (const Rejected&) {
      }
    }
  });
  h.ll_homs = ll.size();
  h.strict_ll_homs = ll_strict.size();

  std::set<Key> image, image_strict;
  const auto total = detail::checked_pow(y.size(), x.size(), limits.enumeration);
  std::vector<Point> table(x.size());
  bool maps_into = true;
  for (std::uint64_t code = 0; code < total; ++code) {
    auto c = code;
    for (std::size_t i = x.size(); i-- > 0;) {
      table[i] = c % y.size();
      c /= y.size();
    }
    CtsMap flat{x, y, table};
    if (!check_continuous(flat).continuous) continue;
    for (const auto& s : linear) {
      BundleMorphism f;
      try {
        f = check_morphism(a, spec, flat, s, limits);
      } catch (const Rejected&) {
        continue;
      }
      ++h.bundle_homs;
      h.strict_bundle_homs += f.strict;
      auto lm = detail::transpose_underline(f, target, u);
      Key k{lm.inverse_image.table, s.matrix};
      maps_into = maps_into && ll.count(k);
      image.insert(k);
      if (f.strict) {
        maps_into = maps_into && ll_strict.count(k);
        image_strict.insert(k);
      }
    }
  }
  h.bijective = maps_into && image.size() == h.bundle_homs && image.size() == h.ll_homs;
  h.strict_bijective = maps_into && image_strict.size() == h.strict_bundle_homs && image_strict == ll_strict;
  return h;
}

struct MaxVariant {
  bool is_max_linearized = false;
  bool gamma_in_max = false;
  bool sigma_closure_invariant = false;
  std::optional<Elem> witness;  // V with σ(V) ≠ σ(cl V)
  /// γ(p) = γ(q) for comparable primes; evaluated when Max-linearized.
  std::optional<bool> comparable_primes_agree;
};

/// Throws UnsupportedCarrier when Max A is not available.
inline MaxVariant max_variant_check(const LinLocale& l, const Limits& limits = {}) {
  auto mx = max_subspaces(l.carrier, limits);
  MaxVariant r;
  r.gamma_in_max = true;
  for (Elem d = 0; d < l.frame.size(); ++d) r.gamma_in_max = r.gamma_in_max && mx.closed_set.test(l.gamma(d));
  r.sigma_closure_invariant = true;
  for (Elem v = 0; v < l.sub().size() && r.sigma_closure_invariant; ++v) {
    const Elem cl = mx.inclusion(mx.closure(v));
    if (l.sigma(v) != l.sigma(cl)) {
      r.sigma_closure_invariant = false;
      r.witness = v;
    }
  }
  if (r.gamma_in_max != r.sigma_closure_invariant)
    throw InternalError("γ valued in Max disagrees with closure invariance of σ");
  r.is_max_linearized = r.gamma_in_max;
  if (r.is_max_linearized) {
    bool agree = true;
    const auto& p = l.spectrum.primes;
    for (Point i = 0; i < p.size(); ++i)
      for (Point j = 0; j < p.size(); ++j)
        if (l.frame.lattice().leq(p[i], p[j]) && l.kfrak[i] != l.kfrak[j]) agree = false;
    r.comparable_primes_agree = agree;
    if (!agree) throw InternalError("Max-linearized locale has different γ on comparable primes");
  }
  return r;
}

}  // namespace pfk
