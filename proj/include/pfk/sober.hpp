#pragma once

// Soberification, separation properties, and the 𝒪 functor on maps.

#include <vector>

#include "pfk/frame.hpp"

namespace pfk {

struct Soberification {
  OpenLocale opens;   // 𝒪(X)
  Spectrum spectrum;  // Σ 𝒪(X)
  CtsMap sob;         // x ↦ X \ cl{x}
  bool injective = false;
  bool surjective = false;
  bool open_map = false;
};

inline Soberification soberify(const FinSpace& x, const Limits& limits = {}) {
  Soberification s;
  s.opens = open_locale(x, limits);
  s.spectrum = spectrum(s.opens.locale);
  s.sob = CtsMap{x, s.spectrum.space, std::vector<Point>(x.size())};
  for (Point p = 0; p < x.size(); ++p) {
    const Bitset complement = x.closure(Bitset(x.size(), {p})).complement();
    auto pt = s.spectrum.point_of(s.opens.element(complement));
    if (!pt) throw InternalError("soberify: complement of a point closure is not prime");
    s.sob.table[p] = *pt;
  }
  if (!check_continuous(s.sob).continuous) throw InternalError("soberify: sob is not continuous");
  s.injective = s.sob.injective();
  s.surjective = s.sob.surjective();
  s.open_map = is_open_map(s.sob);
  if (s.surjective && !s.open_map) throw InternalError("soberify: surjective sob is not open");
  return s;
}

struct SeparationReport {
  bool t0 = false;
  bool t1 = false;
  bool sober = false;
  /// specialization[x] = {y : x ⊑ y}
  std::vector<Bitset> specialization;
};

inline SeparationReport separation_report(const FinSpace& x, const Limits& limits = {}) {
  SeparationReport r;
  r.specialization = x.nbhds();
  r.t0 = true;
  r.t1 = true;
  for (Point a = 0; a < x.size(); ++a) {
    if (x.nbhd(a).count() != 1) r.t1 = false;
    for (Point b = a + 1; b < x.size(); ++b)
      if (x.specializes(a, b) && x.specializes(b, a)) r.t0 = false;
  }
  auto s = soberify(x, limits);
  r.sober = s.injective && s.surjective;
  return r;
}

/// f⁻¹ : 𝒪(Y) -> 𝒪(X) for a continuous f: X -> Y.
inline LatticeMap inverse_image(const CtsMap& f, const OpenLocale& ox, const OpenLocale& oy) {
  auto cont = check_continuous(f);
  if (!cont.continuous) throw Rejected("inverse_image: map is not continuous", f.target.names(*cont.witness));
  LatticeMap m{oy.locale.lattice(), ox.locale.lattice(), std::vector<Elem>(oy.opens.size())};
  for (Elem e = 0; e < oy.opens.size(); ++e) m.table[e] = ox.element(f.preimage(oy.opens[e]));
  return m;
}

/// φ_!(U) = φ(U) for an open map φ; checked left adjoint to φ⁻¹.
inline LatticeMap direct_image(const CtsMap& f, const OpenLocale& ox, const OpenLocale& oy) {
  if (!is_open_map(f)) throw Rejected("direct_image: map is not open", {});
  LatticeMap m{ox.locale.lattice(), oy.locale.lattice(), std::vector<Elem>(ox.opens.size())};
  for (Elem e = 0; e < ox.opens.size(); ++e) m.table[e] = oy.element(f.image(ox.opens[e]));
  if (!verify_adjunction(m, inverse_image(f, ox, oy)).holds)
    throw InternalError("direct_image is not left adjoint to the inverse image");
  return m;
}

}  // namespace pfk
