// Library tour: a bundle over the two-point discrete space, its linearized
// locale, and the transpose of a morphism into Spec of another one.

#include <iostream>

#include "pfk/linloc.hpp"

int main() {
  using namespace pfk;
  const auto f2 = FqSpace::discrete(2, 1);
  const auto d2 = FinSpace::discrete({"y0", "y1"});

  auto b3 = build_bundle(d2, f2, {f2.zero_subspace(), f2.whole()});
  auto c = classify_bundle(b3);
  std::cout << "B3: open support " << c.open_support_property << ", spectral " << c.spectral << ", sober "
            << c.sober << "\n";

  auto omega = omega_linloc(b3);
  const auto& sub = omega.sub().lattice;
  for (Elem d = 0; d < omega.frame.size(); ++d)
    std::cout << "  gamma(" << omega.frame.id(d) << ") = " << sub.id(omega.gamma(d)) << "\n";

  auto chain = FinLattice::from_order({{"0", "m", "1"}, {{"0", "m"}, {"m", "1"}}});
  auto frame = Locale(chain);
  auto l1 = build_linloc(frame, f2, LatticeMap::from_ids(sub, chain, {{"0:", "0"}, {"1:1", "1"}}));
  auto spec = spec_bundle(l1);
  std::cout << "Spec L1 has " << spec.base().size() << " points\n";

  auto f = check_morphism(b3, spec, CtsMap{d2, spec.base(), {0, 0}}, FqLinearMap::identity(Field(2), 1));
  auto t = adjunction_transpose(f, l1);
  std::cout << "transpose certificate: " << to_string(t.certificate) << ", round trip " << t.round_trip << "\n";

  auto h = hom_set_census(b3, l1);
  std::cout << "hom sets: " << h.bundle_homs << " bundle morphisms, " << h.ll_homs
            << " linearized-locale morphisms, bijective " << h.bijective << "\n";
  return 0;
}
