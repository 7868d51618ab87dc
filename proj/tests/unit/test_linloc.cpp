#include <gtest/gtest.h>

#include <random>

#include "pfk/linloc.hpp"
#include "support/corpus.hpp"

namespace pfk {
namespace {

using corpus::chain;
using corpus::d2;
using corpus::i2;
using corpus::sierpinski;

const FqSpace f2 = FqSpace::discrete(2, 1);
const FqSpace f22 = FqSpace::discrete(2, 2);
const Subspace O = f2.zero_subspace();
const Subspace W = f2.whole();

QVBundle b1() { return build_bundle(sierpinski(), f2, {O, O}); }
QVBundle b2() { return build_bundle(sierpinski(), f2, {O, W}); }
QVBundle b3() { return build_bundle(d2(), f2, {O, W}); }
QVBundle b4() { return build_bundle(i2(), f2, {O, O}); }

Locale c3() { return Locale(chain(3)); }

LinLocale sigma_table(const Locale& frame, const FqSpace& a, std::vector<std::pair<std::string, std::string>> t) {
  auto sl = enumerate_subspaces(a);
  return build_linloc(frame, a, LatticeMap::from_ids(sl.lattice, frame.lattice(), t));
}

LinLocale l1() { return sigma_table(c3(), f2, {{"0:", "0"}, {"1:1", "1"}}); }
LinLocale l0() { return sigma_table(c3(), f2, {{"0:", "0"}, {"1:1", "0"}}); }

std::vector<std::string> ids(const FinLattice& l, const std::vector<Elem>& es) {
  std::vector<std::string> out;
  for (auto e : es) out.push_back(l.id(e));
  return out;
}

TEST(BuildLinloc, L1) {
  auto l = l1();
  EXPECT_EQ(ids(l.sub().lattice, l.gamma.table), (std::vector<std::string>{"0:", "0:", "1:1"}));
  EXPECT_EQ(ids(c3().lattice(), l.spectrum.primes), (std::vector<std::string>{"0", "m"}));
  EXPECT_EQ(ids(l.sub().lattice, l.kfrak), (std::vector<std::string>{"0:", "0:"}));
}

TEST(BuildLinloc, DiscontinuousKernelRejected) {
  try {
    sigma_table(c3(), f2, {{"0:", "0"}, {"1:1", "m"}});
    FAIL();
  } catch (const Rejected& e) {
    EXPECT_EQ(e.witness(), std::vector<std::string>{"1:1"});
  }
}

TEST(BuildLinloc, ConstantZero) {
  auto l = l0();
  for (auto g : l.gamma.table) EXPECT_EQ(l.sub().lattice.id(g), "1:1");
}

TEST(BuildLinloc, NotJoinPreservingRejected) {
  // σ(⟨01⟩) = σ(⟨10⟩) = 0 forces σ(F₂²) = 0
  auto frame = Locale(chain(2));
  auto sl = enumerate_subspaces(f22);
  LatticeMap s{sl.lattice, frame.lattice(), std::vector<Elem>(sl.size(), 0)};
  s.table[sl.element(f22.whole())] = 1;
  s.table[sl.element(f22.subspace({"11"}))] = 1;
  EXPECT_THROW(build_linloc(frame, f22, s), Rejected);
}

TEST(BuildLinloc, GammaIsLargestBelow) {
  auto frame = Locale(corpus::boolean(2));
  for (const auto& l : enumerate_linlocs(frame, f22)) {
    for (Elem d = 0; d < frame.size(); ++d) {
      std::optional<Elem> largest;
      for (Elem v = 0; v < l.sub().size(); ++v)
        if (frame.lattice().leq(l.sigma(v), d) && (!largest || l.sub().lattice.leq(*largest, v))) largest = v;
      EXPECT_EQ(l.gamma(d), *largest);
    }
  }
}

TEST(BuildLinloc, FromLines) {
  auto frame = Locale(corpus::boolean(2));
  const auto& fl = frame.lattice();
  auto l = build_linloc_from_lines(frame, f22,
                                   {{"1:01", fl.index("{0}")}, {"1:10", fl.index("{1}")}, {"1:11", fl.index("{0,1}")}});
  EXPECT_EQ(frame.id(l.sigma(l.sub().element(f22.whole()))), "{0,1}");
  EXPECT_EQ(frame.id(l.sigma(l.sub().element(f22.zero_subspace()))), "{}");
  EXPECT_THROW(build_linloc_from_lines(frame, f22, {{"1:01", 1}}), InvalidInput);
  EXPECT_THROW(build_linloc_from_lines(frame, f22, {{"2:1001", 1}}), InvalidInput);
}

TEST(BuildLinloc, EnumerationOverC3) {
  auto all = enumerate_linlocs(c3(), f2);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_TRUE(same_linloc(all[0], l0()));
  EXPECT_TRUE(same_linloc(all[1], l1()));
}

TEST(SpecBundle, Examples) {
  auto s = spec_bundle(l1());
  EXPECT_EQ(s.base().ids(), (std::vector<std::string>{"0", "m"}));
  EXPECT_EQ(s.kernel_keys(), (std::vector<std::string>{"0:", "0:"}));
  auto c = classify_bundle(s);
  EXPECT_TRUE(c.spectral);
  EXPECT_TRUE(c.sober);

  auto z = spec_bundle(l0());
  EXPECT_EQ(z.kernel_keys(), (std::vector<std::string>{"1:1", "1:1"}));
  for (const auto& fib : z.fiber) EXPECT_EQ(fib.size(), 1u);

  auto trivial = Locale(chain(1));
  auto t = build_linloc(trivial, f2, LatticeMap{enumerate_subspaces(f2).lattice, trivial.lattice(), {0, 0}});
  EXPECT_EQ(spec_bundle(t).base().size(), 0u);
}

TEST(Omega, Examples) {
  auto o1 = omega_linloc(b1());
  EXPECT_EQ(o1.frame.size(), 3u);
  EXPECT_EQ(o1.frame.id(o1.sigma(o1.sub().element(W))), "{x0,x1}");
  auto o3 = omega_linloc(b3());
  EXPECT_EQ(o3.frame.id(o3.sigma(o3.sub().element(W))), "{y0}");
  auto f0 = FqSpace::discrete(2, 0);
  auto ot = omega_linloc(trivial_bundle(f0, sierpinski()));
  for (auto e : ot.sigma.table) EXPECT_EQ(ot.frame.id(e), "{}");
  try {
    omega_linloc(b2());
    FAIL();
  } catch (const Rejected& e) {
    EXPECT_EQ(e.witness(), std::vector<std::string>{"1"});
  }
}

TEST(LLMorphism, IdentityAndZero) {
  auto l = l1();
  EXPECT_TRUE(identity_ll(l).strict);
  auto z = check_ll_morphism(l, l, LocaleMap::identity(l.frame), FqLinearMap::zero(Field(2), 1, 1));
  EXPECT_FALSE(z.strict);
  EXPECT_EQ(l.sub().lattice.id(*z.strict_witness), "1:1");
}

TEST(LLMorphism, LaxFailure) {
  // identity on frames, σ-constant-0 target pulled back to 𝔏1: σ₁(W) = 1 ≰ 0
  try {
    check_ll_morphism(l1(), l0(), LocaleMap::identity(c3()), FqLinearMap::identity(Field(2), 1));
    FAIL();
  } catch (const Rejected& e) {
    EXPECT_EQ(e.witness(), std::vector<std::string>{"1:1"});
  }
}

TEST(LLMorphism, CompositionLaws) {
  auto frame = Locale(corpus::boolean(2));
  std::vector<LinLocale> ls = enumerate_linlocs(frame, f2);
  for (const auto& l : enumerate_linlocs(c3(), f2)) ls.push_back(l);
  auto linear = all_linear_maps(Field(2), 1, 1);
  std::vector<LLMorphism> ms;
  for (const auto& s : ls)
    for (const auto& t : ls)
      detail::for_each_frame_hom(t.frame.lattice(), s.frame.lattice(), {}, [&](const LatticeMap& g) {
        for (const auto& m : linear) {
          try {
            ms.push_back(check_ll_morphism(s, t, LocaleMap{s.frame, t.frame, g}, m));
          } catch (const Rejected&) {
          }
        }
      });
  ASSERT_GT(ms.size(), 20u);
  std::size_t triples = 0;
  for (const auto& f : ms)
    for (const auto& g : ms) {
      if (!same_linloc(g.target, f.source)) continue;
      auto fg = compose_ll(f, g);
      EXPECT_TRUE(same_ll_morphism(compose_ll(fg, identity_ll(g.source)), fg));
      EXPECT_TRUE(same_ll_morphism(compose_ll(identity_ll(f.target), fg), fg));
      for (const auto& h : ms) {
        if (!same_linloc(h.target, g.source) || triples > 2000) continue;
        ++triples;
        EXPECT_TRUE(same_ll_morphism(compose_ll(fg, h), compose_ll(f, compose_ll(g, h))));
      }
    }
  EXPECT_GT(triples, 100u);
}

TEST(SpecOnMorphism, IdentityAndStrictness) {
  for (const auto& l : {l0(), l1()}) {
    auto s = spec_on_morphism(identity_ll(l));
    EXPECT_TRUE(same_morphism(s, identity_morphism(spec_bundle(l))));
    EXPECT_TRUE(s.strict);
  }
}

TEST(Unit, Examples) {
  EXPECT_TRUE(unit_sob(b1()).iso);
  EXPECT_FALSE(unit_sob(b4()).iso);
  EXPECT_TRUE(unit_sob(b3()).iso);
  EXPECT_TRUE(unit_sob(b4()).morphism.strict);
}

TEST(Counit, Examples) {
  for (const auto& l : {l1(), l0()}) {
    auto c = counit_spat(l);
    EXPECT_TRUE(c.morphism.strict);
    EXPECT_TRUE(c.iso);
  }
  auto trivial = Locale(chain(1));
  auto t = build_linloc(trivial, f2, LatticeMap{enumerate_subspaces(f2).lattice, trivial.lattice(), {0, 0}});
  EXPECT_TRUE(counit_spat(t).iso);
}

TEST(Transpose, B3IntoSpecL1) {
  auto spec = spec_bundle(l1());
  auto f = check_morphism(b3(), spec, CtsMap{d2(), spec.base(), {0, 0}}, FqLinearMap::identity(Field(2), 1));
  auto t = adjunction_transpose(f, l1());
  const auto& inv = t.morphism.underline.inverse_image;
  EXPECT_EQ(ids(inv.target, inv.table), (std::vector<std::string>{"{}", "{y0,y1}", "{y0,y1}"}));
  EXPECT_TRUE(t.round_trip);
  EXPECT_EQ(t.certificate, Certificate::unique);
  EXPECT_EQ(t.candidates, 1u);
  EXPECT_FALSE(t.morphism.strict);

  auto back = spec_on_morphism(t.morphism, t.unit.spec, spec);
  EXPECT_EQ(compose(back.flat, t.unit.morphism.flat).table, (std::vector<Point>{0, 0}));
}

TEST(Transpose, OfUnitIsIdentity) {
  for (const auto& b : {b1(), b3(), b4()}) {
    auto u = unit_sob(b);
    auto t = adjunction_transpose(u.morphism, u.omega);
    EXPECT_TRUE(same_ll_morphism(t.morphism, identity_ll(u.omega)));
    EXPECT_EQ(t.certificate, Certificate::unique);
  }
}

TEST(Transpose, StrictStaysStrict) {
  auto spec = spec_bundle(l1());
  auto f = check_morphism(b1(), spec, CtsMap{sierpinski(), spec.base(), {1, 0}}, FqLinearMap::identity(Field(2), 1));
  EXPECT_TRUE(f.strict);
  auto t = adjunction_transpose(f, l1());
  EXPECT_TRUE(t.morphism.strict);
  EXPECT_EQ(t.certificate, Certificate::unique);
}

TEST(Transpose, CapGivesUnverified) {
  auto spec = spec_bundle(l1());
  auto f = check_morphism(b3(), spec, CtsMap{d2(), spec.base(), {0, 0}}, FqLinearMap::identity(Field(2), 1));
  Limits tiny;
  tiny.subset_scan = 3;
  EXPECT_EQ(adjunction_transpose(f, l1(), tiny).certificate, Certificate::unverified);
}

TEST(Adjunction, TrianglesAndHomSets) {
  std::vector<QVBundle> bundles{b1(), b3(), b4(), trivial_bundle(f2, d2())};
  std::vector<LinLocale> targets{l1(), l0()};
  for (const auto& l : enumerate_linlocs(Locale(corpus::boolean(2)), f2)) targets.push_back(l);
  for (const auto& l : targets) EXPECT_TRUE(triangle_spec_side(l));
  for (const auto& b : bundles) EXPECT_TRUE(triangle_omega_side(b));
  for (const auto& b : bundles)
    for (const auto& l : targets) {
      auto h = hom_set_census(b, l);
      EXPECT_GT(h.bundle_homs, 0u);
      EXPECT_EQ(h.bundle_homs, h.ll_homs);
      EXPECT_EQ(h.strict_bundle_homs, h.strict_ll_homs);
      EXPECT_TRUE(h.bijective);
      EXPECT_TRUE(h.strict_bijective);
    }
}

TEST(Adjunction, CarrierF22) {
  auto b = build_bundle(d2(), f22, {f22.subspace({"01"}), f22.zero_subspace()});
  auto frame = Locale(chain(2));
  for (const auto& l : enumerate_linlocs(frame, f22)) {
    auto h = hom_set_census(b, l);
    EXPECT_EQ(h.bundle_homs, h.ll_homs);
    EXPECT_TRUE(h.bijective);
    EXPECT_TRUE(h.strict_bijective);
  }
}

TEST(MaxVariant, Examples) {
  auto d = max_variant_check(l1());
  EXPECT_TRUE(d.is_max_linearized);
  EXPECT_EQ(d.comparable_primes_agree, true);
  for (const auto& l : enumerate_linlocs(Locale(corpus::boolean(2)), f22))
    EXPECT_TRUE(max_variant_check(l).is_max_linearized);

  auto ind = FqSpace::indiscrete(2, 1);
  auto l = sigma_table(c3(), ind, {{"0:", "0"}, {"1:1", "1"}});
  auto m = max_variant_check(l);
  EXPECT_FALSE(m.is_max_linearized);
  EXPECT_FALSE(m.sigma_closure_invariant);
  EXPECT_EQ(l.sub().lattice.id(*m.witness), "0:");
}

}  // namespace
}  // namespace pfk
