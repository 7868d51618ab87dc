#include <gtest/gtest.h>

#include "pfk/hyper.hpp"
#include "support/corpus.hpp"

namespace pfk {
namespace {

const FqSpace f21 = FqSpace::discrete(2, 1);
const FqSpace f22 = FqSpace::discrete(2, 2);

// Up-sets of a finite poset, counted by scanning all subsets.
std::size_t count_upsets(const FinLattice& l) {
  std::size_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l.size()); ++m) {
    bool up = true;
    for (Elem a = 0; a < l.size() && up; ++a)
      for (Elem b = 0; b < l.size() && up; ++b)
        if ((m >> a & 1) && l.leq(a, b) && !(m >> b & 1)) up = false;
    count += up;
  }
  return count;
}

bool is_upset(const FinLattice& l, const Bitset& s) {
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b)
      if (s.test(a) && l.leq(a, b) && !s.test(b)) return false;
  return true;
}

bool finer_or_equal(const FinSpace& fine, const FinSpace& coarse) {
  auto r = topology_compare(coarse, fine).relation;
  return r == TopologyRelation::equal || r == TopologyRelation::first_strictly_coarser;
}

FqSpace carrier_f22(std::vector<std::vector<std::string>> opens) {
  std::vector<std::string> ids{"00", "01", "10", "11"};
  auto tmp = FinSpace::discrete(ids);
  std::vector<Bitset> sets;
  for (const auto& o : opens) sets.push_back(tmp.set_of(o));
  return FqSpace::with_carrier(2, 2, space_from_opens(ids, sets).space);
}

TEST(SpectrumTopology, VietorisOnF2) {
  auto t = spectrum_topology(f21, TopologyKind::vietoris);
  auto opens = t.space.opens();
  ASSERT_EQ(opens.size(), 3u);
  EXPECT_EQ(t.space.format(opens[0]), "{}");
  EXPECT_EQ(t.space.format(opens[1]), "{1:1}");
  EXPECT_EQ(t.space.format(opens[2]), "{0:,1:1}");
}

TEST(SpectrumTopology, VietorisOnF22IsUpsetTopology) {
  auto t = spectrum_topology(f22, TopologyKind::vietoris);
  EXPECT_EQ(t.space.opens().size(), 10u);
  EXPECT_EQ(count_upsets(t.sub_lattice.lattice), 10u);
  for (const auto& u : t.space.opens()) EXPECT_TRUE(is_upset(t.sub_lattice.lattice, u));
}

TEST(SpectrumTopology, DiscreteCarrierVietorisEqualsUpsets) {
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    auto a = FqSpace::discrete(q, n);
    auto t = spectrum_topology(a, TopologyKind::vietoris);
    // Alexandrov topology of ⊆: minimal neighbourhood of V is ↑V
    for (Point v = 0; v < t.space.size(); ++v) EXPECT_EQ(t.space.nbhd(v), t.sub_lattice.lattice.up(v));
  }
}

TEST(SpectrumTopology, OpenSupportOnF22IsDiscrete) {
  auto t = spectrum_topology(f22, TopologyKind::open_support);
  EXPECT_EQ(t.space.opens().size(), 32u);
  EXPECT_EQ(max_t1(f22, t), std::optional<bool>(true));
  EXPECT_EQ(max_t1(f22, spectrum_topology(f22, TopologyKind::vietoris)), std::optional<bool>(false));
}

TEST(SpectrumTopology, VietorisOpensAreUpsetsForEveryCarrierOnF2) {
  for (const auto& c : corpus::all_topologies(2)) {
    auto renamed = FinSpace::from_neighbourhoods({"0", "1"}, c.nbhds());
    auto a = FqSpace::with_carrier(2, 1, renamed);
    auto v = spectrum_topology(a, TopologyKind::vietoris);
    auto o = spectrum_topology(a, TopologyKind::open_support);
    auto f = spectrum_topology(a, TopologyKind::fell);
    for (const auto& u : v.space.opens()) EXPECT_TRUE(is_upset(v.sub_lattice.lattice, u));
    EXPECT_TRUE(finer_or_equal(o.space, v.space));
    EXPECT_TRUE(finer_or_equal(f.space, o.space));
  }
}

TEST(SpectrumTopology, ChainOfTopologiesOnSomeF22Carriers) {
  std::vector<FqSpace> carriers{f22, FqSpace::indiscrete(2, 2), carrier_f22({{"00"}}),
                                carrier_f22({{"00", "01"}, {"00", "10"}}), carrier_f22({{"01"}})};
  for (const auto& a : carriers) {
    auto v = spectrum_topology(a, TopologyKind::vietoris);
    auto o = spectrum_topology(a, TopologyKind::open_support);
    auto f = spectrum_topology(a, TopologyKind::fell);
    EXPECT_TRUE(finer_or_equal(o.space, v.space));
    EXPECT_TRUE(finer_or_equal(f.space, o.space));
    // Ǩ is an intersection of ǎ's, so the finite Fell analog adds nothing
    EXPECT_EQ(topology_compare(o, f).relation, TopologyRelation::equal);
  }
}

TEST(SpectrumTopology, FellCap) {
  Limits tiny;
  tiny.subset_scan = 8;
  EXPECT_THROW(spectrum_topology(f22, TopologyKind::fell, tiny), CapExceeded);
}

TEST(UInterval, Examples) {
  auto t = spectrum_topology(f22, TopologyKind::open_support);
  auto p01 = f22.subspace({"01"});
  auto single = u_interval(f22, t, p01, p01);
  EXPECT_EQ(single.set.count(), 4u);
  EXPECT_FALSE(single.set.test(t.sub_lattice.element(p01)));
  EXPECT_TRUE(single.open);
  EXPECT_EQ(single.prime, std::optional<bool>(true));

  auto pair = u_interval(f22, t, f22.zero_subspace(), p01);
  EXPECT_EQ(pair.set.count(), 3u);
  EXPECT_EQ(pair.prime, std::optional<bool>(false));
  ASSERT_TRUE(pair.witness.has_value());

  auto none = u_interval(f22, t, f22.zero_subspace(), f22.whole());
  EXPECT_TRUE(none.set.none());
  EXPECT_EQ(none.prime, std::optional<bool>(false));

  EXPECT_THROW(u_interval(f22, t, p01, f22.subspace({"10"})), InvalidInput);
}

TEST(UInterval, NotOpenInVietoris) {
  auto t = spectrum_topology(f22, TopologyKind::vietoris);
  auto p01 = f22.subspace({"01"});
  auto u = u_interval(f22, t, p01, p01);
  EXPECT_FALSE(u.open);
  EXPECT_FALSE(u.prime.has_value());
  // 𝒰_{0,V} is the complement of ↓V, an up-set
  auto down = u_interval(f22, t, f22.zero_subspace(), p01);
  EXPECT_TRUE(down.open);
  EXPECT_EQ(down.prime, std::optional<bool>(true));
}

TEST(TopologyCompare, Examples) {
  auto v = spectrum_topology(f22, TopologyKind::vietoris);
  auto o = spectrum_topology(f22, TopologyKind::open_support);
  auto c = topology_compare(v, o);
  EXPECT_EQ(c.relation, TopologyRelation::first_strictly_coarser);
  ASSERT_TRUE(c.only_in_second.has_value());
  EXPECT_EQ(o.space.format(*c.only_in_second), "{0:}");
  EXPECT_EQ(topology_compare(o, v).relation, TopologyRelation::second_strictly_coarser);
  EXPECT_EQ(topology_compare(spectrum_topology(f21, TopologyKind::open_support),
                             spectrum_topology(f21, TopologyKind::fell))
                .relation,
            TopologyRelation::equal);
  EXPECT_EQ(topology_compare(v, v).relation, TopologyRelation::equal);
  EXPECT_THROW(topology_compare(v.space, corpus::sierpinski()), InvalidInput);
}

TEST(TopologyCompare, Incomparable) {
  auto x = FinSpace::from_neighbourhoods({"a", "b"}, {Bitset(2, {0}), Bitset(2, {0, 1})});
  auto y = FinSpace::from_neighbourhoods({"a", "b"}, {Bitset(2, {0, 1}), Bitset(2, {1})});
  auto c = topology_compare(x, y);
  EXPECT_EQ(c.relation, TopologyRelation::incomparable);
  EXPECT_TRUE(c.only_in_first && c.only_in_second);
}

TEST(MaxSubspaces, Discrete) {
  auto m = max_subspaces(f22);
  EXPECT_EQ(m.closed.size(), 5u);
  EXPECT_EQ(m.closure, LatticeMap::identity(m.sub.lattice));
  EXPECT_TRUE(m.adjunction.holds);
}

TEST(MaxSubspaces, IndiscreteF2) {
  auto a = FqSpace::indiscrete(2, 1);
  auto m = max_subspaces(a);
  ASSERT_EQ(m.closed.size(), 1u);
  EXPECT_EQ(m.lattice.id(0), "1:1");
  EXPECT_EQ(m.lattice.id(m.closure(m.sub.element(a.zero_subspace()))), "1:1");
}

TEST(MaxSubspaces, UnsupportedCarrier) {
  auto a = carrier_f22({{"01"}});
  try {
    max_subspaces(a);
    FAIL();
  } catch (const UnsupportedCarrier& e) {
    EXPECT_EQ(e.witness(), std::vector<std::string>{"0:"});
  }
  EXPECT_FALSE(max_t1(a, spectrum_topology(a, TopologyKind::open_support)).has_value());
}

TEST(MaxSubspaces, SubspaceClosedCarrier) {
  // closed sets are unions of cosets of the line 01
  auto a = carrier_f22({{"00", "01"}, {"10", "11"}});
  auto m = max_subspaces(a);
  ASSERT_EQ(m.closed.size(), 2u);
  EXPECT_EQ(m.lattice.ids(), (std::vector<std::string>{"1:01", "2:1001"}));
  EXPECT_EQ(m.lattice.id(m.closure(m.sub.element(a.zero_subspace()))), "1:01");
  EXPECT_EQ(m.lattice.id(m.closure(m.sub.element(a.subspace({"10"})))), "2:1001");
}

}  // namespace
}  // namespace pfk
