#include <gtest/gtest.h>

#include <random>

#include "pfk/order.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace pfk {
namespace {

using corpus::chain;

LatticeMap map_of(const FinLattice& l, const FinLattice& m, std::vector<std::pair<std::string, std::string>> t) {
  return LatticeMap::from_ids(l, m, t);
}

TEST(ValidateLattice, ChainIsFrame) {
  RawOrder c3{{"0", "m", "1"}, {{"0", "m"}, {"m", "1"}}};
  auto r = validate_lattice(c3, LatticeLevel::frame);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checks.back().axiom, "frame distributivity");
  EXPECT_EQ(r.checks.back().method, "exhaustive");
  // 0 <= 1 was implied, plus three reflexive pairs
  ASSERT_EQ(r.notes.size(), 1u);
}

TEST(ValidateLattice, M3FailsWithThreeAtomWitness) {
  auto r = validate_lattice(corpus::m3_raw(), LatticeLevel::frame);
  ASSERT_FALSE(r.ok());
  const auto* f = r.first_failure();
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->axiom, "frame distributivity");
  EXPECT_EQ(f->witness, (std::vector<std::string>{"a", "{b,c}"}));
  // a∧(b∨c) = a, (a∧b)∨(a∧c) = 0
  EXPECT_NE(f->detail.find("= a"), std::string::npos);
  EXPECT_NE(f->detail.find("= 0"), std::string::npos);
  EXPECT_TRUE(validate_lattice(corpus::m3_raw(), LatticeLevel::suplattice).ok());
}

TEST(ValidateLattice, N5IsNotDistributive) {
  auto r = validate_lattice(corpus::n5_raw(), LatticeLevel::frame);
  EXPECT_FALSE(r.ok());
}

TEST(ValidateLattice, StructuralErrorsAreDistinct) {
  EXPECT_THROW(validate_lattice({{"a", "a"}, {}}, LatticeLevel::poset), InvalidInput);
  EXPECT_THROW(validate_lattice({{"a", "b"}, {{"a", "b"}, {"b", "a"}}}, LatticeLevel::poset), InvalidInput);
  EXPECT_THROW(validate_lattice({{"a"}, {{"a", "z"}}}, LatticeLevel::poset), InvalidInput);
  // two incomparable elements: a poset but not a lattice
  auto r = validate_lattice({{"a", "b"}, {}}, LatticeLevel::suplattice);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure()->axiom, "least element (empty join)");
  EXPECT_TRUE(validate_lattice({{"a", "b"}, {}}, LatticeLevel::poset).ok());
}

TEST(ValidateLattice, LargeLatticeFallsBackToFinitaryCheck) {
  Limits tiny;
  tiny.subset_scan = 64;
  auto b3 = corpus::boolean(3);
  auto check = check_distributivity(b3, tiny);
  EXPECT_EQ(check.verdict, Verdict::pass);
  EXPECT_EQ(check.method, "finitary");
  Limits none;
  none.subset_scan = 0;
  EXPECT_EQ(check_distributivity(b3, none).verdict, Verdict::unverified);
}

TEST(JoinMeet, ChainExamples) {
  auto c3 = chain(3);
  EXPECT_EQ(c3.id(join_meet(c3, {"0", "m"}, JoinOrMeet::join)), "m");
  EXPECT_EQ(c3.id(join_meet(c3, {}, JoinOrMeet::join)), "0");
  EXPECT_EQ(c3.id(join_meet(c3, {}, JoinOrMeet::meet)), "1");
  EXPECT_THROW(join_meet(c3, {"zz"}, JoinOrMeet::join), InvalidInput);
}

TEST(JoinMeet, LawsOnSampledTriples) {
  std::mt19937 rng(7);
  std::vector<FinLattice> ls{chain(4), corpus::boolean(3), corpus::m3(), corpus::random_distributive(rng, 4, 10)};
  for (const auto& l : ls) {
    std::uniform_int_distribution<std::size_t> pick(0, l.size() - 1);
    for (int t = 0; t < 50; ++t) {
      auto a = pick(rng), b = pick(rng), c = pick(rng);
      EXPECT_EQ(l.join(a, a), a);
      EXPECT_EQ(l.meet(a, a), a);
      EXPECT_EQ(l.join(a, b), l.join(b, a));
      EXPECT_EQ(l.meet(a, b), l.meet(b, a));
      EXPECT_EQ(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
      EXPECT_EQ(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
    }
  }
}

TEST(Adjoint, ChainToChain) {
  auto c3 = chain(3), c2 = chain(2);
  auto f = map_of(c3, c2, {{"0", "0"}, {"m", "1"}, {"1", "1"}});
  auto g = adjoint(f, AdjointSide::right_of_join_preserving);
  EXPECT_EQ(c3.id(g(c2.index("0"))), "0");
  EXPECT_EQ(c3.id(g(c2.index("1"))), "1");
  EXPECT_TRUE(verify_adjunction(f, g).holds);
}

TEST(Adjoint, IdentityIsSelfAdjoint) {
  auto l = corpus::boolean(2);
  auto id = LatticeMap::identity(l);
  EXPECT_EQ(adjoint(id, AdjointSide::right_of_join_preserving), id);
  EXPECT_EQ(adjoint(id, AdjointSide::left_of_meet_preserving), id);
  EXPECT_TRUE(verify_adjunction(id, id).holds);
}

TEST(Adjoint, PreconditionFailureCarriesSubset) {
  auto c3 = chain(3);
  auto top = map_of(c3, c3, {{"0", "1"}, {"m", "1"}, {"1", "1"}});
  try {
    adjoint(top, AdjointSide::right_of_join_preserving);
    FAIL() << "expected rejection";
  } catch (const Rejected& e) {
    EXPECT_EQ(e.witness(), std::vector<std::string>{"{}"});
  }
}

TEST(Adjoint, LeftAdjointOfMeetPreserving) {
  auto c3 = chain(3), c2 = chain(2);
  // g: C2 -> C3, 0 ↦ m, 1 ↦ 1 preserves all meets
  auto g = map_of(c2, c3, {{"0", "m"}, {"1", "1"}});
  auto f = adjoint(g, AdjointSide::left_of_meet_preserving);
  EXPECT_TRUE(verify_adjunction(f, g).holds);
  EXPECT_EQ(c2.id(f(c3.index("m"))), "0");
  EXPECT_EQ(c2.id(f(c3.index("1"))), "1");
}

TEST(VerifyAdjunction, SwapIsNotAdjointToIdentity) {
  auto c2 = chain(2);
  auto swap = map_of(c2, c2, {{"0", "1"}, {"1", "0"}});
  auto r = verify_adjunction(swap, LatticeMap::identity(c2));
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(c2.id(r.witness->first), "1");
  EXPECT_EQ(c2.id(r.witness->second), "0");
}

TEST(VerifyAdjunction, MismatchedMapsAreInvalid) {
  auto c2 = chain(2), c3 = chain(3);
  EXPECT_THROW(verify_adjunction(LatticeMap::identity(c2), LatticeMap::identity(c3)), InvalidInput);
}

TEST(MapProps, Examples) {
  auto c3 = chain(3), c2 = chain(2);
  auto f = map_of(c3, c2, {{"0", "0"}, {"m", "1"}, {"1", "1"}});
  auto p = map_props(f);
  EXPECT_TRUE(p.monotone.passed());
  EXPECT_TRUE(p.join_preserving.passed());
  // m∧1 = m ↦ 1 = 1∧1 and 0∧m = 0 ↦ 0 = 0∧1: the scan finds no violation
  EXPECT_TRUE(p.finite_meet_preserving.passed());
  EXPECT_TRUE(p.all_meet_preserving.passed());

  auto top = map_of(c3, c3, {{"0", "1"}, {"m", "1"}, {"1", "1"}});
  auto q = map_props(top);
  EXPECT_TRUE(q.monotone.passed());
  EXPECT_FALSE(q.join_preserving.passed());
  EXPECT_EQ(q.join_preserving.witness, std::vector<std::string>{"{}"});

  auto id = map_props(LatticeMap::identity(corpus::boolean(2)));
  EXPECT_TRUE(id.monotone.passed() && id.join_preserving.passed() && id.finite_meet_preserving.passed() &&
              id.all_meet_preserving.passed());
}

TEST(MapProps, ExhaustiveAndFinitaryAgree) {
  auto b2 = corpus::boolean(2);
  auto c3 = chain(3);
  Limits tiny;
  tiny.subset_scan = 1;
  for (const auto& table : oracle::join_preserving_maps(b2, c3)) {
    LatticeMap f{b2, c3, table};
    EXPECT_TRUE(map_props(f).join_preserving.passed());
    EXPECT_TRUE(map_props(f, tiny).join_preserving.passed());
  }
}

TEST(AdjointInvariants, EveryJoinPreservingMapHasItsAdjoint) {
  std::vector<std::pair<FinLattice, FinLattice>> pairs{{chain(3), chain(2)},
                                                       {corpus::boolean(2), chain(3)},
                                                       {chain(4), corpus::boolean(2)},
                                                       {corpus::m3(), chain(3)}};
  for (const auto& [l, m] : pairs) {
    auto maps = oracle::join_preserving_maps(l, m);
    ASSERT_FALSE(maps.empty());
    std::vector<LatticeMap> rights;
    for (const auto& t : maps) {
      LatticeMap f{l, m, t};
      auto g = adjoint(f, AdjointSide::right_of_join_preserving);
      EXPECT_TRUE(verify_adjunction(f, g).holds);
      EXPECT_TRUE(oracle::adjunction_holds(l, m, f.table, g.table));
      // the right adjoint preserves meets, and its left adjoint is f again
      EXPECT_EQ(adjoint(g, AdjointSide::left_of_meet_preserving), f);
      rights.push_back(g);
    }
    // antitone: f ≤ f' ⟹ g' ≤ g
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (std::size_t j = 0; j < maps.size(); ++j) {
        LatticeMap fi{l, m, maps[i]}, fj{l, m, maps[j]};
        if (pointwise_leq(fi, fj)) {
          EXPECT_TRUE(pointwise_leq(rights[j], rights[i]));
        }
      }
  }
}

TEST(FinLattice, CoversOfChainAndBoolean) {
  EXPECT_EQ(chain(3).covers().size(), 2u);
  EXPECT_EQ(corpus::boolean(3).covers().size(), 12u);
}

TEST(FinLattice, NonLatticeIsRejected) {
  EXPECT_THROW(FinLattice::from_order({{"a", "b"}, {}}), Rejected);
  // a, b both below c and d: no least upper bound
  RawOrder bowtie{{"0", "a", "b", "c", "d", "1"},
                  {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}}};
  try {
    FinLattice::from_order(bowtie);
    FAIL();
  } catch (const Rejected& e) {
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"a", "b"}));
  }
}

}  // namespace
}  // namespace pfk
