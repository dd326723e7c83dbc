#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace picod;
using picod::testing::brute_mais;
using picod::testing::brute_min_mais;
using picod::testing::one_based;
using picod::testing::random_assignment;
using picod::testing::random_instance;

namespace {

DesiredAssignment example_one() {
  // users {1},{2},{3} want 2, 1, 1
  return DesiredAssignment{{one_based({2}), one_based({1}), one_based({1})}};
}

std::vector<SizeProfile> all_profiles(int m, int t) {
  std::vector<SizeProfile> out;
  for (std::uint32_t mask = 1; mask < (1u << (m - t + 1)); ++mask) out.emplace_back(MessageSet(mask).elements());
  return out;
}

void expect_chain_witness(const Instance& inst, const DesiredAssignment& a, const MaisResult& r) {
  ASSERT_EQ(static_cast<int>(r.chain.size()), r.size);
  MessageSet wanted;
  for (std::size_t k = 0; k < r.chain.size(); ++k) {
    const auto& u = r.chain[k];
    EXPECT_EQ(u.side, inst.side_info(u.source));
    EXPECT_TRUE(a.desired[u.source].contains(u.desired));
    EXPECT_FALSE(wanted.contains(u.desired));
    wanted.insert(u.desired);
    for (std::size_t later = k + 1; later < r.chain.size(); ++later)
      EXPECT_FALSE(u.side.contains(r.chain[later].desired));
  }
}

}  // namespace

TEST(UnicastExpansion, TEntriesPerUser) {
  const Instance inst = build_complete_s(4, 2, {1});
  DesiredAssignment a;
  for (int i = 0; i < inst.n(); ++i) a.desired.push_back(desired_options(inst, i).front());
  const auto uni = unicast_expansion(inst, a);
  ASSERT_EQ(uni.size(), 8u);
  for (const auto& u : uni) {
    EXPECT_FALSE(u.side.contains(u.desired));
    EXPECT_EQ(u.side, inst.side_info(u.source));
  }
}

TEST(Mais, Examples) {
  const Instance single(3, 1, {one_based({1})});
  EXPECT_EQ(mais(single, DesiredAssignment{{one_based({2})}}).size, 1);
  const Instance crit = build_complete_s(3, 1, {1});
  const auto r = mais(crit, example_one());
  EXPECT_EQ(r.size, 2);
  expect_chain_witness(crit, example_one(), r);
  auto it = enumerate_assignments(crit);
  int count = 0;
  while (it.next()) {
    EXPECT_EQ(mais(crit, it.current()).size, 2);
    ++count;
  }
  EXPECT_EQ(count, 8);
}

TEST(Mais, RejectsBadAssignmentsAndLargeM) {
  const Instance crit = build_complete_s(3, 1, {1});
  EXPECT_THROW(mais(crit, DesiredAssignment{{one_based({1}), one_based({1}), one_based({1})}}), PreconditionError);
  Caps caps;
  caps.mais_messages = 2;
  EXPECT_THROW(mais(crit, example_one(), caps), SearchSpaceTooLarge);
}

TEST(Mais, AgreesWithSubsetOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const Instance inst = random_instance(rng, 1, 7, 6, 2);
    const auto a = random_assignment(rng, inst);
    const auto r = mais(inst, a);
    ASSERT_EQ(r.size, brute_mais(inst, a)) << trial;
    expect_chain_witness(inst, a, r);
  }
}

TEST(AcyclicSubsetDp, AddRemoveRestoresState) {
  std::mt19937_64 rng(43);
  const Instance inst = build_complete_s(5, 1, {1, 2});
  const auto a = random_assignment(rng, inst);
  const auto b = random_assignment(rng, inst);
  AcyclicSubsetDp dp(5);
  for (const auto& u : unicast_expansion(inst, a)) dp.add(u.side, u.desired);
  const int before = dp.max_size();
  for (const auto& u : unicast_expansion(inst, b)) dp.add(u.side, u.desired);
  EXPECT_GE(dp.max_size(), before);
  for (const auto& u : unicast_expansion(inst, b)) dp.remove(u.side, u.desired);
  EXPECT_EQ(dp.max_size(), before);
  EXPECT_TRUE(dp.reaches(before));
  EXPECT_FALSE(dp.reaches(before + 1));
  EXPECT_THROW(AcyclicSubsetDp(25), SearchSpaceTooLarge);
}

TEST(Mais, MonotoneUnderAddedUsers) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng, 2, 6, 5, 2);
    const auto a = random_assignment(rng, inst);
    auto users = inst.users();
    auto desired = a.desired;
    const int extra = std::uniform_int_distribution<int>(1, 3)(rng);
    const Instance more_src = random_instance(rng, inst.m(), inst.m(), extra, inst.t());
    if (more_src.t() != inst.t()) continue;
    const auto more_a = random_assignment(rng, more_src);
    for (int i = 0; i < more_src.n(); ++i) {
      users.push_back(more_src.side_info(i));
      desired.push_back(more_a.desired[i]);
    }
    const Instance bigger(inst.m(), inst.t(), users);
    EXPECT_GE(mais(bigger, DesiredAssignment{desired}).size, mais(inst, a).size);
  }
}

TEST(MinMais, Examples) {
  const auto crit = min_mais_lower_bound(build_complete_s(3, 1, {1}));
  EXPECT_EQ(crit.value, 2);
  EXPECT_EQ(crit.explored, 8u);
  EXPECT_EQ(mais(build_complete_s(3, 1, {1}), crit.witness).size, 2);
  EXPECT_EQ(min_mais_lower_bound(build_complete_s(2, 1, {0})).value, 1);
  EXPECT_EQ(min_mais_lower_bound(build_complete_s(4, 2, {2})).value, 2);
}

TEST(MinMais, AgreesWithRecursiveOracle) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(rng, 1, 5, 4, 2);
    EXPECT_EQ(min_mais_lower_bound(inst).value, brute_min_mais(inst)) << trial;
  }
}

TEST(MinMais, SplitIntoJobsGivesSameWitness) {
  for (auto S : {SizeProfile{1, 2}, SizeProfile{0, 2}, SizeProfile{1, 3}}) {
    const Instance inst = build_complete_s(4, 1, S);
    const auto one = min_mais_lower_bound(inst, {}, 1);
    for (int jobs : {2, 3, 7}) {
      const auto many = min_mais_lower_bound(inst, {}, jobs);
      EXPECT_EQ(many.value, one.value);
      EXPECT_EQ(many.witness, one.witness);
    }
  }
}

TEST(MinMais, AssignmentCapRaises) {
  Caps caps;
  caps.assignments = 100;
  EXPECT_THROW(min_mais_lower_bound(build_complete_s(5, 1, {1, 2}), caps), SearchSpaceTooLarge);
}

TEST(MinMaisSearch, MatchesExhaustiveOnCompleteInstances) {
  for (int m = 1; m <= 5; ++m)
    for (int t = 1; t <= m; ++t)
      for (const auto& S : all_profiles(m, t)) {
        const Instance inst = build_complete_s(m, t, S);
        if (count_assignments(inst) > 300'000) continue;
        const auto exact = min_mais_lower_bound(inst);
        const auto bb = min_mais_search(inst);
        ASSERT_EQ(bb.value, exact.value) << m << " " << t << " " << to_string(S);
        EXPECT_EQ(mais(inst, bb.witness).size, bb.value);
      }
}

TEST(MinMaisSearch, MatchesExhaustiveOnRandomInstances) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = random_instance(rng, 1, 6, 6, 2);
    if (count_assignments(inst) > 200'000) continue;
    const auto bb = min_mais_search(inst);
    ASSERT_EQ(bb.value, min_mais_lower_bound(inst).value) << trial;
    EXPECT_EQ(mais(inst, bb.witness).size, bb.value);
  }
}

TEST(MinMaisSearch, NodeCapOverflows) {
  Caps caps;
  caps.search_nodes = 3;
  EXPECT_THROW(min_mais_search(build_complete_s(5, 1, {1, 3}), caps), SearchOverflow);
}

TEST(PermutationClosed, CompleteInstancesOnly) {
  EXPECT_TRUE(permutation_closed(build_complete_s(5, 1, {0, 2, 4})));
  EXPECT_FALSE(permutation_closed(Instance(3, 1, {one_based({1}), one_based({2})})));
}

TEST(ChainBound, Examples) {
  const Instance single(3, 1, {one_based({1})});
  EXPECT_EQ(chain_bound(single, DesiredAssignment{{one_based({3})}}, {0}), 1);
  EXPECT_EQ(chain_bound(single, DesiredAssignment{{one_based({3})}}, {}), 0);
  const Instance crit = build_complete_s(3, 1, {1});
  EXPECT_EQ(chain_bound(crit, example_one(), {2, 0}), 2);
  EXPECT_THROW(chain_bound(crit, example_one(), {5}), std::out_of_range);
}

TEST(ChainBound, LayeredChainGivesFourOnEveryAssignment) {
  const Instance inst = build_complete_s(4, 1, SizeProfile::range(0, 3));
  auto it = enumerate_assignments(inst);
  std::uint64_t n = 0;
  while (it.next()) {
    const auto order = layered_chain_ordering(inst, it.current());
    ASSERT_EQ(chain_bound(inst, it.current(), order), 4) << it.index();
    ++n;
  }
  EXPECT_EQ(n, 20736u);
}

TEST(BestChainBound, Examples) {
  const Instance crit = build_complete_s(3, 1, {1});
  const auto r = best_chain_bound(crit, example_one());
  EXPECT_EQ(r.value, 2);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(chain_bound(crit, example_one(), r.ordering), 2);
  const Instance single(4, 1, {one_based({2})});
  EXPECT_EQ(best_chain_bound(single, DesiredAssignment{{one_based({1})}}).value, 1);
}

TEST(BestChainBound, CompleteZeroToThreeIsFourEverywhere) {
  const Instance inst = build_complete_s(4, 1, SizeProfile::range(0, 3));
  auto it = enumerate_assignments(inst);
  while (it.next()) {
    const auto r = best_chain_bound(inst, it.current());
    ASSERT_FALSE(r.exact);
    ASSERT_EQ(r.value, 4) << it.index();
    ASSERT_EQ(chain_bound(inst, it.current(), r.ordering), 4);
  }
  std::mt19937_64 rng(61);
  for (int k = 0; k < 8; ++k) {
    const auto a = random_assignment(rng, inst);
    const auto r = best_chain_bound(inst, a, ChainMode::Exact);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.value, 4);
  }
}

TEST(BestChainBound, ExactMatchesAllOrderings) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(rng, 1, 6, 6, 2);
    const auto a = random_assignment(rng, inst);
    std::vector<int> perm(inst.n());
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do best = std::max(best, chain_bound(inst, a, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    const auto r = best_chain_bound(inst, a, ChainMode::Exact);
    EXPECT_EQ(r.value, best);
    EXPECT_EQ(chain_bound(inst, a, r.ordering), best);
    EXPECT_LE(best_chain_bound(inst, a, ChainMode::Heuristic).value, best);
  }
}

TEST(BestChainBound, NeverExceedsMais) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng, 1, 7, 8, 3);
    const auto a = random_assignment(rng, inst);
    const int m = mais(inst, a).size;
    std::vector<int> perm(inst.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_LE(chain_bound(inst, a, perm), m);
    EXPECT_LE(best_chain_bound(inst, a).value, m);
  }
}

TEST(MaisRange, CriticalInstancesAreContiguousAndBottomAtSPlusT) {
  for (auto [s, t] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}}) {
    const int m = 2 * s + t;
    const Instance inst = build_complete_s(m, t, {s});
    std::set<int> values;
    auto it = enumerate_assignments(inst);
    while (it.next()) values.insert(mais(inst, it.current()).size);
    EXPECT_EQ(*values.begin(), s + t) << s << " " << t;
    EXPECT_EQ(*values.rbegin() - *values.begin() + 1, static_cast<int>(values.size())) << s << " " << t;
  }
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(closed_form_length(5, 1, SizeProfile::range(1, 3)), (ClosedForm{4, ClosedFormTag::Thm2}));
  EXPECT_EQ(closed_form_length(6, 1, {0, 1, 4, 5}), (ClosedForm{4, ClosedFormTag::Thm1}));
  EXPECT_EQ(closed_form_length(5, 1, {1, 3}), (ClosedForm{4, ClosedFormTag::TableI}));
  EXPECT_EQ(closed_form_length(4, 1, {0, 2}), (ClosedForm{3, ClosedFormTag::TableI}));
  // Complement-consecutive S is checked before the table, and gives the same value.
  EXPECT_EQ(closed_form_length(4, 2, {0, 2}), (ClosedForm{4, ClosedFormTag::Thm1}));
  EXPECT_EQ(table_one_lookup(4, 2, {0, 2}), 4);
}

TEST(ClosedForm, SingletonAndHalfLayerBranches) {
  EXPECT_EQ(closed_form_length(3, 1, {1}), (ClosedForm{2, ClosedFormTag::Prop7}));
  EXPECT_EQ(closed_form_length(9, 1, {1, 3}), (ClosedForm{4, ClosedFormTag::Prop3}));
  EXPECT_EQ(closed_form_length(9, 1, {5, 7}), (ClosedForm{4, ClosedFormTag::Prop4}));
  // m - t = 8: delta = min(7-4, 4-3) = 1 and the band 3..5 is present
  EXPECT_EQ(closed_form_length(9, 1, {3, 4, 5, 7}), (ClosedForm{6, ClosedFormTag::Prop5}));
  // delta = 3 here, and the band 1..7 has holes
  EXPECT_FALSE(closed_form_length(9, 1, {1, 3, 4, 5, 7}).has_value());
  EXPECT_FALSE(closed_form_length(9, 1, {1, 4, 7}).has_value());
  EXPECT_FALSE(closed_form_length(4, 3, {2}).has_value());
}

TEST(ClosedForm, HalfHelpers) {
  EXPECT_EQ(floor_half(5), 2);
  EXPECT_EQ(ceil_half(5), 3);
  EXPECT_EQ(floor_half(-3), -2);
  EXPECT_EQ(ceil_half(-3), -1);
  EXPECT_TRUE(complement_consecutive(6, 1, {0, 1, 4, 5}));
  EXPECT_FALSE(complement_consecutive(6, 1, {0, 2, 5, 3}));
  EXPECT_FALSE(complement_consecutive(6, 1, {0, 1, 2, 3, 4, 5}));
  EXPECT_FALSE(complement_consecutive(6, 1, {1, 5}));
}

TEST(TableOne, FixtureRows) {
  struct Cell {
    int m, t;
    SizeProfile S;
    int value;
  };
  const std::vector<Cell> cells = {
      {4, 1, {0, 2}, 3},    {4, 2, {0, 2}, 4},    {4, 1, {1, 3}, 3},    {5, 1, {0, 3}, 3},
      {5, 2, {0, 3}, 4},    {5, 1, {1, 4}, 3},    {5, 1, {1, 3}, 4},    {5, 2, {1, 3}, 4},
      {5, 1, {0, 1, 3}, 4}, {5, 2, {0, 1, 3}, 4}, {5, 1, {1, 3, 4}, 4}, {5, 1, {0, 2, 3}, 4},
      {5, 2, {0, 2, 3}, 4}, {5, 1, {0, 2, 4}, 4}, {5, 1, {1, 2, 4}, 4}};
  for (const auto& c : cells) EXPECT_EQ(table_one_lookup(c.m, c.t, c.S), c.value) << c.m << " " << to_string(c.S);
  EXPECT_FALSE(table_one_lookup(5, 2, {1, 4}).has_value());
  EXPECT_FALSE(table_one_lookup(4, 2, {1, 3}).has_value());
}

TEST(FullReport, Examples) {
  ReportOptions opt;
  opt.field = PrimeField(2);
  const auto crit = full_report(3, 1, {1}, opt);
  EXPECT_EQ(crit.lower_bound, 2);
  EXPECT_EQ(crit.achieved, 2);
  EXPECT_EQ(crit.closed_form, (ClosedForm{2, ClosedFormTag::Prop7}));
  EXPECT_TRUE(crit.tight);
  EXPECT_TRUE(crit.certified);

  const auto zero_two = full_report(4, 1, {0, 2});
  EXPECT_EQ(zero_two.lower_bound, 3);
  EXPECT_EQ(zero_two.achieved, 3);
  EXPECT_EQ(zero_two.closed_form, (ClosedForm{3, ClosedFormTag::TableI}));

  const auto tiny = full_report(2, 1, {0});
  EXPECT_EQ(tiny.lower_bound, 1);
  EXPECT_EQ(tiny.achieved, 1);
  EXPECT_EQ(tiny.closed_form->value, 1);
  EXPECT_TRUE(tiny.tight);
}

TEST(FullReport, FallsBackToSearchThenChain) {
  const auto searched = full_report(6, 1, {0, 1, 4, 5});
  EXPECT_EQ(searched.source, LowerBoundSource::MinMaisSearch);
  EXPECT_EQ(searched.lower_bound, 4);
  EXPECT_TRUE(searched.tight);

  ReportOptions opt;
  opt.caps.search_nodes = 2;
  const auto chained = full_report(6, 1, {0, 1, 4, 5}, opt);
  EXPECT_EQ(chained.source, LowerBoundSource::ChainOnWitness);
  EXPECT_FALSE(chained.certified);
  EXPECT_FALSE(chained.tight);
  EXPECT_FALSE(chained.note.empty());
  EXPECT_LE(chained.lower_bound, chained.achieved);
}

TEST(FullReport, LowerNeverAboveAchieved) {
  for (int m = 1; m <= 5; ++m)
    for (int t = 1; t <= m; ++t)
      for (const auto& S : all_profiles(m, t)) {
        if (count_assignments(build_complete_s(m, t, S)) > 100'000) continue;
        const auto r = full_report(m, t, S);
        EXPECT_LE(r.lower_bound, r.achieved);
        EXPECT_EQ(r.tight, r.certified && r.lower_bound == r.achieved);
        EXPECT_TRUE(is_valid(*r.witness_code, build_complete_s(m, t, S)).valid);
      }
}

// min-MAIS, the partition cost and the closed form agree everywhere at m <= 4
// except one profile, pinned below.
TEST(Tightness, EveryProfileUpToFourMessages) {
  std::vector<std::string> gaps;
  for (int m = 1; m <= 4; ++m)
    for (int t = 1; t <= m; ++t)
      for (const auto& S : all_profiles(m, t)) {
        const auto r = full_report(m, t, S);
        ASSERT_EQ(r.source, LowerBoundSource::MinMaisExhaustive);
        if (r.closed_form) {
          EXPECT_EQ(r.closed_form->value, r.achieved) << m << " " << t << " " << to_string(S);
        }
        if (r.lower_bound != r.achieved)
          gaps.push_back(std::to_string(m) + "/" + std::to_string(t) + "/" + to_string(S));
      }
  EXPECT_EQ(gaps, (std::vector<std::string>{"4/1/" + to_string(SizeProfile{1, 3})}));
}

// Two rows suffice, beating the three of the partition scheme and the listed value.
TEST(Tightness, OneThreeAtFourMessagesIsSolvedByTwoTransmissions) {
  const Instance inst = build_complete_s(4, 1, {1, 3});
  EXPECT_EQ(min_mais_lower_bound(inst).value, 2);
  EXPECT_EQ(brute_min_mais(inst), 2);
  const LinearCode pair(PrimeField(2), 4, {Row{1, 1, 1, 1}, Row{1, 1, 0, 0}});
  EXPECT_TRUE(is_valid(pair, inst).valid);
  EXPECT_TRUE(picod::testing::brute_valid(pair, inst));
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const auto len = min_linear_length_exhaustive(inst, PrimeField(q), 4);
    ASSERT_TRUE(len.has_value());
    EXPECT_EQ(len->length, 2) << q;
    EXPECT_TRUE(picod::testing::brute_valid(len->witness, inst));
  }
  EXPECT_EQ(picod::testing::brute_min_length(inst, 2, 3), 2);
  EXPECT_EQ(optimal_partition(4, 1, {1, 3}).cost(), 3);
  EXPECT_EQ(table_one_lookup(4, 1, {1, 3}), 3);
}

TEST(Tightness, ZeroTwoFourAtFiveMessagesIsSolvedByThreeTransmissions) {
  const Instance inst = build_complete_s(5, 1, {0, 2, 4});
  const auto r = min_mais_lower_bound(inst);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(brute_mais(inst, r.witness), 3);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const auto len = min_linear_length_exhaustive(inst, PrimeField(q), 5);
    ASSERT_TRUE(len.has_value());
    EXPECT_EQ(len->length, 3) << q;
    EXPECT_TRUE(picod::testing::brute_valid(len->witness, inst));
  }
  EXPECT_EQ(optimal_partition(5, 1, {0, 2, 4}).cost(), 4);
  EXPECT_EQ(table_one_lookup(5, 1, {0, 2, 4}), 4);
}

// Every t = 1 profile at m <= 5 where a binary linear code is shorter than the
// partition scheme; whenever it is, the shorter length meets min-MAIS.
TEST(Tightness, BinaryCodesBeatingThePartitionScheme) {
  std::vector<std::string> shorter;
  for (int m = 2; m <= 5; ++m)
    for (const auto& S : all_profiles(m, 1)) {
      const Instance inst = build_complete_s(m, 1, S);
      const int cost = optimal_partition(m, 1, S).cost();
      const auto len = min_linear_length_exhaustive(inst, PrimeField(2), cost - 1);
      if (!len) continue;
      shorter.push_back(std::to_string(m) + "/" + to_string(S));
      if (count_assignments(inst) <= Caps{}.assignments) {
        EXPECT_EQ(min_mais_lower_bound(inst).value, len->length) << m << " " << to_string(S);
      }
    }
  EXPECT_EQ(shorter, (std::vector<std::string>{"4/" + to_string(SizeProfile{1, 3}),
                                                "5/" + to_string(SizeProfile{0, 2, 4})}));
}

// The listed t = 2 value 4 for these two profiles is below a certified lower bound.
TEST(Tightness, TwoDemandTableCellsAreBelowMinMais) {
  for (auto S : {SizeProfile{0, 1, 3}, SizeProfile{0, 2, 3}}) {
    const Instance inst = build_complete_s(5, 2, S);
    const auto lb = min_mais_lower_bound(inst);
    EXPECT_EQ(lb.value, 5) << to_string(S);
    EXPECT_EQ(min_mais_search(inst).value, 5);
    EXPECT_EQ(optimal_partition(5, 2, S).cost(), 5);
    EXPECT_EQ(table_one_lookup(5, 2, S), 4);
    for (std::uint32_t q : {2u, 3u, 5u})
      EXPECT_FALSE(min_linear_length_exhaustive(inst, PrimeField(q), 4).has_value()) << q;
  }
}
