#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace symrig;
namespace t = symrig::testing;

namespace {

std::vector<std::size_t> all_edges(const SignedGraph& sg) {
  std::vector<std::size_t> v(sg.edges.size());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

SignedGraph make(std::size_t n, std::vector<SignedEdge> edges) { return SignedGraph{n, std::move(edges)}; }

}  // namespace

TEST(SignedIndependence, SpanningTreeIsIndependent) {
  const auto sg = make(3, {{0, 1, 1}, {1, 2, 1}});
  EXPECT_TRUE(is_independent_signed(sg, all_edges(sg)).independent);
}

TEST(SignedIndependence, PositiveCycleIsDependent) {
  const auto sg = make(3, {{0, 1, 1}, {1, 2, -1}, {2, 0, -1}});
  const auto r = is_independent_signed(sg, all_edges(sg));
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(r.kind, WitnessKind::positive_cycle);
  EXPECT_EQ(r.witness.size(), 3u);
}

TEST(SignedIndependence, SingleNegativeCycleIsIndependent) {
  const auto sg = make(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, -1}});
  EXPECT_TRUE(is_independent_signed(sg, all_edges(sg)).independent);
}

TEST(SignedIndependence, NegativeLoopIsIndependentPositiveLoopIsNot) {
  EXPECT_TRUE(is_independent_signed(make(1, {{0, 0, -1}}), std::vector<std::size_t>{0}).independent);
  EXPECT_FALSE(is_independent_signed(make(1, {{0, 0, 1}}), std::vector<std::size_t>{0}).independent);
}

TEST(SignedIndependence, TwoNegativeCyclesInOneComponentAreDependent) {
  const auto sg = make(2, {{0, 0, -1}, {1, 1, -1}, {0, 1, 1}});
  const auto r = is_independent_signed(sg, all_edges(sg));
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(r.kind, WitnessKind::two_cycles);
  EXPECT_EQ(r.witness.size(), 3u);
}

TEST(SignedIndependence, MatchesIncidenceRowIndependence) {
  IntegerSampler rng(GenericSeed{101, 1});
  for (int trial = 0; trial < 500; ++trial) {
    const auto sg = t::random_signed_graph(rng, 5, 12);
    const auto all = all_edges(sg);
    const auto r = is_independent_signed(sg, all);
    ASSERT_EQ(r.independent, t::incidence_independent(sg, all)) << "trial " << trial;
    if (!r.independent) {
      // the witness is a circuit: dependent, and every proper subset independent
      ASSERT_FALSE(t::incidence_independent(sg, r.witness));
      for (std::size_t skip = 0; skip < r.witness.size(); ++skip) {
        auto sub = r.witness;
        sub.erase(sub.begin() + static_cast<long>(skip));
        EXPECT_TRUE(t::incidence_independent(sg, sub));
      }
    }
  }
}

TEST(SignedRank, MatchesIncidenceRank) {
  IntegerSampler rng(GenericSeed{102, 1});
  for (int trial = 0; trial < 300; ++trial) {
    const auto sg = t::random_signed_graph(rng, 5, 10);
    const auto all = all_edges(sg);
    EXPECT_EQ(signed_rank(sg, all), t::incidence_rank(sg, all));
    EXPECT_EQ(rank(incidence_matrix(sg)), t::incidence_rank(sg, all));
  }
}

TEST(SignedRank, BruteForceLargestIndependentSubset) {
  IntegerSampler rng(GenericSeed{103, 1});
  for (int trial = 0; trial < 100; ++trial) {
    const auto sg = t::random_signed_graph(rng, 4, 8);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << sg.edges.size()); ++mask) {
      const auto s = t::mask_to_subset(mask, sg.edges.size());
      if (is_independent_signed(sg, s).independent) best = std::max(best, s.size());
    }
    EXPECT_EQ(signed_rank(sg, all_edges(sg)), best);
  }
}

TEST(NegativeCycle, DetectsBalance) {
  EXPECT_FALSE(has_negative_cycle(make(3, {{0, 1, -1}, {1, 2, -1}, {2, 0, 1}}), std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(has_negative_cycle(make(3, {{0, 1, -1}, {1, 2, 1}, {2, 0, 1}}), std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(has_negative_cycle(make(1, {{0, 0, -1}}), std::vector<std::size_t>{0}));
}

TEST(MatroidUnion, MatchesMinFormulaAndExhaustiveSearch) {
  IntegerSampler rng(GenericSeed{104, 1});
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = static_cast<std::size_t>(rng.next_in(1, 3));
    const auto nv = static_cast<std::size_t>(rng.next_in(1, 4));
    const auto ne = static_cast<std::size_t>(rng.next_in(0, 10));
    // same underlying graph, independent labelings
    std::vector<SignedGraph> sgs(k, SignedGraph{nv, {}});
    for (std::size_t e = 0; e < ne; ++e) {
      const auto a = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      const auto b = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      for (auto& sg : sgs) sg.edges.push_back(SignedEdge{a, b, rng.next_in(0, 1) ? 1 : -1});
    }
    std::vector<std::size_t> all(ne);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto res = matroid_union_rank(sgs, all);
    EXPECT_EQ(res.rank, t::nash_williams_union_rank(sgs, ne)) << "trial " << trial;
    EXPECT_EQ(res.rank, t::exhaustive_union_rank(sgs, ne)) << "trial " << trial;
    EXPECT_EQ(res.decomposition.size(), res.rank);
    EXPECT_TRUE(validate_decomposition(sgs, res.decomposition));
    for (std::size_t i = 0; i < k; ++i) EXPECT_TRUE(t::incidence_independent(sgs[i], res.decomposition.parts[i]));
  }
}

TEST(MatroidUnion, DeterministicCertificate) {
  const auto sgs = induced_signed_graphs(t::stewart_quotient(), half_turn_rep(), AbelianGroup({2}).element(0));
  const std::vector<std::size_t> all{0, 1, 2, 3};
  const auto a = matroid_union_rank(sgs, all), b = matroid_union_rank(sgs, all);
  EXPECT_EQ(a.decomposition.parts, b.decomposition.parts);
}

TEST(ValidateDecomposition, RejectsOverlapAndDependence) {
  const auto sg = make(1, {{0, 0, -1}, {0, 0, -1}});
  const std::vector<SignedGraph> sgs{sg, sg};
  EXPECT_TRUE(validate_decomposition(sgs, UnionDecomposition{{{0}, {1}}}));
  EXPECT_FALSE(validate_decomposition(sgs, UnionDecomposition{{{0}, {0}}}));
  EXPECT_FALSE(validate_decomposition(sgs, UnionDecomposition{{{0, 1}, {}}}));
}

TEST(CountingCondition, AgreesWithUnionRankOnSmallInstances) {
  // |E| = union rank iff every F satisfies the count
  IntegerSampler rng(GenericSeed{105, 1});
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = static_cast<std::size_t>(rng.next_in(1, 3));
    const auto nv = static_cast<std::size_t>(rng.next_in(1, 3));
    const auto ne = static_cast<std::size_t>(rng.next_in(1, 8));
    std::vector<SignedGraph> sgs(k, SignedGraph{nv, {}});
    for (std::size_t e = 0; e < ne; ++e) {
      const auto a = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      const auto b = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      for (auto& sg : sgs) sg.edges.push_back(SignedEdge{a, b, rng.next_in(0, 1) ? 1 : -1});
    }
    std::vector<std::size_t> all(ne);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const bool independent = matroid_union_rank(sgs, all).rank == ne;
    EXPECT_EQ(independent, !check_counting_condition(sgs, all).has_value()) << "trial " << trial;
  }
}

TEST(CountingCondition, RefusesLargeInputs) {
  SignedGraph sg{1, std::vector<SignedEdge>(kCountingOracleLimit + 1, SignedEdge{0, 0, -1})};
  std::vector<std::size_t> all(sg.edges.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  EXPECT_THROW(check_counting_condition(std::vector<SignedGraph>{sg}, all), InputError);
}

TEST(Verdict, ReflectionStewart) {
  const auto h = t::stewart_quotient();
  const auto rep = reflection_rep();
  const auto v0 = combinatorial_verdict(h, rep, rep.group().element(0));
  EXPECT_TRUE(v0.rigid);
  EXPECT_EQ(v0.target, 3);
  EXPECT_EQ(v0.edge_count, 4u);  // one more edge than the target
  const auto v1 = combinatorial_verdict(h, rep, rep.group().element(1));
  EXPECT_FALSE(v1.rigid);
  EXPECT_EQ(v1.rank, 2u);
  EXPECT_EQ(v1.target, 3);
  EXPECT_EQ(v1.deficiency, 1);
  EXPECT_EQ(v1.edge_count, 2u);
}

TEST(Verdict, ReflectionStewartCountingViolationInTrivialIrrep) {
  const auto h = t::stewart_quotient();
  const auto rep = reflection_rep();
  const auto v0 = combinatorial_verdict(h, rep, rep.group().element(0));
  std::vector<std::size_t> all{0, 1, 2, 3};
  const auto viol = check_counting_condition(v0.signed_graphs, all);
  ASSERT_TRUE(viol.has_value());
  EXPECT_EQ(viol->size, 4u);
  EXPECT_EQ(viol->bound, 3);
}

TEST(Verdict, HalfTurnStewartCertificates) {
  const auto h = t::stewart_quotient();
  const auto rep = half_turn_rep();
  LexIndex pairs(4, 2);
  const auto v0 = combinatorial_verdict(h, rep, rep.group().element(0));
  EXPECT_TRUE(v0.rigid);
  EXPECT_EQ(v0.rank, 4u);
  std::set<std::string> used0;
  for (std::size_t p = 0; p < 6; ++p) {
    EXPECT_LE(v0.certificate.parts[p].size(), 1u);
    if (!v0.certificate.parts[p].empty()) used0.insert(pairs.label(p));
  }
  EXPECT_EQ(used0, (std::set<std::string>{"(1,2)", "(1,3)", "(2,4)", "(3,4)"}));

  const auto v1 = combinatorial_verdict(h, rep, rep.group().element(1));
  EXPECT_TRUE(v1.rigid);
  EXPECT_EQ(v1.rank, 2u);
  std::set<std::string> used1;
  for (std::size_t p = 0; p < 6; ++p)
    if (!v1.certificate.parts[p].empty()) used1.insert(pairs.label(p));
  for (const auto& l : used1) EXPECT_TRUE(l == "(1,4)" || l == "(2,3)") << l;
}

TEST(Verdict, NegativeLabelingsOfTheHalfTurn) {
  const auto h = t::stewart_quotient();
  const auto rep = half_turn_rep();
  const auto sgs0 = induced_signed_graphs(h, rep, rep.group().element(0));
  const auto sgs1 = induced_signed_graphs(h, rep, rep.group().element(1));
  const int neg0[] = {1, 1, 0, 0, 1, 1};  // (1,2),(1,3),(2,4),(3,4)
  const int neg1[] = {0, 0, 1, 1, 0, 0};  // (1,4),(2,3)
  for (std::size_t p = 0; p < 6; ++p) {
    EXPECT_EQ(sgs0[p].edges[0].sign == -1, neg0[p] == 1) << p;
    EXPECT_EQ(sgs1[p].edges[0].sign == -1, neg1[p] == 1) << p;
  }
}

TEST(Verdict, RequiresElementaryAbelianTwoGroup) {
  AbelianGroup z4({4});
  RationalMatrix r(2, 2);
  r(0, 1) = -1;
  r(1, 0) = 1;
  const PointRepresentation rep(z4, 2, {r});
  const GainGraph h(z4, {"u", "v"}, {GainEdge{0, 0, 1, z4.element(1), false, std::nullopt}});
  EXPECT_THROW(combinatorial_verdict(h, rep, z4.element(0)), UnsupportedError);
}
