// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "support.hpp"
#include "symrig/pipeline.hpp"

using namespace symrig;
namespace t = symrig::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << what;
    pass = pass && ok;
  }
};

bool run(int number, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    std::ostringstream s;
    s << "took " << secs << " s, budget " << budget_seconds << " s";
    o.require(false, s.str());
  }
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", number, title, secs, o.pass ? "" : ": ",
              o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

std::set<std::string> used_labels(const CombinatorialVerdict& v) {
  LexIndex pairs(4, 2);
  std::set<std::string> out;
  for (std::size_t p = 0; p < v.certificate.parts.size(); ++p)
    if (!v.certificate.parts[p].empty()) out.insert(pairs.label(p));
  return out;
}

bool row_is_zero(const AnyMatrix& m, std::size_t row) {
  return std::visit(
      [&](const auto& x) {
        for (std::size_t c = 0; c < x.cols(); ++c)
          if (x(row, c) != std::remove_cvref_t<decltype(x(row, c))>(0)) return false;
        return true;
      },
      m);
}

// Shared ensemble for criteria 4 and 5.
struct Instance {
  PointRepresentation rep;
  GainGraph graph;
};

std::vector<Instance> rank_ensemble() {
  IntegerSampler rng(GenericSeed{4004, 1});
  std::vector<Instance> out;
  for (int i = 0; i < 100; ++i) {
    const AbelianGroup group = i % 2 ? AbelianGroup({2, 2}) : AbelianGroup({2});
    auto rep = random_diagonal_rep(group, 3, rng);
    auto graph = random_gain_graph(group, InstanceBounds{4, 10, true, 1}, rng);
    out.push_back(Instance{std::move(rep), std::move(graph)});
  }
  return out;
}

void criterion1(Outcome& o) {
  const auto p = load_problem(t::fixture("cs_stewart.json"));
  const auto a = run_analysis(p, 42);
  o.require(!a.numeric.rigid, "reported rigid");
  const auto& i1 = a.numeric.irreps.at(1);
  o.require(i1.rank == 2 && i1.trivial == 3 && i1.flex == 1, "irrep 1 is not rank 2 / trivial 3 / flex 1");
  o.require(a.numeric.irreps.at(0).flex == 0, "irrep 0 has a flex");
  o.require(a.combinatorial.size() == 2, "no combinatorial verdicts");
  const auto& v0 = a.combinatorial.at(0);
  o.require(v0.edge_count == 4 && v0.target == 3 && std::string(count_relation(v0.edge_count, v0.target)) == "over",
            "irrep 0 count is not 4 > 3");
  o.require(!a.combinatorial.at(1).rigid && a.combinatorial.at(1).deficiency == 1, "irrep 1 combinatorial deficiency is not 1");
  o.require(a.consistent, "numeric and combinatorial verdicts disagree");
}

void criterion2(Outcome& o) {
  const auto p = load_problem(t::fixture("c2_stewart.json"));
  const auto a = run_analysis(p, 42);
  o.require(a.numeric.rigid, "not rigid");
  for (const auto& r : a.numeric.irreps) o.require(r.flex == 0, "nonzero flex count");
  const auto& v0 = a.combinatorial.at(0);
  const auto& v1 = a.combinatorial.at(1);
  o.require(v0.rigid && v0.certificate.size() == 4 && validate_decomposition(v0.signed_graphs, v0.certificate),
            "irrep 0 certificate is not a valid 4-loop decomposition");
  o.require(used_labels(v0) == std::set<std::string>{"(1,2)", "(1,3)", "(2,4)", "(3,4)"}, "irrep 0 uses the wrong labelings");
  o.require(v1.rigid && v1.certificate.size() == 2 && validate_decomposition(v1.signed_graphs, v1.certificate),
            "irrep 1 certificate is not a valid 2-loop decomposition");
  for (const auto& l : used_labels(v1)) o.require(l == "(1,4)" || l == "(2,3)", "irrep 1 uses " + l);
}

void criterion3(Outcome& o) {
  IntegerSampler rng(GenericSeed{3003, 1});
  int instances = 0, zero_rows = 0;
  while (instances < 200) {
    const AbelianGroup group = instances % 2 ? AbelianGroup({2, 2}) : AbelianGroup({2});
    const auto rep = random_diagonal_rep(group, 3, rng);
    const auto h = random_gain_graph(group, InstanceBounds{4, 10, true, 1}, rng);
    if (!h.has_loop_set()) continue;
    ++instances;
    for (std::uint64_t seed : {sample_seed(42, 0), sample_seed(42, 1)}) {
      const auto b = random_generic_bars(h, rep, GenericSeed{seed + static_cast<std::uint64_t>(instances)});
      for (const auto& g : group.elements()) {
        const auto om = orbit_matrix(h, b, rep, g);
        for (std::size_t i = 0; i < h.num_edges(); ++i) {
          const auto& e = h.edges()[i];
          if (!e.is_loop()) continue;
          const bool zero_loop = e.in_loop_set && irrep_value(group, g, e.gain).sign() == -1;
          const bool zero = row_is_zero(om.entries, i);
          o.require(zero == zero_loop, "loop " + std::to_string(e.id) + " row zero=" + std::to_string(zero) +
                                           " in instance " + std::to_string(instances));
          zero_rows += zero;
        }
      }
    }
  }
  o.require(zero_rows > 0, "no zero loops sampled");
}

void criterion4(Outcome& o, const std::vector<Instance>& ensemble) {
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& [rep, h] = ensemble[i];
    const auto c = crosscheck_block_ranks(h, random_generic_bars(h, rep, GenericSeed{42}), rep);
    o.require(c.consistent, "instance " + std::to_string(i) + ": lifted rank " + std::to_string(c.lifted_rank) +
                                " vs sum " + std::to_string(c.irrep_sum));
  }
}

void criterion5(Outcome& o, const std::vector<Instance>& ensemble) {
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& [rep, h] = ensemble[i];
    Problem p;
    p.rep = rep;
    p.graph = h;
    const auto a = run_analysis(p, 42);
    o.require(a.seeds_agree, "instance " + std::to_string(i) + ": generic samples disagree");
    for (const auto& g : rep.group().elements()) {
      const auto k = rep.group().index(g);
      o.require(a.combinatorial.at(k).rank == a.numeric.irreps.at(k).rank,
                "instance " + std::to_string(i) + " irrep " + g.str() + ": union rank " +
                    std::to_string(a.combinatorial.at(k).rank) + " vs orbit rank " + std::to_string(a.numeric.irreps.at(k).rank));
    }
  }
}

void criterion6(Outcome& o) {
  IntegerSampler rng(GenericSeed{6006, 1});
  for (int trial = 0; trial < 500; ++trial) {
    const auto sg = t::random_signed_graph(rng, 5, 12);
    std::vector<std::size_t> all(sg.edges.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    o.require(is_independent_signed(sg, all).independent == t::incidence_independent(sg, all),
              "independence mismatch on signed graph " + std::to_string(trial));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = static_cast<std::size_t>(rng.next_in(1, 3));
    const auto nv = static_cast<std::size_t>(rng.next_in(1, 4));
    const auto ne = static_cast<std::size_t>(rng.next_in(0, 10));
    std::vector<SignedGraph> sgs(k, SignedGraph{nv, {}});
    for (std::size_t e = 0; e < ne; ++e) {
      const auto a = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      const auto b = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
      for (auto& sg : sgs) sg.edges.push_back(SignedEdge{a, b, rng.next_in(0, 1) ? 1 : -1});
    }
    std::vector<std::size_t> all(ne);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto res = matroid_union_rank(sgs, all);
    o.require(res.rank == t::exhaustive_union_rank(sgs, ne) && validate_decomposition(sgs, res.decomposition),
              "union rank mismatch on instance " + std::to_string(trial));
  }
}

void criterion7(Outcome& o) {
  IntegerSampler rng(GenericSeed{7007, 1});
  const AbelianGroup trivial(std::vector<int>{});
  const auto rep = PointRepresentation::trivial(3);
  int rigid = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.next_in(1, 4));
    const auto m = static_cast<std::size_t>(rng.next_in(0, 14));
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    std::vector<GainEdge> es;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < m && n > 1; ++i) {
      const auto a = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(n) - 1));
      auto b = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(n) - 2));
      if (b >= a) ++b;
      es.push_back(GainEdge{static_cast<int>(i), a, b, trivial.identity(), false, std::nullopt});
      edges.emplace_back(a, b);
    }
    const GainGraph h(trivial, names, es);
    std::size_t best = 0;
    for (std::size_t k = 0; k < kGenericSamples; ++k) {
      const auto b = random_generic_bars(h, rep, GenericSeed{sample_seed(42, k) + static_cast<std::uint64_t>(trial)});
      best = std::max(best, rank(rigidity_matrix(n, edges, b)));
    }
    const bool full = best == 6 * (n - 1);
    const bool packs = t::packs_spanning_trees(n, edges, 6);
    o.require(full == packs, "instance " + std::to_string(trial) + ": rank " + std::to_string(best) + ", packing " +
                                 std::to_string(packs));
    rigid += full;
  }
  o.require(rigid > 0, "no rigid instances sampled");
}

void criterion8(Outcome& o) {
  const auto two = load_problem(t::fixture("trivial_2body_hinge.json"));
  const auto hb = hinge_to_bars(two.graph, *two.hinges, GenericSeed{42});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : hb.multiplied.edges()) edges.emplace_back(e.tail, e.head);
  o.require(rank(rigidity_matrix(2, edges, hb.bars)) == 5, "two bodies on one hinge do not have rank 5");

  for (const char* name : {"cs_hinge_3loops.json", "c2_hinge_3loops.json"}) {
    const auto p = load_problem(t::fixture(name));
    const auto a = run_analysis(p, 42);
    o.require(a.consistent && a.numeric.rigid, std::string(name) + ": verdicts disagree or not rigid");
    IntegerSampler rng(GenericSeed{8008, 1});
    for (int trial = 0; trial < 50; ++trial) {
      Problem q;
      q.model = Model::body_hinge;
      q.rep = p.rep;
      q.graph = random_gain_graph(p.rep.group(), InstanceBounds{3, 5, false, 1}, rng);
      const auto r = run_analysis(q, 42 + static_cast<std::uint64_t>(trial));
      o.require(r.consistent, std::string(name) + " group, random quotient " + std::to_string(trial) + ": verdicts disagree");
    }
  }
}

void criterion9(Outcome& o) {
  const auto star = hodge_star(RationalExtensor(3, 2, RationalVector{12, 13, 14, 23, 24, 34}));
  o.require(star.coords == RationalVector{34, -24, 23, 14, -13, 12}, "Hodge formula");
  IntegerSampler rng(GenericSeed{9009, 50});
  for (int trial = 0; trial < 50; ++trial) {
    RationalVector p, q;
    for (int i = 0; i < 6; ++i) p.emplace_back(static_cast<long>(rng.next()));
    for (int i = 0; i < 6; ++i) q.emplace_back(static_cast<long>(rng.next()));
    const Rational expected = p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[3] * q[2] - p[4] * q[1] + p[5] * q[0];
    o.require(cap_product(RationalExtensor(3, 2, p), RationalExtensor(3, 2, q)) == expected, "cap expansion");
  }
  o.require(induced_rep(diagonal({1, 1, -1, 1}), 2) == diagonal({1, -1, 1, -1, 1, -1}), "mirror induced matrix");
  o.require(induced_rep(diagonal({1, -1, -1, 1}), 2) == diagonal({-1, -1, 1, 1, -1, -1}), "half-turn induced matrix");
}

}  // namespace

int main() {
  const auto ensemble = rank_ensemble();
  bool ok = true;
  ok &= run(1, "reflection Stewart platform is flexible with one flex in irrep 1", 1.0, criterion1);
  ok &= run(2, "half-turn Stewart platform is isostatic with certified decompositions", 1.0, criterion2);
  ok &= run(3, "zero loops give zero rows, other loops nonzero rows (200 instances)", 0, criterion3);
  ok &= run(4, "lifted rank equals the sum of orbit ranks (100 instances)", 60.0, [&](Outcome& o) { criterion4(o, ensemble); });
  ok &= run(5, "union rank equals orbit rank per irrep (100 instances)", 0, [&](Outcome& o) { criterion5(o, ensemble); });
  ok &= run(6, "signed independence and union rank match brute-force oracles", 0, criterion6);
  ok &= run(7, "trivial group: full generic rank iff six spanning trees (200 instances)", 0, criterion7);
  ok &= run(8, "body-hinge: two-body rank 5 and verdict agreement on random quotients", 120.0, criterion8);
  ok &= run(9, "exterior algebra displayed formulas", 0, criterion9);
  return ok ? 0 : 1;
}
