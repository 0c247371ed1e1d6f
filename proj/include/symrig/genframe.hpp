#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symrig/gaingraph.hpp"
#include "symrig/rigidity.hpp"

namespace symrig {

/// Recorded in output metadata so configurations can be regenerated.
inline constexpr const char* kGeneratorName = "mt19937_64";

struct GenericSeed {
  std::uint64_t seed = 0;
  std::int64_t bound = 1'000'000;  // coordinates drawn from [-bound, bound]
};

/// Deterministic integer sampler. Rejection sampling on mt19937_64 (whose output sequence
/// is fixed by the standard) keeps draws identical across standard libraries.
class IntegerSampler {
 public:
  explicit IntegerSampler(GenericSeed s) : engine_(s.seed), bound_(s.bound) {}

  std::int64_t next() { return next_in(-bound_, bound_); }

  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// (x_1, ..., x_d, 1)
  RationalVector homogeneous_point(std::size_t d) {
    RationalVector p;
    for (std::size_t i = 0; i < d; ++i) p.emplace_back(static_cast<long>(next()));
    p.emplace_back(1);
    return p;
  }

 private:
  std::mt19937_64 engine_;
  std::int64_t bound_;
};

/// Random symmetric-generic bars on the quotient: p ^ q for ordinary edges, p ^ tau-hat(psi) p
/// for the loops of L.
inline BarConfiguration random_generic_bars(const GainGraph& h, const PointRepresentation& rep, GenericSeed seed) {
  IntegerSampler rng(seed);
  BarConfiguration b;
  b.d = rep.d();
  for (const auto& e : h.edges()) {
    RationalVector p = rng.homogeneous_point(rep.d());
    RationalVector q = e.in_loop_set ? rep.augmented(e.gain) * std::span<const Rational>(p) : rng.homogeneous_point(rep.d());
    Bar bar{wedge(p, q, rep.d()), std::make_pair(p, q)};
    b.bars.push_back(std::move(bar));
  }
  return b;
}

struct LiftedFramework {
  CoveredGraph cover;
  BarConfiguration bars;  // indexed by lifted edge
};

/// Lifts quotient bars to the covering framework: the copy of e at g carries
/// tau-hat^(2)(g) b(e) (points mapped by tau-hat(g)), oriented (u, g) -> (v, g + psi_e).
inline LiftedFramework lift_bars(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep) {
  if (b.bars.size() != h.num_edges()) throw InputError("missing bar: configuration size does not match the edge count");
  LiftedFramework out;
  out.cover = lift_cover(h);
  out.bars.d = b.d;
  const auto& group = h.group();
  for (const auto& [qe, gi] : out.cover.edge_cover) {
    const auto g = group.element(gi);
    const auto& src = b.bars[qe];
    Bar bar;
    bar.extensor = RationalExtensor(b.d, 2, rep.compound2(g) * std::span<const Rational>(src.extensor.coords));
    if (src.points) {
      const auto& a = rep.augmented(g);
      bar.points = std::make_pair(a * std::span<const Rational>(src.points->first), a * std::span<const Rational>(src.points->second));
    }
    out.bars.bars.push_back(std::move(bar));
  }
  return out;
}

inline RationalMatrix rigidity_matrix(const LiftedFramework& f) {
  return rigidity_matrix(f.cover.graph.num_vertices, f.cover.graph.edges, f.bars);
}

struct BlockRankCheck {
  std::size_t lifted_rank = 0;
  std::vector<std::size_t> irrep_ranks;
  std::size_t irrep_sum = 0;
  bool consistent = false;
};

/// Compares rank R(G, b) of the lifted framework with the sum of the orbit-matrix ranks.
inline BlockRankCheck crosscheck_block_ranks(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep) {
  BlockRankCheck c;
  c.lifted_rank = rank(rigidity_matrix(lift_bars(h, b, rep)));
  for (const auto& g : rep.group().elements()) {
    c.irrep_ranks.push_back(any_rank(orbit_matrix(h, b, rep, g).entries));
    c.irrep_sum += c.irrep_ranks.back();
  }
  c.consistent = c.lifted_rank == c.irrep_sum;
  return c;
}

}  // namespace symrig
