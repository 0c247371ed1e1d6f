#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "symrig/genframe.hpp"
#include "symrig/matroid.hpp"
#include "symrig/rigidity.hpp"

namespace symrig {

struct Hinge {
  RationalExtensor extensor;           // grade d-1
  std::vector<RationalVector> points;  // the d-1 homogeneous points it was built from
};

struct HingeConfiguration {
  std::size_t d = 3;
  std::vector<Hinge> hinges;  // by quotient edge position
};

/// Bars replacing one hinge: C(d+1,2) - 1 of them.
inline int bars_per_hinge(std::size_t d) { return static_cast<int>(binomial(d + 1, 2)) - 1; }

inline void require_free_edge_action(const GainGraph& h) {
  if (h.has_loop_set()) throw UnsupportedError("body-hinge analysis requires a free action on edges (L must be empty)");
}

/// d-1 random homogeneous points per quotient edge, wedged into the hinge extensor.
inline HingeConfiguration random_generic_hinges(const GainGraph& h, const PointRepresentation& rep, GenericSeed seed) {
  require_free_edge_action(h);
  const std::size_t d = rep.d();
  if (d < 2) throw InputError("body-hinge frameworks need d >= 2");
  IntegerSampler rng(seed);
  HingeConfiguration cfg;
  cfg.d = d;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    Hinge hinge;
    for (std::size_t k = 0; k + 1 < d; ++k) hinge.points.push_back(rng.homogeneous_point(d));
    hinge.extensor = wedge(hinge.points, d);
    cfg.hinges.push_back(std::move(hinge));
  }
  return cfg;
}

/// Lifted hinge of the copy of e at g: tau-hat^(d-1)(g) h(e).
inline RationalExtensor lift_hinge(const Hinge& hinge, const PointRepresentation& rep, const GroupElement& g) {
  const auto compound = induced_rep(rep.augmented(g), hinge.extensor.grade);
  return RationalExtensor(hinge.extensor.d, hinge.extensor.grade, compound * std::span<const Rational>(hinge.extensor.coords));
}

struct HingeBars {
  GainGraph multiplied;  // (C(d+1,2)-1) H
  BarConfiguration bars;
};

/// Replaces each hinge by C(d+1,2)-1 bars: random invertible combinations of a basis of the
/// orthogonal complement of *h(e).
inline HingeBars hinge_to_bars(const GainGraph& h, const HingeConfiguration& cfg, GenericSeed seed) {
  if (cfg.hinges.size() != h.num_edges()) throw InputError("hinge configuration size does not match the edge count");
  const std::size_t d = cfg.d;
  const int m = bars_per_hinge(d);
  HingeBars out{multiply_edges(h, m), BarConfiguration{d, {}}};
  IntegerSampler rng(GenericSeed{seed.seed, 1000});
  for (const auto& hinge : cfg.hinges) {
    if (hinge.extensor.is_zero()) throw InputError("zero hinge extensor");
    const auto dual = hodge_star(hinge.extensor);
    if (dual.grade != 2) throw InputError("hinge extensor must have grade d-1");
    RationalMatrix row(1, dual.coords.size());
    for (std::size_t c = 0; c < dual.coords.size(); ++c) row(0, c) = dual.coords[c];
    const auto basis = nullspace(row);
    RationalMatrix mix;
    do {
      mix = RationalMatrix(basis.size(), basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) mix(i, j) = static_cast<long>(rng.next());
    } while (rank(mix) < basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      RationalVector v(dual.coords.size(), Rational(0));
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += mix(i, j) * basis[j][c];
      out.bars.bars.push_back(Bar{RationalExtensor(d, 2, std::move(v)), std::nullopt});
    }
  }
  return out;
}

struct HingeReport {
  RigidityReport numeric;
  std::vector<CombinatorialVerdict> combinatorial;  // empty when the group is not (Z/2Z)^l
  bool agree = true;
};

/// Numeric analysis of the associated body-bar framework plus, for (Z/2Z)^l with diagonal
/// representation, the signed-graphic verdict on the multiplied gain graph.
inline HingeReport analyze_hinge(const GainGraph& h, const PointRepresentation& rep, GenericSeed seed) {
  require_free_edge_action(h);
  const auto cfg = random_generic_hinges(h, rep, seed);
  const auto hb = hinge_to_bars(h, cfg, seed);
  HingeReport r;
  r.numeric = analyze(hb.multiplied, hb.bars, rep);
  if (rep.group().is_elementary_abelian_2() && rep.is_diagonal_sign()) {
    for (const auto& g : rep.group().elements()) {
      r.combinatorial.push_back(combinatorial_verdict(hb.multiplied, rep, g));
      const auto& num = r.numeric.irreps[rep.group().index(g)];
      if (r.combinatorial.back().deficiency != num.flex) r.agree = false;
    }
  }
  return r;
}

/// Special position from the rigidity proof: with a union certificate of the multiplied graph,
/// put e_i ^ e_j on every copy in part (i,j) and a coordinate hinge spanned by the complement
/// of a pair unused by that edge's copies. Returns true iff every hinge admits such a pair,
/// every bar meets its hinge (<b, *h> = 0) and the certified rows are independent.
inline bool special_position_check(const GainGraph& multiplied, const PointRepresentation& rep, const GroupElement& g,
                                   const UnionDecomposition& cert) {
  require_free_edge_action(multiplied);
  const std::size_t d = rep.d();
  LexIndex pairs(d + 1, 2);
  BarConfiguration b;
  b.d = d;
  b.bars.assign(multiplied.num_edges(), Bar{RationalExtensor::zero(d, 2), std::nullopt});
  std::vector<std::size_t> rows;
  std::map<int, std::vector<bool>> used;  // parent edge -> pairs used by its copies
  for (std::size_t p = 0; p < cert.parts.size(); ++p)
    for (auto e : cert.parts[p]) {
      b.bars[e].extensor.coords[p] = 1;
      rows.push_back(e);
      const auto& edge = multiplied.edges()[e];
      const int parent = edge.parent ? edge.parent->edge_id : edge.id;
      auto& u = used[parent];
      u.resize(pairs.size(), false);
      if (u[p]) return false;  // two copies of one hinge in the same part
      u[p] = true;
    }
  for (const auto& [parent, u] : used) {
    std::size_t free_pair = SIZE_MAX;
    for (std::size_t p = 0; p < u.size() && free_pair == SIZE_MAX; ++p)
      if (!u[p]) free_pair = p;
    if (free_pair == SIZE_MAX) return false;
    std::vector<RationalVector> basis;
    for (int idx : pairs.complement(free_pair)) {
      RationalVector e(d + 1, Rational(0));
      e[idx] = 1;
      basis.push_back(std::move(e));
    }
    const auto dual = hodge_star(wedge(basis, d));
    for (std::size_t e = 0; e < multiplied.num_edges(); ++e) {
      const auto& edge = multiplied.edges()[e];
      const int par = edge.parent ? edge.parent->edge_id : edge.id;
      if (par != parent) continue;
      if (sgn(dot<Rational>(b.bars[e].extensor.coords, dual.coords)) != 0) return false;
    }
  }
  std::sort(rows.begin(), rows.end());
  std::vector<GainEdge> kept;
  for (auto e : rows) kept.push_back(multiplied.edges()[e]);
  GainGraph sub(multiplied.group(), multiplied.vertices(), kept);
  BarConfiguration sub_bars{d, {}};
  for (auto e : rows) sub_bars.bars.push_back(b.bars[e]);
  return any_rank(orbit_matrix(sub, sub_bars, rep, g).entries) == rows.size();
}

}  // namespace symrig
