#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symrig/genframe.hpp"

namespace symrig {

struct InstanceBounds {
  std::size_t max_vertices = 4;
  std::size_t max_edges = 10;
  bool allow_loop_set = true;  // loops of order-2 gain may be placed in L
  std::size_t min_edges = 1;
};

/// Random gain graph: uniform vertex and edge counts, uniform endpoints and gains. Loops never
/// get the identity gain; order-2 loops go into L with probability 1/2 when allowed.
inline GainGraph random_gain_graph(const AbelianGroup& group, const InstanceBounds& bounds, IntegerSampler& rng) {
  const auto nv = static_cast<std::size_t>(rng.next_in(1, static_cast<std::int64_t>(bounds.max_vertices)));
  const auto ne = static_cast<std::size_t>(
      rng.next_in(static_cast<std::int64_t>(bounds.min_edges), static_cast<std::int64_t>(bounds.max_edges)));
  std::vector<std::string> names;
  for (std::size_t v = 0; v < nv; ++v) names.push_back("v" + std::to_string(v));
  std::vector<GainEdge> edges;
  const auto n = static_cast<std::int64_t>(group.order());
  for (std::size_t i = 0; i < ne; ++i) {
    GainEdge e;
    e.id = static_cast<int>(i);
    e.tail = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
    e.head = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(nv) - 1));
    if (e.is_loop() && n == 1) {
      if (nv == 1) continue;  // trivial group admits no loops
      e.head = (e.tail + 1) % nv;
    }
    std::size_t gi = static_cast<std::size_t>(rng.next_in(0, n - 1));
    if (e.is_loop() && gi == 0) gi = static_cast<std::size_t>(rng.next_in(1, n - 1));
    e.gain = group.element(gi);
    if (e.is_loop() && bounds.allow_loop_set && group.element_order(e.gain) == 2) e.in_loop_set = rng.next_in(0, 1) == 1;
    edges.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].id = static_cast<int>(i);
  return GainGraph(group, std::move(names), std::move(edges));
}

/// Random faithful representation of (Z/2Z)^l by diagonal sign matrices.
inline PointRepresentation random_diagonal_rep(const AbelianGroup& group, std::size_t d, IntegerSampler& rng) {
  if (!group.is_elementary_abelian_2()) throw UnsupportedError("diagonal sign representations need (Z/2Z)^l");
  if (group.rank() > d) throw UnsupportedError("(Z/2Z)^l has no faithful diagonal representation when l > d");
  while (true) {
    std::vector<RationalMatrix> gens;
    for (std::size_t t = 0; t < group.rank(); ++t) {
      RationalMatrix m(d, d);
      for (std::size_t i = 0; i < d; ++i) m(i, i) = rng.next_in(0, 1) ? 1 : -1;
      gens.push_back(std::move(m));
    }
    try {
      return PointRepresentation(group, d, gens);
    } catch (const InputError&) {
      // not faithful; draw again
    }
  }
}

inline RationalMatrix diagonal(const std::vector<int>& entries) {
  RationalMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

/// Reflection in the x-y plane.
inline PointRepresentation reflection_rep() { return PointRepresentation(AbelianGroup({2}), 3, {diagonal({1, 1, -1})}); }

/// Half-turn about the x axis.
inline PointRepresentation half_turn_rep() { return PointRepresentation(AbelianGroup({2}), 3, {diagonal({1, -1, -1})}); }

/// Reflection in the x-y plane and half-turn about the z axis.
inline PointRepresentation klein_rep() {
  return PointRepresentation(AbelianGroup({2, 2}), 3, {diagonal({1, 1, -1}), diagonal({-1, -1, 1})});
}

}  // namespace symrig
