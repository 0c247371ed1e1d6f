#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symrig/gaingraph.hpp"
#include "symrig/linalg.hpp"
#include "symrig/symmetry.hpp"

namespace symrig {

struct SignedEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  int sign = 1;  // +1 or -1
  bool is_loop() const { return tail == head; }
};

/// A +-1 labeled multigraph; the ground set of its signed-graphic matroid is the edge list.
struct SignedGraph {
  std::size_t num_vertices = 0;
  std::vector<SignedEdge> edges;
};

enum class WitnessKind { none, positive_cycle, two_cycles };

struct IndependenceResult {
  bool independent = true;
  WitnessKind kind = WitnessKind::none;
  std::vector<std::size_t> witness;  // a circuit inside the tested set when dependent
};

namespace detail {

// Union-find where each vertex carries a potential in {-1, +1} relative to its root, so the
// sign of the cycle closed by a new edge is sign * pot(u) * pot(v).
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), potential_(n, 1), has_cycle_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t v) {
    int pot = 1;
    std::size_t r = v;
    while (parent_[r] != r) {
      pot *= potential_[r];
      r = parent_[r];
    }
    // path compression keeps potentials relative to the root
    std::size_t x = v;
    int px = pot;
    while (parent_[x] != x) {
      const std::size_t next = parent_[x];
      const int pn = px * potential_[x];
      parent_[x] = r;
      potential_[x] = px;
      x = next;
      px = pn;
    }
    return {r, pot};
  }

  /// Adds an edge; returns false if the component would leave the matroid
  /// (second cycle or a positive cycle). kind receives the reason.
  bool add(const SignedEdge& e, WitnessKind& kind) {
    auto [ru, pu] = find(e.tail);
    auto [rv, pv] = find(e.head);
    if (ru == rv) {
      if (has_cycle_[ru]) {
        kind = WitnessKind::two_cycles;
        return false;
      }
      const int cycle_sign = e.is_loop() ? e.sign : e.sign * pu * pv;
      if (cycle_sign > 0) {
        kind = WitnessKind::positive_cycle;
        return false;
      }
      has_cycle_[ru] = true;
      return true;
    }
    if (has_cycle_[ru] && has_cycle_[rv]) {
      kind = WitnessKind::two_cycles;
      return false;
    }
    // attach rv under ru so that the new edge is balanced: pot(v) = sign * pot(u)
    parent_[rv] = ru;
    potential_[rv] = e.sign * pu * pv;
    has_cycle_[ru] = has_cycle_[ru] || has_cycle_[rv];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> potential_;
  std::vector<bool> has_cycle_;
};

inline bool independent_quick(const SignedGraph& sg, std::span<const std::size_t> subset, WitnessKind* kind = nullptr,
                              std::size_t* failed_at = nullptr) {
  SignedUnionFind uf(sg.num_vertices);
  WitnessKind k = WitnessKind::none;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (!uf.add(sg.edges.at(subset[i]), k)) {
      if (kind) *kind = k;
      if (failed_at) *failed_at = i;
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Independence in the signed-graphic matroid: every component of (V(F), F) has at most
/// one cycle, and that cycle is negative. On failure the witness is a circuit of F.
inline IndependenceResult is_independent_signed(const SignedGraph& sg, std::span<const std::size_t> subset) {
  IndependenceResult res;
  std::size_t failed_at = 0;
  if (detail::independent_quick(sg, subset, &res.kind, &failed_at)) return res;
  res.independent = false;
  // shrink the failing prefix to a minimal dependent set
  std::vector<std::size_t> circuit(subset.begin(), subset.begin() + static_cast<std::ptrdiff_t>(failed_at) + 1);
  for (std::size_t i = circuit.size(); i-- > 0;) {
    std::vector<std::size_t> trial = circuit;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!detail::independent_quick(sg, trial)) circuit = std::move(trial);
  }
  // a single cycle has as many vertices as edges
  std::vector<std::size_t> verts;
  for (auto e : circuit) {
    verts.push_back(sg.edges[e].tail);
    verts.push_back(sg.edges[e].head);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  res.kind = verts.size() == circuit.size() ? WitnessKind::positive_cycle : WitnessKind::two_cycles;
  res.witness = std::move(circuit);
  return res;
}

/// Connected components of (V(F), F), as lists of edge positions.
inline std::vector<std::vector<std::size_t>> edge_components(const SignedGraph& sg, std::span<const std::size_t> subset) {
  std::vector<std::size_t> parent(sg.num_vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto e : subset) parent[find(sg.edges[e].tail)] = find(sg.edges[e].head);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(sg.num_vertices, SIZE_MAX);
  for (auto e : subset) {
    const std::size_t r = find(sg.edges[e].tail);
    if (slot[r] == SIZE_MAX) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(e);
  }
  return comps;
}

/// True iff F contains a negative cycle (the alpha indicator).
inline bool has_negative_cycle(const SignedGraph& sg, std::span<const std::size_t> subset) {
  // F is balanced iff its vertices admit a +-1 switching making every edge positive
  std::vector<int> pot(sg.num_vertices, 0);
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(sg.num_vertices);
  for (auto e : subset) {
    const auto& ed = sg.edges[e];
    if (ed.is_loop()) {
      if (ed.sign < 0) return true;
      continue;
    }
    adj[ed.tail].emplace_back(ed.head, ed.sign);
    adj[ed.head].emplace_back(ed.tail, ed.sign);
  }
  for (std::size_t s = 0; s < sg.num_vertices; ++s) {
    if (pot[s] != 0 || adj[s].empty()) continue;
    pot[s] = 1;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto [w, sign] : adj[v]) {
        const int want = pot[v] * sign;
        if (pot[w] == 0) {
          pot[w] = want;
          stack.push_back(w);
        } else if (pot[w] != want) {
          return true;
        }
      }
    }
  }
  return false;
}

/// Rank: sum over components X of |V(X)| - 1 + alpha(X).
inline std::size_t signed_rank(const SignedGraph& sg, std::span<const std::size_t> subset) {
  std::size_t r = 0;
  for (const auto& comp : edge_components(sg, subset)) {
    std::vector<std::size_t> verts;
    for (auto e : comp) {
      verts.push_back(sg.edges[e].tail);
      verts.push_back(sg.edges[e].head);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    r += verts.size() - 1 + (has_negative_cycle(sg, comp) ? 1 : 0);
  }
  return r;
}

/// Rows: -sign at the tail and 1 at the head for ordinary edges; 1 - sign at the vertex of a loop.
inline RationalMatrix incidence_matrix(const SignedGraph& sg) {
  RationalMatrix m(sg.edges.size(), sg.num_vertices);
  for (std::size_t i = 0; i < sg.edges.size(); ++i) {
    const auto& e = sg.edges[i];
    if (e.is_loop()) {
      m(i, e.tail) = 1 - e.sign;
    } else {
      m(i, e.tail) = -e.sign;
      m(i, e.head) = 1;
    }
  }
  return m;
}

/// Independence oracle adapter so matroid union can run over any family.
struct SignedGraphicMatroid {
  const SignedGraph* graph;
  bool independent(std::span<const std::size_t> subset) const { return detail::independent_quick(*graph, subset); }
};

/// Partition of an independent set of the union into per-matroid independent parts.
struct UnionDecomposition {
  std::vector<std::vector<std::size_t>> parts;  // element positions per matroid
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    return n;
  }
};

struct UnionResult {
  std::size_t rank = 0;
  UnionDecomposition decomposition;
};

/// Rank of the union of matroids restricted to `ground`, with a certificate. Elements are
/// inserted in order; each insertion runs a breadth-first search for a shortest augmenting
/// path in the exchange graph (y -> z when part(z) - z + y is independent).
template <class M>
UnionResult matroid_union(std::span<const M> matroids, std::span<const std::size_t> ground) {
  const std::size_t k = matroids.size();
  std::size_t universe = 0;
  for (auto x : ground) universe = std::max(universe, x + 1);
  std::vector<std::vector<std::size_t>> parts(k);
  std::vector<std::size_t> owner(universe, SIZE_MAX);

  auto independent_with = [&](std::size_t i, std::size_t add, std::size_t drop) {
    std::vector<std::size_t> trial;
    trial.reserve(parts[i].size() + 1);
    for (auto z : parts[i])
      if (z != drop) trial.push_back(z);
    trial.push_back(add);
    return matroids[i].independent(trial);
  };

  for (auto x : ground) {
    if (owner[x] != SIZE_MAX) continue;  // duplicate in ground
    std::vector<std::size_t> pred(universe, SIZE_MAX);
    std::vector<bool> seen(universe, false);
    std::deque<std::size_t> queue{x};
    seen[x] = true;
    std::size_t sink = SIZE_MAX, sink_matroid = SIZE_MAX;
    while (!queue.empty() && sink == SIZE_MAX) {
      const std::size_t y = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < k && sink == SIZE_MAX; ++i) {
        if (owner[y] == i) continue;
        if (independent_with(i, y, SIZE_MAX)) {
          sink = y;
          sink_matroid = i;
          break;
        }
        for (auto z : parts[i]) {
          if (seen[z]) continue;
          if (independent_with(i, y, z)) {
            seen[z] = true;
            pred[z] = y;
            queue.push_back(z);
          }
        }
      }
    }
    if (sink == SIZE_MAX) continue;
    // walk back: each element moves into the part its successor vacated
    std::vector<std::pair<std::size_t, std::size_t>> moves{{sink, sink_matroid}};
    for (std::size_t z = sink; pred[z] != SIZE_MAX; z = pred[z]) moves.emplace_back(pred[z], owner[z]);
    for (auto [elem, target] : moves) {
      if (owner[elem] != SIZE_MAX) {
        auto& p = parts[owner[elem]];
        p.erase(std::find(p.begin(), p.end(), elem));
      }
    }
    for (auto [elem, target] : moves) {
      owner[elem] = target;
      parts[target].push_back(elem);
    }
    for (auto& p : parts) std::sort(p.begin(), p.end());
  }

  UnionResult res;
  res.decomposition.parts = std::move(parts);
  res.rank = res.decomposition.size();
  for (std::size_t i = 0; i < k; ++i)
    if (!matroids[i].independent(res.decomposition.parts[i]))
      throw ConsistencyError("matroid union produced a dependent part");
  return res;
}

/// Union rank of signed-graphic matroids on a common edge list.
inline UnionResult matroid_union_rank(std::span<const SignedGraph> sgs, std::span<const std::size_t> subset) {
  for (const auto& sg : sgs)
    if (sg.num_vertices != sgs.front().num_vertices || sg.edges.size() != sgs.front().edges.size())
      throw InputError("signed graphs in a union must share vertex and edge sets");
  std::vector<SignedGraphicMatroid> ms;
  for (const auto& sg : sgs) ms.push_back(SignedGraphicMatroid{&sg});
  return matroid_union<SignedGraphicMatroid>(ms, subset);
}

/// Every part independent and parts disjoint.
inline bool validate_decomposition(std::span<const SignedGraph> sgs, const UnionDecomposition& dec) {
  if (dec.parts.size() != sgs.size()) return false;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < sgs.size(); ++i) {
    if (!is_independent_signed(sgs[i], dec.parts[i]).independent) return false;
    all.insert(all.end(), dec.parts[i].begin(), dec.parts[i].end());
  }
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

struct CountingViolation {
  std::vector<std::size_t> edges;  // F
  std::size_t size = 0;            // |F|
  long bound = 0;                  // C(d+1,2)|V(F)| - C(d+1,2) + sum alpha
  std::vector<int> alpha;          // per pair position
};

/// Maximum ground-set size accepted by the exhaustive counting oracle.
inline constexpr std::size_t kCountingOracleLimit = 20;

/// Brute force over every nonempty F (by increasing size): |F| <= m|V(F)| - m + sum alpha(F),
/// m the number of matroids. Returns the first violating F.
inline std::optional<CountingViolation> check_counting_condition(std::span<const SignedGraph> sgs,
                                                                 std::span<const std::size_t> subset) {
  if (subset.size() > kCountingOracleLimit)
    throw InputError("counting oracle is limited to " + std::to_string(kCountingOracleLimit) + " edges");
  const std::size_t n = subset.size();
  const long m = static_cast<long>(sgs.size());
  std::vector<unsigned long> masks;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned long a, unsigned long b) { return __builtin_popcountl(a) < __builtin_popcountl(b); });
  for (auto mask : masks) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) f.push_back(subset[i]);
    std::vector<std::size_t> verts;
    for (auto e : f) {
      verts.push_back(sgs.front().edges[e].tail);
      verts.push_back(sgs.front().edges[e].head);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    CountingViolation v;
    long bound = m * static_cast<long>(verts.size()) - m;
    for (const auto& sg : sgs) {
      v.alpha.push_back(has_negative_cycle(sg, f) ? 1 : 0);
      bound += v.alpha.back();
    }
    if (static_cast<long>(f.size()) > bound) {
      v.edges = std::move(f);
      v.size = v.edges.size();
      v.bound = bound;
      return v;
    }
  }
  return std::nullopt;
}

/// The C(d+1,2) signed graphs (H, psi_g^{i,j}) on the edges of h, in lexicographic pair order.
inline std::vector<SignedGraph> induced_signed_graphs(const GainGraph& h, const PointRepresentation& rep,
                                                      const GroupElement& g) {
  rep.require_combinatorial();
  const std::size_t pairs = rep.screw_dim();
  std::vector<std::vector<int>> labels;
  for (std::size_t p = 0; p < pairs; ++p) labels.push_back(induced_labeling(rep, g, p));
  std::vector<SignedGraph> out(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    out[p].num_vertices = h.num_vertices();
    for (const auto& e : h.edges())
      out[p].edges.push_back(SignedEdge{e.tail, e.head, labels[p][h.group().index(e.gain)]});
  }
  return out;
}

struct CombinatorialVerdict {
  GroupElement irrep;
  bool rigid = false;
  std::size_t rank = 0;          // union rank of E(H_g)
  long target = 0;               // C(d+1,2)|V(H)| - trivial dimension
  long deficiency = 0;           // target - rank, clamped at 0
  std::size_t edge_count = 0;    // |E(H_g)|
  std::size_t trivial_dim = 0;
  GainGraph reduced;             // H_g
  std::vector<SignedGraph> signed_graphs;
  UnionDecomposition certificate;  // element positions refer to reduced.edges()
};

/// Decides rho_g-symmetric rigidity from the gain graph alone: the union rank of the induced
/// signed-graphic matroids on H_g against C(d+1,2)|V(H)| minus the trivial-motion dimension.
inline CombinatorialVerdict combinatorial_verdict(const GainGraph& h, const PointRepresentation& rep, const GroupElement& g) {
  rep.require_combinatorial();
  if (!(h.group() == rep.group())) throw InputError("gain graph and representation use different groups");
  CombinatorialVerdict v;
  v.irrep = g;
  v.reduced = remove_zero_loops(h, g);
  v.signed_graphs = induced_signed_graphs(v.reduced, rep, g);
  std::vector<std::size_t> all(v.reduced.num_edges());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto res = matroid_union_rank(v.signed_graphs, all);
  v.rank = res.rank;
  v.certificate = std::move(res.decomposition);
  v.trivial_dim = trivial_motion_dim(rep, g);
  v.target = static_cast<long>(rep.screw_dim() * h.num_vertices()) - static_cast<long>(v.trivial_dim);
  v.edge_count = v.reduced.num_edges();
  if (static_cast<long>(v.rank) > v.target)
    throw ConsistencyError("union rank exceeds the number of nontrivial symmetric motions");
  v.deficiency = v.target - static_cast<long>(v.rank);
  v.rigid = v.deficiency == 0;
  if (!validate_decomposition(v.signed_graphs, v.certificate)) throw ConsistencyError("union certificate failed validation");
  return v;
}

}  // namespace symrig
