#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symrig/symmetry.hpp"

namespace symrig {

/// Copy provenance for edges produced by multiply_edges.
struct EdgeParent {
  int edge_id;
  int copy;
  friend bool operator==(const EdgeParent&, const EdgeParent&) = default;
};

struct GainEdge {
  int id = 0;
  std::size_t tail = 0;
  std::size_t head = 0;
  GroupElement gain;
  bool in_loop_set = false;  // member of L: the edge orbit is not free
  std::optional<EdgeParent> parent;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const GainEdge&, const GainEdge&) = default;
};

/// Quotient Gamma-gain graph (H, psi, L).
class GainGraph {
 public:
  GainGraph() = default;
  GainGraph(AbelianGroup group, std::vector<std::string> vertices, std::vector<GainEdge> edges)
      : group_(std::move(group)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    validate();
  }

  const AbelianGroup& group() const { return group_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<GainEdge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_loop_set() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const GainEdge& e) { return e.in_loop_set; });
  }

  std::size_t vertex_index(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) throw InputError("unknown vertex '" + name + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::size_t edge_position(int id) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].id == id) return i;
    throw InputError("unknown edge id " + std::to_string(id));
  }

  friend bool operator==(const GainGraph&, const GainGraph&) = default;

 private:
  void validate() const {
    std::map<int, int> seen;
    for (const auto& e : edges_) {
      if (++seen[e.id] > 1) throw InputError("duplicate edge id " + std::to_string(e.id));
      if (e.tail >= vertices_.size() || e.head >= vertices_.size())
        throw InputError("edge " + std::to_string(e.id) + " references a missing vertex");
      group_.check(e.gain);
      if (e.is_loop() && e.gain == group_.identity())
        throw InputError("loop " + std::to_string(e.id) + " carries the identity gain");
      if (e.in_loop_set) {
        if (!e.is_loop()) throw InputError("edge " + std::to_string(e.id) + " is in L but is not a loop");
        if (group_.element_order(e.gain) != 2)
          throw InputError("loop " + std::to_string(e.id) + " is in L but its gain does not have order 2");
      }
    }
  }

  AbelianGroup group_;
  std::vector<std::string> vertices_;
  std::vector<GainEdge> edges_;
};

/// A graph with an explicit group action: vertex_action[g][v] = g.v,
/// edge_action[g][e] = g.e (elements indexed as in AbelianGroup).
struct SymmetricGraph {
  AbelianGroup group;
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> vertex_action;
  std::vector<std::vector<std::size_t>> edge_action;

  bool acts_freely_on_vertices() const {
    for (std::size_t g = 1; g < group.order(); ++g)
      for (std::size_t v = 0; v < num_vertices; ++v)
        if (vertex_action[g][v] == v) return false;
    return true;
  }

  bool acts_freely_on_edges() const {
    for (std::size_t g = 1; g < group.order(); ++g)
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edge_action[g][e] == e) return false;
    return true;
  }

  /// The permutations form a group action compatible with incidence.
  void validate() const {
    const std::size_t n = group.order();
    if (vertex_action.size() != n || edge_action.size() != n) throw InputError("action needs one permutation per group element");
    for (std::size_t g = 0; g < n; ++g) {
      if (vertex_action[g].size() != num_vertices || edge_action[g].size() != edges.size())
        throw InputError("action permutation has wrong length");
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        const auto [c, d] = edges[edge_action[g][e]];
        const auto ga = vertex_action[g][a], gb = vertex_action[g][b];
        if (!((ga == c && gb == d) || (ga == d && gb == c))) throw InputError("edge action is not compatible with the vertex action");
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t ab = group.add_index(a, b);
        for (std::size_t v = 0; v < num_vertices; ++v)
          if (vertex_action[ab][v] != vertex_action[a][vertex_action[b][v]]) throw InputError("vertex permutations do not form a group action");
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (edge_action[ab][e] != edge_action[a][edge_action[b][e]]) throw InputError("edge permutations do not form a group action");
      }
  }
};

/// Covering graph G of a gain graph together with the covering map c : G -> H.
struct CoveredGraph {
  SymmetricGraph graph;
  std::vector<std::pair<std::size_t, std::size_t>> vertex_cover;  // lifted vertex -> (quotient vertex, element index)
  std::vector<std::pair<std::size_t, std::size_t>> edge_cover;    // lifted edge -> (quotient edge position, element index)

  std::size_t vertex_id(std::size_t quotient_vertex, std::size_t element) const {
    return quotient_vertex * graph.group.order() + element;
  }
};

/// Rebuilds the symmetric graph: vertices V(H) x Gamma; edge e = (u, v; h) lifts to
/// {(u, g), (v, g + h)} for every g, or once per coset {g, g + h} when e is in L.
inline CoveredGraph lift_cover(const GainGraph& h) {
  const auto& group = h.group();
  const std::size_t n = group.order();
  CoveredGraph cov;
  cov.graph.group = group;
  cov.graph.num_vertices = h.num_vertices() * n;
  for (std::size_t v = 0; v < h.num_vertices(); ++v)
    for (std::size_t g = 0; g < n; ++g) cov.vertex_cover.emplace_back(v, g);

  // lifted edge index for (quotient edge, element)
  std::vector<std::vector<std::size_t>> edge_of(h.num_edges(), std::vector<std::size_t>(n));
  for (std::size_t ei = 0; ei < h.num_edges(); ++ei) {
    const auto& e = h.edges()[ei];
    if (e.in_loop_set && group.element_order(e.gain) != 2) throw InputError("loop in L must have a gain of order 2");
    const std::size_t hidx = group.index(e.gain);
    for (std::size_t g = 0; g < n; ++g) {
      if (e.in_loop_set) {
        const std::size_t partner = group.add_index(g, hidx);
        if (partner < g) {
          edge_of[ei][g] = edge_of[ei][partner];
          continue;
        }
      }
      edge_of[ei][g] = cov.graph.edges.size();
      cov.graph.edges.emplace_back(cov.vertex_id(e.tail, g), cov.vertex_id(e.head, group.add_index(g, hidx)));
      cov.edge_cover.emplace_back(ei, g);
    }
  }

  cov.graph.vertex_action.assign(n, std::vector<std::size_t>(cov.graph.num_vertices));
  cov.graph.edge_action.assign(n, std::vector<std::size_t>(cov.graph.edges.size()));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t v = 0; v < cov.graph.num_vertices; ++v) {
      const auto [qv, x] = cov.vertex_cover[v];
      cov.graph.vertex_action[g][v] = cov.vertex_id(qv, group.add_index(g, x));
    }
    for (std::size_t le = 0; le < cov.graph.edges.size(); ++le) {
      const auto [qe, x] = cov.edge_cover[le];
      cov.graph.edge_action[g][le] = edge_of[qe][group.add_index(g, x)];
    }
  }
  return cov;
}

/// Quotient gain graph of a symmetric graph. Representatives default to the lowest
/// vertex id per orbit; edge orbits are represented by their lowest edge id.
inline GainGraph quotient(const SymmetricGraph& g, std::optional<std::vector<std::size_t>> representatives = std::nullopt) {
  g.validate();
  if (!g.acts_freely_on_vertices()) throw UnsupportedError("group action is not free on the vertices");
  const auto& group = g.group;
  const std::size_t n = group.order();

  // orbit id and the element carrying the representative to each vertex
  std::vector<std::size_t> orbit(g.num_vertices, SIZE_MAX), carrier(g.num_vertices, 0);
  std::vector<std::size_t> reps;
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    if (orbit[v] != SIZE_MAX) continue;
    const std::size_t o = reps.size();
    for (std::size_t x = 0; x < n; ++x) orbit[g.vertex_action[x][v]] = o;
    reps.push_back(v);
  }
  if (representatives) {
    if (representatives->size() != reps.size()) throw InputError("need exactly one representative per vertex orbit");
    std::vector<bool> hit(reps.size(), false);
    for (std::size_t r : *representatives) {
      if (r >= g.num_vertices || hit[orbit[r]]) throw InputError("representatives must be one vertex from each orbit");
      hit[orbit[r]] = true;
      reps[orbit[r]] = r;
    }
  }
  for (std::size_t o = 0; o < reps.size(); ++o)
    for (std::size_t x = 0; x < n; ++x) carrier[g.vertex_action[x][reps[o]]] = x;

  std::vector<std::string> names;
  for (std::size_t o = 0; o < reps.size(); ++o) names.push_back("v" + std::to_string(reps[o]));

  std::vector<GainEdge> edges;
  std::vector<bool> done(g.edges.size(), false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (done[e]) continue;
    std::size_t orbit_size = 0;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t f = g.edge_action[x][e];
      if (!done[f]) ++orbit_size;
      done[f] = true;
    }
    const auto [a, b] = g.edges[e];
    // a = x_a . u, b = x_b . w  =>  e = x_a . {u, (x_b - x_a) . w}
    const GroupElement gain = group.add(group.negate(group.element(carrier[a])), group.element(carrier[b]));
    GainEdge qe;
    qe.id = static_cast<int>(edges.size());
    qe.tail = orbit[a];
    qe.head = orbit[b];
    qe.gain = gain;
    qe.in_loop_set = orbit_size < n;
    edges.push_back(qe);
  }
  return GainGraph(group, std::move(names), std::move(edges));
}

/// H_g: H without the loops of L whose gain has rho_g = -1 (the zero loops).
inline GainGraph remove_zero_loops(const GainGraph& h, const GroupElement& g) {
  std::vector<GainEdge> kept;
  for (const auto& e : h.edges()) {
    if (e.in_loop_set) {
      const IrrepValue rho = irrep_value(h.group(), g, e.gain);
      if (rho.is_real() && rho.sign() == -1) continue;
    }
    kept.push_back(e);
  }
  return GainGraph(h.group(), h.vertices(), std::move(kept));
}

/// Replaces every edge by m parallel copies with the same gain. Copy ids are assigned
/// sequentially; each copy remembers (parent id, copy index).
inline GainGraph multiply_edges(const GainGraph& h, int m) {
  if (m < 1) throw InputError("edge multiplicity must be at least 1");
  std::vector<GainEdge> out;
  int next = 0;
  for (const auto& e : h.edges())
    for (int c = 0; c < m; ++c) {
      GainEdge copy = e;
      copy.id = next++;
      copy.parent = EdgeParent{e.id, c};
      out.push_back(std::move(copy));
    }
  return GainGraph(h.group(), h.vertices(), std::move(out));
}

}  // namespace symrig
