#pragma once

// Independent oracles and fixture helpers shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "symrig/io.hpp"
#include "symrig/random_instances.hpp"

namespace symrig::testing {

inline std::string fixture(const std::string& name) { return std::string(SYMRIG_FIXTURES) + "/" + name; }

/// Determinant by permutation expansion.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational total(0);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Rational term(inv % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Rank by textbook Gaussian elimination over mpq.
inline std::size_t gauss_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

/// Signed-graphic independence through the incidence representation: -sign at the tail,
/// 1 at the head; a loop contributes 1 - sign.
inline bool incidence_independent(const SignedGraph& sg, const std::vector<std::size_t>& subset) {
  std::vector<std::vector<Rational>> rows;
  for (auto e : subset) {
    std::vector<Rational> row(sg.num_vertices, Rational(0));
    const auto& x = sg.edges[e];
    if (x.tail == x.head) {
      row[x.tail] = 1 - x.sign;
    } else {
      row[x.tail] = -x.sign;
      row[x.head] = 1;
    }
    rows.push_back(std::move(row));
  }
  return gauss_rank(rows) == subset.size();
}

inline std::size_t incidence_rank(const SignedGraph& sg, const std::vector<std::size_t>& subset) {
  std::vector<std::vector<Rational>> rows;
  for (auto e : subset) {
    std::vector<Rational> row(sg.num_vertices, Rational(0));
    const auto& x = sg.edges[e];
    if (x.tail == x.head) {
      row[x.tail] = 1 - x.sign;
    } else {
      row[x.tail] = -x.sign;
      row[x.head] = 1;
    }
    rows.push_back(std::move(row));
  }
  return gauss_rank(rows);
}

inline std::vector<std::size_t> mask_to_subset(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

/// Union rank by the min formula: min over X of |E \ X| + sum_i r_i(X).
inline std::size_t nash_williams_union_rank(const std::vector<SignedGraph>& sgs, std::size_t num_edges) {
  std::size_t best = SIZE_MAX;
  for (std::uint32_t mask = 0; mask < (1u << num_edges); ++mask) {
    const auto x = mask_to_subset(mask, num_edges);
    std::size_t v = num_edges - x.size();
    for (const auto& sg : sgs) v += incidence_rank(sg, x);
    best = std::min(best, v);
  }
  return best;
}

/// Union rank by exhaustive search for the largest subset that splits into independent parts.
inline std::size_t exhaustive_union_rank(const std::vector<SignedGraph>& sgs, std::size_t num_edges) {
  const std::size_t k = sgs.size();
  std::size_t best = 0;
  std::vector<std::vector<std::size_t>> parts(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t e, std::size_t used) {
    if (used + (num_edges - e) <= best) return;
    if (e == num_edges) {
      best = std::max(best, used);
      return;
    }
    for (std::size_t i = 0; i < k; ++i) {
      parts[i].push_back(e);
      if (incidence_independent(sgs[i], parts[i])) rec(e + 1, used + 1);
      parts[i].pop_back();
    }
    rec(e + 1, used);
  };
  rec(0, 0);
  return best;
}

inline SignedGraph random_signed_graph(IntegerSampler& rng, std::size_t max_vertices, std::size_t max_edges) {
  SignedGraph sg;
  sg.num_vertices = static_cast<std::size_t>(rng.next_in(1, static_cast<std::int64_t>(max_vertices)));
  const auto ne = rng.next_in(0, static_cast<std::int64_t>(max_edges));
  for (std::int64_t i = 0; i < ne; ++i) {
    SignedEdge e;
    e.tail = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(sg.num_vertices) - 1));
    e.head = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(sg.num_vertices) - 1));
    e.sign = rng.next_in(0, 1) ? 1 : -1;
    sg.edges.push_back(e);
  }
  return sg;
}

/// Whether the multigraph contains k edge-disjoint spanning trees (backtracking).
inline bool packs_spanning_trees(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t k) {
  if (n <= 1) return true;
  if (edges.size() < k * (n - 1)) return false;
  std::vector<std::vector<std::size_t>> parent(k, std::vector<std::size_t>(n));
  std::vector<std::size_t> size(k, 0);
  auto find = [&](std::size_t t, std::size_t v) {
    while (parent[t][v] != v) v = parent[t][v];
    return v;
  };
  for (auto& p : parent) std::iota(p.begin(), p.end(), std::size_t{0});
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t e, std::size_t missing) -> bool {
    if (missing == 0) return true;
    if (edges.size() - e < missing) return false;
    const auto [a, b] = edges[e];
    for (std::size_t t = 0; t < k; ++t) {
      if (size[t] == n - 1) continue;
      const auto ra = find(t, a), rb = find(t, b);
      if (ra == rb) continue;
      parent[t][ra] = rb;
      ++size[t];
      if (rec(e + 1, missing - 1)) return true;
      --size[t];
      parent[t][ra] = ra;
      if (size[t] == 0) break;  // empty trees are interchangeable
    }
    return rec(e + 1, missing);
  };
  return rec(0, k * (n - 1));
}

/// Tutte / Nash-Williams: every partition P of V is crossed by at least k(|P| - 1) edges.
inline bool partition_condition(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t k) {
  std::vector<std::size_t> block(n, 0);
  bool ok = true;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t blocks) {
    if (!ok) return;
    if (v == n) {
      std::size_t crossing = 0;
      for (const auto& [a, b] : edges) crossing += block[a] != block[b];
      if (crossing < k * (blocks - 1)) ok = false;
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      block[v] = b;
      rec(v + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return ok;
}

/// A single vertex with four loops of gain s, the first two in L.
inline GainGraph stewart_quotient() {
  AbelianGroup g({2});
  std::vector<GainEdge> es;
  for (int i = 0; i < 4; ++i) es.push_back(GainEdge{i, 0, 0, g.element(1), i < 2, std::nullopt});
  return GainGraph(g, {"u"}, es);
}

}  // namespace symrig::testing
