#pragma once

#include <cstddef>
#include <future>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "symrig/algebra.hpp"
#include "symrig/gaingraph.hpp"
#include "symrig/linalg.hpp"
#include "symrig/symmetry.hpp"

namespace symrig {

/// One bar: its 2-extensor, optionally with the two homogeneous points it was built from
/// (first point on the tail body, second on the head body).
struct Bar {
  RationalExtensor extensor;
  std::optional<std::pair<RationalVector, RationalVector>> points;
};

/// Bars indexed by edge position (quotient edges for b-tilde, lifted edges for b).
struct BarConfiguration {
  std::size_t d = 3;
  std::vector<Bar> bars;
};

/// Either field; real irreps stay exact.
using AnyMatrix = std::variant<RationalMatrix, ComplexMatrix>;

inline std::size_t any_rank(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return rank(x); }, m);
}

struct OrbitMatrix {
  GroupElement irrep;
  AnyMatrix entries;
  bool exact() const { return std::holds_alternative<RationalMatrix>(entries); }
};

/// Rows b(e) at the tail body and -b(e) at the head body.
inline RationalMatrix rigidity_matrix(std::size_t num_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                      const BarConfiguration& b) {
  const std::size_t w = binomial(b.d + 1, 2);
  if (b.bars.size() != edges.size()) throw InputError("missing bar: configuration size does not match the edge count");
  RationalMatrix r(edges.size(), w * num_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& x = b.bars[e].extensor;
    if (x.grade != 2 || x.d != b.d) throw InputError("bar is not a 2-extensor of the configured dimension");
    const auto [u, v] = edges[e];
    for (std::size_t c = 0; c < w; ++c) {
      r(e, u * w + c) += x.coords[c];
      r(e, v * w + c) -= x.coords[c];
    }
  }
  return r;
}

/// Loop form for edges of L: b = p ^ tau-hat(psi) p. Checked exactly on the stored points,
/// and through the necessary condition tau-hat^(2)(psi) b = -b otherwise.
inline void check_loop_form(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep) {
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    if (!e.in_loop_set) continue;
    const auto& bar = b.bars[i];
    if (bar.points) {
      const auto image = rep.augmented(e.gain) * std::span<const Rational>(bar.points->first);
      if (image != bar.points->second)
        throw InputError("bar on loop " + std::to_string(e.id) + " in L is not of the form p ^ tau(psi) p");
    }
    const auto turned = rep.compound2(e.gain) * std::span<const Rational>(bar.extensor.coords);
    for (std::size_t c = 0; c < turned.size(); ++c)
      if (turned[c] != -bar.extensor.coords[c])
        throw InputError("bar on loop " + std::to_string(e.id) + " in L violates the loop form");
  }
}

namespace detail {

template <class Scalar>
Matrix<Scalar> orbit_entries(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep,
                             const GroupElement& g) {
  const std::size_t w = rep.screw_dim();
  Matrix<Scalar> m(h.num_edges(), w * h.num_vertices());
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    std::vector<Scalar> bar;
    for (const auto& c : b.bars[i].extensor.coords) bar.push_back(from_rational<Scalar>(c));
    const auto turned = tau_hat2_j_inverse<Scalar>(rep, g, e.gain) * std::span<const Scalar>(bar);
    for (std::size_t c = 0; c < w; ++c) {
      m(i, e.tail * w + c) += bar[c];
      m(i, e.head * w + c) -= turned[c];
    }
  }
  return m;
}

}  // namespace detail

/// rho_g-orbit rigidity matrix: row of e = (u, v) is b(e) at u and -(tau-hat^(2)_g(psi_e))^{-1} b(e)
/// at v; a loop gets (I - (tau-hat^(2)_g(psi_e))^{-1}) b(e).
inline OrbitMatrix orbit_matrix(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep,
                                const GroupElement& g) {
  if (b.bars.size() != h.num_edges()) throw InputError("missing bar: configuration size does not match the edge count");
  if (b.d != rep.d()) throw InputError("configuration and representation dimensions differ");
  for (const auto& bar : b.bars)
    if (bar.extensor.grade != 2 || bar.extensor.d != b.d) throw InputError("bar is not a 2-extensor of the configured dimension");
  check_loop_form(h, b, rep);
  if (irrep_is_real(rep.group(), g)) return OrbitMatrix{g, detail::orbit_entries<Rational>(h, b, rep, g)};
  return OrbitMatrix{g, detail::orbit_entries<Complex>(h, b, rep, g)};
}

struct IrrepReport {
  GroupElement irrep;
  std::size_t rank = 0;
  std::size_t trivial = 0;
  long flex = 0;
  bool rigid = false;
  bool exact = true;
};

struct RigidityReport {
  std::vector<IrrepReport> irreps;
  bool rigid = false;

  long total_flex() const {
    long s = 0;
    for (const auto& r : irreps) s += r.flex;
    return s;
  }
};

/// Per irrep: rank of the orbit matrix, trivial-motion dimension, and the remaining flex count.
/// Irreps are processed concurrently.
inline RigidityReport analyze(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep) {
  const auto elems = rep.group().elements();
  std::vector<std::future<IrrepReport>> jobs;
  for (const auto& g : elems)
    jobs.push_back(std::async(std::launch::async, [&, g] {
      const auto om = orbit_matrix(h, b, rep, g);
      IrrepReport r;
      r.irrep = g;
      r.exact = om.exact();
      r.rank = any_rank(om.entries);
      r.trivial = trivial_motion_dim(rep, g);
      r.flex = static_cast<long>(rep.screw_dim() * h.num_vertices()) - static_cast<long>(r.rank) -
               static_cast<long>(r.trivial);
      if (r.flex < 0) throw ConsistencyError("orbit matrix rank exceeds the nontrivial motion space");
      r.rigid = r.flex == 0;
      return r;
    }));
  RigidityReport rep_out;
  rep_out.rigid = true;
  for (auto& j : jobs) {
    rep_out.irreps.push_back(j.get());
    rep_out.rigid = rep_out.rigid && rep_out.irreps.back().rigid;
  }
  return rep_out;
}

/// A rho_g-symmetric motion of the quotient: one screw vector per quotient vertex.
struct Flex {
  GroupElement irrep;
  std::vector<RationalVector> motion;
};

/// Constant assignments of the fixed-subspace basis: the trivial rho_g-symmetric motions.
inline std::vector<RationalVector> trivial_motions(const GainGraph& h, const PointRepresentation& rep, const GroupElement& g) {
  std::vector<RationalVector> out;
  const std::size_t w = rep.screw_dim();
  for (const auto& t : fixed_subspace_basis(rep, g)) {
    RationalVector v(w * h.num_vertices());
    for (std::size_t x = 0; x < h.num_vertices(); ++x)
      for (std::size_t c = 0; c < w; ++c) v[x * w + c] = t[c];
    out.push_back(std::move(v));
  }
  return out;
}

/// Basis of the kernel of the orbit matrix orthogonal to the trivial motions.
/// Real irreps only.
inline std::vector<Flex> extract_flexes(const GainGraph& h, const OrbitMatrix& om, const PointRepresentation& rep) {
  if (!om.exact()) throw UnsupportedError("flex extraction is implemented for real irreps only");
  const auto& m = std::get<RationalMatrix>(om.entries);
  const auto kernel = nullspace(m);
  const auto trivial = trivial_motions(h, rep, om.irrep);
  // coefficients c with <t, K c> = 0 for every trivial t
  RationalMatrix gram(trivial.size(), kernel.size());
  for (std::size_t i = 0; i < trivial.size(); ++i)
    for (std::size_t j = 0; j < kernel.size(); ++j) gram(i, j) = dot<Rational>(trivial[i], kernel[j]);
  std::vector<Flex> out;
  const std::size_t w = rep.screw_dim();
  for (const auto& c : nullspace(gram)) {
    RationalVector v(m.cols(), Rational(0));
    for (std::size_t j = 0; j < kernel.size(); ++j)
      if (sgn(c[j]) != 0)
        for (std::size_t x = 0; x < v.size(); ++x) v[x] += c[j] * kernel[j][x];
    Flex f;
    f.irrep = om.irrep;
    for (std::size_t x = 0; x < h.num_vertices(); ++x) f.motion.emplace_back(v.begin() + x * w, v.begin() + (x + 1) * w);
    out.push_back(std::move(f));
  }
  return out;
}

inline std::optional<Flex> extract_flex(const GainGraph& h, const OrbitMatrix& om, const PointRepresentation& rep) {
  auto all = extract_flexes(h, om, rep);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

/// Re-substitutes a motion into <b(e), m(u) - tau-hat^(2)_g(psi_e) m(v)> = 0 for every edge.
inline bool satisfies_motion_equations(const GainGraph& h, const BarConfiguration& b, const PointRepresentation& rep,
                                       const Flex& f) {
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    const auto moved = tau_hat2_j<Rational>(rep, f.irrep, e.gain) * std::span<const Rational>(f.motion[e.head]);
    RationalVector diff(f.motion[e.tail]);
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] -= moved[c];
    if (sgn(dot<Rational>(b.bars[i].extensor.coords, diff)) != 0) return false;
  }
  return true;
}

}  // namespace symrig
