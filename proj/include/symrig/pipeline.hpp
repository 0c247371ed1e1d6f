#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "symrig/io.hpp"

namespace symrig {

/// Number of independent generic samples drawn per analysis.
inline constexpr std::size_t kGenericSamples = 2;

inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t k) { return seed + k; }

struct Analysis {
  GainGraph analyzed;                     // H, or the multiplied graph for body-hinge input
  std::vector<BarConfiguration> configs;  // one per sample
  std::vector<HingeConfiguration> hinge_configs;
  std::vector<RigidityReport> samples;
  RigidityReport numeric;  // per-irrep maximum rank over the samples
  bool generic = true;     // configuration was sampled, not given
  bool seeds_agree = true;
  std::vector<CombinatorialVerdict> combinatorial;  // empty when not (Z/2Z)^l with diagonal form
  bool consistent = true;                           // combinatorial deficiency equals numeric flex
};

inline bool supports_combinatorial(const PointRepresentation& rep) {
  return rep.group().is_elementary_abelian_2() && rep.is_diagonal_sign();
}

inline RigidityReport merge_samples(const std::vector<RigidityReport>& samples, const PointRepresentation& rep,
                                    std::size_t num_vertices) {
  RigidityReport out = samples.front();
  out.rigid = true;
  for (std::size_t i = 0; i < out.irreps.size(); ++i) {
    auto& r = out.irreps[i];
    for (const auto& s : samples) r.rank = std::max(r.rank, s.irreps[i].rank);
    r.flex = static_cast<long>(rep.screw_dim() * num_vertices) - static_cast<long>(r.rank) - static_cast<long>(r.trivial);
    r.rigid = r.flex == 0;
    out.rigid = out.rigid && r.rigid;
  }
  return out;
}

/// Numeric analysis over generic samples (or the explicit configuration) and, when
/// available, the combinatorial verdict per irrep.
inline Analysis run_analysis(const Problem& p, std::uint64_t seed) {
  Analysis a;
  const auto& h = p.graph;
  if (p.model == Model::body_bar) {
    a.analyzed = h;
    if (p.bars) {
      a.generic = false;
      a.configs.push_back(*p.bars);
    } else {
      for (std::size_t k = 0; k < kGenericSamples; ++k)
        a.configs.push_back(random_generic_bars(h, p.rep, GenericSeed{sample_seed(seed, k)}));
    }
  } else {
    require_free_edge_action(h);
    a.generic = !p.hinges;
    for (std::size_t k = 0; k < kGenericSamples; ++k) {
      const GenericSeed s{sample_seed(seed, k)};
      a.hinge_configs.push_back(p.hinges ? *p.hinges : random_generic_hinges(h, p.rep, s));
      auto hb = hinge_to_bars(h, a.hinge_configs.back(), s);
      a.analyzed = std::move(hb.multiplied);
      a.configs.push_back(std::move(hb.bars));
    }
  }
  for (const auto& b : a.configs) a.samples.push_back(analyze(a.analyzed, b, p.rep));
  for (const auto& s : a.samples)
    for (std::size_t i = 0; i < s.irreps.size(); ++i)
      if (s.irreps[i].rank != a.samples.front().irreps[i].rank) a.seeds_agree = false;
  a.numeric = merge_samples(a.samples, p.rep, a.analyzed.num_vertices());
  if (supports_combinatorial(p.rep)) {
    for (const auto& g : p.rep.group().elements()) {
      a.combinatorial.push_back(combinatorial_verdict(a.analyzed, p.rep, g));
      const auto& num = a.numeric.irreps[p.rep.group().index(g)];
      if (a.generic && a.combinatorial.back().deficiency != num.flex) a.consistent = false;
    }
  }
  return a;
}

}  // namespace symrig
