// symrig: rigidity analysis of symmetric body-bar and body-hinge frameworks.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "symrig/pipeline.hpp"
#include "symrig/random_instances.hpp"

using namespace symrig;

namespace {

enum Exit { kRigid = 0, kFlexible = 1, kInputError = 2, kConsistency = 3 };

struct Job {
  std::string input;
  std::uint64_t seed = 42;
  std::optional<std::size_t> dim;
  std::string irrep;
  std::string format = "json";
  bool oracle = false;
};

struct CrosscheckJob {
  std::size_t count = 100;
  std::size_t max_vertices = 4;
  std::size_t max_edges = 10;
  std::string group = "2";
  std::string rep = "random";
  std::string model = "body-bar";
  std::size_t dim = 3;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string format = "json";
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("malformed integer list '" + s + "'");
    }
  }
  return out;
}

/// Irreps selected by --irrep (all when empty).
std::vector<bool> irrep_filter(const AbelianGroup& group, const std::string& spec) {
  std::vector<bool> keep(group.order(), spec.empty());
  if (!spec.empty()) keep[group.index(group.make(parse_int_list(spec)))] = true;
  return keep;
}

void emit(const Json& doc, const std::string& text, const std::string& format) {
  if (format == "text")
    std::cout << text;
  else
    std::cout << doc.dump(2) << "\n";
}

Json header(const char* command, const Problem& p) {
  return Json{{"schema", kSchemaVersion},
              {"command", command},
              {"model", model_name(p.model)},
              {"d", p.rep.d()},
              {"group", Json{{"orders", p.rep.group().orders()}}}};
}

Json generator_json(const Analysis& a, std::uint64_t seed) {
  if (!a.generic) return Json{{"configuration", "explicit"}};
  Json seeds = Json::array();
  for (std::size_t k = 0; k < kGenericSamples; ++k) seeds.push_back(sample_seed(seed, k));
  return Json{{"name", kGeneratorName}, {"seed", seed}, {"samples", std::move(seeds)}, {"bound", GenericSeed{}.bound}};
}

std::optional<CountingViolation> run_oracle(const CombinatorialVerdict& v) {
  std::vector<std::size_t> all(v.reduced.num_edges());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return check_counting_condition(v.signed_graphs, all);
}

int cmd_analyze(const Job& job) {
  const auto p = load_problem(job.input, job.dim);
  const auto keep = irrep_filter(p.rep.group(), job.irrep);
  const auto a = run_analysis(p, job.seed);
  Json doc = header("analyze", p);
  doc["generator"] = generator_json(a, job.seed);
  std::ostringstream text;
  text << model_name(p.model) << " framework, d=" << p.rep.d() << ", |V|=" << p.graph.num_vertices()
       << ", |E|=" << p.graph.num_edges() << "\n";
  Json irreps = Json::array();
  bool rigid = true;
  long total = 0;
  for (std::size_t i = 0; i < a.numeric.irreps.size(); ++i) {
    if (!keep[i]) continue;
    const auto& r = a.numeric.irreps[i];
    Json j = irrep_report_json(r);
    text << "irrep " << r.irrep.str() << ": rank " << r.rank << ", trivial " << r.trivial << ", flex " << r.flex
         << (r.rigid ? " (rigid)" : " (flexible)");
    if (!a.combinatorial.empty()) {
      const auto& v = a.combinatorial[i];
      Json c{{"rank", v.rank},
             {"target", v.target},
             {"deficiency", v.deficiency},
             {"edges", v.edge_count},
             {"count", count_relation(v.edge_count, v.target)},
             {"rigid", v.rigid}};
      text << "; union rank " << v.rank << "/" << v.target << ", |E(H_g)| " << v.edge_count << " "
           << count_relation(v.edge_count, v.target) << " target";
      if (job.oracle && v.reduced.num_edges() <= kCountingOracleLimit) {
        const auto viol = run_oracle(v);
        c["oracle"] = viol ? violation_json(*viol, v.reduced, p.rep.d()) : Json{{"kind", "none"}};
        if (viol) text << "; counting violation |F|=" << viol->size << " > " << viol->bound;
      }
      j["combinatorial"] = std::move(c);
    }
    text << "\n";
    rigid = rigid && r.rigid;
    total += r.flex;
    irreps.push_back(std::move(j));
  }
  doc["irreps"] = std::move(irreps);
  doc["rigid"] = rigid;
  doc["total_flex"] = total;
  doc["seeds_agree"] = a.seeds_agree;
  doc["consistent"] = a.consistent;
  text << (rigid ? "rigid" : "flexible") << ", total flex " << total << "\n";
  if (!a.seeds_agree) text << "warning: generic samples disagree; per-irrep maximum rank reported\n";
  if (!a.consistent) text << "consistency failure: combinatorial and numeric verdicts differ\n";
  emit(doc, text.str(), job.format);
  if (!a.consistent) return kConsistency;
  return rigid ? kRigid : kFlexible;
}

int cmd_certify(const Job& job) {
  const auto p = load_problem(job.input, job.dim);
  p.rep.require_combinatorial();
  const auto keep = irrep_filter(p.rep.group(), job.irrep);
  GainGraph h = p.graph;
  if (p.model == Model::body_hinge) {
    require_free_edge_action(h);
    h = multiply_edges(h, bars_per_hinge(p.rep.d()));
  }
  Json doc = header("certify", p);
  Json certs = Json::array();
  std::ostringstream text;
  bool rigid = true;
  for (const auto& g : p.rep.group().elements()) {
    if (!keep[p.rep.group().index(g)]) continue;
    const auto v = combinatorial_verdict(h, p.rep, g);
    for (std::size_t part = 0; part < v.certificate.parts.size(); ++part)
      if (!is_independent_signed(v.signed_graphs[part], v.certificate.parts[part]).independent)
        throw ConsistencyError("certificate part " + std::to_string(part) + " is dependent");
    std::optional<CountingViolation> counting;
    if (job.oracle && !v.rigid && v.reduced.num_edges() <= kCountingOracleLimit) counting = run_oracle(v);
    certs.push_back(certificate_json(v, p.rep.d(), counting));
    text << "irrep " << v.irrep.str() << ": union rank " << v.rank << " of target " << v.target
         << (v.rigid ? " (rigid)\n" : " (flexible)\n");
    LexIndex pairs(p.rep.d() + 1, 2);
    for (std::size_t part = 0; part < v.certificate.parts.size(); ++part) {
      if (v.certificate.parts[part].empty()) continue;
      text << "  " << pairs.label(part) << ":";
      for (auto e : v.certificate.parts[part]) text << " " << v.reduced.edges()[e].id;
      text << "\n";
    }
    if (!v.rigid) text << "  violation: target " << v.target << " > max rank " << v.rank << "\n";
    rigid = rigid && v.rigid;
  }
  doc["certificates"] = std::move(certs);
  doc["rigid"] = rigid;
  emit(doc, text.str(), job.format);
  return rigid ? kRigid : kFlexible;
}

int cmd_flex(const Job& job) {
  const auto p = load_problem(job.input, job.dim);
  const auto keep = irrep_filter(p.rep.group(), job.irrep);
  const auto a = run_analysis(p, job.seed);
  const auto& bars = a.configs.front();
  Json doc = header("flex", p);
  doc["generator"] = generator_json(a, job.seed);
  doc["configuration"] = bars_json(a.analyzed, bars);
  Json out = Json::array();
  std::ostringstream text;
  bool rigid = true;
  for (const auto& g : p.rep.group().elements()) {
    const auto i = p.rep.group().index(g);
    if (!keep[i]) continue;
    const auto& r = a.samples.front().irreps[i];
    rigid = rigid && r.rigid;
    Json j{{"irrep", to_json(g)}, {"flex", r.flex}};
    text << "irrep " << g.str() << ": " << r.flex << " flex(es)\n";
    if (r.flex > 0) {
      if (!irrep_is_real(p.rep.group(), g)) {
        j["motions"] = nullptr;
        j["note"] = "flex vectors are emitted for real irreps only";
      } else {
        const auto flexes = extract_flexes(a.analyzed, orbit_matrix(a.analyzed, bars, p.rep, g), p.rep);
        Json motions = Json::array();
        for (const auto& f : flexes) {
          if (!satisfies_motion_equations(a.analyzed, bars, p.rep, f))
            throw ConsistencyError("extracted flex violates the motion equations");
          Json m = Json::object();
          text << "  motion:";
          for (std::size_t v = 0; v < f.motion.size(); ++v) {
            m[a.analyzed.vertices()[v]] = to_json(f.motion[v]);
            text << " " << a.analyzed.vertices()[v] << "=(";
            for (std::size_t c = 0; c < f.motion[v].size(); ++c) text << (c ? "," : "") << to_string(f.motion[v][c]);
            text << ")";
          }
          text << "\n";
          motions.push_back(std::move(m));
        }
        j["motions"] = std::move(motions);
      }
    }
    out.push_back(std::move(j));
  }
  doc["flexes"] = std::move(out);
  doc["rigid"] = rigid;
  emit(doc, text.str(), job.format);
  return rigid ? kRigid : kFlexible;
}

int cmd_lift(const Job& job) {
  const auto p = load_problem(job.input, job.dim);
  const auto& group = p.rep.group();
  const auto cover = lift_cover(p.graph);
  Json doc = header("lift", p);
  Json verts = Json::array();
  std::ostringstream text;
  text << "lifted graph: " << cover.graph.num_vertices << " vertices, " << cover.graph.edges.size() << " edges\n";
  for (std::size_t v = 0; v < cover.vertex_cover.size(); ++v) {
    const auto [qv, x] = cover.vertex_cover[v];
    verts.push_back(Json{{"id", v}, {"orbit", p.graph.vertices()[qv]}, {"element", to_json(group.element(x))}});
  }
  Json edges = Json::array();
  if (p.model == Model::body_bar) {
    const auto b = p.bars ? *p.bars : random_generic_bars(p.graph, p.rep, GenericSeed{job.seed});
    const auto lifted = lift_bars(p.graph, b, p.rep);
    for (std::size_t e = 0; e < lifted.cover.edge_cover.size(); ++e) {
      const auto [qe, x] = lifted.cover.edge_cover[e];
      const auto [u, v] = lifted.cover.graph.edges[e];
      Json j{{"id", e}, {"tail", u}, {"head", v}, {"edge", p.graph.edges()[qe].id}, {"element", to_json(group.element(x))}};
      const auto& bar = lifted.bars.bars[e];
      if (bar.points) {
        j["p"] = to_json(bar.points->first);
        j["q"] = to_json(bar.points->second);
      }
      j["extensor"] = to_json(bar.extensor.coords);
      text << "  " << u << " -> " << v << " (edge " << p.graph.edges()[qe].id << " at " << group.element(x).str() << ")\n";
      edges.push_back(std::move(j));
    }
  } else {
    require_free_edge_action(p.graph);
    const auto cfg = p.hinges ? *p.hinges : random_generic_hinges(p.graph, p.rep, GenericSeed{job.seed});
    for (std::size_t e = 0; e < cover.edge_cover.size(); ++e) {
      const auto [qe, x] = cover.edge_cover[e];
      const auto [u, v] = cover.graph.edges[e];
      const auto g = group.element(x);
      Json pts = Json::array();
      for (const auto& pt : cfg.hinges[qe].points) pts.push_back(to_json(p.rep.augmented(g) * std::span<const Rational>(pt)));
      edges.push_back(Json{{"id", e},
                           {"tail", u},
                           {"head", v},
                           {"edge", p.graph.edges()[qe].id},
                           {"element", to_json(g)},
                           {"points", std::move(pts)},
                           {"extensor", to_json(lift_hinge(cfg.hinges[qe], p.rep, g).coords)}});
      text << "  " << u << " -> " << v << " (hinge " << p.graph.edges()[qe].id << " at " << g.str() << ")\n";
    }
  }
  doc["vertices"] = std::move(verts);
  doc["edges"] = std::move(edges);
  emit(doc, text.str(), job.format);
  return kRigid;
}

PointRepresentation crosscheck_rep(const CrosscheckJob& job, const AbelianGroup& group, IntegerSampler& rng) {
  if (job.rep == "reflection") return reflection_rep();
  if (job.rep == "half-turn") return half_turn_rep();
  if (job.rep == "klein") return klein_rep();
  if (job.rep == "random") return random_diagonal_rep(group, job.dim, rng);
  throw InputError("unknown representation '" + job.rep + "'");
}

struct InstanceOutcome {
  bool additivity_ok = true;
  bool deficiency_ok = true;
  bool seeds_agree = true;
  std::vector<bool> rigid;  // per irrep
  Json problem;
  std::string error;
};

InstanceOutcome run_instance(const CrosscheckJob& job, const AbelianGroup& group, std::size_t i) {
  InstanceOutcome out;
  IntegerSampler rng(GenericSeed{job.seed + 1000003 * (i + 1), 1});
  Problem p;
  p.model = job.model == "body-hinge" ? Model::body_hinge : Model::body_bar;
  p.rep = crosscheck_rep(job, group, rng);
  InstanceBounds bounds{job.max_vertices, job.max_edges, p.model == Model::body_bar, 1};
  p.graph = random_gain_graph(group, bounds, rng);
  out.problem = problem_json(p);
  try {
    const auto a = run_analysis(p, job.seed + i);
    const auto check = crosscheck_block_ranks(a.analyzed, a.configs.front(), p.rep);
    out.additivity_ok = check.consistent;
    out.deficiency_ok = a.consistent;
    out.seeds_agree = a.seeds_agree;
    for (const auto& r : a.numeric.irreps) out.rigid.push_back(r.rigid);
  } catch (const std::exception& e) {
    out.error = e.what();
    out.additivity_ok = out.deficiency_ok = false;
  }
  return out;
}

int cmd_crosscheck(const CrosscheckJob& job) {
  if (job.model != "body-bar" && job.model != "body-hinge") throw InputError("unknown model '" + job.model + "'");
  const AbelianGroup group(parse_int_list(job.group));
  if (!group.is_elementary_abelian_2()) throw UnsupportedError("crosscheck needs a group of the form (Z/2Z)^l");
  if (job.max_vertices < 1 || job.max_edges < 1) throw InputError("size bounds must be positive");
  {
    IntegerSampler probe(GenericSeed{job.seed, 1});
    if (!(crosscheck_rep(job, group, probe).group() == group))
      throw InputError("representation '" + job.rep + "' does not match group " + job.group);
  }
  std::vector<InstanceOutcome> results(job.count);
  std::atomic<std::size_t> next{0};
  const unsigned n = job.threads ? job.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(n, job.count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < job.count;) results[i] = run_instance(job, group, i);
    });
  for (auto& t : pool) t.join();

  std::size_t additivity = 0, deficiency = 0, disagreements = 0;
  std::vector<std::size_t> rigid_count(group.order(), 0);
  Json failures = Json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.additivity_ok) ++additivity;
    if (!r.deficiency_ok) ++deficiency;
    if (!r.seeds_agree) ++disagreements;
    for (std::size_t g = 0; g < r.rigid.size(); ++g) rigid_count[g] += r.rigid[g];
    if (!r.additivity_ok || !r.deficiency_ok) {
      Json f{{"instance", i}, {"seed", job.seed + i}, {"problem", r.problem}};
      if (!r.error.empty()) f["error"] = r.error;
      f["rank_additivity"] = r.additivity_ok;
      f["deficiency_matches_flex"] = r.deficiency_ok;
      failures.push_back(std::move(f));
    }
  }
  Json by_irrep = Json::array();
  std::ostringstream text;
  text << "instances " << job.count << ", group " << job.group << ", model " << job.model << "\n";
  for (std::size_t g = 0; g < group.order(); ++g) {
    by_irrep.push_back(Json{{"irrep", to_json(group.element(g))}, {"rigid", rigid_count[g]}, {"flexible", job.count - rigid_count[g]}});
    text << "irrep " << group.element(g).str() << ": rigid " << rigid_count[g] << ", flexible " << job.count - rigid_count[g] << "\n";
  }
  const std::size_t mismatches = failures.size();
  text << "rank additivity failures " << additivity << "\n"
       << "deficiency mismatches " << deficiency << "\n"
       << "seed disagreements " << disagreements << "\n"
       << "mismatched instances " << mismatches << "\n";
  Json doc{{"schema", kSchemaVersion},
           {"command", "crosscheck"},
           {"model", job.model},
           {"d", job.dim},
           {"group", Json{{"orders", group.orders()}}},
           {"generator", Json{{"name", kGeneratorName}, {"seed", job.seed}}},
           {"instances", job.count},
           {"by_irrep", std::move(by_irrep)},
           {"rank_additivity_failures", additivity},
           {"deficiency_mismatches", deficiency},
           {"seed_disagreements", disagreements},
           {"mismatches", mismatches},
           {"failures", std::move(failures)}};
  emit(doc, text.str(), job.format);
  return mismatches ? kConsistency : kRigid;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kConsistency;
  }
}

void add_common(CLI::App* cmd, Job& job) {
  cmd->add_option("input", job.input, "Framework description (JSON)")->required();
  cmd->add_option("--seed", job.seed, "Seed of the generic configuration");
  cmd->add_option("--dim", job.dim, "Dimension d (must match the input when it declares one)");
  cmd->add_option("--irrep", job.irrep, "Restrict to one irrep, e.g. 1 or 1,0");
  cmd->add_option("--format", job.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--oracle", job.oracle, "Run the exhaustive counting oracle on small inputs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigidity of symmetric body-bar and body-hinge frameworks"};
  app.require_subcommand(1);
  Job job;
  CrosscheckJob cj;
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-irrep orbit-matrix ranks and verdict");
  auto* certify_cmd = app.add_subcommand("certify", "Matroid-union certificates per irrep");
  auto* flex_cmd = app.add_subcommand("flex", "Nontrivial symmetric flexes");
  auto* lift_cmd = app.add_subcommand("lift", "Covering graph and lifted configuration");
  for (auto* c : {analyze_cmd, certify_cmd, flex_cmd, lift_cmd}) add_common(c, job);
  auto* cross = app.add_subcommand("crosscheck", "Randomized numeric versus combinatorial comparison");
  cross->add_option("--count", cj.count, "Number of random instances");
  cross->add_option("--max-vertices", cj.max_vertices, "Vertex bound of the quotient graph");
  cross->add_option("--max-edges", cj.max_edges, "Edge bound of the quotient graph");
  cross->add_option("--group", cj.group, "Cyclic factor orders, e.g. 2 or 2,2");
  cross->add_option("--rep", cj.rep, "Representation")->check(CLI::IsMember({"random", "reflection", "half-turn", "klein"}));
  cross->add_option("--model", cj.model, "body-bar or body-hinge");
  cross->add_option("--dim", cj.dim, "Dimension d");
  cross->add_option("--seed", cj.seed, "Base seed");
  cross->add_option("--threads", cj.threads, "Worker threads (0: hardware concurrency)");
  cross->add_option("--format", cj.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (*analyze_cmd) return guarded([&] { return cmd_analyze(job); });
  if (*certify_cmd) return guarded([&] { return cmd_certify(job); });
  if (*flex_cmd) return guarded([&] { return cmd_flex(job); });
  if (*lift_cmd) return guarded([&] { return cmd_lift(job); });
  return guarded([&] { return cmd_crosscheck(cj); });
}
