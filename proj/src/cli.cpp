#include "cuttree/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuttree/cutting.hpp"
#include "cuttree/discrete_limit.hpp"
#include "cuttree/io.hpp"
#include "cuttree/ptree.hpp"
#include "cuttree/real_tree.hpp"
#include "cuttree/shuffle.hpp"
#include "cuttree/theta.hpp"
#include "cuttree/verify.hpp"

namespace cuttree::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20140814;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  int threads = 2;

  std::uint64_t seed_value() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("CUTTREE_SEED")) return std::strtoull(env, nullptr, 10);
    return kDefaultSeed;
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Master seed (fallback: CUTTREE_SEED, then default)");
  cmd->add_option("--out", common.out, "Output file (default: stdout)");
  cmd->add_option("--format", common.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", common.threads, "Worker threads for replica loops");
}

void emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + common.out);
  f << text;
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  return json::parse(f);
}

ProbWeights resolve_weights(int n, const std::string& weights_file) {
  if (!weights_file.empty()) return weights_from_json(load_json(weights_file));
  if (n < 1) throw std::invalid_argument("need -n or --weights");
  return ProbWeights::uniform(n);
}

ThetaParam parse_theta(const std::string& text) {
  json j = json::parse(text.front() == '[' ? text : "[" + text + "]");
  auto values = j.get<std::vector<double>>();
  long double ss = 0.0L;
  for (double t : values) ss += static_cast<long double>(t) * t;
  const double err = std::abs(static_cast<double>(ss - 1.0L));
  if (err > 1e-12 && err <= 1e-6)
    std::cerr << "warning: theta normalized (sum of squares off by " << err << ")\n";
  return ThetaParam::from_values(values);
}

std::vector<int> parse_targets(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int cmd_sample_tree(const Common& common, int n, const std::string& weights_file, int count) {
  ProbWeights w = resolve_weights(n, weights_file);
  Rng rng(common.seed_value());
  if (count == 1) {
    emit(common, tree_to_json(sample_ptree(w, rng)).dump(2) + "\n");
  } else {
    json arr = json::array();
    for (int i = 0; i < count; ++i) arr.push_back(tree_to_json(sample_ptree(w, rng)));
    emit(common, arr.dump(2) + "\n");
  }
  return 0;
}

int cmd_cut(const Common& common, const std::string& mode, const std::string& in_file, int n,
            const std::string& weights_file, const std::string& targets_text, long replicas) {
  ProbWeights w = in_file.empty()
                      ? resolve_weights(n, weights_file)
                      : resolve_weights(tree_from_json(load_json(in_file)).n, weights_file);
  Rng rng(common.seed_value());
  auto fresh_tree = [&]() {
    return in_file.empty() ? sample_ptree(w, rng) : tree_from_json(load_json(in_file));
  };

  if (common.format == "csv") {
    // Sample pairs (cuts needed, spanning-path size), one replica per row.
    std::ostringstream csv;
    csv << "cuts,span\n";
    for (long i = 0; i < replicas; ++i) {
      RootedTree t = fresh_tree();
      const int v = targets_text.empty() ? draw_vertex(w, rng) : parse_targets(targets_text)[0];
      OneCutRecord rec = cut_one(t, w, v, rng);
      csv << rec.cut_count() << "," << depths(t)[v] + 1 << "\n";
    }
    emit(common, csv.str());
    return 0;
  }

  RootedTree t = fresh_tree();
  json out;
  if (mode == "one") {
    const int v = targets_text.empty() ? draw_vertex(w, rng) : parse_targets(targets_text)[0];
    out = record_to_json(cut_one(t, w, v, rng));
  } else if (mode == "k") {
    if (targets_text.empty()) throw std::invalid_argument("--targets required for --k");
    out = record_to_json(cut_k(t, w, parse_targets(targets_text), rng));
  } else {
    out = record_to_json(cut_complete(t, w, rng));
  }
  emit(common, out.dump(2) + "\n");
  return 0;
}

int cmd_shuff(const Common& common, const std::string& mode, const std::string& in_file,
              const std::string& weights_file, const std::string& targets_text) {
  json j = load_json(in_file);
  Rng rng(common.seed_value());

  if (mode == "reverse-exact") {
    const std::string rec_mode = j.at("mode").get<std::string>();
    RootedTree restored;
    if (rec_mode == "one")
      restored = reverse_one(one_cut_from_json(j));
    else if (rec_mode == "k")
      restored = reverse_k(k_cut_from_json(j));
    else
      restored = reverse_complete(complete_cut_from_json(j));
    emit(common, tree_to_json(restored).dump(2) + "\n");
    return 0;
  }

  RootedTree h = tree_from_json(j);
  ProbWeights w = resolve_weights(h.n, weights_file);
  RootedTree shuffled;
  if (mode == "one") {
    std::vector<int> targets = j.count("targets") && !targets_text.empty()
                                   ? parse_targets(targets_text)
                                   : std::vector<int>{};
    if (targets.empty() && j.count("targets") && !j["targets"].empty())
      targets = j["targets"].get<std::vector<int>>();
    const int v = targets.empty() ? draw_vertex(w, rng) : targets[0];
    shuffled = shuff_one(h, w, v, rng);
  } else if (mode == "k") {
    std::vector<int> targets = targets_text.empty()
                                   ? j.at("targets").get<std::vector<int>>()
                                   : parse_targets(targets_text);
    shuffled = shuff_k(h, w, targets, rng);
  } else {
    shuffled = shuff_complete(h, w, rng);
  }
  emit(common, tree_to_json(shuffled).dump(2) + "\n");
  return 0;
}

int cmd_icrt_line_break(const Common& common, const std::string& theta_text, int k) {
  ThetaParam theta = parse_theta(theta_text);
  Rng rng(common.seed_value());
  RealTree t = line_break(theta, k, rng);
  emit(common, real_tree_to_json(t).dump(2) + "\n");
  return 0;
}

int cmd_icrt_survival(const Common& common, const std::string& theta_text, double r,
                      const std::string& grid) {
  ThetaParam theta = parse_theta(theta_text);
  if (grid.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f\n", r1_length_survival(theta, r));
    emit(common, buf);
    return 0;
  }
  auto parts = parse_targets(grid);  // steps over [0, r]
  const int steps = parts.at(0);
  std::ostringstream csv;
  csv << "r,survival\n";
  for (int i = 0; i <= steps; ++i) {
    const double x = r * i / steps;
    csv << x << "," << r1_length_survival(theta, x) << "\n";
  }
  emit(common, csv.str());
  return 0;
}

int cmd_icrt_genealogy(const Common& common, const std::string& theta_text, int k, int m,
                       double horizon, long replicas) {
  ThetaParam theta = parse_theta(theta_text);
  if (m <= 0) m = 50 * k;
  Rng rng(common.seed_value());
  if (common.format == "csv") {
    // Sampled root-to-first-target distances, one replica per row.
    std::ostringstream csv;
    csv << "root_distance\n";
    for (long i = 0; i < replicas; ++i) {
      Rng sub = rng.stream(i);
      csv << genealogy_matrix(theta, k, m, horizon, sub).matrix[0][1] << "\n";
    }
    emit(common, csv.str());
    return 0;
  }
  auto g = genealogy_matrix(theta, k, m, horizon, rng);
  for (std::size_t i = 0; i < g.residual_mass.size(); ++i) {
    if (g.residual_mass[i] > 0.0)
      std::cerr << "warning: target " << i + 1 << " kept mass " << g.residual_mass[i]
                << " at the horizon\n";
  }
  json out{{"matrix", g.matrix},
           {"residual_mass", g.residual_mass},
           {"horizon_reached", g.horizon_reached},
           {"stop_time", g.stop_time}};
  emit(common, out.dump(2) + "\n");
  return 0;
}

int cmd_build_pn(const Common& common, const std::string& theta_text, int n) {
  emit(common, weights_to_json(build_pn(parse_theta(theta_text), n)).dump() + "\n");
  return 0;
}

int cmd_verify(const Common& common, const std::string& suite) {
  std::vector<Verdict> verdicts;
  if (suite == "all") {
    verdicts = run_all_suites(common.seed, common.threads);
  } else {
    try {
      verdicts.push_back(run_verify_suite(suite, common.seed, common.threads));
    } catch (const std::invalid_argument&) {
      std::cerr << "unknown suite: " << suite << "\navailable suites:\n";
      for (const auto& name : verify_suite_names()) std::cerr << "  " << name << "\n";
      std::cerr << "  all\n";
      return 2;
    }
  }
  json out = json::array();
  bool all_pass = true;
  for (const auto& v : verdicts) {
    out.push_back(verdict_to_json(v));
    all_pass = all_pass && v.pass;
    std::cerr << (v.pass ? "[PASS] " : "[FAIL] ") << v.name << " statistic=" << v.statistic
              << " threshold=" << v.threshold << "\n";
  }
  emit(common, out.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

int cmd_bench(const Common& common) {
  Rng rng(common.seed_value());
  std::ostringstream csv;
  csv << "op,n,reps,seconds,per_second\n";
  auto timed = [&](const std::string& op, int n, long reps, auto fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    csv << op << "," << n << "," << reps << "," << secs << "," << reps / secs << "\n";
  };
  const int n = 1000;
  ProbWeights w = ProbWeights::uniform(n);
  timed("sample_ptree", n, 2000, [&] {
    for (int i = 0; i < 2000; ++i) sample_ptree(w, rng);
  });
  timed("cut_one", n, 2000, [&] {
    for (int i = 0; i < 2000; ++i) {
      RootedTree t = sample_ptree(w, rng);
      cut_one(t, w, draw_vertex(w, rng), rng);
    }
  });
  timed("cut_complete", 200, 500, [&] {
    ProbWeights w2 = ProbWeights::uniform(200);
    for (int i = 0; i < 500; ++i) {
      RootedTree t = sample_ptree(w2, rng);
      cut_complete(t, w2, rng);
    }
  });
  emit(common, csv.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"cuttree: cutting, shuffling and continuum limits of weighted random trees"};
  app.require_subcommand(1);

  Common common;

  // sample-tree
  int st_n = 0, st_count = 1;
  std::string st_weights;
  auto* st = app.add_subcommand("sample-tree", "Sample weighted random trees");
  add_common(st, common);
  st->add_option("-n", st_n, "Vertex count (uniform weights)");
  st->add_option("--weights", st_weights, "Weights JSON file");
  st->add_option("--count", st_count, "Number of trees");

  // cut
  std::string cut_in, cut_weights, cut_targets;
  int cut_n = 0;
  long cut_replicas = 1000;
  bool cut_one_f = false, cut_k_f = false, cut_complete_f = false;
  auto* cut = app.add_subcommand("cut", "Run a cutting procedure, emit the trace");
  add_common(cut, common);
  cut->add_flag("--one", cut_one_f, "Isolate one target");
  cut->add_flag("--k", cut_k_f, "Isolate several targets");
  cut->add_flag("--complete", cut_complete_f, "Cut every component down to nothing");
  cut->add_option("--in", cut_in, "Input tree JSON (default: sample one)");
  cut->add_option("-n", cut_n, "Vertex count when sampling");
  cut->add_option("--weights", cut_weights, "Weights JSON file");
  cut->add_option("--targets", cut_targets, "Comma-separated target vertices");
  cut->add_option("--replicas", cut_replicas,
                  "Rows for csv output (columns: cuts,span; one replica per row)");

  // shuff
  std::string sh_in, sh_weights, sh_targets, sh_mode = "one";
  auto* sh = app.add_subcommand("shuff", "Reverse transformation of a cut trace or tree");
  add_common(sh, common);
  sh->add_option("--in", sh_in, "Cut-record JSON or bare tree JSON")->required();
  sh->add_option("--mode", sh_mode, "one|k|complete|reverse-exact")
      ->check(CLI::IsMember({"one", "k", "complete", "reverse-exact"}));
  sh->add_option("--weights", sh_weights, "Weights JSON file");
  sh->add_option("--targets", sh_targets, "Comma-separated target vertices");

  // icrt
  auto* icrt = app.add_subcommand("icrt", "Continuum-tree constructions");
  icrt->require_subcommand(1);
  std::string ic_theta = "[1]";
  int lb_k = 1;
  auto* lb = icrt->add_subcommand("line-break", "Build a reduced tree by line-breaking");
  add_common(lb, common);
  lb->add_option("--theta", ic_theta, "Theta as JSON array");
  lb->add_option("-k", lb_k, "Number of marked leaves");

  std::string sv_theta = "[1]", sv_grid;
  double sv_r = 1.0;
  auto* sv = icrt->add_subcommand("survival", "Root-to-random-point distance survival");
  add_common(sv, common);
  sv->add_option("--theta", sv_theta, "Theta as JSON array");
  sv->add_option("--r", sv_r, "Evaluation point (or grid upper end)");
  sv->add_option("--grid", sv_grid, "Steps for a csv curve on [0, r] (columns: r,survival)");

  std::string ge_theta = "[1]";
  int ge_k = 2, ge_m = 100;
  double ge_horizon = std::numeric_limits<double>::infinity();
  long ge_replicas = 100;
  auto* ge = icrt->add_subcommand("genealogy", "Fragmentation genealogy distance matrix");
  add_common(ge, common);
  ge->add_option("--theta", ge_theta, "Theta as JSON array");
  ge->add_option("-k", ge_k, "Targets");
  ge->add_option("-m", ge_m, "Auxiliary leaves for mass estimation");
  ge->add_option("--horizon", ge_horizon, "Time horizon (default: run to absorption)");
  ge->add_option("--replicas", ge_replicas, "Rows for csv output");

  // build-pn
  std::string bp_theta = "[1]";
  int bp_n = 0;
  auto* bp = app.add_subcommand("build-pn", "Weight sequence matched to a theta parameter");
  add_common(bp, common);
  bp->add_option("--theta", bp_theta, "Theta as JSON array");
  bp->add_option("-n", bp_n, "Vertex count")->required();

  // verify
  std::string vf_suite;
  auto* vf = app.add_subcommand("verify", "Run a named verification suite");
  add_common(vf, common);
  vf->add_option("suite", vf_suite, "Suite name or 'all'")->required();

  // bench
  auto* bn = app.add_subcommand("bench", "Throughput figures for the core loops");
  add_common(bn, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (st->parsed()) return cmd_sample_tree(common, st_n, st_weights, st_count);
    if (cut->parsed()) {
      std::string mode = cut_k_f ? "k" : cut_complete_f ? "complete" : "one";
      if (cut_one_f + cut_k_f + cut_complete_f > 1)
        throw std::invalid_argument("choose exactly one of --one/--k/--complete");
      return cmd_cut(common, mode, cut_in, cut_n, cut_weights, cut_targets, cut_replicas);
    }
    if (sh->parsed()) return cmd_shuff(common, sh_mode, sh_in, sh_weights, sh_targets);
    if (lb->parsed()) return cmd_icrt_line_break(common, ic_theta, lb_k);
    if (sv->parsed()) return cmd_icrt_survival(common, sv_theta, sv_r, sv_grid);
    if (ge->parsed())
      return cmd_icrt_genealogy(common, ge_theta, ge_k, ge_m, ge_horizon, ge_replicas);
    if (bp->parsed()) return cmd_build_pn(common, bp_theta, bp_n);
    if (vf->parsed()) return cmd_verify(common, vf_suite);
    if (bn->parsed()) return cmd_bench(common);
  } catch (const json::exception& e) {
    std::cerr << "malformed input JSON: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace cuttree::cli
