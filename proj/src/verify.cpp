#include "cuttree/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "cuttree/cutting.hpp"
#include "cuttree/discrete_limit.hpp"
#include "cuttree/ptree.hpp"
#include "cuttree/real_tree.hpp"
#include "cuttree/shuffle.hpp"
#include "cuttree/stats.hpp"
#include "cuttree/theta.hpp"
#include "cuttree/tree.hpp"

namespace cuttree {

namespace {

// Replica-parallel map with replica-indexed streams: results are identical
// for any thread count.
template <typename T, typename Fn>
std::vector<T> parallel_map(long count, int threads, const Rng& master, Fn fn) {
  std::vector<T> out(count);
  threads = std::max(1, threads);
  if (threads == 1) {
    for (long i = 0; i < count; ++i) {
      Rng r = master.stream(static_cast<std::uint64_t>(i));
      out[i] = fn(i, r);
    }
    return out;
  }
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      Rng r = master.stream(static_cast<std::uint64_t>(i));
      out[i] = fn(i, r);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

ProbWeights random_weights(int n, Rng& rng) {
  std::vector<double> w(n);
  long double sum = 0.0L;
  for (double& x : w) {
    x = rng.exponential(1.0) + 1e-3;  // bounded away from zero
    sum += x;
  }
  for (double& x : w) x = static_cast<double>(x / sum);
  return ProbWeights(std::move(w));
}

struct SuiteSpec {
  const char* name;
  std::uint64_t default_seed;
  Verdict (*run)(std::uint64_t seed, int threads);
};

Verdict make_verdict(const std::string& name, double stat, double thr, bool pass,
                     std::uint64_t seed, long n, std::string note) {
  Verdict v;
  v.name = name;
  v.statistic = stat;
  v.threshold = thr;
  v.pass = pass;
  v.seed = seed;
  v.n_samples = n;
  v.note = std::move(note);
  return v;
}

// Identity of the tree polynomial: the pmf sums to one over all rooted
// labeled trees, for any weight vector.
Verdict suite_cayley(std::uint64_t seed, int) {
  Rng rng(seed);
  double worst = 0.0;
  long trees = 0;
  for (int n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      ProbWeights w = random_weights(n, rng);
      long double sum = 0.0L;
      enumerate_rooted_trees(n, [&](const RootedTree& t) {
        sum += ptree_pmf(w, t);
        ++trees;
      });
      worst = std::max(worst, std::abs(static_cast<double>(sum - 1.0L)));
    }
  }
  return make_verdict("cayley", worst, 1e-9, worst < 1e-9, seed, trees,
                      "max |sum of pmf - 1| over n=1..7, 5 weight vectors each");
}

Verdict suite_sampler_law(std::uint64_t seed, int) {
  const int n = 4;
  const long reps = 200000;
  Rng rng(seed);
  ProbWeights w = ProbWeights::uniform(n);
  std::map<std::string, long> counts;
  for (long i = 0; i < reps; ++i) ++counts[tree_key(sample_ptree(w, rng))];
  auto gof = chi_square_gof(counts, exact_tree_law(w));
  return make_verdict("sampler-law", gof.p_value, 1e-3, gof.p_value > 1e-3, seed, reps,
                      "chi-square p-value of sampled trees against the exact law");
}

Verdict suite_span_law(std::uint64_t seed, int) {
  const int n = 5;
  const long reps = 100000;
  Rng rng(seed);
  ProbWeights w({0.35, 0.25, 0.2, 0.12, 0.08});
  auto exact = exact_span_law(w);
  std::vector<long> counts(n + 1, 0);
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    ++counts[cut_one(t, w, v, rng).cut_count()];
  }
  double tv = 0.0;
  for (int l = 1; l <= n; ++l)
    tv += std::abs(static_cast<double>(counts[l]) / reps - exact[l - 1]);
  tv /= 2.0;
  return make_verdict("span-law", tv, 0.01, tv < 0.01, seed, reps,
                      "TV between the cut-count law and the exact spanning-path law");
}

Verdict suite_complete_law(std::uint64_t seed, int) {
  const int n = 4;
  const long reps = 200000;
  Rng rng(seed);
  ProbWeights w = ProbWeights::uniform(n);
  std::map<std::string, long> counts;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    ++counts[tree_key(cut_complete(t, w, rng).cut_tree)];
  }
  auto gof = chi_square_gof(counts, exact_tree_law(w));
  return make_verdict("complete-law", gof.p_value, 1e-3, gof.p_value > 1e-3, seed, reps,
                      "chi-square p-value of complete cut trees against the tree law");
}

Verdict suite_one_duality(std::uint64_t seed, int) {
  const int n = 4;
  const long reps = 200000;
  Rng rng(seed);
  ProbWeights w = ProbWeights::uniform(n);

  // Joint law of (shuffled tree, target) against pmf x weights.
  std::map<std::string, long> counts;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    RootedTree s = shuff_one(t, w, v, rng);
    ++counts[tree_key(s) + static_cast<char>(v)];
  }
  std::map<std::string, double> expected;
  for (const auto& [key, p] : exact_tree_law(w))
    for (int v = 1; v <= n; ++v) expected[key + static_cast<char>(v)] = p * w.p(v);
  auto gof = chi_square_gof(counts, expected);

  // Structural half: recorded marks rebuild the original tree exactly.
  long failures = 0;
  for (long i = 0; i < 10000; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    OneCutRecord rec = cut_one(t, w, v, rng);
    if (!(reverse_one(rec) == t)) ++failures;
  }
  const bool pass = gof.p_value > 1e-3 && failures == 0;
  return make_verdict("one-duality", gof.p_value, 1e-3, pass, seed, reps,
                      "joint-law chi-square p-value; exact reversals failed: " +
                          std::to_string(failures) + "/10000");
}

Verdict suite_k_coupling(std::uint64_t seed, int) {
  const int n = 30, big_k = 4;
  const long reps = 10000;
  Rng rng(seed);
  ProbWeights w = random_weights(n, rng);
  long failures = 0;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    std::vector<int> targets;
    for (int j = 0; j < big_k; ++j) targets.push_back(draw_vertex(w, rng));
    auto family = coupled_cut_family(t, w, targets, rng);
    for (int k = 0; k + 1 < big_k; ++k) {
      std::vector<int> prefix(targets.begin(), targets.begin() + k + 1);
      if (!family[k].backbone.same_shape(span_subset(family[k + 1].backbone, prefix)))
        ++failures;
    }
  }
  return make_verdict("k-coupling", static_cast<double>(failures), 0.0, failures == 0, seed,
                      reps, "nested-skeleton mismatches across the shared-stream family");
}

Verdict suite_rewire_validity(std::uint64_t seed, int) {
  const long reps = 100000;
  Rng rng(seed);
  long failures = 0;
  for (long i = 0; i < reps; ++i) {
    const int n = 1 + static_cast<int>(rng.below(10));
    ProbWeights w = random_weights(n, rng);
    RootedTree h = sample_ptree(w, rng);
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> targets;
    for (int j = 0; j < k; ++j) targets.push_back(1 + static_cast<int>(rng.below(n)));

    // Uniformly random admissible marks, independent of the weights.
    EulerIndex euler(h);
    SubsetTree backbone = span(h, targets);
    MarkMap marks;
    for (int wv : backbone.vertices) {
      if (wv == backbone.root) continue;
      const int lo = euler.tin[wv], hi = euler.tout[wv];
      marks[wv] = euler.order[lo + static_cast<int>(rng.below(hi - lo))];
    }
    try {
      validate(rewire(h, targets, marks));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return make_verdict("rewire-validity", static_cast<double>(failures), 0.0, failures == 0,
                      seed, reps, "rewired graphs failing the tree invariants");
}

Verdict suite_rayleigh(std::uint64_t seed, int threads) {
  const int n = 10000;
  const long reps = 20000;
  Rng master(seed);
  ProbWeights w = ProbWeights::uniform(n);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));
  auto samples = parallel_map<double>(reps, threads, master, [&](long, Rng& rng) {
    RootedTree t = sample_ptree(w, rng);
    const int v = 1 + static_cast<int>(rng.below(n));
    return sigma * cut_one(t, w, v, rng).cut_count();
  });
  auto ks = ks_test(samples, [](double x) { return 1.0 - std::exp(-0.5 * x * x); });
  return make_verdict("rayleigh", ks.statistic, 0.02, ks.statistic < 0.02, seed, reps,
                      "KS distance of scaled cut counts to the Rayleigh CDF");
}

Verdict suite_line_break_law(std::uint64_t seed, int threads) {
  const long reps = 100000;
  Rng master(seed);
  const double half = 1.0 / std::sqrt(2.0);
  const std::vector<ThetaParam> cases{ThetaParam(1.0, {}), ThetaParam(half, {half})};
  double worst = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const ThetaParam& theta = cases[c];
    Rng sub = master.stream(1000 + c);
    auto samples = parallel_map<double>(reps, threads, sub, [&](long, Rng& rng) {
      return line_break(theta, 1, rng).total_length;
    });
    auto ks = ks_test(samples,
                      [&](double r) { return 1.0 - r1_length_survival(theta, r); });
    worst = std::max(worst, ks.statistic);
  }
  return make_verdict("line-break-law", worst, 0.01, worst < 0.01, seed, 2 * reps,
                      "max KS distance of first-segment lengths to the analytic law");
}

Verdict suite_pn_limit(std::uint64_t seed, int threads) {
  const int n = 5000;
  const long reps = 10000;
  const double half = 1.0 / std::sqrt(2.0);
  const ThetaParam theta(half, {half});
  ProbWeights w = build_pn(theta, n);
  const double sigma = std::sqrt(w.sum_squares());
  Rng master(seed);
  auto samples = parallel_map<double>(reps, threads, master, [&](long, Rng& rng) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    return sigma * cut_one(t, w, v, rng).cut_count();
  });
  auto ks = ks_test(samples, [&](double r) { return 1.0 - r1_length_survival(theta, r); });
  return make_verdict("pn-limit", ks.statistic, 0.05, ks.statistic < 0.05, seed, reps,
                      "KS distance of scaled cut counts to the matched continuum law");
}

Verdict suite_birthday(std::uint64_t seed, int) {
  const int n = 50;
  const long reps = 100000;
  Rng rng(seed);
  ProbWeights w = random_weights(n, rng);
  std::vector<double> repeats(reps), distances(reps);
  for (long i = 0; i < reps; ++i)
    repeats[i] = repeat_times(w, 1, rng).times[0] - 1.0;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    distances[i] = depths(t)[v];
  }
  auto ks = ks_two_sample(repeats, distances);
  return make_verdict("birthday", ks.statistic, 0.015, ks.statistic < 0.015, seed, 2 * reps,
                      "two-sample KS between first-repeat indices and root distances");
}

Verdict suite_walk_oracle(std::uint64_t seed, int) {
  const int n = 500, points_per_run = 6;
  const long reps = 1000;
  Rng rng(seed);
  ProbWeights w = ProbWeights::uniform(n);
  long failures = 0;
  for (long i = 0; i < reps; ++i) {
    RootedTree h = sample_ptree(w, rng);
    const int anchor = draw_vertex(w, rng);
    std::vector<int> points;
    for (int j = 0; j < points_per_run; ++j) points.push_back(draw_vertex(w, rng));
    WalkMatrices wm = shuffle_walk(h, w, anchor, points, rng);

    RootedTree rewired = rewire(h, {anchor}, wm.attach_marks);
    auto direct = distance_matrix(rewired, points);
    if (direct != wm.distance) ++failures;

    std::vector<std::vector<double>> d(points_per_run,
                                       std::vector<double>(points_per_run, 0.0));
    for (int a = 0; a < points_per_run; ++a)
      for (int b = 0; b < points_per_run; ++b) d[a][b] = wm.distance[a][b];
    if (!is_tree_metric(d, 1e-9)) ++failures;
  }
  return make_verdict("walk-oracle", static_cast<double>(failures), 0.0, failures == 0, seed,
                      reps, "walk distances disagreeing with the rewired tree");
}

Verdict suite_genealogy(std::uint64_t seed, int threads) {
  const int k = 2, m = 200;
  const long reps = 1000;
  Rng master(seed);
  const ThetaParam theta(1.0, {});
  std::atomic<long> failures{0};
  auto samples = parallel_map<double>(reps, threads, master, [&](long, Rng& rng) {
    auto g = genealogy_matrix(theta, k, m, std::numeric_limits<double>::infinity(), rng);
    bool ok = !g.horizon_reached && is_tree_metric(g.matrix, 1e-9);
    for (int a = 0; ok && a <= k; ++a)
      for (int b = 0; ok && b <= k; ++b)
        if (g.matrix[a][b] != g.matrix[b][a]) ok = false;
    if (!ok) failures.fetch_add(1);
    return g.matrix[0][1];
  });
  auto ks = ks_test(samples, [](double x) { return 1.0 - std::exp(-0.5 * x * x); });
  const bool pass = ks.statistic < 0.03 && failures.load() == 0;
  return make_verdict("genealogy", ks.statistic, 0.03, pass, seed, reps,
                      "KS of root-to-target genealogy distance vs Rayleigh; matrix "
                      "failures: " + std::to_string(failures.load()));
}

const SuiteSpec kSuites[] = {
    {"cayley", 0xA1001, suite_cayley},
    {"sampler-law", 0xA1002, suite_sampler_law},
    {"span-law", 0xA1003, suite_span_law},
    {"complete-law", 0xA1004, suite_complete_law},
    {"one-duality", 0xA1005, suite_one_duality},
    {"k-coupling", 0xA1006, suite_k_coupling},
    {"rewire-validity", 0xA1007, suite_rewire_validity},
    {"rayleigh", 0xA1008, suite_rayleigh},
    {"line-break-law", 0xA1009, suite_line_break_law},
    {"pn-limit", 0xA100A, suite_pn_limit},
    {"birthday", 0xA100B, suite_birthday},
    {"walk-oracle", 0xA100C, suite_walk_oracle},
    {"genealogy", 0xA100D, suite_genealogy},
};

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : kSuites) names.push_back(s.name);
  return names;
}

Verdict run_verify_suite(const std::string& name, std::optional<std::uint64_t> seed,
                         int threads) {
  for (const auto& s : kSuites) {
    if (name == s.name) return s.run(seed.value_or(s.default_seed), threads);
  }
  throw std::invalid_argument("unknown verification suite: " + name);
}

std::vector<Verdict> run_all_suites(std::optional<std::uint64_t> seed, int threads) {
  std::vector<Verdict> out;
  for (const auto& s : kSuites) out.push_back(s.run(seed.value_or(s.default_seed), threads));
  return out;
}

}  // namespace cuttree
