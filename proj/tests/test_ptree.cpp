#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "cuttree/ptree.hpp"
#include "cuttree/shuffle.hpp"
#include "cuttree/stats.hpp"
#include "cuttree/tree.hpp"

using namespace cuttree;

namespace {

RootedTree make_tree(int n, int root, std::vector<std::pair<int, int>> parent_pairs) {
  RootedTree t(n, root);
  for (auto [v, p] : parent_pairs) t.parent[v] = p;
  validate(t);
  return t;
}

ProbWeights dirichlet(int n, Rng& rng) {
  std::vector<double> w(n);
  long double s = 0.0L;
  for (double& x : w) {
    x = rng.exponential(1.0) + 1e-3;
    s += x;
  }
  for (double& x : w) x = static_cast<double>(x / s);
  return ProbWeights(std::move(w));
}

std::multiset<std::pair<int, int>> undirected_edges(const RootedTree& t) {
  std::multiset<std::pair<int, int>> out;
  for (int v = 1; v <= t.n; ++v)
    if (v != t.root) out.insert({std::min(v, t.parent[v]), std::max(v, t.parent[v])});
  return out;
}

}  // namespace

TEST_CASE("weights validation") {
  CHECK_THROWS(ProbWeights({0.5, 0.5, 0.1}));
  CHECK_THROWS(ProbWeights({1.0, 0.0}));
  CHECK_THROWS(ProbWeights({}));
  ProbWeights u = ProbWeights::uniform(4);
  CHECK(u.p(1) == doctest::Approx(0.25));
}

TEST_CASE("sample_ptree n=1") {
  ProbWeights w({1.0});
  Rng rng(1);
  RootedTree t = sample_ptree(w, rng);
  CHECK(t.n == 1);
  CHECK(t.root == 1);
}

TEST_CASE("sample_ptree root frequency n=2") {
  ProbWeights w = ProbWeights::uniform(2);
  Rng rng(2);
  long root_one = 0;
  const long reps = 100000;
  for (long i = 0; i < reps; ++i)
    if (sample_ptree(w, rng).root == 1) ++root_one;
  // Binomial(1e5, 1/2), three sigmas.
  CHECK(std::abs(root_one - 50000.0) < 3 * std::sqrt(reps * 0.25));
}

TEST_CASE("sample_ptree matches the exact law at n=4") {
  ProbWeights w = ProbWeights::uniform(4);
  Rng rng(3);
  std::map<std::string, long> counts;
  for (long i = 0; i < 50000; ++i) ++counts[tree_key(sample_ptree(w, rng))];
  CHECK(counts.size() == 64);
  auto gof = chi_square_gof(counts, exact_tree_law(w));
  CHECK(gof.p_value > 1e-3);
}

TEST_CASE("ptree_pmf closed forms") {
  ProbWeights half({0.5, 0.5});
  CHECK(ptree_pmf(half, make_tree(2, 1, {{2, 1}})) == doctest::Approx(0.5));

  ProbWeights third = ProbWeights::uniform(3);
  CHECK(ptree_pmf(third, make_tree(3, 1, {{2, 1}, {3, 2}})) == doctest::Approx(1.0 / 9));

  ProbWeights skew({0.5, 0.3, 0.2});
  CHECK(ptree_pmf(skew, make_tree(3, 1, {{2, 1}, {3, 1}})) == doctest::Approx(0.25));

  CHECK_THROWS_WITH(ptree_pmf(half, make_tree(3, 1, {{2, 1}, {3, 1}})),
                    "incompatible dimensions");
}

TEST_CASE("ptree_pmf log-space path agrees") {
  // n > 64 switches to the log-space product; star trees have a closed form.
  const int n = 100;
  RootedTree star(n, 1);
  for (int v = 2; v <= n; ++v) star.parent[v] = 1;
  ProbWeights w = ProbWeights::uniform(n);
  const double expected = std::exp((n - 1) * std::log(1.0 / n));
  CHECK(ptree_pmf(w, star) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("enumerate_rooted_trees counts and mass") {
  long c1 = 0, c2 = 0, c4 = 0;
  enumerate_rooted_trees(1, [&](const RootedTree&) { ++c1; });
  enumerate_rooted_trees(2, [&](const RootedTree&) { ++c2; });
  std::set<std::string> keys;
  enumerate_rooted_trees(4, [&](const RootedTree& t) {
    ++c4;
    validate(t);
    keys.insert(tree_key(t));
  });
  CHECK(c1 == 1);
  CHECK(c2 == 2);
  CHECK(c4 == 64);
  CHECK(keys.size() == 64);

  Rng rng(4);
  for (const ProbWeights& w : {ProbWeights::uniform(4), dirichlet(4, rng)}) {
    long double mass = 0.0L;
    enumerate_rooted_trees(4, [&](const RootedTree& t) { mass += ptree_pmf(w, t); });
    CHECK(std::abs(static_cast<double>(mass - 1.0L)) < 1e-9);
  }
  CHECK_THROWS_WITH(enumerate_rooted_trees(9, [](const RootedTree&) {}),
                    "enumeration bound exceeded");
}

TEST_CASE("reroot basics") {
  RootedTree t2 = make_tree(2, 1, {{2, 1}});
  CHECK(reroot(t2, 1) == t2);
  RootedTree r = reroot(t2, 2);
  CHECK(r.root == 2);
  CHECK(r.parent[1] == 2);

  Rng rng(5);
  ProbWeights w = dirichlet(8, rng);
  for (int rep = 0; rep < 200; ++rep) {
    RootedTree t = sample_ptree(w, rng);
    const int v = 1 + static_cast<int>(rng.below(8));
    RootedTree tv = reroot(t, v);
    validate(tv);
    CHECK(undirected_edges(tv) == undirected_edges(t));
    CHECK(reroot(tv, t.root) == t);
  }
}

TEST_CASE("rerooting at an independent vertex preserves the law") {
  // sum over (t, v) of pmf(t) p_v [t rerooted at v == s] equals pmf(s).
  ProbWeights w({0.4, 0.3, 0.2, 0.1});
  std::map<std::string, double> rerooted;
  enumerate_rooted_trees(4, [&](const RootedTree& t) {
    const double pi = ptree_pmf(w, t);
    for (int v = 1; v <= 4; ++v) rerooted[tree_key(reroot(t, v))] += pi * w.p(v);
  });
  enumerate_rooted_trees(4, [&](const RootedTree& s) {
    CHECK(rerooted[tree_key(s)] == doctest::Approx(ptree_pmf(w, s)).epsilon(1e-12));
  });
}

TEST_CASE("span basics and oracle") {
  RootedTree path = make_tree(4, 1, {{2, 1}, {3, 2}, {4, 3}});
  SubsetTree s1 = span(path, {1});
  CHECK(s1.vertices == std::vector<int>{1});
  SubsetTree s4 = span(path, {4});
  CHECK(s4.vertices.size() == 4);

  CHECK_THROWS(span(path, {}));

  Rng rng(6);
  ProbWeights w = dirichlet(6, rng);
  for (int rep = 0; rep < 100; ++rep) {
    RootedTree t = sample_ptree(w, rng);
    std::vector<int> targets;
    for (int j = 0; j < 2; ++j) targets.push_back(1 + static_cast<int>(rng.below(6)));
    SubsetTree s = span(t, targets);
    // Independent oracle: union of parent walks.
    std::set<int> expect;
    for (int v : targets)
      for (int u = v; u != 0; u = t.parent[u]) expect.insert(u);
    std::set<int> got(s.vertices.begin(), s.vertices.end());
    CHECK(got == expect);
    for (int v : s.vertices)
      if (v != s.root) CHECK(s.parent.at(v) == t.parent[v]);
  }

  // Spanning every vertex gives the tree back.
  RootedTree t = sample_ptree(w, rng);
  SubsetTree all = span(t, {1, 2, 3, 4, 5, 6});
  CHECK(all.vertices.size() == 6);
}

TEST_CASE("subtree_above basics, oracle, partition") {
  Rng rng(7);
  ProbWeights w = dirichlet(6, rng);
  for (int rep = 0; rep < 100; ++rep) {
    RootedTree t = sample_ptree(w, rng);
    auto full = subtree_above(t, t.root);
    CHECK(full.size() == 6);
    auto ch = children_lists(t);
    for (int u = 1; u <= 6; ++u) {
      // Reachability oracle over children lists.
      std::set<int> expect;
      std::vector<int> stack{u};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        expect.insert(x);
        for (int c : ch[x]) stack.push_back(c);
      }
      auto got = subtree_above(t, u);
      CHECK(std::set<int>(got.begin(), got.end()) == expect);
    }
    // Children subtrees plus the root partition the label set.
    std::set<int> seen{t.root};
    std::size_t total = 1;
    for (int c : ch[t.root]) {
      auto sub = subtree_above(t, c);
      total += sub.size();
      seen.insert(sub.begin(), sub.end());
    }
    CHECK(total == 6);
    CHECK(seen.size() == 6);
  }
}

TEST_CASE("repeat_times conventions") {
  // Single support: the first redraw duplicates immediately.
  ProbWeights one({1.0});
  Rng rng(8);
  RepeatTimes r = repeat_times(one, 3, rng);
  CHECK(r.times == std::vector<int>{1, 2, 3});

  // Two uniform labels: the first repeat happens at index 1 (the second draw
  // equals the first) or at index 2 (forced), each with probability 1/2.
  ProbWeights two = ProbWeights::uniform(2);
  long at_one = 0;
  const long reps = 100000;
  for (long i = 0; i < reps; ++i) {
    RepeatTimes rt = repeat_times(two, 1, rng);
    const int shifted = rt.times[0] - 1;
    CHECK(shifted >= 0);
    CHECK(shifted <= 1);
    if (shifted == 0) ++at_one;
    CHECK(static_cast<int>(rt.walk.size()) == rt.times[0] + 1);
  }
  CHECK(std::abs(at_one - reps / 2.0) < 3 * std::sqrt(reps * 0.25));
}

TEST_CASE("first repeat index matches the root distance law") {
  const int n = 20;
  Rng rng(9);
  ProbWeights w = dirichlet(n, rng);
  const long reps = 20000;
  std::vector<double> repeats(reps), dists(reps);
  for (long i = 0; i < reps; ++i) repeats[i] = repeat_times(w, 1, rng).times[0] - 1.0;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    dists[i] = depths(t)[draw_vertex(w, rng)];
  }
  CHECK(ks_two_sample(repeats, dists).statistic < 0.03);
}

TEST_CASE("sampled trees always satisfy the invariants") {
  Rng rng(10);
  for (int rep = 0; rep < 2000; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(12));
    ProbWeights w = dirichlet(n, rng);
    RootedTree t = sample_ptree(w, rng);
    validate(t);
    auto c = child_counts(t);
    long total = 0;
    for (int v = 1; v <= n; ++v) total += c[v];
    CHECK(total == n - 1);
  }
}
