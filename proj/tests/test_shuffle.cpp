#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "cuttree/cutting.hpp"
#include "cuttree/ptree.hpp"
#include "cuttree/shuffle.hpp"
#include "cuttree/stats.hpp"

using namespace cuttree;

namespace {

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

std::set<std::pair<int, int>> undirected_edges(const RootedTree& t) {
  std::set<std::pair<int, int>> out;
  for (int v = 1; v <= t.n; ++v)
    if (v != t.root) out.insert({std::min(v, t.parent[v]), std::max(v, t.parent[v])});
  return out;
}

}  // namespace

TEST_CASE("rewire with the root as only target is the identity") {
  Rng rng(41);
  ProbWeights w = dirichlet(6, rng);
  RootedTree h = sample_ptree(w, rng);
  CHECK(rewire(h, {h.root}, {}) == h);
}

TEST_CASE("rewire on a path, forced marks") {
  RootedTree h(3, 1);
  h.parent[2] = 1;
  h.parent[3] = 2;
  MarkMap marks{{2, 3}, {3, 3}};
  RootedTree out = rewire(h, {3}, marks);
  CHECK(out.root == 1);
  CHECK(out.parent[3] == 1);
  CHECK(out.parent[2] == 3);
}

TEST_CASE("rewire rejects marks outside the admissible subtree") {
  RootedTree h(3, 1);
  h.parent[2] = 1;
  h.parent[3] = 2;
  MarkMap marks{{2, 1}, {3, 3}};  // 1 is not above 2
  CHECK_THROWS_WITH(rewire(h, {3}, marks), "mark outside admissible subtree");
}

TEST_CASE("rewire always yields a tree on the same labels") {
  Rng rng(42);
  for (int rep = 0; rep < 5000; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(10));
    ProbWeights w = dirichlet(n, rng);
    RootedTree h = sample_ptree(w, rng);
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> targets;
    for (int j = 0; j < k; ++j) targets.push_back(1 + static_cast<int>(rng.below(n)));
    EulerIndex euler(h);
    SubsetTree bb = span(h, targets);
    MarkMap marks;
    for (int wv : bb.vertices) {
      if (wv == bb.root) continue;
      const int lo = euler.tin[wv], hi = euler.tout[wv];
      marks[wv] = euler.order[lo + static_cast<int>(rng.below(hi - lo))];
    }
    RootedTree out = rewire(h, targets, marks);
    validate(out);
    CHECK(out.root == h.root);
  }
}

TEST_CASE("sample_marks honors subtree restrictions") {
  // Successor that is a leaf: the mark is forced.
  RootedTree h(3, 1);
  h.parent[2] = 1;
  h.parent[3] = 1;
  Rng rng(43);
  ProbWeights w({0.2, 0.5, 0.3});
  MarkMap m = sample_marks(h, {2, 3}, w, rng);
  CHECK(m.at(2) == 2);
  CHECK(m.at(3) == 3);

  // Successor whose subtree is {2,3}: frequencies proportional to weights.
  RootedTree path(3, 1);
  path.parent[2] = 1;
  path.parent[3] = 2;
  long hit2 = 0;
  const long reps = 20000;
  for (long i = 0; i < reps; ++i) {
    MarkMap mm = sample_marks(path, {3}, w, rng);
    if (mm.at(2) == 2) ++hit2;
  }
  const double p2 = w.p(2) / (w.p(2) + w.p(3));
  CHECK(std::abs(hit2 - reps * p2) < 4 * std::sqrt(reps * p2 * (1 - p2)));
}

TEST_CASE("shuff_one keeps the joint law and reverses exactly") {
  const int n = 4;
  ProbWeights w = ProbWeights::uniform(n);
  Rng rng(44);

  std::map<std::string, long> counts;
  const long reps = 50000;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    ++counts[tree_key(shuff_one(t, w, v, rng)) + static_cast<char>(v)];
  }
  std::map<std::string, double> expected;
  for (const auto& [key, p] : exact_tree_law(w))
    for (int v = 1; v <= n; ++v) expected[key + static_cast<char>(v)] = p * w.p(v);
  CHECK(chi_square_gof(counts, expected).p_value > 1e-3);

  for (int rep = 0; rep < 1000; ++rep) {
    const int nn = 1 + static_cast<int>(rng.below(10));
    ProbWeights ww = dirichlet(nn, rng);
    RootedTree t = sample_ptree(ww, rng);
    const int v = draw_vertex(ww, rng);
    OneCutRecord rec = cut_one(t, ww, v, rng);
    CHECK(reverse_one(rec) == t);
  }
}

TEST_CASE("shuff_k reduces to shuff_one and reverses from records") {
  Rng master(45);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(master.below(8));
    ProbWeights w = dirichlet(n, master);
    RootedTree h = sample_ptree(w, master);
    const int v = draw_vertex(w, master);
    Rng a = master.stream(rep), b = master.stream(rep);
    CHECK(shuff_k(h, w, {v}, a) == shuff_one(h, w, v, b));
  }
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + static_cast<int>(master.below(11));
    ProbWeights w = dirichlet(n, master);
    RootedTree t = sample_ptree(w, master);
    const int k = 1 + static_cast<int>(master.below(3));
    std::vector<int> targets;
    for (int j = 0; j < k; ++j) targets.push_back(draw_vertex(w, master));
    KCutRecord rec = cut_k(t, w, targets, master);
    CHECK(reverse_k(rec) == t);
  }
}

TEST_CASE("shuff_k joint law at n=4, k=2") {
  const int n = 4;
  ProbWeights w = ProbWeights::uniform(n);
  Rng rng(46);
  const long reps = 100000;
  std::map<std::string, long> counts;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v1 = draw_vertex(w, rng), v2 = draw_vertex(w, rng);
    RootedTree s = shuff_k(t, w, {v1, v2}, rng);
    ++counts[tree_key(s) + static_cast<char>(v1) + static_cast<char>(v2)];
  }
  std::map<std::string, double> expected;
  for (const auto& [key, p] : exact_tree_law(w))
    for (int v1 = 1; v1 <= n; ++v1)
      for (int v2 = 1; v2 <= n; ++v2)
        expected[key + static_cast<char>(v1) + static_cast<char>(v2)] = p * w.p(v1) * w.p(v2);
  CHECK(chi_square_gof(counts, expected).p_value > 1e-3);
}

TEST_CASE("shuff_complete law and adjacency reversal") {
  // Two vertices: the rewired tree always keeps the single edge, so the law
  // of the output is just the law of the fresh root.
  ProbWeights two({0.3, 0.7});
  RootedTree t2(2, 1);
  t2.parent[2] = 1;
  Rng rng(47);
  long root1 = 0;
  const long reps = 20000;
  for (long i = 0; i < reps; ++i)
    if (shuff_complete(t2, two, rng).root == 1) ++root1;
  CHECK(std::abs(root1 - reps * 0.3) < 4 * std::sqrt(reps * 0.3 * 0.7));

  const int n = 4;
  ProbWeights w = ProbWeights::uniform(n);
  std::map<std::string, long> counts;
  for (long i = 0; i < 50000; ++i) {
    RootedTree g = sample_ptree(w, rng);
    ++counts[tree_key(shuff_complete(g, w, rng))];
  }
  CHECK(chi_square_gof(counts, exact_tree_law(w)).p_value > 1e-3);

  // Exact adjacency reversal; the root is not recoverable.
  for (int rep = 0; rep < 500; ++rep) {
    const int nn = 2 + static_cast<int>(rng.below(10));
    ProbWeights ww = dirichlet(nn, rng);
    RootedTree t = sample_ptree(ww, rng);
    CompleteCutRecord rec = cut_complete(t, ww, rng);
    CHECK(undirected_edges(reverse_complete(rec)) == undirected_edges(t));
  }
}

TEST_CASE("cut and shuffle are dual in law") {
  const int n = 4;
  ProbWeights w = ProbWeights::uniform(n);
  Rng rng(48);
  const long reps = 200000;
  auto exact = exact_tree_law(w);

  // Forward route: (T, cut(T,V), V); reverse route: (shuff(H,U), H, U).
  std::map<std::string, long> h_counts, s_counts, pair_fwd, pair_rev;
  for (long i = 0; i < reps; ++i) {
    RootedTree t = sample_ptree(w, rng);
    const int v = draw_vertex(w, rng);
    OneCutRecord rec = cut_one(t, w, v, rng);
    ++h_counts[tree_key(rec.cut_tree)];
    const int span_t = depths(t)[v] + 1;
    const int span_h = rec.cut_count();
    ++pair_fwd[std::string{static_cast<char>(span_t), static_cast<char>(span_h)}];
  }
  for (long i = 0; i < reps; ++i) {
    RootedTree h = sample_ptree(w, rng);
    const int u = draw_vertex(w, rng);
    RootedTree s = shuff_one(h, w, u, rng);
    ++s_counts[tree_key(s)];
    const int span_s = depths(s)[u] + 1;
    const int span_h = depths(h)[u] + 1;
    ++pair_rev[std::string{static_cast<char>(span_s), static_cast<char>(span_h)}];
  }
  CHECK(tv_against_pmf(h_counts, exact) < 0.02);
  CHECK(tv_against_pmf(s_counts, exact) < 0.02);
  CHECK(empirical_tv(pair_fwd, pair_rev) < 0.02);
}

TEST_CASE("shuff_k approaches shuff_complete as targets accumulate") {
  const int n = 4;
  ProbWeights w = ProbWeights::uniform(n);
  RootedTree g(4, 1);  // fixed tree: 1 - 2 - 3, 2 - 4
  g.parent[2] = 1;
  g.parent[3] = 2;
  g.parent[4] = 2;
  Rng rng(49);
  const long reps = 100000;

  std::map<std::string, long> complete_counts;
  for (long i = 0; i < reps; ++i) ++complete_counts[tree_key(shuff_complete(g, w, rng))];

  std::vector<double> tvs;
  for (int k : {1, 2, 4, 8}) {
    std::map<std::string, long> counts;
    for (long i = 0; i < reps; ++i) {
      std::vector<int> targets;
      for (int j = 0; j < k; ++j) targets.push_back(draw_vertex(w, rng));
      ++counts[tree_key(shuff_k(g, w, targets, rng))];
    }
    tvs.push_back(empirical_tv(counts, complete_counts));
  }
  for (std::size_t i = 0; i + 1 < tvs.size(); ++i) CHECK(tvs[i + 1] < tvs[i] + 0.01);
  CHECK(tvs.back() < tvs.front());
}
