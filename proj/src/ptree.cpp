#include "cuttree/ptree.hpp"

#include <cmath>
#include <stdexcept>

#include "cuttree/alias.hpp"

namespace cuttree {

RootedTree sample_ptree(const ProbWeights& weights, Rng& rng) {
  const int n = weights.n();
  RootedTree t(n, 0);
  std::vector<int> verts(n);
  std::vector<double> w(n);
  for (int v = 1; v <= n; ++v) {
    verts[v - 1] = v;
    w[v - 1] = weights.p(v);
  }
  AliasTable table(verts, w);

  std::vector<char> seen(n + 1, 0);
  int prev = table.draw(rng);
  t.root = prev;
  seen[prev] = 1;
  int covered = 1;
  constexpr long kMaxSteps = 1000000000L;
  for (long step = 0; covered < n; ++step) {
    if (step >= kMaxSteps) throw std::runtime_error("walk did not cover support");
    int v = table.draw(rng);
    if (!seen[v]) {
      seen[v] = 1;
      t.parent[v] = prev;
      ++covered;
    }
    prev = v;
  }
  return t;
}

double ptree_pmf(const ProbWeights& weights, const RootedTree& tree) {
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");
  auto counts = child_counts(tree);
  if (tree.n > 64) {
    double logp = 0.0;
    for (int v = 1; v <= tree.n; ++v)
      if (counts[v] > 0) logp += counts[v] * std::log(weights.p(v));
    return std::exp(logp);
  }
  double p = 1.0;
  for (int v = 1; v <= tree.n; ++v)
    for (int c = 0; c < counts[v]; ++c) p *= weights.p(v);
  return p;
}

void enumerate_rooted_trees(int n, const std::function<void(const RootedTree&)>& fn) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > 8) throw std::invalid_argument("enumeration bound exceeded");
  RootedTree t(n, 1);
  if (n == 1) {
    fn(t);
    return;
  }
  // Odometer over parent assignments of the non-root vertices, for each root;
  // exactly the acyclic assignments are emitted. Epoch stamps keep the
  // validity check allocation-free.
  std::vector<long> confirmed(n + 1, -1), visiting(n + 1, -1);
  long epoch = 0, walk = 0;
  auto is_tree = [&]() {
    ++epoch;
    confirmed[t.root] = epoch;
    for (int v = 1; v <= n; ++v) {
      ++walk;
      int u = v;
      while (confirmed[u] != epoch) {
        if (visiting[u] == walk) return false;  // cycle
        visiting[u] = walk;
        u = t.parent[u];
      }
      u = v;
      while (confirmed[u] != epoch) {
        confirmed[u] = epoch;
        u = t.parent[u];
      }
    }
    return true;
  };
  for (int root = 1; root <= n; ++root) {
    t.root = root;
    std::vector<int> slots;
    for (int v = 1; v <= n; ++v) {
      t.parent[v] = 0;
      if (v != root) slots.push_back(v);
    }
    for (int v : slots) t.parent[v] = 1;
    for (;;) {
      if (is_tree()) fn(t);
      int i = static_cast<int>(slots.size()) - 1;
      while (i >= 0 && t.parent[slots[i]] == n) {
        t.parent[slots[i]] = 1;
        --i;
      }
      if (i < 0) break;
      ++t.parent[slots[i]];
    }
  }
}

RepeatTimes repeat_times(const ProbWeights& weights, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("repeat count must be positive");
  const int n = weights.n();
  std::vector<int> verts(n);
  std::vector<double> w(n);
  for (int v = 1; v <= n; ++v) {
    verts[v - 1] = v;
    w[v - 1] = weights.p(v);
  }
  AliasTable table(verts, w);

  RepeatTimes out;
  std::vector<char> seen(n + 1, 0);
  int x0 = table.draw(rng);
  out.walk.push_back(x0);
  seen[x0] = 1;
  int repeats = 0;
  for (int j = 1; repeats < m; ++j) {
    int x = table.draw(rng);
    out.walk.push_back(x);
    if (seen[x]) {
      out.times.push_back(j);
      ++repeats;
    } else {
      seen[x] = 1;
    }
  }
  return out;
}

}  // namespace cuttree
