#include "cuttree/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuttree {

void validate(const RootedTree& t) {
  if (t.n < 1) throw std::invalid_argument("tree must have at least one vertex");
  if (t.root < 1 || t.root > t.n) throw std::invalid_argument("root out of range");
  if (static_cast<int>(t.parent.size()) != t.n + 1)
    throw std::invalid_argument("parent map has wrong size");
  if (t.parent[t.root] != 0) throw std::invalid_argument("root must have no parent");
  for (int v = 1; v <= t.n; ++v) {
    if (v == t.root) continue;
    if (t.parent[v] < 1 || t.parent[v] > t.n)
      throw std::invalid_argument("missing parent entry");
  }
  // Every vertex must reach the root without revisiting anything.
  std::vector<int> state(t.n + 1, 0);  // 0 unseen, 1 on stack, 2 done
  state[t.root] = 2;
  std::vector<int> path;
  for (int v = 1; v <= t.n; ++v) {
    int u = v;
    path.clear();
    while (state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = t.parent[u];
    }
    if (state[u] == 1) throw std::invalid_argument("parent map contains a cycle");
    for (int w : path) state[w] = 2;
  }
}

std::vector<std::vector<int>> children_lists(const RootedTree& t) {
  std::vector<std::vector<int>> ch(t.n + 1);
  for (int v = 1; v <= t.n; ++v)
    if (v != t.root) ch[t.parent[v]].push_back(v);
  return ch;
}

std::vector<int> child_counts(const RootedTree& t) {
  std::vector<int> c(t.n + 1, 0);
  for (int v = 1; v <= t.n; ++v)
    if (v != t.root) ++c[t.parent[v]];
  return c;
}

std::vector<int> topological_order(const RootedTree& t) {
  auto ch = children_lists(t);
  std::vector<int> order;
  order.reserve(t.n);
  order.push_back(t.root);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : ch[order[i]]) order.push_back(c);
  return order;
}

std::vector<int> depths(const RootedTree& t) {
  std::vector<int> d(t.n + 1, 0);
  for (int v : topological_order(t))
    if (v != t.root) d[v] = d[t.parent[v]] + 1;
  return d;
}

RootedTree reroot(const RootedTree& t, int v) {
  if (v < 1 || v > t.n) throw std::invalid_argument("reroot vertex out of range");
  RootedTree out = t;
  if (v == t.root) return out;
  int cur = v, prev = 0;
  while (cur != 0) {
    int up = t.parent[cur];
    out.parent[cur] = prev;
    prev = cur;
    cur = up;
  }
  out.root = v;
  return out;
}

SubsetTree span(const RootedTree& t, const std::vector<int>& targets) {
  if (targets.empty()) throw std::invalid_argument("span targets must be nonempty");
  std::vector<char> in(t.n + 1, 0);
  for (int v : targets) {
    if (v < 1 || v > t.n) throw std::invalid_argument("span target out of range");
    int u = v;
    while (u != 0 && !in[u]) {
      in[u] = 1;
      u = t.parent[u];
    }
  }
  SubsetTree s;
  s.root = t.root;
  for (int v = 1; v <= t.n; ++v) {
    if (!in[v]) continue;
    s.vertices.push_back(v);
    if (v != t.root) s.parent[v] = t.parent[v];
  }
  return s;
}

std::vector<int> subtree_above(const RootedTree& t, int u) {
  if (u < 1 || u > t.n) throw std::invalid_argument("vertex out of range");
  auto ch = children_lists(t);
  std::vector<int> out{u};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int c : ch[out[i]]) out.push_back(c);
  return out;
}

int graph_distance(const RootedTree& t, int a, int b) {
  auto d = depths(t);
  int steps = 0;
  while (a != b) {
    if (d[a] < d[b]) std::swap(a, b);
    a = t.parent[a];
    ++steps;
  }
  return steps;
}

std::vector<std::vector<int>> distance_matrix(const RootedTree& t,
                                              const std::vector<int>& points) {
  auto d = depths(t);
  const std::size_t k = points.size();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      int a = points[i], b = points[j], steps = 0;
      while (a != b) {
        if (d[a] < d[b]) std::swap(a, b);
        a = t.parent[a];
        ++steps;
      }
      m[i][j] = m[j][i] = steps;
    }
  }
  return m;
}

EulerIndex::EulerIndex(const RootedTree& t)
    : tin(t.n + 1, 0), tout(t.n + 1, 0), order(t.n, 0) {
  auto ch = children_lists(t);
  int clock = 0;
  // Iterative DFS; second visit closes the interval.
  std::vector<std::pair<int, bool>> stack{{t.root, false}};
  while (!stack.empty()) {
    auto [v, closing] = stack.back();
    stack.pop_back();
    if (closing) {
      tout[v] = clock;
      continue;
    }
    tin[v] = clock;
    order[clock] = v;
    ++clock;
    stack.emplace_back(v, true);
    for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it)
      stack.emplace_back(*it, false);
  }
}

bool SubsetTree::same_shape(const SubsetTree& other) const {
  if (root != other.root || vertices.size() != other.vertices.size()) return false;
  auto a = vertices, b = other.vertices;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  return parent == other.parent;
}

std::string tree_key(const RootedTree& t) {
  std::string key;
  key.reserve(t.n + 1);
  key.push_back(static_cast<char>(t.root));
  for (int v = 1; v <= t.n; ++v) key.push_back(static_cast<char>(t.parent[v]));
  return key;
}

}  // namespace cuttree
