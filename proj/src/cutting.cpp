#include "cuttree/cutting.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cuttree {

namespace {

void check_vertex(const RootedTree& t, int v) {
  if (v < 1 || v > t.n) throw std::invalid_argument("vertex out of range");
}

// Fragmentation state shared by the k-target and complete procedures.
// Components are split by flood fill at every cut; pieces that keep no
// target are discarded (unless survive_all) and their vertices reported
// through on_remove so the caller can drop them from its sampler.
class FragmentationRun {
 public:
  FragmentationRun(const RootedTree& t, std::vector<int> targets, bool survive_all,
                   std::function<void(int)> on_remove)
      : tree_(t),
        targets_(std::move(targets)),
        survive_all_(survive_all),
        on_remove_(std::move(on_remove)),
        adj_(t.n + 1),
        comp_of_(t.n + 1, 0),
        alive_(t.n + 1, 1),
        h_parent_(t.n + 1, 0) {
    for (int v = 1; v <= t.n; ++v) {
      if (v == t.root) continue;
      adj_[v].push_back(t.parent[v]);
      adj_[t.parent[v]].push_back(v);
    }
    comps_.push_back(Comp{});
    for (std::size_t i = 0; i < targets_.size(); ++i) comps_[0].classes.push_back(static_cast<int>(i));
    live_classes_ = static_cast<int>(targets_.size());
    effective_sets_.resize(targets_.size());
  }

  bool done() const {
    return survive_all_ ? static_cast<int>(cut_sequence_.size()) == tree_.n : live_classes_ == 0;
  }

  bool is_alive(int v) const { return alive_[v] != 0; }

  void cut_at(int x) {
    const int c = comp_of_[x];
    cut_sequence_.push_back(x);
    if (comps_[c].last_cut != 0) {
      h_parent_[x] = comps_[c].last_cut;
      mark_of_[x] = comps_[c].pending_mark;
    } else {
      h_root_ = x;
    }
    for (int cls : comps_[c].classes) effective_sets_[cls].push_back(x);

    std::vector<int> neighbors;
    for (int u : adj_[x])
      if (alive_[u] && comp_of_[u] == c) neighbors.push_back(u);

    alive_[x] = 0;
    if (on_remove_) on_remove_(x);

    std::vector<int> live_classes_here;
    for (int cls : comps_[c].classes) {
      if (targets_[cls] == x)
        --live_classes_;
      else
        live_classes_here.push_back(cls);
    }

    // Flood-fill the pieces left by the removal of x.
    std::vector<int> piece_ids;
    for (int seed : neighbors) {
      if (comp_of_[seed] != c || !alive_[seed]) continue;  // already refilled
      const int nc = static_cast<int>(comps_.size());
      comps_.push_back(Comp{x, seed, {}});
      piece_ids.push_back(nc);
      bfs_piece(seed, c, nc);
    }
    for (int cls : live_classes_here) comps_[comp_of_[targets_[cls]]].classes.push_back(cls);

    // The detached marks are the neighbors toward surviving pieces; edges
    // into discarded pieces are kept inside the fragment rooted at x.
    std::vector<int> detached;
    for (int nc : piece_ids) {
      if (survive_all_ || !comps_[nc].classes.empty()) {
        detached.push_back(comps_[nc].pending_mark);
        continue;
      }
      for (int v : piece_members_[nc]) {
        alive_[v] = 0;
        if (on_remove_) on_remove_(v);
        h_parent_[v] = bfs_parent_[v];
      }
      h_parent_[comps_[nc].pending_mark] = x;
    }
    mark_sets_.push_back(detached);
  }

  const std::vector<int>& cut_sequence() const { return cut_sequence_; }

  RootedTree cut_tree() const {
    RootedTree h(tree_.n, h_root_);
    h.parent = h_parent_;
    h.parent[h_root_] = 0;
    return h;
  }

  std::vector<std::vector<int>> take_mark_sets() { return std::move(mark_sets_); }
  std::unordered_map<int, int> take_mark_of() { return std::move(mark_of_); }
  std::vector<std::vector<int>> take_effective_sets() { return std::move(effective_sets_); }

 private:
  struct Comp {
    int last_cut = 0;      // previous cut in this component, 0 for none
    int pending_mark = 0;  // vertex that was attached to last_cut on this side
    std::vector<int> classes;
  };

  void bfs_piece(int seed, int old_comp, int new_comp) {
    bfs_parent_.resize(tree_.n + 1, 0);
    piece_members_.resize(comps_.size());
    auto& members = piece_members_[new_comp];
    members.clear();
    members.push_back(seed);
    comp_of_[seed] = new_comp;
    bfs_parent_[seed] = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int u = members[i];
      for (int w : adj_[u]) {
        if (!alive_[w] || comp_of_[w] != old_comp) continue;
        comp_of_[w] = new_comp;
        bfs_parent_[w] = u;
        members.push_back(w);
      }
    }
  }

  const RootedTree& tree_;
  std::vector<int> targets_;
  bool survive_all_;
  std::function<void(int)> on_remove_;

  std::vector<std::vector<int>> adj_;
  std::vector<int> comp_of_;
  std::vector<char> alive_;
  std::vector<Comp> comps_;
  std::vector<std::vector<int>> piece_members_;
  std::vector<int> bfs_parent_;
  int live_classes_ = 0;

  std::vector<int> cut_sequence_;
  std::vector<std::vector<int>> mark_sets_;
  std::unordered_map<int, int> mark_of_;
  std::vector<std::vector<int>> effective_sets_;
  std::vector<int> h_parent_;
  int h_root_ = 0;
};

KCutRecord assemble_k_record(const RootedTree& tree, const std::vector<int>& targets,
                             FragmentationRun& run) {
  KCutRecord rec;
  rec.targets = targets;
  rec.cut_sequence = run.cut_sequence();
  rec.cut_tree = run.cut_tree();
  rec.mark_sets = run.take_mark_sets();
  rec.mark_of = run.take_mark_of();
  rec.effective_sets = run.take_effective_sets();
  rec.original_root = tree.root;

  rec.backbone.root = rec.cut_tree.root;
  rec.backbone.vertices = rec.cut_sequence;
  for (int x : rec.cut_sequence)
    if (x != rec.backbone.root) rec.backbone.parent[x] = rec.cut_tree.parent[x];
  rec.canonical_order = canonical_order(rec.backbone, targets);
  return rec;
}

}  // namespace

OneCutRecord cut_one(const RootedTree& tree, const ProbWeights& weights, int v, Rng& rng) {
  check_vertex(tree, v);
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");

  // Orient the tree at the target: the fragment discarded by a cut at x is
  // then exactly the subtree above x, so each step costs its fragment size.
  RootedTree tv = reroot(tree, v);
  // Children in CSR layout; this runs for large n in tight loops.
  std::vector<int> offset(tree.n + 2, 0), child(std::max(0, tree.n - 1));
  for (int u = 1; u <= tree.n; ++u)
    if (u != v) ++offset[tv.parent[u] + 1];
  for (int u = 1; u <= tree.n; ++u) offset[u + 1] += offset[u];
  {
    std::vector<int> cursor(offset.begin(), offset.end() - 1);
    for (int u = 1; u <= tree.n; ++u)
      if (u != v) child[cursor[tv.parent[u]]++] = u;
  }
  RestrictedSampler sampler(weights);

  OneCutRecord rec;
  rec.target = v;
  rec.original_root = tree.root;
  rec.cut_tree = RootedTree(tree.n, 0);

  std::vector<int> stack;
  int prev_cut = 0;
  for (;;) {
    const int x = sampler.draw(rng);
    rec.cut_sequence.push_back(x);
    if (prev_cut != 0)
      rec.cut_tree.parent[x] = prev_cut;
    else
      rec.cut_tree.root = x;
    if (x != v) rec.marks.push_back(tv.parent[x]);

    sampler.remove(x);
    stack.assign(1, x);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int i = offset[u]; i < offset[u + 1]; ++i) {
        const int c = child[i];
        if (!sampler.alive(c)) continue;
        sampler.remove(c);
        rec.cut_tree.parent[c] = tv.parent[c];
        stack.push_back(c);
      }
    }

    prev_cut = x;
    if (x == v) break;
  }
  return rec;
}

KCutRecord cut_k(const RootedTree& tree, const ProbWeights& weights,
                 const std::vector<int>& targets, Rng& rng) {
  if (targets.empty()) throw std::invalid_argument("targets must be nonempty");
  for (int v : targets) check_vertex(tree, v);
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");

  RestrictedSampler sampler(weights);
  FragmentationRun run(tree, targets, /*survive_all=*/false,
                       [&sampler](int v) { sampler.remove(v); });
  while (!run.done()) run.cut_at(sampler.draw(rng));
  return assemble_k_record(tree, targets, run);
}

std::vector<KCutRecord> coupled_cut_family(const RootedTree& tree, const ProbWeights& weights,
                                           const std::vector<int>& targets, Rng& rng) {
  if (targets.empty()) throw std::invalid_argument("targets must be nonempty");
  for (int v : targets) check_vertex(tree, v);
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");

  // One shared i.i.d. vertex stream; each k-run scans it with its own cursor
  // and keeps only the draws that land in its surviving components.
  std::vector<int> verts(tree.n);
  std::vector<double> w(tree.n);
  for (int v = 1; v <= tree.n; ++v) {
    verts[v - 1] = v;
    w[v - 1] = weights.p(v);
  }
  AliasTable table(verts, w);
  std::vector<int> ys;
  auto y_at = [&](std::size_t j) {
    while (ys.size() <= j) ys.push_back(table.draw(rng));
    return ys[j];
  };

  std::vector<KCutRecord> records;
  for (std::size_t k = 1; k <= targets.size(); ++k) {
    std::vector<int> prefix(targets.begin(), targets.begin() + k);
    FragmentationRun run(tree, prefix, /*survive_all=*/false, nullptr);
    std::size_t cursor = 0;
    while (!run.done()) {
      int y;
      do {
        y = y_at(cursor++);
      } while (!run.is_alive(y));
      run.cut_at(y);
    }
    records.push_back(assemble_k_record(tree, prefix, run));
  }
  return records;
}

CompleteCutRecord cut_complete(const RootedTree& tree, const ProbWeights& weights, Rng& rng) {
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");
  RestrictedSampler sampler(weights);
  FragmentationRun run(tree, {}, /*survive_all=*/true,
                       [&sampler](int v) { sampler.remove(v); });
  while (!run.done()) run.cut_at(sampler.draw(rng));

  CompleteCutRecord rec;
  rec.permutation = run.cut_sequence();
  rec.cut_tree = run.cut_tree();
  rec.mark_sets = run.take_mark_sets();
  rec.mark_of = run.take_mark_of();
  rec.original_root = tree.root;
  return rec;
}

std::vector<int> canonical_order(const SubsetTree& backbone, const std::vector<int>& targets) {
  // Smallest index of a target prefix whose spanning subtree contains the
  // vertex. Marked sets are closed toward the root, so each pass can stop at
  // the first vertex already marked.
  std::unordered_map<int, int> first_idx;
  for (std::size_t l = 0; l < targets.size(); ++l) {
    int u = targets[l];
    for (;;) {
      if (first_idx.count(u)) break;
      first_idx[u] = static_cast<int>(l);
      auto it = backbone.parent.find(u);
      if (it == backbone.parent.end()) break;
      u = it->second;
    }
  }
  std::unordered_map<int, int> depth;
  std::function<int(int)> depth_of = [&](int u) -> int {
    auto it = depth.find(u);
    if (it != depth.end()) return it->second;
    auto p = backbone.parent.find(u);
    const int d = (p == backbone.parent.end()) ? 0 : depth_of(p->second) + 1;
    depth[u] = d;
    return d;
  };
  std::vector<int> order = backbone.vertices;
  for (int u : order) {
    if (!first_idx.count(u))
      throw std::invalid_argument("backbone vertex not on any root-target path");
    depth_of(u);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (first_idx[a] != first_idx[b]) return first_idx[a] < first_idx[b];
    return depth[a] < depth[b];
  });
  return order;
}

SubsetTree span_subset(const SubsetTree& t, const std::vector<int>& targets) {
  if (targets.empty()) throw std::invalid_argument("span targets must be nonempty");
  std::unordered_map<int, char> in;
  for (int v : targets) {
    int u = v;
    for (;;) {
      if (in.count(u)) break;
      in[u] = 1;
      auto it = t.parent.find(u);
      if (it == t.parent.end()) break;
      u = it->second;
    }
  }
  SubsetTree s;
  s.root = t.root;
  for (int v : t.vertices) {
    if (!in.count(v)) continue;
    s.vertices.push_back(v);
    auto it = t.parent.find(v);
    if (it != t.parent.end()) s.parent[v] = it->second;
  }
  return s;
}

}  // namespace cuttree
