#include "cuttree/discrete_limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cuttree/alias.hpp"
#include "cuttree/shuffle.hpp"

namespace cuttree {

TimedOneCut poisson_cut_one(const RootedTree& tree, const ProbWeights& weights, int v,
                            const std::vector<int>& marked, Rng& rng) {
  if (v < 1 || v > tree.n) throw std::invalid_argument("vertex out of range");
  if (weights.n() != tree.n) throw std::invalid_argument("incompatible dimensions");
  for (int u : marked)
    if (u < 1 || u > tree.n) throw std::invalid_argument("marked vertex out of range");

  TimedOneCut out;
  out.mark_vertices = marked;
  out.sigma_n = std::sqrt(weights.sum_squares());
  const std::size_t nm = marked.size();
  out.tau.assign(nm, 0.0);
  out.varsigma.assign(nm, 0);
  out.cuts_at_tau.assign(nm, 0);
  out.dist_to_cut.assign(nm, 0);
  out.dist_between_marks = distance_matrix(tree, marked);

  std::vector<std::vector<int>> marks_at(tree.n + 1);
  for (std::size_t i = 0; i < nm; ++i) marks_at[marked[i]].push_back(static_cast<int>(i));

  RootedTree tv = reroot(tree, v);
  auto children = children_lists(tv);
  RestrictedSampler sampler(weights);

  OneCutRecord& rec = out.record;
  rec.target = v;
  rec.original_root = tree.root;
  rec.cut_tree = RootedTree(tree.n, 0);

  // Atoms land anywhere with intensity p/sigma_n; only those in the live
  // component count, so effective cuts arrive at rate p(live)/sigma_n.
  double now = 0.0;
  std::vector<int> stack;
  int prev_cut = 0;
  for (;;) {
    now += rng.exponential(sampler.alive_mass() / out.sigma_n);
    const int x = sampler.draw(rng);
    rec.cut_sequence.push_back(x);
    out.cut_times.push_back(now);
    const int cut_index = static_cast<int>(rec.cut_sequence.size());
    if (prev_cut != 0)
      rec.cut_tree.parent[x] = prev_cut;
    else
      rec.cut_tree.root = x;
    if (x != v) rec.marks.push_back(tv.parent[x]);

    auto settle = [&](int u) {
      for (int idx : marks_at[u]) {
        out.tau[idx] = now;
        out.varsigma[idx] = x;
        out.cuts_at_tau[idx] = cut_index;
        out.dist_to_cut[idx] = graph_distance(tree, u, x);
      }
    };

    sampler.remove(x);
    settle(x);
    stack.assign(1, x);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int c : children[u]) {
        if (!sampler.alive(c)) continue;
        sampler.remove(c);
        rec.cut_tree.parent[c] = tv.parent[c];
        settle(c);
        stack.push_back(c);
      }
    }

    prev_cut = x;
    if (x == v) break;
  }
  return out;
}

std::vector<std::vector<int>> cut_distance_bundle(const TimedOneCut& run) {
  const int total_cuts = run.record.cut_count();
  const std::size_t nm = run.mark_vertices.size();
  const std::size_t dim = nm + 2;  // root(H), target, marks
  std::vector<std::vector<int>> d(dim, std::vector<int>(dim, 0));

  d[0][1] = d[1][0] = total_cuts - 1;
  for (std::size_t j = 0; j < nm; ++j) {
    const int lj = run.cuts_at_tau[j];
    const int xj = run.dist_to_cut[j];
    d[0][j + 2] = d[j + 2][0] = lj - 1 + xj;
    d[1][j + 2] = d[j + 2][1] = total_cuts - lj + xj;
    for (std::size_t i = 0; i < j; ++i) {
      int dij;
      if (run.varsigma[i] == run.varsigma[j]) {
        // Same first cut: the pair was discarded in one fragment, whose
        // internal distances the cut tree preserves.
        dij = run.dist_between_marks[i][j];
      } else {
        dij = std::abs(run.cuts_at_tau[j] - run.cuts_at_tau[i]) + run.dist_to_cut[i] +
              run.dist_to_cut[j];
      }
      d[i + 2][j + 2] = d[j + 2][i + 2] = dij;
    }
  }
  return d;
}

WalkMatrices shuffle_walk(const RootedTree& h, const ProbWeights& weights, int anchor,
                          const std::vector<int>& points, Rng& rng) {
  if (anchor < 1 || anchor > h.n) throw std::invalid_argument("anchor out of range");
  for (int u : points)
    if (u < 1 || u > h.n) throw std::invalid_argument("walk point out of range");

  // Path root -> anchor and the projection of every vertex onto it.
  std::vector<int> path;
  for (int u = anchor; u != 0; u = h.parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  std::vector<int> pos_of(h.n + 1, -1);
  for (std::size_t i = 0; i < path.size(); ++i) pos_of[path[i]] = static_cast<int>(i);

  std::vector<int> proj(h.n + 1, 0);
  auto order = topological_order(h);
  auto dep = depths(h);
  for (int u : order) proj[u] = pos_of[u] >= 0 ? u : proj[h.parent[u]];
  auto height = [&](int u) { return dep[u] - dep[proj[u]]; };  // distance to the path

  // One attachment per path vertex before the anchor, sampled inside the
  // subtree hanging toward the anchor.
  WalkMatrices out;
  out.attach_marks = sample_marks(h, {anchor}, weights, rng);
  auto attach_of = [&](int x) {
    if (x == anchor) throw std::logic_error("attachment requested at the anchor");
    return out.attach_marks.at(path[pos_of[x] + 1]);
  };

  // Hop each point along the attachments until its projection reaches the
  // anchor. Projections move strictly toward the anchor, so walks terminate.
  const std::size_t np = points.size();
  std::vector<std::vector<int>> hops(np), hop_pos(np);
  for (std::size_t i = 0; i < np; ++i) {
    int a = points[i];
    for (;;) {
      hops[i].push_back(a);
      hop_pos[i].push_back(pos_of[proj[a]]);
      if (proj[a] == anchor) break;
      a = attach_of(proj[a]);
    }
  }

  out.merge_steps.assign(np, std::vector<int>(np, 0));
  out.meet_index.assign(np, std::vector<int>(np, 0));
  out.distance.assign(np, std::vector<int>(np, 0));
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      if (i == j) continue;
      // First common projection, scanning both ascending position lists.
      std::size_t a = 0, b = 0;
      while (hop_pos[i][a] != hop_pos[j][b]) {
        if (hop_pos[i][a] < hop_pos[j][b])
          ++a;
        else
          ++b;
      }
      out.meet_index[i][j] = static_cast<int>(a);
      out.merge_steps[i][j] = static_cast<int>(a + b);
      if (j < i) continue;  // distances are symmetric; fill once
      int gamma = 0;
      for (std::size_t l = 0; l < a; ++l) gamma += height(hops[i][l]) + 1;
      for (std::size_t l = 0; l < b; ++l) gamma += height(hops[j][l]) + 1;
      gamma += graph_distance(h, hops[i][a], hops[j][b]);
      out.distance[i][j] = out.distance[j][i] = gamma;
    }
  }
  return out;
}

}  // namespace cuttree
