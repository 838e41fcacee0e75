#include "cuttree/real_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cuttree {

void RealTree::finalize() {
  const int n = node_count();
  depth_len.assign(n, 0.0);
  depth_cnt.assign(n, 0);
  tin.assign(n, 0);
  tout.assign(n, 0);
  std::vector<std::vector<int>> children(n);
  for (int v = 1; v < n; ++v) children[nodes[v].parent].push_back(v);
  // Edge splits give parents larger indices than their children, so depths
  // need a root-down traversal rather than index order.
  std::vector<int> order{0};
  order.reserve(n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int c : children[order[i]]) {
      depth_len[c] = depth_len[order[i]] + nodes[c].edge_len;
      depth_cnt[c] = depth_cnt[order[i]] + 1;
      order.push_back(c);
    }
  }
  int clock = 0;
  std::vector<std::pair<int, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [v, closing] = stack.back();
    stack.pop_back();
    if (closing) {
      tout[v] = clock;
      continue;
    }
    tin[v] = clock++;
    stack.emplace_back(v, true);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it)
      stack.emplace_back(*it, false);
  }
}

int RealTree::lca(int a, int b) const {
  while (a != b) {
    if (depth_cnt[a] < depth_cnt[b]) std::swap(a, b);
    a = nodes[a].parent;
  }
  return a;
}

double RealTree::metric_distance(int a, int b) const {
  const int l = lca(a, b);
  return depth_len[a] + depth_len[b] - 2.0 * depth_len[l];
}

bool RealTree::node_on_path(int x, int a, int b) const {
  if (!is_ancestor(x, a) && !is_ancestor(x, b)) return false;
  return is_ancestor(lca(a, b), x);
}

bool RealTree::edge_on_path(int x, int a, int b) const {
  const int l = lca(a, b);
  if (x == l) return false;  // the edge above the junction leaves the path
  return node_on_path(x, a, b);
}

namespace {

// Incremental sources of cutpoint/joinpoint pairs along the half line.
//
// The planar stream on {0 <= y <= x} with density theta0^2 contributes
// every x-coordinate as a cutpoint, with its own y as joinpoint. A
// discrete-rate stream contributes its points from the second onward, all
// joined at its first point (which ends up a marked branch point).
struct OctantStream {
  double rate2;  // theta0^2
  double x = 0.0;

  std::pair<double, double> next(Rng& rng) {
    x = std::sqrt(x * x + 2.0 * rng.exponential(1.0) / rate2);
    return {x, x * rng.u01()};
  }
};

struct DiscreteStream {
  double rate;
  double anchor = 0.0;  // first point
  double next_cut = 0.0;

  void start(Rng& rng) {
    anchor = rng.exponential(rate);
    next_cut = anchor + rng.exponential(rate);
  }
  void advance(Rng& rng) { next_cut += rng.exponential(rate); }
};

struct Builder {
  struct Segment {
    double lo = 0.0;
    int attach = -1;         // node the left end is glued to (-1: contains the root)
    std::vector<int> chain;  // node ids, ascending offset
  };

  RealTree tree;
  std::vector<Segment> segments;
  std::map<double, int> join_nodes;  // exact coordinate -> node, for reuse

  int new_node(int parent, double edge_len, int segment, double offset) {
    RealTree::Node nd;
    nd.parent = parent;
    nd.edge_len = edge_len;
    nd.segment = segment;
    nd.offset = offset;
    tree.nodes.push_back(nd);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  // Node at global coordinate c, splitting an edge if nothing is there yet.
  int node_at(double c) {
    auto hit = join_nodes.find(c);
    if (hit != join_nodes.end()) return hit->second;

    int s = static_cast<int>(segments.size()) - 1;
    while (s > 0 && segments[s].lo >= c) --s;
    Segment& seg = segments[s];
    const double off = c - seg.lo;

    // First chain entry with offset >= off.
    auto pos = std::lower_bound(seg.chain.begin(), seg.chain.end(), off,
                                [&](int id, double o) { return tree.nodes[id].offset < o; });
    if (pos != seg.chain.end() && tree.nodes[*pos].offset == off) return *pos;
    int below;
    double below_off;
    if (pos == seg.chain.begin()) {
      if (seg.attach < 0) throw std::logic_error("graft point precedes segment material");
      below = seg.attach;  // left end of the glued interval
      below_off = 0.0;
    } else {
      below = *(pos - 1);
      below_off = tree.nodes[below].offset;
    }
    const int above = (pos == seg.chain.end()) ? -1 : *pos;

    const int id = new_node(below, off - below_off, s, off);
    if (above != -1) {
      tree.nodes[above].parent = id;
      tree.nodes[above].edge_len = tree.nodes[above].offset - off;
    }
    seg.chain.insert(pos, id);
    return id;
  }
};

}  // namespace

RealTree line_break(const ThetaParam& theta, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("leaf count must be positive");
  if (!(theta.theta0() > 0.0)) throw std::invalid_argument("parameter outside supported class");

  OctantStream octant{theta.theta0() * theta.theta0()};
  auto octant_next = octant.next(rng);
  std::vector<DiscreteStream> streams;
  for (double t : theta.thetas()) {
    DiscreteStream s{t};
    s.start(rng);
    streams.push_back(s);
  }

  // Merge all cutpoint candidates in increasing coordinate.
  std::vector<double> cuts, joins;
  std::vector<int> join_stream;  // -1 for octant joins
  while (static_cast<int>(cuts.size()) < k) {
    int best = -1;
    double best_cut = octant_next.first;
    for (std::size_t i = 0; i < streams.size(); ++i) {
      if (streams[i].next_cut < best_cut) {
        best_cut = streams[i].next_cut;
        best = static_cast<int>(i);
      }
    }
    cuts.push_back(best_cut);
    if (best == -1) {
      joins.push_back(octant_next.second);
      join_stream.push_back(-1);
      octant_next = octant.next(rng);
    } else {
      joins.push_back(streams[best].anchor);
      join_stream.push_back(best);
      streams[best].advance(rng);
    }
  }

  Builder b;
  b.tree.cutpoints = cuts;
  b.tree.joinpoints = joins;
  b.tree.total_length = cuts.back();

  // Root and the first interval [0, eta_1].
  b.new_node(-1, 0.0, 0, 0.0);
  b.segments.push_back({0.0, -1, {0}});
  const int first_leaf = b.new_node(0, cuts[0], 0, cuts[0]);
  b.segments[0].chain.push_back(first_leaf);
  b.tree.leaves.push_back(first_leaf);

  for (int j = 1; j < k; ++j) {
    const double graft_at = joins[j - 1];
    if (!(graft_at < cuts[j - 1])) throw std::logic_error("joinpoint at or past its cutpoint");
    int attach = b.node_at(graft_at);
    if (join_stream[j - 1] >= 0) b.join_nodes[graft_at] = attach;

    const int s = static_cast<int>(b.segments.size());
    b.segments.push_back({cuts[j - 1], attach, {}});
    const int leaf = b.new_node(attach, cuts[j] - cuts[j - 1], s, cuts[j] - cuts[j - 1]);
    b.segments[s].chain.push_back(leaf);
    b.tree.leaves.push_back(leaf);
  }

  // Marked branch points: every discrete-stream anchor inside the material,
  // whether or not a graft used it yet.
  for (std::size_t i = 0; i < streams.size(); ++i) {
    if (streams[i].anchor > b.tree.total_length) continue;
    int node = b.node_at(streams[i].anchor);
    b.join_nodes[streams[i].anchor] = node;
    b.tree.branch_atoms.emplace_back(node, theta.thetas()[i]);
  }

  b.tree.finalize();
  return b.tree;
}

CutMeasure restricted_cut_measure(const RealTree& tree, const ThetaParam& theta) {
  CutMeasure m;
  m.skeleton_density = theta.theta0() * theta.theta0();
  m.skeleton_mass = m.skeleton_density * tree.total_length;
  m.atoms = tree.branch_atoms;
  m.total_mass = m.skeleton_mass;
  for (const auto& [node, t] : m.atoms) m.total_mass += t;
  return m;
}

namespace {

// Shared atom generator: exponential interarrivals at the total cut-measure
// mass, location uniform-by-length on the skeleton or at a branch atom.
class AtomSource {
 public:
  AtomSource(const RealTree& tree, const ThetaParam& theta)
      : tree_(tree), measure_(restricted_cut_measure(tree, theta)) {
    edge_prefix_.push_back(0.0);
    for (int v = 1; v < tree.node_count(); ++v) {
      edge_ids_.push_back(v);
      edge_prefix_.push_back(edge_prefix_.back() + tree.nodes[v].edge_len);
    }
  }

  double total_mass() const { return measure_.total_mass; }

  CutAtom next(double now, Rng& rng) const {
    CutAtom atom;
    atom.time = now + rng.exponential(measure_.total_mass);
    double u = rng.u01() * measure_.total_mass;
    if (u < measure_.skeleton_mass || measure_.atoms.empty()) {
      const double along = std::min(u / measure_.skeleton_density, edge_prefix_.back());
      auto it = std::upper_bound(edge_prefix_.begin(), edge_prefix_.end(), along);
      std::size_t idx = std::min(edge_ids_.size() - 1,
                                 static_cast<std::size_t>(it - edge_prefix_.begin()) - 1);
      atom.at_branch = false;
      atom.node = edge_ids_[idx];
      atom.offset = along - edge_prefix_[idx];
    } else {
      u -= measure_.skeleton_mass;
      std::size_t i = 0;
      while (i + 1 < measure_.atoms.size() && u >= measure_.atoms[i].second) {
        u -= measure_.atoms[i].second;
        ++i;
      }
      atom.at_branch = true;
      atom.node = measure_.atoms[i].first;
    }
    return atom;
  }

 private:
  const RealTree& tree_;
  CutMeasure measure_;
  std::vector<int> edge_ids_;
  std::vector<double> edge_prefix_;
};

bool atom_on_leaf_path(const RealTree& tree, const CutAtom& atom, int a, int b) {
  if (atom.at_branch) return tree.node_on_path(atom.node, a, b);
  return tree.edge_on_path(atom.node, a, b);
}

}  // namespace

CutPointProcess simulate_cuts(const RealTree& tree, const ThetaParam& theta, double horizon,
                              Rng& rng) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  AtomSource source(tree, theta);
  CutPointProcess out;
  out.horizon = horizon;
  double now = 0.0;
  for (;;) {
    CutAtom atom = source.next(now, rng);
    if (atom.time > horizon) break;
    now = atom.time;
    out.atoms.push_back(atom);
  }
  return out;
}

std::optional<CutAtom> first_separation(const RealTree& tree, const CutPointProcess& cuts,
                                        int leaf_i, int leaf_j) {
  const int k = static_cast<int>(tree.leaves.size());
  if (leaf_i < 0 || leaf_i >= k || leaf_j < 0 || leaf_j >= k)
    throw std::invalid_argument("leaf index out of range");
  const int a = tree.leaves[leaf_i], b = tree.leaves[leaf_j];
  for (const CutAtom& atom : cuts.atoms)
    if (atom_on_leaf_path(tree, atom, a, b)) return atom;
  return std::nullopt;
}

GenealogyResult genealogy_matrix(const ThetaParam& theta, int k, int m, double horizon,
                                 Rng& rng) {
  if (k < 1) throw std::invalid_argument("target count must be positive");
  if (m < 1) throw std::invalid_argument("auxiliary leaf count must be positive");
  RealTree tree = line_break(theta, k + m, rng);
  AtomSource source(tree, theta);

  // Pairs that have to be separated: target-target junction times drive the
  // matrix, target-auxiliary times drive the mass estimates.
  std::vector<std::vector<double>> aux_events(k);  // per target, ascending
  std::vector<std::vector<double>> tau(
      k, std::vector<double>(k, std::numeric_limits<double>::infinity()));
  struct Pair {
    int target, other;  // other < 0: auxiliary index ~other-1... other >= 0: target
    int node_a, node_b;
    bool open = true;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j)
      pairs.push_back({i, j, tree.leaves[i], tree.leaves[j], true});
    for (int a = 0; a < m; ++a)
      pairs.push_back({i, -(a + 1), tree.leaves[i], tree.leaves[k + a], true});
  }

  std::size_t open_pairs = pairs.size();
  double now = 0.0;
  bool horizon_reached = false;
  while (open_pairs > 0) {
    CutAtom atom = source.next(now, rng);
    if (atom.time > horizon) {
      horizon_reached = true;
      now = horizon;
      break;
    }
    now = atom.time;
    for (Pair& pr : pairs) {
      if (!pr.open || !atom_on_leaf_path(tree, atom, pr.node_a, pr.node_b)) continue;
      pr.open = false;
      --open_pairs;
      if (pr.other >= 0)
        tau[pr.target][pr.other] = tau[pr.other][pr.target] = atom.time;
      else
        aux_events[pr.target].push_back(atom.time);
    }
  }

  // Mass of target i at time t is (auxiliary leaves still attached)/m;
  // branch lengths are integrals of that step function.
  auto integral_to = [&](int i, double t) {
    double acc = 0.0, prev = 0.0;
    int attached = m;
    for (double s : aux_events[i]) {
      if (s >= t) break;
      acc += (static_cast<double>(attached) / m) * (s - prev);
      prev = s;
      --attached;
    }
    if (t > prev && attached > 0) acc += (static_cast<double>(attached) / m) * (t - prev);
    return acc;
  };

  GenealogyResult out;
  out.horizon_reached = horizon_reached;
  out.stop_time = now;
  out.residual_mass.resize(k, 0.0);
  std::vector<double> total(k);
  for (int i = 0; i < k; ++i) {
    total[i] = integral_to(i, now);
    out.residual_mass[i] =
        static_cast<double>(m - aux_events[i].size()) / static_cast<double>(m);
  }
  out.matrix.assign(k + 1, std::vector<double>(k + 1, 0.0));
  for (int i = 0; i < k; ++i) {
    out.matrix[0][i + 1] = out.matrix[i + 1][0] = total[i];
    for (int j = i + 1; j < k; ++j) {
      const double shared = integral_to(i, std::min(tau[i][j], now));
      const double d = total[i] + total[j] - 2.0 * shared;
      out.matrix[i + 1][j + 1] = out.matrix[j + 1][i + 1] = d;
    }
  }
  return out;
}

}  // namespace cuttree
