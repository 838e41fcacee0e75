#pragma once

#include <optional>
#include <vector>

#include "cuttree/rng.hpp"
#include "cuttree/theta.hpp"

namespace cuttree {

// Finite rooted real tree produced by the Poisson line-breaking
// construction. The half line is broken at the cutpoints 0 < eta_1 < eta_2
// < ... and the interval (eta_k, eta_{k+1}] is glued with its left end at
// the joinpoint associated with eta_k, which always lies in earlier
// material. Leaf j sits at coordinate eta_j; reused joinpoints of the
// discrete-rate streams become the marked branch points.
struct RealTree {
  struct Node {
    int parent = -1;        // node index, -1 for the root
    double edge_len = 0.0;  // metric length of the edge to the parent
    int segment = -1;       // broken interval the node lies on
    double offset = 0.0;    // distance from the segment's left end
  };

  std::vector<Node> nodes;  // node 0 is the root
  std::vector<int> leaves;  // marked leaves in sampling order
  std::vector<std::pair<int, double>> branch_atoms;  // (node, local time)
  std::vector<double> cutpoints;                     // eta_1 < eta_2 < ...
  std::vector<double> joinpoints;                    // one per cutpoint
  double total_length = 0.0;

  // Filled by finalize(); metric and ancestry helpers.
  std::vector<double> depth_len;
  std::vector<int> depth_cnt;
  std::vector<int> tin, tout;

  void finalize();
  int node_count() const { return static_cast<int>(nodes.size()); }
  bool is_ancestor(int a, int b) const { return tin[a] <= tin[b] && tin[b] < tout[a]; }
  int lca(int a, int b) const;
  double metric_distance(int a, int b) const;
  // x lies on the (closed) path between a and b.
  bool node_on_path(int x, int a, int b) const;
  // The edge from node x to its parent lies on the path between a and b.
  bool edge_on_path(int x, int a, int b) const;
};

// Builds the reduced tree with k marked leaves.
RealTree line_break(const ThetaParam& theta, int k, Rng& rng);

// Cut measure restricted to the tree: uniform density theta0^2 on the
// skeleton plus an atom of mass theta_i at each marked branch point.
struct CutMeasure {
  double skeleton_density = 0.0;              // theta0^2
  double skeleton_mass = 0.0;                 // theta0^2 * total length
  std::vector<std::pair<int, double>> atoms;  // (node, theta_i)
  double total_mass = 0.0;
};
CutMeasure restricted_cut_measure(const RealTree& tree, const ThetaParam& theta);

// Poisson rain of cuts on the tree up to a time horizon.
struct CutAtom {
  double time = 0.0;
  bool at_branch = false;
  int node = 0;        // branch node, or the child end of the cut edge
  double offset = 0.0; // distance from the parent end, for skeleton atoms
};
struct CutPointProcess {
  std::vector<CutAtom> atoms;  // strictly increasing times
  double horizon = 0.0;
};
CutPointProcess simulate_cuts(const RealTree& tree, const ThetaParam& theta, double horizon,
                              Rng& rng);

// Earliest atom lying on the path between two marked leaves (by leaf index),
// or nothing within the horizon.
std::optional<CutAtom> first_separation(const RealTree& tree, const CutPointProcess& cuts,
                                        int leaf_i, int leaf_j);

// Distance matrix of the fragmentation genealogy spanned by the root and k
// targets, estimated with m auxiliary leaves: masses are the fraction of
// auxiliary leaves still attached, and each branch length is the integral of
// the corresponding mass. Row/column 0 is the genealogy root.
struct GenealogyResult {
  std::vector<std::vector<double>> matrix;  // (k+1) x (k+1)
  std::vector<double> residual_mass;        // per target, mass unresolved at stop
  bool horizon_reached = false;
  double stop_time = 0.0;
};
GenealogyResult genealogy_matrix(const ThetaParam& theta, int k, int m, double horizon,
                                 Rng& rng);

}  // namespace cuttree
