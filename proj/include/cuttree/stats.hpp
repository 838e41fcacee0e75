#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cuttree/weights.hpp"

namespace cuttree {

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Exact law of the number of vertices on the path from the root to an
// independent p-vertex, by full enumeration. Index l-1 holds P(size = l).
std::vector<double> exact_span_law(const ProbWeights& weights);

// Exact p-tree law as a table keyed by tree_key(). n at most 6.
std::map<std::string, double> exact_tree_law(const ProbWeights& weights);

// Pearson goodness of fit against an expected pmf over the same keys.
// Classes with expected count below 5 are pooled (smallest first).
GofResult chi_square_gof(const std::map<std::string, long>& counts,
                         const std::map<std::string, double>& expected_pmf);

// One-sample Kolmogorov-Smirnov against a callable CDF; asymptotic tail.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov (handles ties, so integer samples are fine).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Half L1 distance between two normalized count tables.
double empirical_tv(const std::map<std::string, long>& a, const std::map<std::string, long>& b);

// Half L1 distance between a normalized count table and an exact pmf.
double tv_against_pmf(const std::map<std::string, long>& counts,
                      const std::map<std::string, double>& pmf);

// Symmetry, zero diagonal, triangle inequality, and the four-point
// condition (the two largest of the three pairwise sums over any four
// points agree), all up to tol.
bool is_tree_metric(const std::vector<std::vector<double>>& d, double tol);

// Regularized upper incomplete gamma Q(a, x); chi-square tail probability is
// Q(dof/2, stat/2).
double regularized_gamma_q(double a, double x);

// Tail of the Kolmogorov distribution.
double kolmogorov_tail(double lambda);

}  // namespace cuttree
