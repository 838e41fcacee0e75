#pragma once

#include <vector>

#include "cuttree/weights.hpp"

namespace cuttree {

// Truncated ICRT parameter (theta0, theta1, ..., thetaI) with unit sum of
// squares. Finite truncations need theta0 > 0, otherwise the line-breaking
// construction would starve.
class ThetaParam {
 public:
  ThetaParam(double theta0, std::vector<double> thetas);

  // Parses [theta0, theta1, ...]; values off unit sum-of-squares by less
  // than 1e-6 are normalized (the caller may warn), larger errors throw.
  static ThetaParam from_values(std::vector<double> values);

  double theta0() const { return theta0_; }
  const std::vector<double>& thetas() const { return thetas_; }
  int truncation() const { return static_cast<int>(thetas_.size()); }

 private:
  double theta0_;
  std::vector<double> thetas_;
};

// P(d(root, V) > r) for a mass-measure point V on the ICRT; equals the
// survival function of the length of the one-leaf reduced tree.
double r1_length_survival(const ThetaParam& theta, double r);

// Discrete weight sequence matched to theta: p_i = sigma * theta_i for
// i <= I and sigma * theta0 / sqrt(n - I) beyond, with sigma chosen so the
// weights sum to one. Then sqrt(sum p_i^2) equals sigma exactly and
// p_i / sigma recovers theta_i for i <= I.
ProbWeights build_pn(const ThetaParam& theta, int n);

}  // namespace cuttree
