#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cuttree {

// Strictly positive probability vector on vertex labels 1..n.
class ProbWeights {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbWeights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("weights must be nonempty");
    long double sum = 0.0L;
    for (double x : w_) {
      if (!(x > 0.0)) throw std::invalid_argument("weights must be strictly positive");
      sum += x;
    }
    if (std::abs(static_cast<double>(sum - 1.0L)) > kSumTolerance)
      throw std::invalid_argument("weights must sum to 1");
  }

  static ProbWeights uniform(int n) {
    return ProbWeights(std::vector<double>(n, 1.0 / n));
  }

  int n() const { return static_cast<int>(w_.size()); }
  double p(int vertex) const { return w_[vertex - 1]; }
  const std::vector<double>& values() const { return w_; }

  double sum_squares() const {
    long double s = 0.0L;
    for (double x : w_) s += static_cast<long double>(x) * x;
    return static_cast<double>(s);
  }

 private:
  std::vector<double> w_;
};

}  // namespace cuttree
