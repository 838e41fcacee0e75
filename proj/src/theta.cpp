#include "cuttree/theta.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cuttree {

ThetaParam::ThetaParam(double theta0, std::vector<double> thetas)
    : theta0_(theta0), thetas_(std::move(thetas)) {
  if (!(theta0_ > 0.0)) throw std::invalid_argument("parameter outside supported class");
  long double ss = static_cast<long double>(theta0_) * theta0_;
  double prev = std::numeric_limits<double>::infinity();
  for (double t : thetas_) {
    if (!(t > 0.0)) throw std::invalid_argument("theta entries must be positive");
    if (t > prev) throw std::invalid_argument("theta entries must be nonincreasing");
    prev = t;
    ss += static_cast<long double>(t) * t;
  }
  if (std::abs(static_cast<double>(ss - 1.0L)) > 1e-12)
    throw std::invalid_argument("theta must have unit sum of squares");
}

ThetaParam ThetaParam::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("theta must be nonempty");
  long double ss = 0.0L;
  for (double t : values) ss += static_cast<long double>(t) * t;
  const double err = std::abs(static_cast<double>(ss - 1.0L));
  if (err > 1e-6) throw std::invalid_argument("theta sum of squares is off by more than 1e-6");
  if (err > 1e-12) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(ss));
    for (double& t : values) t *= scale;
  }
  return ThetaParam(values[0], std::vector<double>(values.begin() + 1, values.end()));
}

double r1_length_survival(const ThetaParam& theta, double r) {
  if (r < 0.0) throw std::invalid_argument("r must be nonnegative");
  double s = std::exp(-0.5 * theta.theta0() * theta.theta0() * r * r);
  for (double t : theta.thetas()) s *= (1.0 + t * r) * std::exp(-t * r);
  return s;
}

ProbWeights build_pn(const ThetaParam& theta, int n) {
  const int trunc = theta.truncation();
  if (n <= trunc) throw std::invalid_argument("n must exceed the theta truncation");
  const double tail = std::sqrt(static_cast<double>(n - trunc));
  if (trunc > 0 && theta.thetas().back() < theta.theta0() / tail) {
    const double ratio = theta.theta0() / theta.thetas().back();
    const long min_n = trunc + static_cast<long>(std::ceil(ratio * ratio));
    throw std::invalid_argument("weights would not be nonincreasing; minimal feasible n is " +
                                std::to_string(min_n));
  }
  double denom = theta.theta0() * tail;
  for (double t : theta.thetas()) denom += t;
  const double sigma = 1.0 / denom;

  std::vector<double> w(n);
  for (int i = 0; i < trunc; ++i) w[i] = sigma * theta.thetas()[i];
  const double tail_weight = sigma * theta.theta0() / tail;
  for (int i = trunc; i < n; ++i) w[i] = tail_weight;
  return ProbWeights(std::move(w));
}

}  // namespace cuttree
