#include "cuttree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cuttree/ptree.hpp"
#include "cuttree/tree.hpp"

namespace cuttree {

std::vector<double> exact_span_law(const ProbWeights& weights) {
  const int n = weights.n();
  if (n > 7) throw std::invalid_argument("enumeration bound exceeded");
  std::vector<double> law(n, 0.0);
  enumerate_rooted_trees(n, [&](const RootedTree& t) {
    const double pi = ptree_pmf(weights, t);
    auto d = depths(t);
    for (int v = 1; v <= n; ++v) law[d[v]] += pi * weights.p(v);
  });
  return law;
}

std::map<std::string, double> exact_tree_law(const ProbWeights& weights) {
  const int n = weights.n();
  if (n > 6) throw std::invalid_argument("enumeration bound exceeded");
  std::map<std::string, double> law;
  enumerate_rooted_trees(n, [&](const RootedTree& t) {
    law[tree_key(t)] = ptree_pmf(weights, t);
  });
  return law;
}

namespace {

// Regularized incomplete gamma by series (x < a+1) or continued fraction.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  // Lentz's algorithm.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

bool is_tree_metric(const std::vector<std::vector<double>>& d, double tol) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) return false;
    if (std::abs(d[i][i]) > tol) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < -tol) return false;
      if (std::abs(d[i][j] - d[j][i]) > tol) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j] + tol) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          double s1 = d[i][j] + d[k][l];
          double s2 = d[i][k] + d[j][l];
          double s3 = d[i][l] + d[j][k];
          if (s1 > s2) std::swap(s1, s2);
          if (s2 > s3) std::swap(s2, s3);
          if (s1 > s2) std::swap(s1, s2);
          if (std::abs(s3 - s2) > tol) return false;
        }
  return true;
}

double regularized_gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("bad incomplete gamma arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

GofResult chi_square_gof(const std::map<std::string, long>& counts,
                         const std::map<std::string, double>& expected_pmf) {
  long total = 0;
  for (const auto& [key, c] : counts) {
    if (!expected_pmf.count(key))
      throw std::invalid_argument("observed outcome with zero expected probability");
    total += c;
  }
  if (total <= 0) throw std::invalid_argument("no observations");

  struct Cell {
    double expected;
    double observed;
  };
  std::vector<Cell> cells;
  for (const auto& [key, p] : expected_pmf) {
    auto it = counts.find(key);
    cells.push_back({p * total, it == counts.end() ? 0.0 : static_cast<double>(it->second)});
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.expected < b.expected; });

  // Pool small expected cells from below; a trailing small pool merges back.
  std::vector<Cell> pooled;
  Cell acc{0.0, 0.0};
  for (const Cell& cell : cells) {
    acc.expected += cell.expected;
    acc.observed += cell.observed;
    if (acc.expected >= 5.0) {
      pooled.push_back(acc);
      acc = {0.0, 0.0};
    }
  }
  if (acc.expected > 0.0) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.back().expected += acc.expected;
      pooled.back().observed += acc.observed;
    }
  }
  if (pooled.size() < 2) throw std::invalid_argument("degenerate expected distribution");

  double stat = 0.0;
  for (const Cell& cell : pooled) {
    const double diff = cell.observed - cell.expected;
    stat += diff * diff / cell.expected;
  }
  GofResult out;
  out.statistic = stat;
  out.dof = static_cast<int>(pooled.size()) - 1;
  out.p_value = regularized_gamma_q(out.dof / 2.0, stat / 2.0);
  return out;
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 30) throw std::invalid_argument("need at least 30 samples");
  for (double x : samples)
    if (std::isnan(x)) throw std::invalid_argument("NaN sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  KsResult out;
  out.statistic = d;
  out.n = samples.size();
  const double sq = std::sqrt(n);
  out.p_value = kolmogorov_tail((sq + 0.12 + 0.11 / sq) * d);
  return out;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  for (double x : a)
    if (std::isnan(x)) throw std::invalid_argument("NaN sample");
  for (double x : b)
    if (std::isnan(x)) throw std::invalid_argument("NaN sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult out;
  out.statistic = d;
  out.n = a.size() + b.size();
  const double ne = std::sqrt(na * nb / (na + nb));
  out.p_value = kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
  return out;
}

double empirical_tv(const std::map<std::string, long>& a, const std::map<std::string, long>& b) {
  long na = 0, nb = 0;
  for (const auto& [k, c] : a) na += c;
  for (const auto& [k, c] : b) nb += c;
  if (na == 0 || nb == 0) throw std::invalid_argument("empty counts");
  double tv = 0.0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    const double qb = it == b.end() ? 0.0 : static_cast<double>(it->second) / nb;
    tv += std::abs(static_cast<double>(c) / na - qb);
  }
  for (const auto& [k, c] : b)
    if (!a.count(k)) tv += static_cast<double>(c) / nb;
  return tv / 2.0;
}

double tv_against_pmf(const std::map<std::string, long>& counts,
                      const std::map<std::string, double>& pmf) {
  long n = 0;
  for (const auto& [k, c] : counts) n += c;
  if (n == 0) throw std::invalid_argument("empty counts");
  double tv = 0.0;
  for (const auto& [k, p] : pmf) {
    auto it = counts.find(k);
    const double ph = it == counts.end() ? 0.0 : static_cast<double>(it->second) / n;
    tv += std::abs(ph - p);
  }
  for (const auto& [k, c] : counts)
    if (!pmf.count(k)) tv += static_cast<double>(c) / n;
  return tv / 2.0;
}

}  // namespace cuttree
