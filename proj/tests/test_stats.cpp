#include <cmath>
#include <map>

#include "doctest.h"

#include "cuttree/rng.hpp"
#include "cuttree/stats.hpp"

using namespace cuttree;

TEST_CASE("exact_span_law closed forms") {
  auto law1 = exact_span_law(ProbWeights({1.0}));
  CHECK(law1.size() == 1);
  CHECK(law1[0] == doctest::Approx(1.0));

  auto law2 = exact_span_law(ProbWeights::uniform(2));
  CHECK(law2[0] == doctest::Approx(0.5));
  CHECK(law2[1] == doctest::Approx(0.5));

  auto law5 = exact_span_law(ProbWeights({0.35, 0.25, 0.2, 0.12, 0.08}));
  long double mass = 0.0L;
  for (double p : law5) mass += p;
  CHECK(std::abs(static_cast<double>(mass - 1.0L)) < 1e-9);

  CHECK_THROWS(exact_span_law(ProbWeights::uniform(8)));
}

TEST_CASE("exact_tree_law closed forms") {
  auto law2 = exact_tree_law(ProbWeights({0.3, 0.7}));
  CHECK(law2.size() == 2);
  double mass = 0.0;
  for (const auto& [k, p] : law2) mass += p;
  CHECK(mass == doctest::Approx(1.0));

  auto law3 = exact_tree_law(ProbWeights::uniform(3));
  CHECK(law3.size() == 9);
  for (const auto& [k, p] : law3) CHECK(p == doctest::Approx(1.0 / 9));

  CHECK_THROWS(exact_tree_law(ProbWeights::uniform(7)));
}

TEST_CASE("chi-square behavior") {
  std::map<std::string, double> pmf{{"a", 0.5}, {"b", 0.25}, {"c", 0.25}};
  std::map<std::string, long> proportional{{"a", 200}, {"b", 100}, {"c", 100}};
  auto g = chi_square_gof(proportional, pmf);
  CHECK(g.statistic == doctest::Approx(0.0));
  CHECK(g.p_value == doctest::Approx(1.0));
  CHECK(g.dof == 2);

  std::map<std::string, double> single{{"a", 1.0}};
  std::map<std::string, long> counts{{"a", 100}};
  CHECK_THROWS(chi_square_gof(counts, single));

  // Published quantiles: chi-square with 5 dof at 11.070 leaves 5% upstream,
  // with 1 dof at 3.841.
  CHECK(regularized_gamma_q(2.5, 11.070 / 2) == doctest::Approx(0.05).epsilon(1e-2));
  CHECK(regularized_gamma_q(0.5, 3.841 / 2) == doctest::Approx(0.05).epsilon(1e-2));
}

TEST_CASE("one-sample KS") {
  Rng rng(61);
  std::vector<double> u(10000);
  for (double& x : u) x = rng.u01();
  auto r = ks_test(u, [](double x) { return std::min(1.0, std::max(0.0, x)); });
  CHECK(r.statistic < 1.63 / std::sqrt(10000.0));  // 99% point

  std::vector<double> constant(100, 0.5);
  auto rc = ks_test(constant, [](double x) { return std::min(1.0, std::max(0.0, x)); });
  CHECK(rc.statistic >= 0.5);

  CHECK_THROWS(ks_test({}, [](double) { return 0.5; }));
  CHECK_THROWS(ks_test(std::vector<double>(10, 0.0), [](double) { return 0.5; }));
  std::vector<double> with_nan(50, 0.1);
  with_nan[7] = std::nan("");
  CHECK_THROWS(ks_test(with_nan, [](double x) { return x; }));
}

TEST_CASE("two-sample KS handles ties") {
  std::vector<double> a{1, 1, 2, 3, 3, 3}, b{1, 1, 2, 3, 3, 3};
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(0.0));
  std::vector<double> c{10, 11, 12};
  CHECK(ks_two_sample(a, c).statistic == doctest::Approx(1.0));
}

TEST_CASE("total variation") {
  std::map<std::string, long> a{{"x", 10}, {"y", 10}}, b{{"x", 20}, {"y", 20}};
  CHECK(empirical_tv(a, a) == doctest::Approx(0.0));
  CHECK(empirical_tv(a, b) == doctest::Approx(0.0));
  std::map<std::string, long> c{{"z", 5}};
  CHECK(empirical_tv(a, c) == doctest::Approx(1.0));

  // Two multinomial draws from one pmf over 64 classes stay close.
  Rng rng(62);
  std::map<std::string, long> m1, m2;
  for (int i = 0; i < 200000; ++i) {
    ++m1[std::string(1, static_cast<char>(rng.below(64)))];
    ++m2[std::string(1, static_cast<char>(rng.below(64)))];
  }
  CHECK(empirical_tv(m1, m2) < 0.02);
}

TEST_CASE("kolmogorov tail values") {
  CHECK(kolmogorov_tail(0.0) == doctest::Approx(1.0));
  CHECK(kolmogorov_tail(1.358) == doctest::Approx(0.05).epsilon(2e-2));
  CHECK(kolmogorov_tail(2.0) < kolmogorov_tail(1.0));
}

TEST_CASE("chi-square self-consistency over meta trials") {
  Rng rng(63);
  std::map<std::string, double> pmf{{"a", 0.3}, {"b", 0.3}, {"c", 0.2},
                                    {"d", 0.1}, {"e", 0.06}, {"f", 0.04}};
  int rejections = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::string, long> counts;
    for (int i = 0; i < 2000; ++i) {
      const double u = rng.u01();
      double acc = 0.0;
      for (const auto& [k, p] : pmf) {
        acc += p;
        if (u < acc) {
          ++counts[k];
          break;
        }
      }
    }
    if (chi_square_gof(counts, pmf).p_value < 0.01) ++rejections;
  }
  CHECK(rejections <= 3);  // 1.5 * alpha * trials
}

TEST_CASE("tree metric checker") {
  // Distances of a tiny tree: path a-b-c with unit edges.
  std::vector<std::vector<double>> good{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  CHECK(is_tree_metric(good, 1e-12));
  std::vector<std::vector<double>> bad{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  CHECK(!is_tree_metric(bad, 1e-12));

  std::vector<std::vector<double>> four{{0, 2, 3, 3},
                                        {2, 0, 3, 3},
                                        {3, 3, 0, 2},
                                        {3, 3, 2, 0}};
  CHECK(is_tree_metric(four, 1e-12));
  four[0][1] = four[1][0] = 10.0;
  CHECK(!is_tree_metric(four, 1e-12));
}
