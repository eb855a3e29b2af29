#include <cmath>
#include <random>

#include <doctest.h>

#include "common.hpp"
#include "fairdyn/classifier.hpp"
#include "fairdyn/errors.hpp"

using namespace fairdyn;
using fairdyn::testing::unit_gaussian;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

const ClassifierPayoffs kSetting1V({{{0.5, -0.5}, {-0.25, 1.0}}});
const ClassifierPayoffs kIdentityV({{{1.0, 0.0}, {0.0, 1.0}}});
const ClassifierPayoffs kSetting3V({{{10.0, 0.0}, {1.0, 1.5}}});
}  // namespace

TEST_CASE("xi and theta") {
  CHECK(kSetting1V.xi() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(kIdentityV.xi() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kSetting3V.xi() == doctest::Approx(20.0).epsilon(1e-12));

  CHECK(kSetting1V.theta() == doctest::Approx(0.8 / 1.8).epsilon(1e-12));
  CHECK(kIdentityV.theta() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(kSetting3V.theta() == doctest::Approx(20.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("theta/xi consistency is exact") {
  for (const ClassifierPayoffs* V : {&kSetting1V, &kIdentityV, &kSetting3V}) {
    CHECK(V->theta() == V->xi() / (1.0 + V->xi()));
  }
}

TEST_CASE("invalid payoffs rejected") {
  CHECK_THROWS_AS(ClassifierPayoffs({{{0.0, 0.5}, {0.0, 1.0}}}), ConfigError);
  CHECK_THROWS_AS(ClassifierPayoffs({{{1.0, 0.0}, {1.0, 0.5}}}), ConfigError);
}

TEST_CASE("solve_threshold closed form") {
  const FeaturePair d = unit_gaussian();
  CHECK(solve_threshold(d, kIdentityV, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(solve_threshold(d, kSetting1V, 0.5) ==
        doctest::Approx(0.5 * std::log(0.8)).epsilon(1e-12));
  CHECK(solve_threshold(d, kSetting1V, 0.9) ==
        doctest::Approx(0.5 * std::log(0.8 / 9.0)).epsilon(1e-12));
  CHECK_THROWS_AS(solve_threshold(d, kSetting1V, 0.0), ConfigError);
}

TEST_CASE("solve_threshold strictly decreasing in s_bar") {
  const FeaturePair d = unit_gaussian();
  double prev = solve_threshold(d, kSetting1V, 0.01);
  for (double s = 0.05; s < 1.0; s += 0.05) {
    const double cur = solve_threshold(d, kSetting1V, s);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("acceptance rate") {
  const FeaturePair d = unit_gaussian();
  CHECK(acceptance_rate(d, -kInf, 0.3) == 1.0);
  CHECK(acceptance_rate(d, kInf, 0.3) == 0.0);
  CHECK(acceptance_rate(d, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("confusion fractions") {
  const FeaturePair d = unit_gaussian();
  const Confusion corner = confusion(d, -kInf, 0.3);
  CHECK(corner.fpr == 1.0);
  CHECK(corner.fnr == 0.0);
  CHECK(corner.p[0][0] == doctest::Approx(0.0));
  CHECK(corner.p[0][1] == doctest::Approx(0.7));
  CHECK(corner.p[1][0] == doctest::Approx(0.0));
  CHECK(corner.p[1][1] == doctest::Approx(0.3));

  const Confusion mid = confusion(d, 0.0, 0.5);
  CHECK(mid.fpr == doctest::Approx(0.1586552539).epsilon(1e-8));
  CHECK(mid.fnr == doctest::Approx(0.1586552539).epsilon(1e-8));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Confusion c = confusion(d, -3.0 + 6.0 * unif(rng), unif(rng));
    const double total = c.p[0][0] + c.p[0][1] + c.p[1][0] + c.p[1][1];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("equalized odds under a shared threshold is exact") {
  const FeaturePair d = unit_gaussian();
  const Confusion a = confusion(d, 0.31, 0.62);
  const Confusion b = confusion(d, 0.31, 0.17);
  CHECK(a.fpr == b.fpr);
  CHECK(a.fnr == b.fnr);
}

TEST_CASE("utility at reject-all reduces to two terms") {
  const FeaturePair d = unit_gaussian();
  const GroupProfile mu({0.6, 0.4});
  const PopulationState s({0.3, 0.7});
  const ThresholdPolicy reject{{kInf, kInf}};
  double expected = 0.0;
  for (int g = 0; g < 2; ++g) {
    expected += mu[g] * (kSetting1V(0, 0) * (1.0 - s[g]) + kSetting1V(1, 0) * s[g]);
  }
  CHECK(utility(d, kSetting1V, reject, mu, s) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("utility agrees with a Monte Carlo draw of (G, Y, X)") {
  const FeaturePair d = unit_gaussian();
  const GroupProfile mu({0.5, 0.5});
  const PopulationState s({0.5, 0.5});
  const ThresholdPolicy policy{{0.0, 0.0}};
  const double analytic = utility(d, kSetting1V, policy, mu, s);

  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int draws = 1000000;
  double total = 0.0, total_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const int g = unif(rng) < mu[0] ? 0 : 1;
    const int y = unif(rng) < s[g] ? 1 : 0;
    const double x = (y == 1 ? 1.0 : -1.0) + noise(rng);
    const int yhat = x > policy.phi[g] ? 1 : 0;
    const double v = kSetting1V(y, yhat);
    total += v;
    total_sq += v * v;
  }
  const double mean = total / draws;
  const double variance = total_sq / draws - mean * mean;
  const double se = std::sqrt(variance / draws);
  CHECK(std::abs(mean - analytic) < 3.0 * se);
}

TEST_CASE("solve_threshold is locally optimal for the classifier") {
  const FeaturePair d = unit_gaussian();
  const GroupProfile mu({0.5, 0.5});
  const PopulationState s({0.55, 0.45});
  const double phi = solve_threshold(d, kSetting1V, mean_qualification(mu, s));
  const double u_star = utility(d, kSetting1V, {{phi, phi}}, mu, s);
  CHECK(u_star >= utility(d, kSetting1V, {{phi + 0.01, phi + 0.01}}, mu, s));
  CHECK(u_star >= utility(d, kSetting1V, {{phi - 0.01, phi - 0.01}}, mu, s));
}

TEST_CASE("Bayes optimality of the threshold over a grid") {
  const FeaturePair d = unit_gaussian();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::uniform_real_distribution<double> pay(0.1, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double v01 = -pay(rng), v10 = -pay(rng);
    const ClassifierPayoffs V({{{v01 + pay(rng) + 0.1, v01},
                                {v10, v10 + pay(rng) + 0.1}}});
    const GroupProfile mu({0.5, 0.5});
    const PopulationState s({unif(rng), unif(rng)});
    const double phi = solve_threshold(d, V, mean_qualification(mu, s));
    const double u_star = utility(d, V, {{phi, phi}}, mu, s);
    for (int i = 0; i < 200; ++i) {
      const double cand = -6.0 + 12.0 * i / 199.0;
      CHECK(u_star >= utility(d, V, {{cand, cand}}, mu, s) - 1e-12);
    }
  }
}
