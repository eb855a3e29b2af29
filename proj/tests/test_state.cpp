#include <cmath>
#include <random>

#include <doctest.h>

#include "fairdyn/errors.hpp"
#include "fairdyn/state.hpp"

using namespace fairdyn;

TEST_CASE("mean qualification") {
  CHECK(mean_qualification(GroupProfile({0.5, 0.5}),
                           PopulationState({0.6, 0.4})) == doctest::Approx(0.5));
  CHECK(mean_qualification(GroupProfile({0.7, 0.3}),
                           PopulationState({0.6, 0.4})) == doctest::Approx(0.54));
  CHECK(mean_qualification(GroupProfile({0.5, 0.3, 0.2}),
                           PopulationState({0.1, 0.5, 0.9})) ==
        doctest::Approx(0.38));
  CHECK_THROWS_AS(mean_qualification(GroupProfile({0.5, 0.5}),
                                     PopulationState({0.5, 0.5, 0.5})),
                  ConfigError);
}

TEST_CASE("to_coords") {
  const CoordState c =
      to_coords(GroupProfile({0.5, 0.5}), PopulationState({0.6, 0.4}));
  CHECK(c.D.size() == 1);
  CHECK(c.D[0] == doctest::Approx(0.2));
  CHECK(c.s_bar == doctest::Approx(0.5));

  const CoordState flat = to_coords(GroupProfile({0.3, 0.3, 0.4}),
                                    PopulationState({0.42, 0.42, 0.42}));
  CHECK(flat.D[0] == doctest::Approx(0.0));
  CHECK(flat.D[1] == doctest::Approx(0.0));
  CHECK(flat.s_bar == doctest::Approx(0.42));

  const double third = 1.0 / 3.0;
  const CoordState c3 = to_coords(GroupProfile({third, third, third}),
                                  PopulationState({0.1, 0.5, 0.9}));
  CHECK(c3.D[0] == doctest::Approx(-0.4));
  CHECK(c3.D[1] == doctest::Approx(-0.4));
  CHECK(c3.s_bar == doctest::Approx(0.5));
}

TEST_CASE("from_coords n=2 closed forms") {
  const PopulationState s =
      from_coords(GroupProfile({0.5, 0.5}), CoordState{{0.2}, 0.5});
  CHECK(s[0] == doctest::Approx(0.6));
  CHECK(s[1] == doctest::Approx(0.4));

  const PopulationState skew =
      from_coords(GroupProfile({0.9, 0.1}), CoordState{{0.2}, 0.5});
  CHECK(skew[0] == doctest::Approx(0.52));
  CHECK(skew[1] == doctest::Approx(0.32));

  const PopulationState flat =
      from_coords(GroupProfile({0.25, 0.25, 0.25, 0.25}),
                  CoordState{{0.0, 0.0, 0.0}, 0.42});
  for (std::size_t g = 0; g < 4; ++g) CHECK(flat[g] == doctest::Approx(0.42));
}

TEST_CASE("from_coords rejects states outside the simplex") {
  CHECK_THROWS_AS(from_coords(GroupProfile({0.5, 0.5}), CoordState{{1.9}, 0.5}),
                  ConfigError);
}

TEST_CASE("round trip to_coords/from_coords on random states") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<double> mu(n);
    double total = 0.0;
    for (double& m : mu) total += (m = unif(rng));
    for (double& m : mu) m /= total;
    // renormalize exactly to 1 within the profile tolerance
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) acc += mu[i];
    mu[n - 1] = 1.0 - acc;
    std::vector<double> s(n);
    for (double& v : s) v = unif(rng);

    const GroupProfile profile(mu);
    const PopulationState state(s);
    const PopulationState back = from_coords(profile, to_coords(profile, state));
    for (int g = 0; g < n; ++g) {
      CHECK(std::abs(back[g] - state[g]) < 1e-14);
    }
  }
}

TEST_CASE("states built on a fixed hyperplane share the mean") {
  const GroupProfile mu({0.4, 0.35, 0.25});
  for (double d1 : {-0.1, 0.0, 0.15}) {
    for (double d2 : {-0.05, 0.1}) {
      const PopulationState s = from_coords(mu, CoordState{{d1, d2}, 0.47});
      CHECK(mean_qualification(mu, s) == doctest::Approx(0.47).epsilon(1e-12));
    }
  }
}

TEST_CASE("disparity norm") {
  CHECK(disparity_norm({0.2}, 1.0) == doctest::Approx(0.2));
  CHECK(disparity_norm({0.3, -0.4}, 2.0) == doctest::Approx(0.5));
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(disparity_norm({0.0, 0.0}, p) == 0.0);
  }
  CHECK_THROWS_AS(disparity_norm({0.1}, 0.5), ConfigError);
}

TEST_CASE("disparity norm vanishes only at zero D") {
  for (double p : {1.0, 2.0, 7.0}) {
    CHECK(disparity_norm({0.0, 1e-30, 0.0}, p) > 0.0);
    CHECK(disparity_norm({0.0, 0.0, 0.0}, p) == 0.0);
  }
}

TEST_CASE("group profile validation") {
  CHECK_THROWS_AS(GroupProfile({1.0}), ConfigError);
  CHECK_THROWS_AS(GroupProfile({0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(GroupProfile({1.0, 0.0}), ConfigError);
}

TEST_CASE("interior state constructor rejects boundary values") {
  CHECK_THROWS_AS(PopulationState({0.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(PopulationState({0.5, 1.0}), ConfigError);
  const PopulationState vertex = PopulationState::boundary({0.0, 1.0});
  CHECK_FALSE(vertex.interior());
}
