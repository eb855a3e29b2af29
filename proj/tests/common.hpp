#ifndef FAIRDYN_TESTS_COMMON_HPP
#define FAIRDYN_TESTS_COMMON_HPP

#include "fairdyn/harness.hpp"

namespace fairdyn::testing {

inline FeaturePair unit_gaussian() {
  return FeaturePair::gaussian(-1.0, 1.0, 1.0);
}

// Equal groups, U = [[0.1, 5.5], [0.5, 1.0]], V = [[0.5, -0.5], [-0.25, 1.0]].
// One stable hyperplane at phi+ ~ 0.031, s_bar+ ~ 0.429.
inline Scenario setting1() {
  return Scenario{
      GroupProfile({0.5, 0.5}),
      unit_gaussian(),
      ClassifierPayoffs({{{0.5, -0.5}, {-0.25, 1.0}}}),
      AgentSuccess({{{0.1, 5.5}, {0.5, 1.0}}}),
      DynamicsModel{},
      InterventionSpec{},
  };
}

// Identity V, U = [[0.5, 1.5], [0.1, 1.0]]. Stable and unstable hyperplanes.
inline Scenario setting2() {
  return Scenario{
      GroupProfile({0.5, 0.5}),
      unit_gaussian(),
      ClassifierPayoffs({{{1.0, 0.0}, {0.0, 1.0}}}),
      AgentSuccess({{{0.5, 1.5}, {0.1, 1.0}}}),
      DynamicsModel{},
      InterventionSpec{},
  };
}

// V = [[10, 0], [1, 1.5]], U = [[0.5, 0.5], [0.1, 1.5]]. Unstable only.
inline Scenario setting3() {
  return Scenario{
      GroupProfile({0.5, 0.5}),
      unit_gaussian(),
      ClassifierPayoffs({{{10.0, 0.0}, {1.0, 1.5}}}),
      AgentSuccess({{{0.5, 0.5}, {0.1, 1.5}}}),
      DynamicsModel{},
      InterventionSpec{},
  };
}

}  // namespace fairdyn::testing

#endif
