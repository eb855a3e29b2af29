#ifndef FAIRDYN_HARNESS_HPP
#define FAIRDYN_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fairdyn/analysis.hpp"
#include "fairdyn/classifier.hpp"
#include "fairdyn/dist.hpp"
#include "fairdyn/dynamics.hpp"
#include "fairdyn/interventions.hpp"
#include "fairdyn/state.hpp"

namespace fairdyn {

/// Immutable problem definition: who the groups are, how features are
/// distributed, what the classifier and the agents earn, which response
/// model runs, and which intervention shapes the policy.
struct Scenario {
  GroupProfile mu;
  FeaturePair d;
  ClassifierPayoffs V;
  AgentSuccess U;
  DynamicsModel dynamics;
  InterventionSpec intervention;

  std::size_t groups() const { return mu.size(); }

  /// Policy for the current state per the intervention.
  ThresholdPolicy policy(const PopulationState& s) const;

  /// One step of the tagged response model under the given policy.
  PopulationState step(const PopulationState& s,
                       const ThresholdPolicy& policy) const;
};

struct TrajectoryRecord {
  long t = 0;
  std::vector<double> s;
  std::vector<double> phi;
  double s_bar = 0.0;
  double disparity_l1 = 0.0;
  std::vector<double> acceptance;
  std::vector<double> fpr;
  std::vector<double> fnr;
  std::optional<double> fitness_gap;  // only when the policy is uniform
};

/// Iterates policy -> classify -> respond, recording every `record_every`
/// steps plus the final step. Deterministic.
std::vector<TrajectoryRecord> run_trajectory(const Scenario& sc,
                                             const PopulationState& s0,
                                             long steps,
                                             long record_every = 1);

enum class LimitClass { internal_hyperplane, trivial_vertex, none };

struct ConvergenceReport {
  bool converged = false;
  std::vector<double> limit_state;
  double s_bar = 0.0;
  double disparity_l1 = 0.0;
  LimitClass limit = LimitClass::none;
  long steps = 0;  // index of the last recorded step
};

/// Converged iff max over the trailing window of ||s[t+1] - s[t]||_inf < tol.
/// Requires stride-1 records covering the window.
ConvergenceReport detect_convergence(const Scenario& sc,
                                     const std::vector<TrajectoryRecord>& records,
                                     long window, double tol);

/// Two-group phase-portrait sweep: one-step displacement and group-1 metrics
/// at each interior cell center, row-major in (s1, s2).
struct SweepResult {
  std::vector<double> s1_values;
  std::vector<double> s2_values;
  struct Cell {
    double s1, s2;
    double ds1, ds2;
    double acc1, fpr1, fnr1;
  };
  std::vector<Cell> cells;  // row-major: s1 outer, s2 inner
};

SweepResult sweep_grid(const Scenario& sc, int resolution);

}  // namespace fairdyn

#endif
