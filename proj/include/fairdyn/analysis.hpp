#ifndef FAIRDYN_ANALYSIS_HPP
#define FAIRDYN_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fairdyn/classifier.hpp"
#include "fairdyn/dynamics.hpp"
#include "fairdyn/state.hpp"

namespace fairdyn {

enum class Stability { stable, unstable, overcorrecting, marginal };

std::string to_string(Stability s);

/// stable iff -2 < lambda < 0; unstable iff lambda > 0; overcorrecting iff
/// lambda <= -2; |lambda| < 1e-10 reported marginal.
Stability classify_stability(double lambda);

struct HyperplaneInfo {
  double phi = 0.0;     // equilibrium threshold (zero of the fitness gap)
  double s_bar = 0.0;   // qualification rate of the hyperplane
  double slope = 0.0;   // d(W1 - W0)/dphi at phi
  double lambda = 0.0;  // Jacobian eigenvalue at the disparity-free state
  Stability stability = Stability::marginal;
};

struct EquilibriumReport {
  double phi_star = 0.0;  // unique extremum of the fitness gap (may be +/-inf)
  std::optional<HyperplaneInfo> plus;   // positive-slope zero
  std::optional<HyperplaneInfo> minus;  // negative-slope zero
};

/// W1(phi) - W0(phi); its zeros are the internal equilibria.
double fitness_gap(const FeaturePair& d, const AgentSuccess& U, double phi);

/// Analytic d(W1 - W0)/dphi = q1(phi)(U10 - U11) - q0(phi)(U00 - U01).
double gap_slope(const FeaturePair& d, const AgentSuccess& U, double phi);

/// Location of the gap's unique extremum: the x where q1/q0 equals
/// (U00 - U01)/(U10 - U11); +/-inf when that ratio is nonpositive and the
/// gap is monotone.
double phi_star(const FeaturePair& d, const AgentSuccess& U);

struct BracketOptions {
  double half_width = 20.0;  // initial flank half-width in units of sigma
  double tol = 1e-10;        // absolute tolerance in phi
  int max_iters = 200;
};

struct EquilibriumThresholds {
  std::optional<double> phi_plus;   // zero with positive slope
  std::optional<double> phi_minus;  // zero with negative slope
};

/// Bisects each monotone flank of the quasi-concave gap. Each zero is
/// reported only when the corresponding sign change exists.
EquilibriumThresholds find_equilibrium_thresholds(
    const FeaturePair& d, const AgentSuccess& U,
    const BracketOptions& opts = {});

/// The unique s_bar for which solve_threshold returns phi:
/// s_bar = xi / (xi + q1(phi)/q0(phi)).
double hyperplane_qualification(const FeaturePair& d,
                                const ClassifierPayoffs& V, double phi);

/// d phi / d s_bar along the threshold equation; always negative.
double dphi_dsbar(const FeaturePair& d, const ClassifierPayoffs& V,
                  double phi);

struct JacobianEigen {
  double lambda = 0.0;
  std::vector<double> v;  // eigenvector in (D, s_bar) coordinates
};

/// Analytic eigenvalue and eigenvector of the coupled map's Jacobian at an
/// on-hyperplane state. Throws if the state is not at internal equilibrium
/// (|fitness gap at the induced threshold| >= 1e-8).
JacobianEigen jacobian_eigen(const GroupProfile& mu, const PopulationState& s,
                             const FeaturePair& d, const AgentSuccess& U,
                             const ClassifierPayoffs& V);

/// Central-difference Jacobian of the one-step displacement map
/// r -> r[t+1] - r[t] in (D, s_bar) coordinates, for the replicator dynamics
/// under the group-independent policy. Test oracle for the analytic rank-1
/// structure.
std::vector<std::vector<double>> numeric_jacobian(const GroupProfile& mu,
                                                  const PopulationState& s,
                                                  const FeaturePair& d,
                                                  const AgentSuccess& U,
                                                  const ClassifierPayoffs& V,
                                                  double h);

/// Full equilibrium structure: phi*, both zeros when present, their
/// hyperplane qualification rates, and stability at the disparity-free
/// on-hyperplane states.
EquilibriumReport equilibrium_report(const GroupProfile& mu,
                                     const FeaturePair& d,
                                     const AgentSuccess& U,
                                     const ClassifierPayoffs& V,
                                     const BracketOptions& opts = {});

}  // namespace fairdyn

#endif
