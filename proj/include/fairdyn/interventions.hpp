#ifndef FAIRDYN_INTERVENTIONS_HPP
#define FAIRDYN_INTERVENTIONS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairdyn/classifier.hpp"
#include "fairdyn/state.hpp"

namespace fairdyn {

struct InterventionSpec {
  enum class Tag {
    group_independent,
    laissez_faire,
    demographic_parity,
    universal_subsidy,
    feedback_control,
    capacity_capped,
  };
  Tag tag = Tag::group_independent;
  double epsilon = 0.0;  // feedback control strength (signed)
  double delta = 0.0;    // universal subsidy magnitude
  double cap = 0.0;      // global acceptance ceiling in (0,1)
  std::shared_ptr<InterventionSpec> inner;  // wrapped policy for capacity cap

  std::string name() const;
};

/// Shared utility-maximizing threshold for the whole population.
ThresholdPolicy group_independent_policy(const FeaturePair& d,
                                         const ClassifierPayoffs& V,
                                         const GroupProfile& mu,
                                         const PopulationState& s);

/// Per-group utility-maximizing thresholds: the threshold equation with s_g
/// in place of s_bar.
ThresholdPolicy laissez_faire_policy(const FeaturePair& d,
                                     const ClassifierPayoffs& V,
                                     const GroupProfile& mu,
                                     const PopulationState& s);

struct DpOptions {
  int grid_points = 64;
  double tol_a = 1e-10;        // golden-section interval width in a
  double tol_accept = 1e-9;    // per-group acceptance-rate match
  int max_iters = 200;
};

struct DpResult {
  ThresholdPolicy policy;
  double acceptance = 0.0;  // common acceptance rate a*
  bool boundary = false;    // optimum pinned at a in {0,1} (trivial policy)
};

/// Utility-maximizing policy subject to equal per-group acceptance rates.
/// Parameterized by the common acceptance rate a: each group's threshold is
/// the unique phi_g with acceptance_rate(phi_g, s_g) = a, and u(Phi(a)) is
/// maximized over a by a grid seed plus golden-section refinement.
DpResult demographic_parity_policy(const FeaturePair& d,
                                   const ClassifierPayoffs& V,
                                   const GroupProfile& mu,
                                   const PopulationState& s,
                                   const DpOptions& opts = {});

/// Shift every threshold by -delta (positive delta lowers thresholds).
ThresholdPolicy universal_subsidy(ThresholdPolicy base, double delta);

/// Threshold perturbation that contracts every qualification distance while
/// preserving s_bar to first order:
/// dphi_g = (-eps / (s_g(1-s_g))) (sum_{h>=g} alpha_h delta_h
///                                 + sum_{h<g} beta_h delta_h),
/// alpha_h = mu_{h+1} + ... + mu_n, beta_h = -(mu_1 + ... + mu_h).
std::vector<double> feedback_control_delta(const GroupProfile& mu,
                                           const PopulationState& s,
                                           double epsilon);

/// Group-independent policy plus the feedback-control perturbation.
ThresholdPolicy feedback_control_policy(const FeaturePair& d,
                                        const ClassifierPayoffs& V,
                                        const GroupProfile& mu,
                                        const PopulationState& s,
                                        double epsilon);

/// If the inner policy's global acceptance exceeds cap, shift all thresholds
/// uniformly upward until the global acceptance equals cap (within 1e-9);
/// otherwise pass through.
ThresholdPolicy capacity_capped(const FeaturePair& d, const GroupProfile& mu,
                                const PopulationState& s,
                                ThresholdPolicy inner, double cap);

/// Evaluate an intervention spec at the current state.
ThresholdPolicy apply_intervention(const InterventionSpec& spec,
                                   const FeaturePair& d,
                                   const ClassifierPayoffs& V,
                                   const GroupProfile& mu,
                                   const PopulationState& s);

}  // namespace fairdyn

#endif
