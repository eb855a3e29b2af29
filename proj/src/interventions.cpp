#include "fairdyn/interventions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdyn/errors.hpp"

namespace fairdyn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGoldenRatio = (std::sqrt(5.0) - 1.0) / 2.0;

// Unique phi with acceptance_rate(d, phi, s_g) = a; acceptance is strictly
// decreasing in phi with range (0,1).
double invert_acceptance(const FeaturePair& d, double s_g, double a) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw NumericError("invert_acceptance: target rate must lie in (0,1)");
  }
  const double center = 0.5 * (d.mean0() + d.mean1());
  double lo = center, hi = center, w = d.sigma();
  int iters = 0;
  while (acceptance_rate(d, lo, s_g) < a) {
    lo -= w;
    w *= 2.0;
    if (++iters > 200) throw NumericError("invert_acceptance: no bracket");
  }
  w = d.sigma();
  iters = 0;
  while (acceptance_rate(d, hi, s_g) > a) {
    hi += w;
    w *= 2.0;
    if (++iters > 200) throw NumericError("invert_acceptance: no bracket");
  }
  iters = 0;
  while (hi - lo > 1e-12) {
    if (++iters > 200) {
      throw NumericError("invert_acceptance: bisection exceeded budget");
    }
    const double mid = 0.5 * (lo + hi);
    if (acceptance_rate(d, mid, s_g) > a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// The threshold equation only applies to interior rates; at a saturated rate
// take its continuous limit so trajectories that reach a vertex in floating
// point stay well defined (the vertex is fixed under every response model).
double threshold_or_limit(const FeaturePair& d, const ClassifierPayoffs& V,
                          double rate) {
  if (rate <= 0.0) return kInf;
  if (rate >= 1.0) return -kInf;
  return solve_threshold(d, V, rate);
}

}  // namespace

std::string InterventionSpec::name() const {
  switch (tag) {
    case Tag::group_independent: return "group_independent";
    case Tag::laissez_faire: return "laissez_faire";
    case Tag::demographic_parity: return "demographic_parity";
    case Tag::universal_subsidy: return "universal_subsidy";
    case Tag::feedback_control: return "feedback_control";
    case Tag::capacity_capped:
      return "capacity_capped(" + (inner ? inner->name() : "?") + ")";
  }
  return "?";
}

ThresholdPolicy group_independent_policy(const FeaturePair& d,
                                         const ClassifierPayoffs& V,
                                         const GroupProfile& mu,
                                         const PopulationState& s) {
  const double phi = threshold_or_limit(d, V, mean_qualification(mu, s));
  ThresholdPolicy policy;
  policy.phi.assign(s.size(), phi);
  return policy;
}

ThresholdPolicy laissez_faire_policy(const FeaturePair& d,
                                     const ClassifierPayoffs& V,
                                     const GroupProfile& mu,
                                     const PopulationState& s) {
  (void)mu;
  ThresholdPolicy policy;
  policy.phi.resize(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    policy.phi[g] = threshold_or_limit(d, V, s[g]);
  }
  return policy;
}

DpResult demographic_parity_policy(const FeaturePair& d,
                                   const ClassifierPayoffs& V,
                                   const GroupProfile& mu,
                                   const PopulationState& s,
                                   const DpOptions& opts) {
  const std::size_t n = s.size();

  auto policy_at = [&](double a) {
    ThresholdPolicy p;
    p.phi.resize(n);
    for (std::size_t g = 0; g < n; ++g) p.phi[g] = invert_acceptance(d, s[g], a);
    return p;
  };
  auto utility_at = [&](double a) {
    return utility(d, V, policy_at(a), mu, s);
  };

  // Grid seed over the interior of (0,1).
  double best_a = 0.0, best_u = -kInf;
  int best_i = 0;
  for (int i = 0; i < opts.grid_points; ++i) {
    const double a = (i + 0.5) / opts.grid_points;
    const double u = utility_at(a);
    if (u > best_u) {
      best_u = u;
      best_a = a;
      best_i = i;
    }
  }
  // Golden-section refinement on the bracketing grid cells.
  const double da = 1.0 / opts.grid_points;
  double lo = std::max(best_a - da, 1e-9);
  double hi = std::min(best_a + da, 1.0 - 1e-9);
  double x1 = hi - kGoldenRatio * (hi - lo);
  double x2 = lo + kGoldenRatio * (hi - lo);
  double f1 = utility_at(x1);
  double f2 = utility_at(x2);
  int iters = 0;
  while (hi - lo > opts.tol_a) {
    if (++iters > opts.max_iters) {
      throw NumericError("demographic_parity_policy: golden-section search "
                         "exceeded budget");
    }
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGoldenRatio * (hi - lo);
      f2 = utility_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGoldenRatio * (hi - lo);
      f1 = utility_at(x1);
    }
  }
  DpResult result;
  result.acceptance = 0.5 * (lo + hi);
  result.policy = policy_at(result.acceptance);
  result.boundary = (best_i == 0 && result.acceptance < da * 0.5) ||
                    (best_i == opts.grid_points - 1 &&
                     result.acceptance > 1.0 - da * 0.5);

  // The construction guarantees equal rates; double-check the contract.
  double amin = 1.0, amax = 0.0;
  for (std::size_t g = 0; g < n; ++g) {
    const double a = acceptance_rate(d, result.policy.phi[g], s[g]);
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  if (amax - amin > opts.tol_accept) {
    throw NumericError("demographic_parity_policy: acceptance rates did not "
                       "equalize to tolerance");
  }
  return result;
}

ThresholdPolicy universal_subsidy(ThresholdPolicy base, double delta) {
  for (double& p : base.phi) p -= delta;
  return base;
}

std::vector<double> feedback_control_delta(const GroupProfile& mu,
                                           const PopulationState& s,
                                           double epsilon) {
  const std::size_t n = s.size();
  if (mu.size() != n) {
    throw ConfigError("feedback_control_delta: mu and s lengths differ");
  }
  std::vector<double> delta(n - 1), alpha(n - 1), beta(n - 1);
  for (std::size_t h = 0; h + 1 < n; ++h) delta[h] = s[h] - s[h + 1];
  double prefix = 0.0;
  for (std::size_t h = 0; h + 1 < n; ++h) {
    prefix += mu[h];
    beta[h] = -prefix;
    alpha[h] = 1.0 - prefix;
  }
  std::vector<double> dphi(n, 0.0);
  for (std::size_t g = 0; g < n; ++g) {
    double acc = 0.0;
    for (std::size_t h = g; h + 1 < n; ++h) acc += alpha[h] * delta[h];
    for (std::size_t h = 0; h < g && h + 1 < n; ++h) acc += beta[h] * delta[h];
    const double scale = s[g] * (1.0 - s[g]);
    dphi[g] = scale > 0.0 ? -epsilon * acc / scale : 0.0;
  }
  return dphi;
}

ThresholdPolicy feedback_control_policy(const FeaturePair& d,
                                        const ClassifierPayoffs& V,
                                        const GroupProfile& mu,
                                        const PopulationState& s,
                                        double epsilon) {
  ThresholdPolicy policy = group_independent_policy(d, V, mu, s);
  const std::vector<double> dphi = feedback_control_delta(mu, s, epsilon);
  for (std::size_t g = 0; g < policy.phi.size(); ++g) policy.phi[g] += dphi[g];
  return policy;
}

ThresholdPolicy capacity_capped(const FeaturePair& d, const GroupProfile& mu,
                                const PopulationState& s,
                                ThresholdPolicy inner, double cap) {
  if (!(cap > 0.0) || !(cap < 1.0)) {
    throw ConfigError("capacity_capped: cap must lie in (0,1)");
  }
  const std::size_t n = s.size();
  // A uniform upward shift of an accept-all threshold limits to a shared
  // finite threshold; represent -inf by a floor whose acceptance is 1 to
  // double precision so the shift acts on every component.
  const double floor_phi = std::min(d.mean0(), d.mean1()) - 40.0 * d.sigma();
  std::vector<double> base = inner.phi;
  for (double& p : base) {
    if (p == -kInf) p = floor_phi;
  }

  auto global_acceptance = [&](double shift) {
    double acc = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
      acc += mu[g] * acceptance_rate(d, base[g] + shift, s[g]);
    }
    return acc;
  };

  if (global_acceptance(0.0) <= cap) return inner;

  double lo = 0.0, hi = d.sigma(), w = d.sigma();
  int iters = 0;
  while (global_acceptance(hi) > cap) {
    hi += w;
    w *= 2.0;
    if (++iters > 200) {
      throw NumericError("capacity_capped: no shift reaches the cap");
    }
  }
  iters = 0;
  while (std::abs(global_acceptance(0.5 * (lo + hi)) - cap) > 1e-10 ||
         hi - lo > 1e-9) {
    if (++iters > 200) break;
    const double mid = 0.5 * (lo + hi);
    if (global_acceptance(mid) > cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double shift = 0.5 * (lo + hi);
  ThresholdPolicy out;
  out.phi.resize(n);
  for (std::size_t g = 0; g < n; ++g) out.phi[g] = base[g] + shift;
  return out;
}

ThresholdPolicy apply_intervention(const InterventionSpec& spec,
                                   const FeaturePair& d,
                                   const ClassifierPayoffs& V,
                                   const GroupProfile& mu,
                                   const PopulationState& s) {
  switch (spec.tag) {
    case InterventionSpec::Tag::group_independent:
      return group_independent_policy(d, V, mu, s);
    case InterventionSpec::Tag::laissez_faire:
      return laissez_faire_policy(d, V, mu, s);
    case InterventionSpec::Tag::demographic_parity:
      return demographic_parity_policy(d, V, mu, s).policy;
    case InterventionSpec::Tag::universal_subsidy:
      return universal_subsidy(group_independent_policy(d, V, mu, s),
                               spec.delta);
    case InterventionSpec::Tag::feedback_control:
      return feedback_control_policy(d, V, mu, s, spec.epsilon);
    case InterventionSpec::Tag::capacity_capped: {
      if (!spec.inner) {
        throw ConfigError("capacity_capped: missing inner policy");
      }
      return capacity_capped(d, mu, s,
                             apply_intervention(*spec.inner, d, V, mu, s),
                             spec.cap);
    }
  }
  throw ConfigError("apply_intervention: unknown tag");
}

}  // namespace fairdyn
