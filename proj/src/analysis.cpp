#include "fairdyn/analysis.hpp"

#include <cmath>
#include <limits>

#include "fairdyn/errors.hpp"

namespace fairdyn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOnHyperplaneTol = 1e-8;
}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::overcorrecting: return "overcorrecting";
    case Stability::marginal: return "marginal";
  }
  return "?";
}

Stability classify_stability(double lambda) {
  if (std::abs(lambda) < 1e-10) return Stability::marginal;
  if (lambda > 0.0) return Stability::unstable;
  if (lambda > -2.0) return Stability::stable;
  return Stability::overcorrecting;
}

double fitness_gap(const FeaturePair& d, const AgentSuccess& U, double phi) {
  const FitnessPair w = fitness(d, U, phi);
  return w.w1 - w.w0;
}

double gap_slope(const FeaturePair& d, const AgentSuccess& U, double phi) {
  return d.pdf(1, phi) * (U(1, 0) - U(1, 1)) -
         d.pdf(0, phi) * (U(0, 0) - U(0, 1));
}

double phi_star(const FeaturePair& d, const AgentSuccess& U) {
  const double ratio = (U(0, 0) - U(0, 1)) / (U(1, 0) - U(1, 1));
  if (ratio > 0.0) return d.inverse_likelihood_ratio(ratio);
  // ratio <= 0 forces U00 >= U01 (U11 > U10 always), so the slope
  // q1(U10-U11) - q0(U00-U01) is negative everywhere: the gap decreases
  // monotonically and its supremum sits at -inf.
  return -kInf;
}

namespace {

// Bisect for a zero of the gap on [lo, hi] given gap(lo) and gap(hi) have
// opposite signs.
double bisect_gap(const FeaturePair& d, const AgentSuccess& U, double lo,
                  double hi, const BracketOptions& opts) {
  double glo = fitness_gap(d, U, lo);
  int iters = 0;
  while (hi - lo > opts.tol) {
    if (++iters > opts.max_iters) {
      throw NumericError("find_equilibrium_thresholds: bisection exceeded "
                         "iteration budget");
    }
    const double mid = 0.5 * (lo + hi);
    const double gmid = fitness_gap(d, U, mid);
    if ((gmid < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EquilibriumThresholds find_equilibrium_thresholds(const FeaturePair& d,
                                                  const AgentSuccess& U,
                                                  const BracketOptions& opts) {
  EquilibriumThresholds out;
  const double star = phi_star(d, U);
  const double gap_lo_limit = U(1, 1) - U(0, 1);  // phi -> -inf
  const double gap_hi_limit = U(1, 0) - U(0, 0);  // phi -> +inf
  const double width = opts.half_width * d.sigma();

  if (std::isfinite(star)) {
    const double gap_star = fitness_gap(d, U, star);
    // Left flank: monotone increasing from gap_lo_limit up to gap_star.
    if (gap_lo_limit < 0.0 && gap_star > 0.0) {
      double lo = star - width;
      double w = width;
      while (fitness_gap(d, U, lo) >= 0.0) {
        lo -= w;
        w *= 2.0;
      }
      out.phi_plus = bisect_gap(d, U, lo, star, opts);
    } else if (gap_lo_limit > 0.0 && gap_star < 0.0) {
      // Gap rises toward the extremum yet is negative there: impossible for
      // a quasi-concave gap; left as a guard.
      throw NumericError("find_equilibrium_thresholds: inconsistent gap shape");
    }
    // Right flank: monotone decreasing from gap_star down to gap_hi_limit.
    if (gap_hi_limit < 0.0 && gap_star > 0.0) {
      double hi = star + width;
      double w = width;
      while (fitness_gap(d, U, hi) >= 0.0) {
        hi += w;
        w *= 2.0;
      }
      out.phi_minus = bisect_gap(d, U, star, hi, opts);
    }
  } else if (star == -kInf) {
    // Gap strictly decreasing over all of R.
    if (gap_lo_limit > 0.0 && gap_hi_limit < 0.0) {
      double lo = -width, hi = width;
      double w = width;
      while (fitness_gap(d, U, lo) <= 0.0) { lo -= w; w *= 2.0; }
      w = width;
      while (fitness_gap(d, U, hi) >= 0.0) { hi += w; w *= 2.0; }
      out.phi_minus = bisect_gap(d, U, lo, hi, opts);
    }
  } else {
    // Gap strictly increasing over all of R.
    if (gap_lo_limit < 0.0 && gap_hi_limit > 0.0) {
      double lo = -width, hi = width;
      double w = width;
      while (fitness_gap(d, U, lo) >= 0.0) { lo -= w; w *= 2.0; }
      w = width;
      while (fitness_gap(d, U, hi) <= 0.0) { hi += w; w *= 2.0; }
      out.phi_plus = bisect_gap(d, U, lo, hi, opts);
    }
  }
  return out;
}

double hyperplane_qualification(const FeaturePair& d,
                                const ClassifierPayoffs& V, double phi) {
  const double xi = V.xi();
  return xi / (xi + d.likelihood_ratio(phi));
}

double dphi_dsbar(const FeaturePair& d, const ClassifierPayoffs& V,
                  double phi) {
  const double s_bar = hyperplane_qualification(d, V, phi);
  return -V.xi() / (s_bar * s_bar * d.likelihood_ratio_derivative(phi));
}

JacobianEigen jacobian_eigen(const GroupProfile& mu, const PopulationState& s,
                             const FeaturePair& d, const AgentSuccess& U,
                             const ClassifierPayoffs& V) {
  const std::size_t n = s.size();
  const double s_bar = mean_qualification(mu, s);
  const double phi = solve_threshold(d, V, s_bar);
  const double gap = fitness_gap(d, U, phi);
  if (std::abs(gap) >= kOnHyperplaneTol) {
    throw NumericError("jacobian_eigen: state is not on an equilibrium "
                       "hyperplane (|W1 - W0| too large)");
  }
  const FitnessPair w = fitness(d, U, phi);
  const double w_eq = 0.5 * (w.w0 + w.w1);
  if (w_eq == 0.0) {
    throw NumericError("jacobian_eigen: degenerate equilibrium fitness");
  }

  JacobianEigen out;
  out.v.resize(n);
  double weighted_var = 0.0;
  for (std::size_t g = 0; g < n; ++g) weighted_var += mu[g] * s[g] * (1.0 - s[g]);
  for (std::size_t g = 0; g + 1 < n; ++g) {
    out.v[g] = (s[g] - s[g + 1]) * (1.0 - s[g] - s[g + 1]);
  }
  out.v[n - 1] = weighted_var;
  out.lambda = weighted_var * (1.0 / w_eq) * dphi_dsbar(d, V, phi) *
               gap_slope(d, U, phi);
  return out;
}

std::vector<std::vector<double>> numeric_jacobian(const GroupProfile& mu,
                                                  const PopulationState& s,
                                                  const FeaturePair& d,
                                                  const AgentSuccess& U,
                                                  const ClassifierPayoffs& V,
                                                  double h) {
  if (!(h >= 1e-7) || !(h <= 1e-4)) {
    throw ConfigError("numeric_jacobian: h must lie in [1e-7, 1e-4]");
  }
  const std::size_t n = s.size();
  const CoordState base = to_coords(mu, s);

  auto displacement = [&](const CoordState& c) {
    const PopulationState state = from_coords(mu, c);
    if (!state.interior()) {
      throw NumericError("numeric_jacobian: perturbed state leaves (0,1)^n");
    }
    ThresholdPolicy policy;
    policy.phi.assign(n, solve_threshold(d, V, c.s_bar));
    const CoordState next = to_coords(mu, replicator_step(mu, state, policy, d, U));
    std::vector<double> delta(n);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = next.D[i] - c.D[i];
    delta[n - 1] = next.s_bar - c.s_bar;
    return delta;
  };

  std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    CoordState up = base, down = base;
    if (j + 1 < n) {
      up.D[j] += h;
      down.D[j] -= h;
    } else {
      up.s_bar += h;
      down.s_bar -= h;
    }
    const std::vector<double> dp = displacement(up);
    const std::vector<double> dm = displacement(down);
    for (std::size_t i = 0; i < n; ++i) J[i][j] = (dp[i] - dm[i]) / (2.0 * h);
  }
  return J;
}

namespace {

HyperplaneInfo hyperplane_info(const GroupProfile& mu, const FeaturePair& d,
                               const AgentSuccess& U,
                               const ClassifierPayoffs& V, double phi) {
  HyperplaneInfo info;
  info.phi = phi;
  info.s_bar = hyperplane_qualification(d, V, phi);
  info.slope = gap_slope(d, U, phi);
  const PopulationState flat(std::vector<double>(mu.size(), info.s_bar));
  const JacobianEigen je = jacobian_eigen(mu, flat, d, U, V);
  info.lambda = je.lambda;
  info.stability = classify_stability(je.lambda);
  return info;
}

}  // namespace

EquilibriumReport equilibrium_report(const GroupProfile& mu,
                                     const FeaturePair& d,
                                     const AgentSuccess& U,
                                     const ClassifierPayoffs& V,
                                     const BracketOptions& opts) {
  EquilibriumReport report;
  report.phi_star = phi_star(d, U);
  const EquilibriumThresholds zeros = find_equilibrium_thresholds(d, U, opts);
  if (zeros.phi_plus) {
    report.plus = hyperplane_info(mu, d, U, V, *zeros.phi_plus);
  }
  if (zeros.phi_minus) {
    report.minus = hyperplane_info(mu, d, U, V, *zeros.phi_minus);
  }
  return report;
}

}  // namespace fairdyn
