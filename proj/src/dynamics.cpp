#include "fairdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "fairdyn/errors.hpp"

namespace fairdyn {

AgentSuccess::AgentSuccess(std::array<std::array<double, 2>, 2> u) : u_(u) {
  for (int y = 0; y < 2; ++y) {
    for (int yh = 0; yh < 2; ++yh) {
      if (!(u_[y][yh] >= 0.0) || !std::isfinite(u_[y][yh])) {
        throw ConfigError("U: entries must be finite and nonnegative");
      }
    }
  }
  if (!(u_[1][1] > u_[1][0])) {
    throw ConfigError("U: U11 must exceed U10");
  }
}

double CostCdf::operator()(double c) const {
  if (c <= 0.0) return 0.0;
  switch (family) {
    case Family::uniform:
      return std::min(c / hi, 1.0);
    case Family::exponential:
      return 1.0 - std::exp(-rate * c);
  }
  return 0.0;
}

FitnessPair fitness(const FeaturePair& d, const AgentSuccess& U, double phi) {
  FitnessPair w;
  const double q0 = d.cdf(0, phi);
  const double q1 = d.cdf(1, phi);
  w.w0 = U(0, 1) + (U(0, 0) - U(0, 1)) * q0;
  w.w1 = U(1, 1) + (U(1, 0) - U(1, 1)) * q1;
  for (double* v : {&w.w0, &w.w1}) {
    if (*v < 0.0) {
      if (*v < -1e-9) {
        throw NumericError("fitness: materially negative fitness");
      }
      *v = 0.0;
    }
  }
  return w;
}

PopulationState replicator_step(const GroupProfile& mu,
                                const PopulationState& s,
                                const ThresholdPolicy& policy,
                                const FeaturePair& d, const AgentSuccess& U) {
  if (policy.phi.size() != s.size() || mu.size() != s.size()) {
    throw ConfigError("replicator_step: policy/mu/state lengths differ");
  }
  std::vector<double> out(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    const FitnessPair w = fitness(d, U, policy.phi[g]);
    const double mean_w = s[g] * w.w1 + (1.0 - s[g]) * w.w0;
    if (mean_w == 0.0) {
      throw NumericError("replicator_step: degenerate fitness (W0 = W1 = 0)");
    }
    out[g] = s[g] * w.w1 / mean_w;
  }
  return PopulationState::boundary(std::move(out));
}

PopulationState markov_step(const GroupProfile& mu, const PopulationState& s,
                            const ThresholdPolicy& policy, const FeaturePair& d,
                            const std::array<std::array<double, 2>, 2>& T) {
  if (policy.phi.size() != s.size() || mu.size() != s.size()) {
    throw ConfigError("markov_step: policy/mu/state lengths differ");
  }
  for (int y = 0; y < 2; ++y) {
    for (int yh = 0; yh < 2; ++yh) {
      if (!(T[y][yh] >= 0.0) || !(T[y][yh] <= 1.0)) {
        throw ConfigError("markov_step: T entries must lie in [0,1]");
      }
    }
  }
  std::vector<double> out(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    const Confusion c = confusion(d, policy.phi[g], s[g]);
    double next = 0.0;
    for (int y = 0; y < 2; ++y) {
      for (int yh = 0; yh < 2; ++yh) next += c.p[y][yh] * T[y][yh];
    }
    out[g] = next;
  }
  return PopulationState::boundary(std::move(out));
}

PopulationState best_response_step(const GroupProfile& mu,
                                   const PopulationState& s,
                                   const ThresholdPolicy& policy,
                                   const FeaturePair& d, double omega,
                                   const CostCdf& cost) {
  if (policy.phi.size() != s.size() || mu.size() != s.size()) {
    throw ConfigError("best_response_step: policy/mu/state lengths differ");
  }
  if (!(omega > 0.0)) {
    throw ConfigError("best_response_step: omega must be positive");
  }
  std::vector<double> out(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    const double phi = policy.phi[g];
    const double gain =
        std::isinf(phi) ? 0.0 : d.cdf(0, phi) - d.cdf(1, phi);
    out[g] = cost(omega * gain);
  }
  return PopulationState::boundary(std::move(out));
}

}  // namespace fairdyn
