#include "fairdyn/state.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fairdyn/errors.hpp"

namespace fairdyn {

GroupProfile::GroupProfile(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.size() < 2) {
    throw ConfigError("mu: at least 2 groups required");
  }
  double total = 0.0;
  for (double m : mu_) {
    if (!(m > 0.0) || !(m < 1.0)) {
      throw ConfigError("mu: each group frequency must lie in (0,1)");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("mu: frequencies must sum to 1, got " +
                      std::to_string(total));
  }
}

PopulationState::PopulationState(std::vector<double> s) : s_(std::move(s)) {
  if (s_.empty()) throw ConfigError("s: empty state");
  for (double v : s_) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw ConfigError("s: interior state requires every s_g in (0,1); use "
                        "PopulationState::boundary for vertex states");
    }
  }
}

PopulationState PopulationState::boundary(std::vector<double> s) {
  if (s.empty()) throw ConfigError("s: empty state");
  for (double v : s) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw ConfigError("s: qualification rates must lie in [0,1]");
    }
  }
  PopulationState out;
  out.s_ = std::move(s);
  return out;
}

bool PopulationState::interior() const {
  for (double v : s_) {
    if (!(v > 0.0) || !(v < 1.0)) return false;
  }
  return true;
}

double mean_qualification(const GroupProfile& mu, const PopulationState& s) {
  if (mu.size() != s.size()) {
    throw ConfigError("mean_qualification: mu and s lengths differ");
  }
  double acc = 0.0;
  for (std::size_t g = 0; g < mu.size(); ++g) acc += mu[g] * s[g];
  return acc;
}

CoordState to_coords(const GroupProfile& mu, const PopulationState& s) {
  if (mu.size() != s.size()) {
    throw ConfigError("to_coords: mu and s lengths differ");
  }
  CoordState c;
  c.D.resize(s.size() - 1);
  for (std::size_t g = 0; g + 1 < s.size(); ++g) c.D[g] = s[g] - s[g + 1];
  c.s_bar = mean_qualification(mu, s);
  return c;
}

PopulationState from_coords(const GroupProfile& mu, const CoordState& c) {
  const std::size_t n = mu.size();
  if (c.D.size() + 1 != n) {
    throw ConfigError("from_coords: D length must be group count - 1");
  }
  // Shared offset: sum_h (mu_1 + ... + mu_h) * delta_h.
  double offset = 0.0;
  double mu_prefix = 0.0;
  for (std::size_t h = 0; h + 1 < n; ++h) {
    mu_prefix += mu[h];
    offset += mu_prefix * c.D[h];
  }
  std::vector<double> s(n);
  double tail = 0.0;  // sum_{h>=g} delta_h, built back to front
  for (std::size_t g = n; g-- > 0;) {
    s[g] = c.s_bar + tail - offset;
    if (g > 0) tail += c.D[g - 1];
  }
  for (double v : s) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw ConfigError("from_coords: reconstructed state leaves [0,1]");
    }
  }
  return PopulationState::boundary(std::move(s));
}

double disparity_norm(const std::vector<double>& D, double p) {
  if (!(p >= 1.0)) throw ConfigError("disparity_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double d : D) m = std::max(m, std::abs(d));
    return m;
  }
  double acc = 0.0;
  for (double d : D) acc += std::pow(std::abs(d), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace fairdyn
