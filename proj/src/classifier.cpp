#include "fairdyn/classifier.hpp"

#include <cmath>

#include "fairdyn/errors.hpp"

namespace fairdyn {

ClassifierPayoffs::ClassifierPayoffs(std::array<std::array<double, 2>, 2> v)
    : v_(v) {
  if (!(v_[0][0] > v_[0][1]) || !(v_[1][1] > v_[1][0])) {
    throw ConfigError("V: correct predictions must pay more than errors "
                      "(V00 > V01 and V11 > V10)");
  }
  const double x = (v_[0][0] - v_[0][1]) / (v_[1][1] - v_[1][0]);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ConfigError("V: xi = (V00-V01)/(V11-V10) must lie in (0, inf)");
  }
}

double ClassifierPayoffs::xi() const {
  return (v_[0][0] - v_[0][1]) / (v_[1][1] - v_[1][0]);
}

double ClassifierPayoffs::theta() const {
  const double x = xi();
  return x / (1.0 + x);
}

bool ThresholdPolicy::uniform() const {
  for (double p : phi) {
    if (p != phi[0]) return false;
  }
  return true;
}

double solve_threshold(const FeaturePair& d, const ClassifierPayoffs& V,
                       double s_bar) {
  if (!(s_bar > 0.0) || !(s_bar < 1.0)) {
    throw ConfigError("solve_threshold: s_bar must lie in (0,1)");
  }
  return d.inverse_likelihood_ratio(V.xi() * (1.0 - s_bar) / s_bar);
}

double acceptance_rate(const FeaturePair& d, double phi_g, double s_g) {
  return s_g * (1.0 - d.cdf(1, phi_g)) + (1.0 - s_g) * (1.0 - d.cdf(0, phi_g));
}

Confusion confusion(const FeaturePair& d, double phi_g, double s_g) {
  const double q0 = d.cdf(0, phi_g);
  const double q1 = d.cdf(1, phi_g);
  Confusion c;
  c.fpr = 1.0 - q0;
  c.fnr = q1;
  c.p[0][0] = (1.0 - s_g) * q0;
  c.p[0][1] = (1.0 - s_g) * (1.0 - q0);
  c.p[1][0] = s_g * q1;
  c.p[1][1] = s_g * (1.0 - q1);
  return c;
}

double utility(const FeaturePair& d, const ClassifierPayoffs& V,
               const ThresholdPolicy& policy, const GroupProfile& mu,
               const PopulationState& s) {
  if (policy.phi.size() != s.size() || mu.size() != s.size()) {
    throw ConfigError("utility: policy/mu/state lengths differ");
  }
  double u = 0.0;
  for (std::size_t g = 0; g < s.size(); ++g) {
    const Confusion c = confusion(d, policy.phi[g], s[g]);
    double ug = 0.0;
    for (int y = 0; y < 2; ++y) {
      for (int yh = 0; yh < 2; ++yh) ug += V(y, yh) * c.p[y][yh];
    }
    u += mu[g] * ug;
  }
  return u;
}

}  // namespace fairdyn
