#ifndef FAIRDYN_CLASSIFIER_HPP
#define FAIRDYN_CLASSIFIER_HPP

#include <array>
#include <vector>

#include "fairdyn/dist.hpp"
#include "fairdyn/state.hpp"

namespace fairdyn {

/// Classifier utility per (true label y, decision yhat). Correct decisions
/// must pay more than incorrect ones for both labels, and the derived ratio
/// xi = (V00 - V01)/(V11 - V10) must land in (0, inf).
class ClassifierPayoffs {
 public:
  /// v[y][yhat].
  explicit ClassifierPayoffs(std::array<std::array<double, 2>, 2> v);

  double operator()(int y, int yhat) const { return v_[y][yhat]; }

  /// xi = (V00 - V01)/(V11 - V10).
  double xi() const;

  /// Probability threshold theta = xi/(1+xi).
  double theta() const;

 private:
  std::array<std::array<double, 2>, 2> v_;
};

/// One feature threshold per group; accept x iff x > phi_g. Components may
/// be +/-inf (reject-all / accept-all).
struct ThresholdPolicy {
  std::vector<double> phi;

  bool uniform() const;
};

/// Utility-maximizing group-independent threshold: the phi solving
/// q1(phi)/q0(phi) = xi (1 - s_bar)/s_bar.
double solve_threshold(const FeaturePair& d, const ClassifierPayoffs& V,
                       double s_bar);

/// Pr(Yhat = 1 | G = g) = s_g (1 - Q1(phi)) + (1 - s_g)(1 - Q0(phi)).
double acceptance_rate(const FeaturePair& d, double phi_g, double s_g);

/// Joint outcome fractions Pr(Y = y, Yhat = yhat | G = g) for one group,
/// plus the label-conditional error rates. FPR and FNR depend only on the
/// threshold, so groups sharing a threshold share them exactly.
struct Confusion {
  double p[2][2];  // p[y][yhat]
  double fpr;      // 1 - Q0(phi)
  double fnr;      // Q1(phi)
};

Confusion confusion(const FeaturePair& d, double phi_g, double s_g);

/// Expected classifier utility sum_g mu_g sum_{y,yhat} V[y][yhat] p[y][yhat].
double utility(const FeaturePair& d, const ClassifierPayoffs& V,
               const ThresholdPolicy& policy, const GroupProfile& mu,
               const PopulationState& s);

}  // namespace fairdyn

#endif
