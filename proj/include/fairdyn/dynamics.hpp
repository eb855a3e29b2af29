#ifndef FAIRDYN_DYNAMICS_HPP
#define FAIRDYN_DYNAMICS_HPP

#include <array>
#include <optional>

#include "fairdyn/classifier.hpp"
#include "fairdyn/dist.hpp"
#include "fairdyn/state.hpp"

namespace fairdyn {

/// Agent success U[y][yhat] per qualification-classification outcome.
/// Entries are nonnegative; U01 != U00 and U11 > U10.
class AgentSuccess {
 public:
  explicit AgentSuccess(std::array<std::array<double, 2>, 2> u);

  double operator()(int y, int yhat) const { return u_[y][yhat]; }

 private:
  std::array<std::array<double, 2>, 2> u_;
};

struct FitnessPair {
  double w0 = 0.0;
  double w1 = 0.0;
};

/// Private-cost distribution for the best-response model.
struct CostCdf {
  enum class Family { uniform, exponential };
  Family family = Family::uniform;
  double hi = 1.0;    // uniform on [0, hi]
  double rate = 1.0;  // exponential

  double operator()(double c) const;
};

struct DynamicsModel {
  enum class Tag { replicator, markov, best_response };
  Tag tag = Tag::replicator;
  std::optional<std::array<std::array<double, 2>, 2>> markov_T;
  double omega = 1.0;
  std::optional<CostCdf> cost;
};

/// Strategy fitnesses W_y = U[y][1] + (U[y][0] - U[y][1]) Q_y(phi).
/// Feature- and group-independent given the threshold.
FitnessPair fitness(const FeaturePair& d, const AgentSuccess& U, double phi);

/// Discrete replicator update s_g' = s_g W1 / (s_g W1 + (1-s_g) W0), with
/// fitness evaluated at each group's own threshold.
PopulationState replicator_step(const GroupProfile& mu,
                                const PopulationState& s,
                                const ThresholdPolicy& policy,
                                const FeaturePair& d, const AgentSuccess& U);

/// Markov requalification: s_g' = sum_{y,yhat} Pr(Y=y, Yhat=yhat | g) T[y][yhat].
PopulationState markov_step(const GroupProfile& mu, const PopulationState& s,
                            const ThresholdPolicy& policy, const FeaturePair& d,
                            const std::array<std::array<double, 2>, 2>& T);

/// Memoryless best response: s_g' = F_cost(omega (Q0(phi_g) - Q1(phi_g))).
PopulationState best_response_step(const GroupProfile& mu,
                                   const PopulationState& s,
                                   const ThresholdPolicy& policy,
                                   const FeaturePair& d, double omega,
                                   const CostCdf& cost);

}  // namespace fairdyn

#endif
