#ifndef FAIRDYN_STATE_HPP
#define FAIRDYN_STATE_HPP

#include <vector>

namespace fairdyn {

/// Relative group sizes mu_g; each in (0,1), summing to 1.
class GroupProfile {
 public:
  explicit GroupProfile(std::vector<double> mu);

  std::size_t size() const { return mu_.size(); }
  double operator[](std::size_t g) const { return mu_[g]; }
  const std::vector<double>& values() const { return mu_; }

 private:
  std::vector<double> mu_;
};

/// Per-group qualification rates s_g. Interior states have every s_g in
/// (0,1); boundary states (trivial equilibria with s_g in {0,1}) must be
/// built through the explicit boundary constructor.
class PopulationState {
 public:
  explicit PopulationState(std::vector<double> s);
  static PopulationState boundary(std::vector<double> s);

  std::size_t size() const { return s_.size(); }
  double operator[](std::size_t g) const { return s_[g]; }
  const std::vector<double>& values() const { return s_; }
  bool interior() const;

 private:
  PopulationState() = default;
  std::vector<double> s_;
};

/// State in (D, s_bar) coordinates: D holds the n-1 sequential-pair
/// qualification distances delta(g, g+1).
struct CoordState {
  std::vector<double> D;
  double s_bar = 0.0;
};

/// <mu, s>; the global qualification rate.
double mean_qualification(const GroupProfile& mu, const PopulationState& s);

CoordState to_coords(const GroupProfile& mu, const PopulationState& s);

/// Inverse change of basis; throws if any reconstructed s_g leaves [0,1].
PopulationState from_coords(const GroupProfile& mu, const CoordState& c);

/// p-norm of the distance vector, p >= 1.
double disparity_norm(const std::vector<double>& D, double p);

}  // namespace fairdyn

#endif
