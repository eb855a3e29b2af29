#ifndef FAIRDYN_DIST_HPP
#define FAIRDYN_DIST_HPP

#include <span>
#include <string>

namespace fairdyn {

/// Pair of label-conditioned feature densities q_0, q_1 with a strictly
/// increasing likelihood ratio q_1(x)/q_0(x).
///
/// Only the Gaussian family (shared sigma, mean1 > mean0) ships; the tag
/// leaves room for other monotone-likelihood-ratio families. Downstream code
/// must go through pdf/cdf/likelihood_ratio/inverse_likelihood_ratio only.
class FeaturePair {
 public:
  enum class Family { gaussian };

  static FeaturePair gaussian(double mean0, double mean1, double sigma);

  /// Skips the mean1 > mean0 check so validate_mlr can be exercised against
  /// a pair whose ratio decreases. sigma must still be positive.
  static FeaturePair gaussian_unchecked(double mean0, double mean1,
                                        double sigma);

  Family family() const { return family_; }
  double mean0() const { return mean0_; }
  double mean1() const { return mean1_; }
  double sigma() const { return sigma_; }

  /// q_y(x); strictly positive for finite x.
  double pdf(int y, double x) const;

  /// Q_y(x) in [0,1]; accepts x = +/-inf.
  double cdf(int y, double x) const;

  /// q_1(x)/q_0(x). Gaussian closed form:
  /// exp((m1-m0)(2x-m0-m1)/(2 sigma^2)).
  double likelihood_ratio(double x) const;

  /// d/dx of the likelihood ratio.
  double likelihood_ratio_derivative(double x) const;

  /// Unique x with q_1(x)/q_0(x) = r; +/-inf when r falls outside the
  /// ratio's range.
  double inverse_likelihood_ratio(double r) const;

  /// Bracketed-bisection inversion that uses only pdf evaluations. Fallback
  /// path for families without a closed form; kept as a cross-check for the
  /// Gaussian family. Expands the bracket by doubling from x=0, then bisects
  /// to 1e-12 absolute width, at most 200 iterations.
  double inverse_likelihood_ratio_bisect(double r) const;

  /// True iff the likelihood ratio is strictly increasing across the grid.
  /// The grid must be strictly increasing with at least 2 points.
  bool validate_mlr(std::span<const double> grid) const;

 private:
  FeaturePair(Family family, double mean0, double mean1, double sigma);

  Family family_;
  double mean0_;
  double mean1_;
  double sigma_;
};

/// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double z);

}  // namespace fairdyn

#endif
