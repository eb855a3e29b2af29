#include "fairdyn/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdyn/errors.hpp"

namespace fairdyn {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;
}  // namespace

double normal_cdf(double z) {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

FeaturePair::FeaturePair(Family family, double mean0, double mean1,
                         double sigma)
    : family_(family), mean0_(mean0), mean1_(mean1), sigma_(sigma) {}

FeaturePair FeaturePair::gaussian(double mean0, double mean1, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("distribution: sigma must be positive and finite");
  }
  if (!std::isfinite(mean0) || !std::isfinite(mean1)) {
    throw ConfigError("distribution: means must be finite");
  }
  if (!(mean1 > mean0)) {
    throw ConfigError(
        "distribution: mean1 must exceed mean0 for an increasing "
        "likelihood ratio");
  }
  return FeaturePair(Family::gaussian, mean0, mean1, sigma);
}

FeaturePair FeaturePair::gaussian_unchecked(double mean0, double mean1,
                                            double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("distribution: sigma must be positive and finite");
  }
  return FeaturePair(Family::gaussian, mean0, mean1, sigma);
}

double FeaturePair::pdf(int y, double x) const {
  const double mean = (y == 1) ? mean1_ : mean0_;
  const double z = (x - mean) / sigma_;
  return kInvSqrt2Pi / sigma_ * std::exp(-0.5 * z * z);
}

double FeaturePair::cdf(int y, double x) const {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double mean = (y == 1) ? mean1_ : mean0_;
  return normal_cdf((x - mean) / sigma_);
}

double FeaturePair::likelihood_ratio(double x) const {
  const double dm = mean1_ - mean0_;
  return std::exp(dm * (2.0 * x - mean0_ - mean1_) / (2.0 * sigma_ * sigma_));
}

double FeaturePair::likelihood_ratio_derivative(double x) const {
  const double dm = mean1_ - mean0_;
  return likelihood_ratio(x) * dm / (sigma_ * sigma_);
}

double FeaturePair::inverse_likelihood_ratio(double r) const {
  if (!(r > 0.0)) {
    throw ConfigError("inverse_likelihood_ratio: r must be positive");
  }
  if (std::isinf(r)) return std::numeric_limits<double>::infinity();
  // Gaussian ratio range is (0, inf); closed-form inversion.
  const double dm = mean1_ - mean0_;
  return (sigma_ * sigma_ * std::log(r)) / dm + 0.5 * (mean0_ + mean1_);
}

double FeaturePair::inverse_likelihood_ratio_bisect(double r) const {
  if (!(r > 0.0)) {
    throw ConfigError("inverse_likelihood_ratio: r must be positive");
  }
  constexpr int kMaxIters = 200;
  double lo = 0.0, hi = 0.0;
  double width = 1.0;
  int iters = 0;
  while (likelihood_ratio(lo) >= r) {
    lo -= width;
    width *= 2.0;
    if (++iters > kMaxIters) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  width = 1.0;
  iters = 0;
  while (likelihood_ratio(hi) <= r) {
    hi += width;
    width *= 2.0;
    if (++iters > kMaxIters) {
      return std::numeric_limits<double>::infinity();
    }
  }
  iters = 0;
  while (hi - lo > 1e-12) {
    if (++iters > kMaxIters) {
      throw NumericError("inverse_likelihood_ratio: bisection did not reach "
                         "tolerance within iteration budget");
    }
    const double mid = 0.5 * (lo + hi);
    if (likelihood_ratio(mid) < r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool FeaturePair::validate_mlr(std::span<const double> grid) const {
  if (grid.size() < 2) {
    throw ConfigError("validate_mlr: grid needs at least 2 points");
  }
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw ConfigError("validate_mlr: grid must be strictly increasing");
  }
  double prev = likelihood_ratio(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = likelihood_ratio(grid[i]);
    if (!(cur > prev)) return false;
    prev = cur;
  }
  return true;
}

}  // namespace fairdyn
