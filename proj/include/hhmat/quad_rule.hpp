#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "hhmat/error.hpp"

namespace hhmat {

/// Gauss–Legendre rule mapped to [0, 1]. Nodes ascending, weights sum to 1.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/**
 * m-point Gauss–Legendre rule on [0, 1].
 *
 * Roots of P_m are found by Newton iteration from the Tricomi-type initial
 * guess cos(π(i + 3/4)/(m + 1/2)), iterated until the update is below 1e-15.
 * Only the nonnegative roots are computed; the rule is mirrored so that
 * nodes[i] + nodes[m-1-i] == 1 up to rounding and weights are symmetric.
 */
inline QuadRule gauss_legendre(std::size_t m) {
  if (m == 0) throw InvalidArgument("gauss_legendre: need at least one node");
  constexpr double kNewtonTol = 1e-15;
  constexpr int kMaxIter = 100;

  QuadRule rule;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);
  const double n = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= kNewtonTol) break;
    }
    // Re-evaluate the derivative at the converged root for the weight.
    double p1 = 1.0, p2 = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      const double p3 = p2;
      p2 = p1;
      const double jd = static_cast<double>(j);
      p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);  // half of the [-1,1] weight

    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[m - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.5;
  return rule;
}

}  // namespace hhmat
