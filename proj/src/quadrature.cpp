#include "casrod/quadrature.hpp"

#include "casrod/errors.hpp"

#include <cmath>
#include <numbers>

namespace casrod {

QuadratureRule gauss_rule(int n_pts) {
  if (n_pts < 1 || n_pts > kMaxGaussPoints) throw InvalidArgument("Gauss-Legendre rule supports 1 to 20 points");
  QuadratureRule rule;
  rule.points.resize(n_pts);
  rule.weights.resize(n_pts);
  const int half = (n_pts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess; roots come out descending.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_pts + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n_pts; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n_pts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n_pts; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n_pts * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n_pts - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n_pts - 1 - i] = w;
  }
  if (n_pts % 2 == 1) rule.points[n_pts / 2] = 0.0;
  return rule;
}

}  // namespace casrod
