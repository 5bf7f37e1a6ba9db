#pragma once

#include <vector>

namespace casrod {

/// Gauss-Legendre rule on the parent interval [-1, 1], abscissae ascending.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxGaussPoints = 20;

/// n_pts in [1, kMaxGaussPoints]; exact for polynomials of degree 2 n_pts - 1.
QuadratureRule gauss_rule(int n_pts);

}  // namespace casrod
