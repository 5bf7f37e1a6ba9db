#pragma once

#include "casrod/assembly.hpp"
#include "casrod/benchmarks.hpp"
#include "casrod/splines.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <random>

namespace casrod::test {

/// Straight rod along x from 0 to `length`, uniform in arc length.
inline NurbsCurve straight_rod(double length, int n_elements, int degree = 2) {
  const KnotVector kv = make_open_uniform_knot_vector(degree, n_elements);
  const auto& U = kv.knots();
  std::vector<Vec2> pts;
  // Greville abscissae give an arc-length-affine parametrization.
  for (int b = 0; b < kv.num_basis(); ++b) {
    double g = 0.0;
    for (int k = 1; k <= degree; ++k) g += U[b + k];
    pts.emplace_back(length * g / degree, 0.0);
  }
  return NurbsCurve(kv, pts, std::vector<double>(pts.size(), 1.0));
}

/// Right half of a circle from (0, R) through (R, 0) to (0, -R) as one C1
/// quadratic patch with two elements; weights are the C1-compatible scaling
/// of two standard quarter arcs.
inline NurbsCurve half_ring(double R) {
  return NurbsCurve(KnotVector(2, {0, 0, 0, 0.5, 1, 1, 1}), {Vec2(0, R), Vec2(R, R), Vec2(R, -R), Vec2(0, -R)},
                    {1.0, 0.5, 0.5, 1.0});
}

/// Least-squares fit of control displacements to a field sampled densely;
/// exact for fields in the spline space.
inline ControlDisplacements interpolate(const NurbsCurve& c, const std::function<Vec2(const Vec2&)>& field) {
  const int n = c.num_basis();
  const int m = 8 * n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd rhs(m, 2);
  for (int i = 0; i < m; ++i) {
    const double xi = static_cast<double>(i) / (m - 1);
    const BasisEval b = nurbs_basis(c, xi, 0);
    for (int j = 0; j < b.count; ++j) A(i, b.first_active + j) = b.values[j];
    rhs.row(i) = field(evaluate_geometry(c, xi).point).transpose();
  }
  const Eigen::MatrixXd x = A.colPivHouseholderQr().solve(rhs);
  ControlDisplacements u;
  for (int j = 0; j < n; ++j) u.u.emplace_back(x(j, 0), x(j, 1));
  return u;
}

/// Element dofs in element_dof_map order; with open uniform knots element e
/// is supported by functions e .. e + p.
inline Eigen::VectorXd gather_element(const NurbsCurve& c, int e, const ControlDisplacements& u) {
  const int p = c.degree();
  Eigen::VectorXd x(2 * (p + 1));
  for (int j = 0; j <= p; ++j) x.segment<2>(2 * j) = u.u[e + j];
  return x;
}

inline ControlDisplacements random_displacements(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ControlDisplacements u;
  for (int i = 0; i < n; ++i) u.u.emplace_back(d(rng), d(rng));
  return u;
}

inline Eigen::VectorXd translation(int n_dof, int component) {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n_dof);
  for (int i = component; i < n_dof; i += 2) t(i) = 1.0;
  return t;
}

inline bool symmetric_psd(const Eigen::MatrixXd& k) {
  if ((k - k.transpose()).norm() > 1e-10 * k.norm()) return false;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k).eigenvalues();
  return ev.minCoeff() > -1e-9 * ev.maxCoeff();
}

}  // namespace casrod::test
