#pragma once

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace casrod {

using Vec2 = Eigen::Vector2d;

/// Largest degree handled by the fixed-size basis buffers.
inline constexpr int kMaxDegree = 9;

/// Open knot vector on [0, 1] with unrepeated interior knots.
///
/// Elements are the nonzero knot spans, numbered left to right from 0.
/// Element `e` covers [knots[p + e], knots[p + e + 1]] and has the basis
/// functions e, ..., e + p active.
class KnotVector {
 public:
  /// Validates openness, monotonicity and the no-repeated-interior-knot rule.
  KnotVector(int degree, std::vector<double> knots);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Number of basis functions n = len(knots) - p - 1.
  int num_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
  int num_elements() const { return num_basis() - degree_; }

  /// Parametric end points of element `e`.
  double element_begin(int e) const { return knots_[degree_ + e]; }
  double element_end(int e) const { return knots_[degree_ + e + 1]; }

  /// Element containing xi; xi == 1 belongs to the last element.
  int find_element(double xi) const;

  /// Parent coordinate in [-1, 1] -> parametric coordinate inside element `e`.
  double to_parametric(int e, double parent) const;

 private:
  int degree_;
  std::vector<double> knots_;
};

/// Nonzero basis functions at a point, with up to two parametric derivatives.
struct BasisEval {
  int first_active = 0;
  int count = 0;
  std::array<double, kMaxDegree + 1> values{};
  std::array<double, kMaxDegree + 1> d1{};
  std::array<double, kMaxDegree + 1> d2{};
};

class NurbsCurve {
 public:
  NurbsCurve(KnotVector knots, std::vector<Vec2> control_points, std::vector<double> weights);

  const KnotVector& knot_vector() const { return knots_; }
  int degree() const { return knots_.degree(); }
  int num_basis() const { return knots_.num_basis(); }
  int num_elements() const { return knots_.num_elements(); }
  const std::vector<Vec2>& control_points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  KnotVector knots_;
  std::vector<Vec2> points_;
  std::vector<double> weights_;
};

struct CurvePoint {
  Vec2 point;
  Vec2 d_xi;
  Vec2 d_xi_xi;
};

KnotVector make_open_uniform_knot_vector(int degree, int n_elements);

/// B-spline basis at xi in [0, 1]. Throws OutOfDomain outside that range.
BasisEval bspline_basis(const KnotVector& kv, double xi, int max_deriv);

/// Same as bspline_basis but evaluated with the polynomial pieces of element
/// `element`; xi may sit on either end of the element. Used to evaluate
/// one-sided quantities at knots.
BasisEval bspline_basis_on_element(const KnotVector& kv, int element, double xi, int max_deriv);

BasisEval nurbs_basis(const NurbsCurve& curve, double xi, int max_deriv);
BasisEval nurbs_basis_on_element(const NurbsCurve& curve, int element, double xi, int max_deriv);

CurvePoint evaluate_geometry(const NurbsCurve& curve, double xi);
CurvePoint evaluate_geometry(const NurbsCurve& curve, const BasisEval& basis);

/// Inserts the midpoint of every element once. The geometry is unchanged.
NurbsCurve refine_uniform(const NurbsCurve& curve);
NurbsCurve refine_uniform(const NurbsCurve& curve, int times);

/// Inserts a single knot (Boehm's algorithm). `xi` must lie strictly inside an element.
NurbsCurve insert_knot(const NurbsCurve& curve, double xi);

}  // namespace casrod
