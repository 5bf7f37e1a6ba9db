#pragma once

#include "casrod/splines.hpp"

#include <array>
#include <span>
#include <vector>

namespace casrod {

/// Counterclockwise rotation by 90 degrees.
inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// Local frame of the rod axis at one point plus arc-length derivatives of
/// the active basis functions.
struct GeometryFrame {
  Vec2 point;
  Vec2 a1;      // unit tangent
  Vec2 a2;      // rot90(a1)
  Vec2 da1_ds;
  Vec2 da2_ds;
  double jac = 0.0;  // ds/dxi
  BasisEval basis;   // rational basis and parametric derivatives
  std::array<double, kMaxDegree + 1> dN_ds{};
  std::array<double, kMaxDegree + 1> d2N_ds2{};

  int first_active() const { return basis.first_active; }
  int count() const { return basis.count; }
};

struct CrossSection {
  double ea;
  double ei;

  CrossSection(double ea, double ei);
  /// Rectangular section of thickness t (in the bending plane) and depth d.
  static CrossSection rectangular(double young, double thickness, double depth);
};

/// Control-point displacement vectors U_B, one per basis function.
struct ControlDisplacements {
  std::vector<Vec2> u;
};

GeometryFrame frame_at(const NurbsCurve& curve, double xi);
/// Frame evaluated with the polynomial pieces of `element`; gives one-sided
/// values when xi is a knot.
GeometryFrame frame_on_element(const NurbsCurve& curve, int element, double xi);

/// Displacements of the functions active in `frame`, gathered from the full vector.
std::vector<Vec2> gather_active(const GeometryFrame& frame, const ControlDisplacements& u);

double membrane_strain(const GeometryFrame& frame, std::span<const Vec2> u_active);
double bending_strain(const GeometryFrame& frame, std::span<const Vec2> u_active);

/// Strain-displacement rows: strain = row . (u_{0x}, u_{0y}, u_{1x}, ...) over
/// the active functions.
Eigen::VectorXd membrane_strain_row(const GeometryFrame& frame);
Eigen::VectorXd bending_strain_row(const GeometryFrame& frame);

struct StressResultants {
  double membrane_force;
  double bending_moment;
};

StressResultants stress_resultants(const CrossSection& section, double eps, double kappa);

}  // namespace casrod
