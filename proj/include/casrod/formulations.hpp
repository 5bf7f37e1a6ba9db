#pragma once

#include "casrod/quadrature.hpp"
#include "casrod/rod_model.hpp"
#include "casrod/splines.hpp"

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace casrod {

enum class Formulation { NurbsFull, NurbsReduced, Cas, LocalBbar, LocalAns, GlobalBbar };

/// Formulation plus the number of Gauss points used for every element integral.
struct ElementFormulation {
  Formulation variant = Formulation::NurbsFull;
  int quad_points = 3;

  /// Default rule: 2 points for NurbsReduced, p + 1 otherwise.
  static ElementFormulation make(Formulation variant, int degree = 2);

  /// True when the membrane strain is replaced by an element-wise linear assumed strain.
  bool uses_assumed_strain() const;
};

std::string_view to_string(Formulation f);
/// Accepts nurbs, nurbs-reduced, cas, local-bbar, local-ans, global-bbar.
Formulation parse_formulation(std::string_view name);

struct ElementMatrices {
  Eigen::MatrixXd k;
  Eigen::VectorXd f;
  std::vector<int> dof_map;
};

/// Global dof indices (2B, 2B+1) of the functions active on element `e`.
std::vector<int> element_dof_map(const NurbsCurve& curve, int e);

/// Integration point on an element with the arc-length weight folded in.
struct ElementPoint {
  GeometryFrame frame;
  double parent = 0.0;  // coordinate in [-1, 1]
  double ds = 0.0;      // quadrature weight * ds/dparent
};

std::vector<ElementPoint> element_points(const NurbsCurve& curve, int e, const QuadratureRule& quad);

/// Linear Lagrange functions on the parent element: L1 = (1 - x)/2, L2 = (1 + x)/2.
inline Eigen::Vector2d linear_lagrange(double parent) { return {0.5 * (1.0 - parent), 0.5 * (1.0 + parent)}; }

/// Element mass of the two linear Lagrange functions, integrated in arc length.
Eigen::Matrix2d element_linear_mass(const std::vector<ElementPoint>& points);

Eigen::MatrixXd bending_stiffness(const NurbsCurve& curve, const CrossSection& section, int e, const QuadratureRule& quad);
/// Same, on already evaluated quadrature points.
Eigen::MatrixXd bending_stiffness(const CrossSection& section, const std::vector<ElementPoint>& points);

/// k = k_eps + k_kappa with the compatible membrane strain.
ElementMatrices element_stiffness_standard(const NurbsCurve& curve, const CrossSection& section, int e,
                                           const QuadratureRule& quad);
ElementMatrices element_stiffness_cas(const NurbsCurve& curve, const CrossSection& section, int e,
                                      const QuadratureRule& quad);
ElementMatrices element_stiffness_local_bbar(const NurbsCurve& curve, const CrossSection& section, int e,
                                             const QuadratureRule& quad);
ElementMatrices element_stiffness_local_ans(const NurbsCurve& curve, const CrossSection& section, int e,
                                            const QuadratureRule& quad);

/// Rows mapping element dofs to the assumed strain at the element ends
/// (parent -1 and +1); the assumed strain is linear in between.
///   CAS:        compatible strain rows at the two knots
///   LocalBbar:  element L2 projection onto linear functions
///   LocalAns:   linear interpolant through the 2-point Gauss abscissae
Eigen::Matrix<double, 2, Eigen::Dynamic> assumed_strain_end_rows(Formulation variant, const NurbsCurve& curve, int e,
                                                                 const QuadratureRule& quad);

/// Membrane stiffness of an element whose assumed strain end values are `rows * u_e`.
Eigen::MatrixXd assumed_membrane_stiffness(const Eigen::Matrix<double, 2, Eigen::Dynamic>& rows,
                                           const CrossSection& section, const std::vector<ElementPoint>& points);

/// Patch-level L2 projection of the membrane strain onto C0 piecewise linears
/// with nodes at the knots.
struct GlobalBbarProjection {
  Eigen::MatrixXd mass;      // (n_el + 1)^2, tridiagonal
  Eigen::MatrixXd coupling;  // (n_el + 1) x 2n, integral of L^T B ds
  /// Maps displacement dofs to nodal assumed-strain values: mass^{-1} coupling.
  Eigen::MatrixXd operator_matrix;
};

GlobalBbarProjection global_bbar_projection(const NurbsCurve& curve, const QuadratureRule& quad);

/// Dense 2n x 2n patch stiffness: projected membrane part plus assembled bending.
Eigen::MatrixXd patch_stiffness_global_bbar(const NurbsCurve& curve, const CrossSection& section,
                                            const QuadratureRule& quad);

/// Element stiffness for any element-local formulation.
ElementMatrices element_stiffness(const ElementFormulation& form, const NurbsCurve& curve, const CrossSection& section,
                                  int e, const QuadratureRule& quad);

/// Post-solve recovery of the membrane force and bending moment fields.
///
/// For assumed-strain formulations the per-element end values of the assumed
/// strain are computed once on construction.
class FieldRecovery {
 public:
  FieldRecovery(ElementFormulation form, NurbsCurve curve, CrossSection section, ControlDisplacements solution);

  double membrane_force(double xi) const;
  double membrane_force_on_element(int e, double xi) const;
  double bending_moment(double xi) const;
  double bending_moment_on_element(int e, double xi) const;
  /// Assumed strain end values of element `e` (compatible formulations: not available).
  Eigen::Vector2d assumed_strain_ends(int e) const { return ends_[e]; }

  const NurbsCurve& curve() const { return curve_; }
  const ControlDisplacements& solution() const { return solution_; }
  Vec2 displacement(double xi) const;

 private:
  ElementFormulation form_;
  NurbsCurve curve_;
  CrossSection section_;
  ControlDisplacements solution_;
  std::vector<Eigen::Vector2d> ends_;
};

double membrane_force_field(const ElementFormulation& form, const NurbsCurve& curve, const CrossSection& section,
                            const ControlDisplacements& solution, double xi);
double bending_moment_field(const NurbsCurve& curve, const CrossSection& section, const ControlDisplacements& solution,
                            double xi);

}  // namespace casrod
