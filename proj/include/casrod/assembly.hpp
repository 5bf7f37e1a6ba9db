#pragma once

#include "casrod/band_matrix.hpp"
#include "casrod/formulations.hpp"
#include "casrod/rod_model.hpp"
#include "casrod/splines.hpp"

#include <Eigen/Core>

#include <functional>
#include <variant>
#include <vector>

namespace casrod {

enum class End { Start, Finish };

struct PointLoad {
  End end;
  Vec2 force;
};

/// Loads on the rod: point loads at the ends plus a distributed force per
/// unit arc length. The distributed callback receives the axis point and its
/// parametric coordinate.
struct LoadSpec {
  std::vector<PointLoad> point_loads;
  std::function<Vec2(const Vec2& point, double xi)> distributed;
};

enum class SupportKind {
  Clamped,   // zero displacement and zero rotation
  Symmetry,  // zero displacement normal to the symmetry line and zero rotation
};

struct Support {
  End end;
  SupportKind kind;
  /// Symmetry only: the Cartesian component (0 = x, 1 = y) normal to the symmetry line.
  int normal_component = 0;
};

/// Homogeneous boundary conditions. `fixed_dofs` pins raw global dofs (2B + component).
struct Constraints {
  std::vector<Support> supports;
  std::vector<int> fixed_dofs;
};

using StiffnessStorage = std::variant<SymmetricBandMatrix, Eigen::MatrixXd>;

struct GlobalSystem {
  StiffnessStorage k;
  Eigen::VectorXd f;

  int size() const { return static_cast<int>(f.size()); }
  bool banded() const { return std::holds_alternative<SymmetricBandMatrix>(k); }
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;
};

/// Reduced system after eliminating fixed dofs and merging tied dofs.
struct ConstrainedSystem {
  GlobalSystem reduced;
  /// Full dof -> reduced dof, or -1 for a fixed dof.
  std::vector<int> dof_to_reduced;
};

/// Load vector only: consistent distributed load plus end point loads.
Eigen::VectorXd assemble_loads(const NurbsCurve& curve, const LoadSpec& loads, const QuadratureRule& quad);

/// Banded storage for element-local formulations, dense for GlobalBbar.
GlobalSystem assemble(const NurbsCurve& curve, const CrossSection& section, const ElementFormulation& form,
                      const LoadSpec& loads);

/// Translates supports into dof constraints and eliminates them.
///
/// The rotation at an end is a2 . du/ds, which only involves the first two
/// control points; with a2 aligned to axis k it is U_1k - U_0k. Oblique a2
/// throws NonAxisAlignedRotation.
ConstrainedSystem apply_constraints(const GlobalSystem& system, const NurbsCurve& curve, const Constraints& constraints);

/// Cholesky solve of the reduced system, expanded back to control displacements.
/// Throws SingularSystem if the factorization fails and NumericalError if the
/// normwise backward error exceeds 1e-10.
ControlDisplacements solve(const ConstrainedSystem& system);

/// Force the same reduced system through the dense path regardless of storage.
ControlDisplacements solve_dense(const ConstrainedSystem& system);

Eigen::VectorXd flatten(const ControlDisplacements& u);

/// ||K u - f|| / ||f|| on the full (unconstrained) rows that are free.
double relative_residual(const ConstrainedSystem& system, const ControlDisplacements& u);
/// ||K u - f|| / (||K|| ||u|| + ||f||) on the reduced system.
double backward_error(const ConstrainedSystem& system, const ControlDisplacements& u);

/// K u - f over all full dofs: reactions at constrained dofs, ~0 at free ones.
Eigen::VectorXd reactions(const GlobalSystem& system, const ControlDisplacements& u);

}  // namespace casrod
