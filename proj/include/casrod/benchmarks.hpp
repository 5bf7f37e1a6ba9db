#pragma once

#include "casrod/assembly.hpp"
#include "casrod/rod_model.hpp"
#include "casrod/splines.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace casrod {

enum class ProblemKind { Ring, Arch, Ellipse };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem(std::string_view name);

/// Closed-form fields as functions of the problem angle phi.
struct ExactSolution {
  std::function<Vec2(double)> displacement;  // empty when unknown
  std::function<double(double)> membrane_force;
  std::function<double(double)> bending_moment;
};

/// Reference value of one displacement component at a rod end.
struct PointReference {
  std::string name;
  End end;
  int component;
  double value;
};

/// Ring constants and geometry: P = 1, R = 1, EI = 1, EA variable.
struct RingParameters {
  static constexpr double load = 1.0;
  static constexpr double radius = 1.0;
  static constexpr double ei = 1.0;
};

/// Arch: q = 1e6 t^3, R = 10, E = 2.1e11, d = 0.1.
struct ArchParameters {
  static constexpr double radius = 10.0;
  static constexpr double young = 2.1e11;
  static constexpr double depth = 0.1;
  static double load(double t) { return 1e6 * t * t * t; }
};

/// Ellipse: P = 1e7 t^3, a = 2, b = 1, E = 7e10, d = 0.1.
struct EllipseParameters {
  static constexpr double semi_x = 2.0;
  static constexpr double semi_y = 1.0;
  static constexpr double young = 7.0e10;
  static constexpr double depth = 0.1;
  static double load(double t) { return 1e7 * t * t * t; }
  static constexpr double max_radius() { return semi_x * semi_x / semi_y; }
};

struct BenchmarkProblem {
  ProblemKind kind;
  /// EA for the ring, thickness t for the arch and ellipse.
  double parameter;
  double thickness;
  NurbsCurve curve;
  CrossSection section;
  LoadSpec loads;
  Constraints constraints;
  std::optional<ExactSolution> exact;
  std::vector<PointReference> point_references;
  /// Ellipse only: clamped-end resultants from static equilibrium.
  std::optional<double> clamped_membrane_force;
  std::optional<double> clamped_bending_moment;
  /// Rotation from the builder's frame to the global frame; angle() undoes it.
  Eigen::Matrix2d orientation = Eigen::Matrix2d::Identity();

  /// Problem angle of an axis point, in [0, pi/2].
  double angle(const Vec2& point) const;
  double angle_at(double xi) const;
};

/// Quarter ring with symmetry supports at both ends; EA > 0.
BenchmarkProblem build_ring_quarter(int n_elements, double ea);
/// Half of the clamped-clamped semicircular arch; t > 0.
BenchmarkProblem build_arch_half(int n_elements, double t);
/// Quarter-ellipse cantilever clamped at (-a, 0) and loaded at (0, b).
/// With `with_reference`, free-end point references ux_free/uy_free come from
/// ellipse_reference().
BenchmarkProblem build_ellipse_quarter(int n_elements, double t, bool with_reference = true);

/// Closed-form ring deflections at A (start, x) and B (finish, y).
double ring_exact_uxA(double ea);
double ring_exact_uyB(double ea);

struct ArchConstants {
  double q, ea, ei;
  double c1, c2, c3;
  double a1, a2, a3;
};
ArchConstants arch_constants(double t);

/// Tangential and normal displacements of the arch.
struct ArchDisplacement {
  double ut;
  double un;
};
ArchDisplacement arch_exact_tn(const ArchConstants& c, double phi);

struct EllipseReference {
  double ux;
  double uy;
  /// Same quantities on the next coarser mesh, for the convergence check.
  double ux_coarse;
  double uy_coarse;
  int n_elements;
};

/// Fine-mesh CAS reference for the ellipse free end (memoized per t).
EllipseReference ellipse_reference(double t, int n_elements = 1024);

struct ExactFieldValues {
  std::optional<Vec2> displacement;
  double membrane_force;
  double bending_moment;
};

/// Throws MissingExactField for the ellipse and OutOfDomain for phi outside [0, pi/2].
ExactFieldValues exact_fields(const BenchmarkProblem& problem, double phi);

/// Quarter circle or ellipse of one quadratic element from (-a, 0) to (0, b).
NurbsCurve quarter_conic(double a, double b);

/// Slenderness values used in each study: EA for the ring, t otherwise.
std::vector<double> default_slenderness(ProblemKind kind);

/// R/t label of a slenderness value (ring: R / sqrt(EI/EA); ellipse uses R_max).
double slenderness_ratio(ProblemKind kind, double parameter);

}  // namespace casrod
