#pragma once

#include "casrod/benchmarks.hpp"
#include "casrod/formulations.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace casrod {

/// A solved benchmark: the problem, the formulation and the recovered fields.
struct Solved {
  BenchmarkProblem problem;
  ElementFormulation formulation;
  FieldRecovery fields;
  int n_dof;  // free dofs after constraints
};

/// Assemble, constrain and solve `problem` with `form`.
Solved solve_problem(const BenchmarkProblem& problem, const ElementFormulation& form);

struct PointError {
  std::string name;
  double computed;
  double reference;
  double relative_error;
};

struct ErrorReport {
  std::optional<double> e_u;
  std::optional<double> e_N;
  std::optional<double> e_M;
  std::vector<PointError> point_errors;

  const PointError* point(std::string_view name) const;
};

struct ConvergenceRecord {
  int n_elements;
  int n_dof;
  double slenderness;
  ErrorReport errors;
};

/// Relative L2 errors of u, N and M against the problem's exact fields,
/// integrated with `quad_pts_per_element` Gauss points per element, plus
/// relative errors of the point references. Fields without an exact
/// counterpart are left empty; requesting errors for a problem without any
/// exact field or point reference throws MissingExactField.
ErrorReport l2_errors(const Solved& solved, int quad_pts_per_element = 10);

/// Cumulative arc length along a curve, integrated element by element.
class ArcLength {
 public:
  explicit ArcLength(const NurbsCurve& curve, int quad_points = 10);
  double total() const { return prefix_.back(); }
  double at(double xi) const;

 private:
  const NurbsCurve* curve_;
  QuadratureRule quad_;
  std::vector<double> prefix_;
};

struct FieldSample {
  double s;
  double phi;
  double u_x;
  double u_y;
  double n;
  double m;
  std::optional<double> n_exact;
  std::optional<double> m_exact;
};

/// n_samples points uniform in xi over [0, 1]. N and M are evaluated inside
/// the element owning each sample, 1e-9 away from its knots.
std::vector<FieldSample> sample_fields(const Solved& solved, int n_samples);

/// Least-squares slope of -log(error) against log(n_elements) over the last
/// three entries. Positive means converging.
double convergence_rate(std::span<const int> n_elements, std::span<const double> errors);

}  // namespace casrod
