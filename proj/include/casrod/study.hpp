#pragma once

#include "casrod/benchmarks.hpp"
#include "casrod/formulations.hpp"
#include "casrod/metrics.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace casrod {

struct RunConfig {
  ProblemKind problem = ProblemKind::Ring;
  Formulation formulation = Formulation::Cas;
  /// EA for the ring, t for the arch and ellipse. Empty means the default set.
  std::vector<double> slenderness;
  int start_elements = 2;
  int refinements = 7;
  /// Gauss points per element; 0 selects the formulation default.
  int quad_points = 0;
  /// fields only
  int elements = 16;
  int samples = 101;

  ElementFormulation element_formulation() const;
  std::vector<double> slenderness_values() const;
};

BenchmarkProblem build_problem(ProblemKind kind, int n_elements, double parameter);

struct ConvergenceRow {
  std::string problem;
  std::string formulation;
  int quad_points;
  int n_elements;
  int n_dof;
  double slenderness;  // R/t
  ErrorReport errors;
};

/// One row per (slenderness, mesh), slenderness-major, meshes coarse to fine.
std::vector<ConvergenceRow> run_convergence_study(const RunConfig& config);

inline constexpr const char* kConvergenceHeader =
    "problem,formulation,quad_points,n_elements,n_dof,slenderness,e_u,e_N,e_M,err_uxA,err_uyB";
inline constexpr const char* kFieldsHeader = "s,phi,u_x,u_y,N,M,N_exact,M_exact";
inline constexpr const char* kReferenceHeader = "name,computed,reference,relative_error";

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

struct FieldDump {
  std::vector<FieldSample> samples;
  /// Ellipse: free-end displacements against the fine-mesh reference and
  /// clamped-end resultants against static equilibrium.
  std::vector<PointError> reference_rows;
};

/// Uses the first slenderness value of the config.
FieldDump run_field_dump(const RunConfig& config);

void write_fields_csv(std::ostream& os, const std::vector<FieldSample>& samples);
void write_reference_csv(std::ostream& os, const std::vector<PointError>& rows);

}  // namespace casrod
