#include "casrod/study.hpp"

#include "casrod/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace casrod {

ElementFormulation RunConfig::element_formulation() const {
  ElementFormulation f = ElementFormulation::make(formulation);
  if (quad_points != 0) {
    if (quad_points < 1 || quad_points > 10) throw InvalidArgument("quad points must be in [1, 10]");
    f.quad_points = quad_points;
  }
  return f;
}

std::vector<double> RunConfig::slenderness_values() const {
  return slenderness.empty() ? default_slenderness(problem) : slenderness;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

BenchmarkProblem build_problem(ProblemKind kind, int n_elements, double parameter) {
  switch (kind) {
    case ProblemKind::Ring: return build_ring_quarter(n_elements, parameter);
    case ProblemKind::Arch: return build_arch_half(n_elements, parameter);
    case ProblemKind::Ellipse: return build_ellipse_quarter(n_elements, parameter);
  }
  throw InvalidArgument("unknown problem");
}

std::vector<ConvergenceRow> run_convergence_study(const RunConfig& config) {
  if (config.start_elements < 1) throw InvalidArgument("start elements must be >= 1");
  if (config.refinements < 0) throw InvalidArgument("refinements must be >= 0");
  const ElementFormulation form = config.element_formulation();
  std::vector<ConvergenceRow> rows;
  for (double param : config.slenderness_values()) {
    int n = config.start_elements;
    for (int level = 0; level <= config.refinements; ++level, n *= 2) {
      std::optional<Solved> attempt;
      try {
        attempt.emplace(solve_problem(build_problem(config.problem, n, param), form));
      } catch (const NumericalError& e) {
        throw NumericalError(std::string(to_string(config.problem)) + ", " + std::to_string(n) +
                             " elements, slenderness " + fmt_g(param) + ": " + e.what());
      }
      const Solved& solved = *attempt;
      rows.push_back({std::string(to_string(config.problem)), std::string(to_string(form.variant)), form.quad_points, n,
                      solved.n_dof, slenderness_ratio(config.problem, param), l2_errors(solved)});
    }
  }
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << kConvergenceHeader << '\n';
  for (const auto& r : rows) {
    // The two point-error columns carry the ring's A/B deflections, or the
    // ellipse free-end x/y displacements.
    std::optional<double> p1;
    std::optional<double> p2;
    if (r.errors.point_errors.size() >= 1) p1 = r.errors.point_errors[0].relative_error;
    if (r.errors.point_errors.size() >= 2) p2 = r.errors.point_errors[1].relative_error;
    os << r.problem << ',' << r.formulation << ',' << r.quad_points << ',' << r.n_elements << ',' << r.n_dof << ','
       << fmt_g(r.slenderness) << ',' << fmt(r.errors.e_u) << ',' << fmt(r.errors.e_N) << ',' << fmt(r.errors.e_M)
       << ',' << fmt(p1) << ',' << fmt(p2) << '\n';
  }
}

FieldDump run_field_dump(const RunConfig& config) {
  if (config.elements < 1) throw InvalidArgument("elements must be >= 1");
  const double param = config.slenderness_values().front();
  const Solved solved = solve_problem(build_problem(config.problem, config.elements, param), config.element_formulation());
  FieldDump dump;
  dump.samples = sample_fields(solved, config.samples);
  if (config.problem == ProblemKind::Ellipse) {
    dump.reference_rows = l2_errors(solved).point_errors;
    const auto& pb = solved.problem;
    const double n0 = solved.fields.membrane_force_on_element(0, 0.0);
    const double m0 = solved.fields.bending_moment_on_element(0, 0.0);
    dump.reference_rows.push_back({"N_clamped", n0, *pb.clamped_membrane_force,
                                   std::abs(n0 - *pb.clamped_membrane_force) / std::abs(*pb.clamped_membrane_force)});
    dump.reference_rows.push_back({"M_clamped", m0, *pb.clamped_bending_moment,
                                   std::abs(m0 - *pb.clamped_bending_moment) / std::abs(*pb.clamped_bending_moment)});
  }
  return dump;
}

void write_fields_csv(std::ostream& os, const std::vector<FieldSample>& samples) {
  os << kFieldsHeader << '\n';
  for (const auto& s : samples) {
    os << fmt(s.s) << ',' << fmt(s.phi) << ',' << fmt(s.u_x) << ',' << fmt(s.u_y) << ',' << fmt(s.n) << ','
       << fmt(s.m) << ',' << fmt(s.n_exact) << ',' << fmt(s.m_exact) << '\n';
  }
}

void write_reference_csv(std::ostream& os, const std::vector<PointError>& rows) {
  os << kReferenceHeader << '\n';
  for (const auto& r : rows) {
    os << r.name << ',' << fmt(r.computed) << ',' << fmt(r.reference) << ',' << fmt(r.relative_error) << '\n';
  }
}

}  // namespace casrod
