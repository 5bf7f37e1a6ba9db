#include "casrod/metrics.hpp"

#include "casrod/errors.hpp"

#include <algorithm>
#include <cmath>

namespace casrod {

Solved solve_problem(const BenchmarkProblem& problem, const ElementFormulation& form) {
  const GlobalSystem sys = assemble(problem.curve, problem.section, form, problem.loads);
  const ConstrainedSystem cs = apply_constraints(sys, problem.curve, problem.constraints);
  ControlDisplacements u = solve(cs);
  return Solved{problem, form, FieldRecovery(form, problem.curve, problem.section, std::move(u)), cs.reduced.size()};
}

const PointError* ErrorReport::point(std::string_view name) const {
  for (const auto& p : point_errors) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ErrorReport l2_errors(const Solved& solved, int quad_pts_per_element) {
  const BenchmarkProblem& pb = solved.problem;
  if (!pb.exact && pb.point_references.empty()) throw MissingExactField("problem has neither exact fields nor references");
  ErrorReport rep;
  const NurbsCurve& curve = solved.fields.curve();
  const ControlDisplacements& sol = solved.fields.solution();

  for (const auto& ref : pb.point_references) {
    const Vec2& u = ref.end == End::Start ? sol.u.front() : sol.u.back();
    const double computed = u[ref.component];
    rep.point_errors.push_back({ref.name, computed, ref.value, std::abs(computed - ref.value) / std::abs(ref.value)});
  }
  if (!pb.exact) return rep;

  const ExactSolution& ex = *pb.exact;
  const QuadratureRule quad = gauss_rule(quad_pts_per_element);
  const KnotVector& kv = curve.knot_vector();
  double du = 0.0, uu = 0.0, dn = 0.0, nn = 0.0, dm = 0.0, mm = 0.0;
  for (int e = 0; e < curve.num_elements(); ++e) {
    for (const auto& pt : element_points(curve, e, quad)) {
      const double xi = kv.to_parametric(e, pt.parent);
      const double phi = pb.angle(pt.frame.point);
      if (ex.displacement) {
        Vec2 uh = Vec2::Zero();
        for (int b = 0; b < pt.frame.count(); ++b) uh += pt.frame.basis.values[b] * sol.u[pt.frame.first_active() + b];
        const Vec2 ue = ex.displacement(phi);
        du += (uh - ue).squaredNorm() * pt.ds;
        uu += ue.squaredNorm() * pt.ds;
      }
      const double ne = ex.membrane_force(phi);
      const double nh = solved.fields.membrane_force_on_element(e, xi);
      dn += (nh - ne) * (nh - ne) * pt.ds;
      nn += ne * ne * pt.ds;
      const double me = ex.bending_moment(phi);
      const double mh = solved.fields.bending_moment_on_element(e, xi);
      dm += (mh - me) * (mh - me) * pt.ds;
      mm += me * me * pt.ds;
    }
  }
  if (ex.displacement) rep.e_u = std::sqrt(du / uu);
  rep.e_N = std::sqrt(dn / nn);
  rep.e_M = std::sqrt(dm / mm);
  return rep;
}

ArcLength::ArcLength(const NurbsCurve& curve, int quad_points) : curve_(&curve), quad_(gauss_rule(quad_points)) {
  prefix_.assign(curve.num_elements() + 1, 0.0);
  for (int e = 0; e < curve.num_elements(); ++e) {
    double len = 0.0;
    for (const auto& pt : element_points(curve, e, quad_)) len += pt.ds;
    prefix_[e + 1] = prefix_[e] + len;
  }
}

double ArcLength::at(double xi) const {
  const KnotVector& kv = curve_->knot_vector();
  const int e = kv.find_element(xi);
  const double a = kv.element_begin(e);
  const double half = 0.5 * (xi - a);
  double len = 0.0;
  for (int q = 0; q < quad_.size(); ++q) {
    const double x = a + half * (quad_.points[q] + 1.0);
    len += quad_.weights[q] * half * evaluate_geometry(*curve_, x).d_xi.norm();
  }
  return prefix_[e] + len;
}

std::vector<FieldSample> sample_fields(const Solved& solved, int n_samples) {
  if (n_samples < 2) throw InvalidArgument("need at least two samples");
  const NurbsCurve& curve = solved.fields.curve();
  const KnotVector& kv = curve.knot_vector();
  const ArcLength arc(curve);
  const auto& ex = solved.problem.exact;
  std::vector<FieldSample> out;
  out.reserve(n_samples);
  constexpr double kOffset = 1e-9;
  for (int i = 0; i < n_samples; ++i) {
    const double xi = static_cast<double>(i) / (n_samples - 1);
    const int e = kv.find_element(xi);
    const double inner = std::clamp(xi, kv.element_begin(e) + kOffset, kv.element_end(e) - kOffset);
    const Vec2 point = evaluate_geometry(curve, xi).point;
    const Vec2 u = solved.fields.displacement(xi);
    FieldSample s{arc.at(xi),
                  solved.problem.angle(point),
                  u.x(),
                  u.y(),
                  solved.fields.membrane_force_on_element(e, inner),
                  solved.fields.bending_moment_on_element(e, inner),
                  std::nullopt,
                  std::nullopt};
    if (ex) {
      s.n_exact = ex->membrane_force(s.phi);
      s.m_exact = ex->bending_moment(s.phi);
    }
    out.push_back(s);
  }
  return out;
}

double convergence_rate(std::span<const int> n_elements, std::span<const double> errors) {
  if (n_elements.size() != errors.size()) throw InvalidArgument("mesh and error series differ in length");
  if (errors.size() < 3) throw InsufficientData("convergence rate needs at least three meshes");
  const std::size_t first = errors.size() - 3;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || n_elements[i] <= 0) throw InsufficientData("errors and meshes must be positive");
    const double x = std::log(static_cast<double>(n_elements[i]));
    const double y = -std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 3.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace casrod
