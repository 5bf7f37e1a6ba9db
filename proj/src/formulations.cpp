#include "casrod/formulations.hpp"

#include "casrod/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cassert>
#include <cmath>
#include <string>

namespace casrod {

using EndRows = Eigen::Matrix<double, 2, Eigen::Dynamic>;

ElementFormulation ElementFormulation::make(Formulation variant, int degree) {
  return {variant, variant == Formulation::NurbsReduced ? 2 : degree + 1};
}

bool ElementFormulation::uses_assumed_strain() const {
  return variant != Formulation::NurbsFull && variant != Formulation::NurbsReduced;
}

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::NurbsFull: return "nurbs";
    case Formulation::NurbsReduced: return "nurbs-reduced";
    case Formulation::Cas: return "cas";
    case Formulation::LocalBbar: return "local-bbar";
    case Formulation::LocalAns: return "local-ans";
    case Formulation::GlobalBbar: return "global-bbar";
  }
  return "unknown";
}

Formulation parse_formulation(std::string_view name) {
  for (Formulation f : {Formulation::NurbsFull, Formulation::NurbsReduced, Formulation::Cas, Formulation::LocalBbar,
                        Formulation::LocalAns, Formulation::GlobalBbar}) {
    if (name == to_string(f)) return f;
  }
  throw InvalidArgument("unknown formulation '" + std::string(name) + "'");
}

std::vector<int> element_dof_map(const NurbsCurve& curve, int e) {
  const int count = curve.degree() + 1;
  std::vector<int> dofs(2 * count);
  for (int b = 0; b < count; ++b) {
    dofs[2 * b] = 2 * (e + b);
    dofs[2 * b + 1] = 2 * (e + b) + 1;
  }
  return dofs;
}

std::vector<ElementPoint> element_points(const NurbsCurve& curve, int e, const QuadratureRule& quad) {
  const KnotVector& kv = curve.knot_vector();
  const double half = 0.5 * (kv.element_end(e) - kv.element_begin(e));
  std::vector<ElementPoint> pts;
  pts.reserve(quad.size());
  for (int q = 0; q < quad.size(); ++q) {
    ElementPoint ep;
    ep.parent = quad.points[q];
    ep.frame = frame_on_element(curve, e, kv.to_parametric(e, ep.parent));
    ep.ds = quad.weights[q] * ep.frame.jac * half;
    pts.push_back(std::move(ep));
  }
  return pts;
}

Eigen::Matrix2d element_linear_mass(const std::vector<ElementPoint>& points) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (const auto& pt : points) {
    const Eigen::Vector2d L = linear_lagrange(pt.parent);
    m += L * L.transpose() * pt.ds;
  }
  return m;
}

namespace {

Eigen::MatrixXd standard_membrane(const CrossSection& section, const std::vector<ElementPoint>& points) {
  const int nd = 2 * points.front().frame.count();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nd, nd);
  for (const auto& pt : points) {
    const Eigen::VectorXd b = membrane_strain_row(pt.frame);
    k.noalias() += (section.ea * pt.ds) * b * b.transpose();
  }
  return k;
}

Eigen::MatrixXd bending_from_points(const CrossSection& section, const std::vector<ElementPoint>& points) {
  const int nd = 2 * points.front().frame.count();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nd, nd);
  for (const auto& pt : points) {
    const Eigen::VectorXd b = bending_strain_row(pt.frame);
    k.noalias() += (section.ei * pt.ds) * b * b.transpose();
  }
  return k;
}

ElementMatrices package(const NurbsCurve& curve, int e, Eigen::MatrixXd k) {
  ElementMatrices m;
  m.dof_map = element_dof_map(curve, e);
  m.f = Eigen::VectorXd::Zero(k.rows());
  m.k = std::move(k);
  return m;
}

// Projection of the compatible strain onto linears on one element: M^{-1} G.
EndRows local_projection_rows(const std::vector<ElementPoint>& points) {
  const int nd = 2 * points.front().frame.count();
  EndRows g = EndRows::Zero(2, nd);
  for (const auto& pt : points) {
    g += linear_lagrange(pt.parent) * membrane_strain_row(pt.frame).transpose() * pt.ds;
  }
  const Eigen::Matrix2d m = element_linear_mass(points);
  assert(std::abs(m.determinant()) > 0.0);
  return m.inverse() * g;
}

}  // namespace

Eigen::MatrixXd bending_stiffness(const NurbsCurve& curve, const CrossSection& section, int e,
                                  const QuadratureRule& quad) {
  return bending_from_points(section, element_points(curve, e, quad));
}

Eigen::MatrixXd bending_stiffness(const CrossSection& section, const std::vector<ElementPoint>& points) {
  return bending_from_points(section, points);
}

ElementMatrices element_stiffness_standard(const NurbsCurve& curve, const CrossSection& section, int e,
                                           const QuadratureRule& quad) {
  const auto points = element_points(curve, e, quad);
  return package(curve, e, standard_membrane(section, points) + bending_from_points(section, points));
}

EndRows assumed_strain_end_rows(Formulation variant, const NurbsCurve& curve, int e, const QuadratureRule& quad) {
  const KnotVector& kv = curve.knot_vector();
  switch (variant) {
    case Formulation::Cas: {
      const GeometryFrame left = frame_on_element(curve, e, kv.element_begin(e));
      const GeometryFrame right = frame_on_element(curve, e, kv.element_end(e));
      EndRows rows(2, 2 * left.count());
      rows.row(0) = membrane_strain_row(left).transpose();
      rows.row(1) = membrane_strain_row(right).transpose();
      return rows;
    }
    case Formulation::LocalBbar:
      return local_projection_rows(element_points(curve, e, quad));
    case Formulation::LocalAns: {
      const double g = 1.0 / std::sqrt(3.0);
      const GeometryFrame lo = frame_on_element(curve, e, kv.to_parametric(e, -g));
      const GeometryFrame hi = frame_on_element(curve, e, kv.to_parametric(e, g));
      const Eigen::VectorXd b_lo = membrane_strain_row(lo);
      const Eigen::VectorXd b_hi = membrane_strain_row(hi);
      // Line through (-g, b_lo) and (g, b_hi), evaluated at -1 and +1.
      const double slope_factor = (1.0 - g) / (2.0 * g);
      EndRows rows(2, b_lo.size());
      rows.row(0) = (b_lo + slope_factor * (b_lo - b_hi)).transpose();
      rows.row(1) = (b_hi + slope_factor * (b_hi - b_lo)).transpose();
      return rows;
    }
    default:
      throw InvalidArgument("formulation has no element-local assumed strain");
  }
}

Eigen::MatrixXd assumed_membrane_stiffness(const EndRows& rows, const CrossSection& section,
                                           const std::vector<ElementPoint>& points) {
  const Eigen::Matrix2d m = element_linear_mass(points);
  return rows.transpose() * (section.ea * m) * rows;
}

ElementMatrices element_stiffness_cas(const NurbsCurve& curve, const CrossSection& section, int e,
                                      const QuadratureRule& quad) {
  const auto points = element_points(curve, e, quad);
  const EndRows rows = assumed_strain_end_rows(Formulation::Cas, curve, e, quad);
  return package(curve, e, assumed_membrane_stiffness(rows, section, points) + bending_from_points(section, points));
}

ElementMatrices element_stiffness_local_bbar(const NurbsCurve& curve, const CrossSection& section, int e,
                                             const QuadratureRule& quad) {
  const auto points = element_points(curve, e, quad);
  const EndRows rows = local_projection_rows(points);
  return package(curve, e, assumed_membrane_stiffness(rows, section, points) + bending_from_points(section, points));
}

ElementMatrices element_stiffness_local_ans(const NurbsCurve& curve, const CrossSection& section, int e,
                                            const QuadratureRule& quad) {
  const auto points = element_points(curve, e, quad);
  const EndRows rows = assumed_strain_end_rows(Formulation::LocalAns, curve, e, quad);
  return package(curve, e, assumed_membrane_stiffness(rows, section, points) + bending_from_points(section, points));
}

ElementMatrices element_stiffness(const ElementFormulation& form, const NurbsCurve& curve, const CrossSection& section,
                                  int e, const QuadratureRule& quad) {
  switch (form.variant) {
    case Formulation::NurbsFull:
    case Formulation::NurbsReduced: return element_stiffness_standard(curve, section, e, quad);
    case Formulation::Cas: return element_stiffness_cas(curve, section, e, quad);
    case Formulation::LocalBbar: return element_stiffness_local_bbar(curve, section, e, quad);
    case Formulation::LocalAns: return element_stiffness_local_ans(curve, section, e, quad);
    case Formulation::GlobalBbar: break;
  }
  throw InvalidArgument("global B-bar is a patch-level operation; use patch_stiffness_global_bbar");
}

GlobalBbarProjection global_bbar_projection(const NurbsCurve& curve, const QuadratureRule& quad) {
  const int ne = curve.num_elements();
  const int ndof = 2 * curve.num_basis();
  GlobalBbarProjection proj;
  proj.mass = Eigen::MatrixXd::Zero(ne + 1, ne + 1);
  proj.coupling = Eigen::MatrixXd::Zero(ne + 1, ndof);
  for (int e = 0; e < ne; ++e) {
    const auto points = element_points(curve, e, quad);
    const auto dofs = element_dof_map(curve, e);
    proj.mass.block<2, 2>(e, e) += element_linear_mass(points);
    for (const auto& pt : points) {
      const Eigen::Vector2d L = linear_lagrange(pt.parent);
      const Eigen::VectorXd b = membrane_strain_row(pt.frame);
      for (int a = 0; a < 2; ++a) {
        for (int j = 0; j < b.size(); ++j) proj.coupling(e + a, dofs[j]) += L[a] * b[j] * pt.ds;
      }
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(proj.mass);
  assert(llt.info() == Eigen::Success);
  proj.operator_matrix = llt.solve(proj.coupling);
  return proj;
}

Eigen::MatrixXd patch_stiffness_global_bbar(const NurbsCurve& curve, const CrossSection& section,
                                            const QuadratureRule& quad) {
  const GlobalBbarProjection proj = global_bbar_projection(curve, quad);
  // int Bbar^T EA Bbar ds = P^T (EA M) P with P = M^{-1} G.
  Eigen::MatrixXd k = proj.operator_matrix.transpose() * (section.ea * proj.mass) * proj.operator_matrix;
  for (int e = 0; e < curve.num_elements(); ++e) {
    const auto dofs = element_dof_map(curve, e);
    const Eigen::MatrixXd kb = bending_stiffness(curve, section, e, quad);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      for (std::size_t j = 0; j < dofs.size(); ++j) k(dofs[i], dofs[j]) += kb(i, j);
    }
  }
  return k;
}

FieldRecovery::FieldRecovery(ElementFormulation form, NurbsCurve curve, CrossSection section,
                             ControlDisplacements solution)
    : form_(form), curve_(std::move(curve)), section_(section), solution_(std::move(solution)) {
  if (static_cast<int>(solution_.u.size()) != curve_.num_basis()) {
    throw InvalidArgument("solution size does not match the discretization");
  }
  if (!form_.uses_assumed_strain()) return;
  const int ne = curve_.num_elements();
  const QuadratureRule quad = gauss_rule(form_.quad_points);
  Eigen::VectorXd u(2 * curve_.num_basis());
  for (int b = 0; b < curve_.num_basis(); ++b) u.segment<2>(2 * b) = solution_.u[b];
  ends_.resize(ne);
  if (form_.variant == Formulation::GlobalBbar) {
    const Eigen::VectorXd nodal = global_bbar_projection(curve_, quad).operator_matrix * u;
    for (int e = 0; e < ne; ++e) ends_[e] = nodal.segment<2>(e);
    return;
  }
  for (int e = 0; e < ne; ++e) {
    const auto dofs = element_dof_map(curve_, e);
    Eigen::VectorXd ue(dofs.size());
    for (std::size_t j = 0; j < dofs.size(); ++j) ue[j] = u[dofs[j]];
    ends_[e] = assumed_strain_end_rows(form_.variant, curve_, e, quad) * ue;
  }
  if (form_.variant == Formulation::Cas) {
    // The knot value is one number shared by both neighbours.
    for (int e = 1; e < ne; ++e) ends_[e][0] = ends_[e - 1][1];
  }
}

double FieldRecovery::membrane_force_on_element(int e, double xi) const {
  if (form_.uses_assumed_strain()) {
    const KnotVector& kv = curve_.knot_vector();
    const double a = kv.element_begin(e);
    const double b = kv.element_end(e);
    const double parent = (2.0 * xi - a - b) / (b - a);
    return section_.ea * linear_lagrange(parent).dot(ends_[e]);
  }
  const GeometryFrame f = frame_on_element(curve_, e, xi);
  const auto ua = gather_active(f, solution_);
  return section_.ea * membrane_strain(f, ua);
}

double FieldRecovery::membrane_force(double xi) const {
  return membrane_force_on_element(curve_.knot_vector().find_element(xi), xi);
}

double FieldRecovery::bending_moment_on_element(int e, double xi) const {
  const GeometryFrame f = frame_on_element(curve_, e, xi);
  const auto ua = gather_active(f, solution_);
  return section_.ei * bending_strain(f, ua);
}

double FieldRecovery::bending_moment(double xi) const {
  return bending_moment_on_element(curve_.knot_vector().find_element(xi), xi);
}

Vec2 FieldRecovery::displacement(double xi) const {
  const BasisEval b = nurbs_basis(curve_, xi, 0);
  Vec2 u = Vec2::Zero();
  for (int j = 0; j < b.count; ++j) u += b.values[j] * solution_.u[b.first_active + j];
  return u;
}

double membrane_force_field(const ElementFormulation& form, const NurbsCurve& curve, const CrossSection& section,
                            const ControlDisplacements& solution, double xi) {
  return FieldRecovery(form, curve, section, solution).membrane_force(xi);
}

double bending_moment_field(const NurbsCurve& curve, const CrossSection& section, const ControlDisplacements& solution,
                            double xi) {
  const GeometryFrame f = frame_at(curve, xi);
  const auto ua = gather_active(f, solution);
  return section.ei * bending_strain(f, ua);
}

}  // namespace casrod
