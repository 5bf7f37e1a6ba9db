#include "casrod/rod_model.hpp"

#include "casrod/errors.hpp"

namespace casrod {

CrossSection::CrossSection(double ea_, double ei_) : ea(ea_), ei(ei_) {
  if (!(ea > 0.0) || !(ei > 0.0)) throw InvalidArgument("section stiffnesses EA and EI must be positive");
}

CrossSection CrossSection::rectangular(double young, double thickness, double depth) {
  if (!(young > 0.0) || !(thickness > 0.0) || !(depth > 0.0)) {
    throw InvalidArgument("rectangular section needs positive E, t and d");
  }
  const double area = thickness * depth;
  const double inertia = thickness * thickness * thickness * depth / 12.0;
  return CrossSection(young * area, young * inertia);
}

namespace {

GeometryFrame build_frame(const NurbsCurve& curve, const BasisEval& basis) {
  const CurvePoint g = evaluate_geometry(curve, basis);
  GeometryFrame f;
  f.basis = basis;
  f.point = g.point;
  f.jac = g.d_xi.norm();
  if (f.jac < 1e-14) throw DegenerateParametrization("ds/dxi vanishes");
  const double j2 = f.jac * f.jac;
  f.a1 = g.d_xi / f.jac;
  f.a2 = rot90(f.a1);
  f.da1_ds = (g.d_xi_xi - f.a1 * f.a1.dot(g.d_xi_xi)) / j2;
  f.da2_ds = rot90(f.da1_ds);
  const double r1r2 = g.d_xi.dot(g.d_xi_xi);
  for (int b = 0; b < basis.count; ++b) {
    f.dN_ds[b] = basis.d1[b] / f.jac;
    f.d2N_ds2[b] = basis.d2[b] / j2 - basis.d1[b] * r1r2 / (j2 * j2);
  }
  return f;
}

}  // namespace

GeometryFrame frame_at(const NurbsCurve& curve, double xi) {
  return build_frame(curve, nurbs_basis(curve, xi, 2));
}

GeometryFrame frame_on_element(const NurbsCurve& curve, int element, double xi) {
  return build_frame(curve, nurbs_basis_on_element(curve, element, xi, 2));
}

std::vector<Vec2> gather_active(const GeometryFrame& frame, const ControlDisplacements& u) {
  return {u.u.begin() + frame.first_active(), u.u.begin() + frame.first_active() + frame.count()};
}

double membrane_strain(const GeometryFrame& frame, std::span<const Vec2> u_active) {
  Vec2 du = Vec2::Zero();
  for (int b = 0; b < frame.count(); ++b) du += frame.dN_ds[b] * u_active[b];
  return frame.a1.dot(du);
}

double bending_strain(const GeometryFrame& frame, std::span<const Vec2> u_active) {
  Vec2 du = Vec2::Zero();
  Vec2 ddu = Vec2::Zero();
  for (int b = 0; b < frame.count(); ++b) {
    du += frame.dN_ds[b] * u_active[b];
    ddu += frame.d2N_ds2[b] * u_active[b];
  }
  return frame.a2.dot(ddu) + frame.da2_ds.dot(du);
}

Eigen::VectorXd membrane_strain_row(const GeometryFrame& frame) {
  Eigen::VectorXd row(2 * frame.count());
  for (int b = 0; b < frame.count(); ++b) row.segment<2>(2 * b) = frame.dN_ds[b] * frame.a1;
  return row;
}

Eigen::VectorXd bending_strain_row(const GeometryFrame& frame) {
  Eigen::VectorXd row(2 * frame.count());
  for (int b = 0; b < frame.count(); ++b) {
    row.segment<2>(2 * b) = frame.d2N_ds2[b] * frame.a2 + frame.dN_ds[b] * frame.da2_ds;
  }
  return row;
}

StressResultants stress_resultants(const CrossSection& section, double eps, double kappa) {
  return {section.ea * eps, section.ei * kappa};
}

}  // namespace casrod
