#include "casrod/assembly.hpp"

#include "casrod/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <string>

namespace casrod {

Eigen::VectorXd GlobalSystem::multiply(const Eigen::VectorXd& x) const {
  if (const auto* band = std::get_if<SymmetricBandMatrix>(&k)) return band->multiply(x);
  return std::get<Eigen::MatrixXd>(k) * x;
}

Eigen::MatrixXd GlobalSystem::dense() const {
  if (const auto* band = std::get_if<SymmetricBandMatrix>(&k)) return band->to_dense();
  return std::get<Eigen::MatrixXd>(k);
}

Eigen::VectorXd assemble_loads(const NurbsCurve& curve, const LoadSpec& loads, const QuadratureRule& quad) {
  const int n = curve.num_basis();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * n);
  if (loads.distributed) {
    const KnotVector& kv = curve.knot_vector();
    for (int e = 0; e < curve.num_elements(); ++e) {
      for (const auto& pt : element_points(curve, e, quad)) {
        const double xi = kv.to_parametric(e, pt.parent);
        const Vec2 density = loads.distributed(pt.frame.point, xi);
        for (int b = 0; b < pt.frame.count(); ++b) {
          f.segment<2>(2 * (pt.frame.first_active() + b)) += pt.frame.basis.values[b] * pt.ds * density;
        }
      }
    }
  }
  // Open knot vector: the end control points interpolate the curve.
  for (const auto& pl : loads.point_loads) {
    const int b = pl.end == End::Start ? 0 : n - 1;
    f.segment<2>(2 * b) += pl.force;
  }
  return f;
}

namespace {

using EndRows = Eigen::Matrix<double, 2, Eigen::Dynamic>;

// CAS knot rows evaluated once per knot. The left row of element e reuses the
// right row of element e - 1 shifted by one control point; the coefficient of
// the function entering at that knot is zero by C1 continuity.
std::vector<EndRows> shared_cas_rows(const NurbsCurve& curve, const QuadratureRule& quad) {
  const int ne = curve.num_elements();
  std::vector<EndRows> rows(ne);
  for (int e = 0; e < ne; ++e) {
    if (e == 0) {
      rows[e] = assumed_strain_end_rows(Formulation::Cas, curve, e, quad);
      continue;
    }
    const KnotVector& kv = curve.knot_vector();
    const Eigen::VectorXd right = membrane_strain_row(frame_on_element(curve, e, kv.element_end(e)));
    const Eigen::RowVectorXd& prev = rows[e - 1].row(1);
    EndRows r(2, right.size());
    r.row(0).setZero();
    r.row(0).head(right.size() - 2) = prev.tail(right.size() - 2);
    r.row(1) = right.transpose();
    rows[e] = std::move(r);
  }
  return rows;
}

}  // namespace

GlobalSystem assemble(const NurbsCurve& curve, const CrossSection& section, const ElementFormulation& form,
                      const LoadSpec& loads) {
  const QuadratureRule quad = gauss_rule(form.quad_points);
  const int ndof = 2 * curve.num_basis();
  GlobalSystem sys;
  sys.f = assemble_loads(curve, loads, quad);

  if (form.variant == Formulation::GlobalBbar) {
    sys.k = patch_stiffness_global_bbar(curve, section, quad);
    return sys;
  }

  SymmetricBandMatrix k(ndof, 2 * curve.degree() + 1);
  std::vector<EndRows> cas_rows;
  if (form.variant == Formulation::Cas) cas_rows = shared_cas_rows(curve, quad);

  for (int e = 0; e < curve.num_elements(); ++e) {
    Eigen::MatrixXd ke;
    if (form.variant == Formulation::Cas) {
      const auto points = element_points(curve, e, quad);
      ke = assumed_membrane_stiffness(cas_rows[e], section, points);
      ke += bending_stiffness(section, points);
    } else {
      ke = element_stiffness(form, curve, section, e, quad).k;
    }
    const auto dofs = element_dof_map(curve, e);
    for (std::size_t j = 0; j < dofs.size(); ++j) {
      for (std::size_t i = j; i < dofs.size(); ++i) {
        // Symmetric storage: one add covers (i, j) and (j, i).
        k.add(dofs[i], dofs[j], i == j ? ke(i, j) : 0.5 * (ke(i, j) + ke(j, i)));
      }
    }
  }
  sys.k = std::move(k);
  return sys;
}

ConstrainedSystem apply_constraints(const GlobalSystem& system, const NurbsCurve& curve,
                                    const Constraints& constraints) {
  const int ndof = system.size();
  const int n = curve.num_basis();
  std::vector<bool> fixed(ndof, false);
  std::vector<int> master(ndof);
  for (int i = 0; i < ndof; ++i) master[i] = i;

  for (int d : constraints.fixed_dofs) {
    if (d < 0 || d >= ndof) throw InvalidArgument("constrained dof index out of range");
    fixed[d] = true;
  }

  for (const auto& s : constraints.supports) {
    const int end_cp = s.end == End::Start ? 0 : n - 1;
    const int next_cp = s.end == End::Start ? 1 : n - 2;
    const GeometryFrame frame = frame_at(curve, s.end == End::Start ? 0.0 : 1.0);
    int axis = -1;
    for (int c = 0; c < 2; ++c) {
      if (std::abs(std::abs(frame.a2[c]) - 1.0) < 1e-10 && std::abs(frame.a2[1 - c]) < 1e-10) axis = c;
    }
    if (axis < 0) throw NonAxisAlignedRotation("rotation constraint needs a2 aligned with a coordinate axis");

    if (s.kind == SupportKind::Clamped) {
      fixed[2 * end_cp] = fixed[2 * end_cp + 1] = true;
    } else {
      if (s.normal_component != 0 && s.normal_component != 1) throw InvalidArgument("symmetry component must be 0 or 1");
      fixed[2 * end_cp + s.normal_component] = true;
    }
    // Zero rotation: U_next,axis == U_end,axis.
    const int slave = 2 * next_cp + axis;
    const int mast = 2 * end_cp + axis;
    if (fixed[mast]) {
      fixed[slave] = true;
    } else {
      master[slave] = mast;
    }
  }

  // Resolve tie chains; a fix anywhere in a tie group fixes the whole group.
  for (int i = 0; i < ndof; ++i) {
    int m = i;
    while (master[m] != m) m = master[m];
    master[i] = m;
    if (fixed[i]) fixed[m] = true;
  }
  for (int i = 0; i < ndof; ++i) {
    if (fixed[master[i]]) fixed[i] = true;
  }

  ConstrainedSystem out;
  out.dof_to_reduced.assign(ndof, -1);
  int next = 0;
  for (int i = 0; i < ndof; ++i) {
    if (fixed[i] || master[i] != i) continue;
    out.dof_to_reduced[i] = next++;
  }
  for (int i = 0; i < ndof; ++i) {
    if (!fixed[i] && master[i] != i) out.dof_to_reduced[i] = out.dof_to_reduced[master[i]];
  }
  const auto& map = out.dof_to_reduced;

  out.reduced.f = Eigen::VectorXd::Zero(next);
  for (int i = 0; i < ndof; ++i) {
    if (map[i] >= 0) out.reduced.f[map[i]] += system.f[i];
  }

  if (const auto* band = std::get_if<SymmetricBandMatrix>(&system.k)) {
    int bw = 0;
    for (int j = 0; j < ndof; ++j) {
      for (int i = j; i <= std::min(ndof - 1, j + band->bandwidth()); ++i) {
        if (map[i] >= 0 && map[j] >= 0) bw = std::max(bw, std::abs(map[i] - map[j]));
      }
    }
    SymmetricBandMatrix kr(next, bw);
    for (int j = 0; j < ndof; ++j) {
      if (map[j] < 0) continue;
      for (int i = j; i <= std::min(ndof - 1, j + band->bandwidth()); ++i) {
        if (map[i] < 0) continue;
        const double v = (*band)(i, j);
        // An off-diagonal pair collapsing onto one reduced dof lands on the diagonal twice.
        kr.add(map[i], map[j], (i != j && map[i] == map[j]) ? 2.0 * v : v);
      }
    }
    out.reduced.k = std::move(kr);
  } else {
    const auto& kd = std::get<Eigen::MatrixXd>(system.k);
    Eigen::MatrixXd kr = Eigen::MatrixXd::Zero(next, next);
    for (int j = 0; j < ndof; ++j) {
      if (map[j] < 0) continue;
      for (int i = 0; i < ndof; ++i) {
        if (map[i] >= 0) kr(map[i], map[j]) += kd(i, j);
      }
    }
    out.reduced.k = std::move(kr);
  }
  return out;
}

namespace {

ControlDisplacements expand(const ConstrainedSystem& system, const Eigen::VectorXd& x) {
  const int ndof = static_cast<int>(system.dof_to_reduced.size());
  ControlDisplacements u;
  u.u.assign(ndof / 2, Vec2::Zero());
  for (int i = 0; i < ndof; ++i) {
    const int r = system.dof_to_reduced[i];
    if (r >= 0) u.u[i / 2][i % 2] = x[r];
  }
  return u;
}

Eigen::VectorXd restrict_to_reduced(const ConstrainedSystem& system, const ControlDisplacements& u) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(system.reduced.size());
  for (std::size_t i = 0; i < system.dof_to_reduced.size(); ++i) {
    const int r = system.dof_to_reduced[i];
    if (r >= 0) x[r] = u.u[i / 2][i % 2];
  }
  return x;
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& k, const Eigen::VectorXd& f) {
  const Eigen::LLT<Eigen::MatrixXd> llt(k);
  const double max_diag = k.diagonal().cwiseAbs().maxCoeff();
  if (llt.info() != Eigen::Success) throw SingularSystem("stiffness matrix is not positive definite");
  const Eigen::VectorXd l = llt.matrixL().toDenseMatrix().diagonal();
  if (l.cwiseAbs2().minCoeff() <= 1e-14 * max_diag) throw SingularSystem("stiffness matrix is numerically singular");
  return llt.solve(f);
}

void check_backward_error(const ConstrainedSystem& system, const ControlDisplacements& u) {
  const double be = backward_error(system, u);
  if (!(be < 1e-10)) throw NumericalError("solve residual too large (backward error " + std::to_string(be) + ")");
}

}  // namespace

ControlDisplacements solve(const ConstrainedSystem& system) {
  const GlobalSystem& r = system.reduced;
  if (r.size() == 0) return expand(system, Eigen::VectorXd());
  Eigen::VectorXd x;
  if (const auto* band = std::get_if<SymmetricBandMatrix>(&r.k)) {
    const BandCholesky chol(*band);
    x = chol.solve(r.f);
    // One step of iterative refinement.
    x += chol.solve(r.f - band->multiply(x));
  } else {
    x = dense_solve(std::get<Eigen::MatrixXd>(r.k), r.f);
  }
  ControlDisplacements u = expand(system, x);
  check_backward_error(system, u);
  return u;
}

ControlDisplacements solve_dense(const ConstrainedSystem& system) {
  const GlobalSystem& r = system.reduced;
  if (r.size() == 0) return expand(system, Eigen::VectorXd());
  ControlDisplacements u = expand(system, dense_solve(r.dense(), r.f));
  check_backward_error(system, u);
  return u;
}

Eigen::VectorXd flatten(const ControlDisplacements& u) {
  Eigen::VectorXd x(2 * u.u.size());
  for (std::size_t b = 0; b < u.u.size(); ++b) x.segment<2>(2 * b) = u.u[b];
  return x;
}

double relative_residual(const ConstrainedSystem& system, const ControlDisplacements& u) {
  const Eigen::VectorXd x = restrict_to_reduced(system, u);
  const double fn = system.reduced.f.norm();
  return (system.reduced.multiply(x) - system.reduced.f).norm() / (fn > 0.0 ? fn : 1.0);
}

double backward_error(const ConstrainedSystem& system, const ControlDisplacements& u) {
  const Eigen::VectorXd x = restrict_to_reduced(system, u);
  const GlobalSystem& r = system.reduced;
  const double knorm = r.banded() ? std::get<SymmetricBandMatrix>(r.k).frobenius_norm()
                                  : std::get<Eigen::MatrixXd>(r.k).norm();
  const double denom = knorm * x.norm() + r.f.norm();
  if (denom == 0.0) return 0.0;
  return (r.multiply(x) - r.f).norm() / denom;
}

Eigen::VectorXd reactions(const GlobalSystem& system, const ControlDisplacements& u) {
  return system.multiply(flatten(u)) - system.f;
}

}  // namespace casrod
