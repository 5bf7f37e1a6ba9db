#include "casrod/splines.hpp"

#include "casrod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace casrod {

KnotVector::KnotVector(int degree, std::vector<double> knots) : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 1 || degree_ > kMaxDegree) {
    throw InvalidArgument("knot vector degree must be in [1, " + std::to_string(kMaxDegree) + "]");
  }
  const int m = static_cast<int>(knots_.size());
  if (m - degree_ - 1 < degree_ + 1) {
    throw InvalidArgument("knot vector too short for its degree");
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (knots_[i] > knots_[i + 1]) throw InvalidArgument("knot vector must be non-decreasing");
  }
  for (int i = 0; i <= degree_; ++i) {
    if (knots_[i] != 0.0 || knots_[m - 1 - i] != 1.0) {
      throw InvalidArgument("knot vector must be open on [0, 1]");
    }
  }
  if (knots_[degree_ + 1] == 0.0 || knots_[m - degree_ - 2] == 1.0) {
    throw InvalidArgument("end knots must have multiplicity exactly p + 1");
  }
  for (int i = degree_ + 1; i < m - degree_ - 1; ++i) {
    if (knots_[i] == knots_[i + 1]) throw InvalidArgument("repeated interior knots are not supported");
  }
}

int KnotVector::find_element(double xi) const {
  if (!(xi >= 0.0 && xi <= 1.0)) throw OutOfDomain("parametric coordinate outside [0, 1]");
  const int ne = num_elements();
  // upper_bound over the interior knots gives the half-open span; xi == 1 closes the last one.
  const auto first = knots_.begin() + degree_ + 1;
  const auto last = knots_.begin() + degree_ + ne;
  const int e = static_cast<int>(std::upper_bound(first, last, xi) - first);
  return std::min(e, ne - 1);
}

double KnotVector::to_parametric(int e, double parent) const {
  const double a = element_begin(e);
  const double b = element_end(e);
  return 0.5 * ((b - a) * parent + (b + a));
}

KnotVector make_open_uniform_knot_vector(int degree, int n_elements) {
  if (degree < 1) throw InvalidArgument("degree must be >= 1");
  if (n_elements < 1) throw InvalidArgument("element count must be >= 1");
  std::vector<double> knots;
  knots.reserve(n_elements + 2 * degree + 1);
  knots.insert(knots.end(), degree + 1, 0.0);
  for (int i = 1; i < n_elements; ++i) knots.push_back(static_cast<double>(i) / n_elements);
  knots.insert(knots.end(), degree + 1, 1.0);
  return KnotVector(degree, std::move(knots));
}

namespace {

// Nonzero basis functions and derivatives on knot span `span` (index into the
// knot array, p <= span < n). Triangular table of the Cox-de Boor recursion
// with derivatives from the degree-reduction formula.
BasisEval eval_span(const KnotVector& kv, int span, double xi, int max_deriv) {
  const int p = kv.degree();
  const auto& U = kv.knots();
  double ndu[kMaxDegree + 1][kMaxDegree + 1];
  double left[kMaxDegree + 1];
  double right[kMaxDegree + 1];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - U[span + 1 - j];
    right[j] = U[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      // Lower triangle stores knot differences; on an open knot vector with
      // a nonzero span these never vanish, so no 0/0 guard is needed here.
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  BasisEval out;
  out.first_active = span - p;
  out.count = p + 1;
  for (int j = 0; j <= p; ++j) out.values[j] = ndu[j][p];
  if (max_deriv <= 0) return out;

  const int nd = std::min(max_deriv, 2);
  double a[2][kMaxDegree + 1];
  double ders[3][kMaxDegree + 1] = {};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
  for (int j = 0; j <= p; ++j) {
    out.d1[j] = ders[1][j];
    if (nd >= 2) out.d2[j] = ders[2][j];
  }
  return out;
}

void check_domain(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw OutOfDomain("parametric coordinate outside [0, 1]");
}

BasisEval rationalize(const NurbsCurve& curve, BasisEval b) {
  const auto& w = curve.weights();
  double W = 0.0;
  double W1 = 0.0;
  double W2 = 0.0;
  for (int j = 0; j < b.count; ++j) {
    const double wj = w[b.first_active + j];
    W += wj * b.values[j];
    W1 += wj * b.d1[j];
    W2 += wj * b.d2[j];
  }
  BasisEval r = b;
  for (int j = 0; j < b.count; ++j) {
    const double wj = w[b.first_active + j];
    const double M = b.values[j];
    const double M1 = b.d1[j];
    const double M2 = b.d2[j];
    r.values[j] = wj * M / W;
    r.d1[j] = wj * (M1 * W - M * W1) / (W * W);
    r.d2[j] = wj * (M2 / W - 2.0 * M1 * W1 / (W * W) - M * W2 / (W * W) + 2.0 * M * W1 * W1 / (W * W * W));
  }
  return r;
}

}  // namespace

BasisEval bspline_basis(const KnotVector& kv, double xi, int max_deriv) {
  check_domain(xi);
  return eval_span(kv, kv.find_element(xi) + kv.degree(), xi, max_deriv);
}

BasisEval bspline_basis_on_element(const KnotVector& kv, int element, double xi, int max_deriv) {
  if (element < 0 || element >= kv.num_elements()) throw OutOfDomain("element index out of range");
  check_domain(xi);
  return eval_span(kv, element + kv.degree(), xi, max_deriv);
}

NurbsCurve::NurbsCurve(KnotVector knots, std::vector<Vec2> control_points, std::vector<double> weights)
    : knots_(std::move(knots)), points_(std::move(control_points)), weights_(std::move(weights)) {
  const auto n = static_cast<std::size_t>(knots_.num_basis());
  if (points_.size() != n || weights_.size() != n) {
    throw InvalidArgument("control point and weight counts must equal the number of basis functions");
  }
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgument("NURBS weights must be positive");
  }
}

BasisEval nurbs_basis(const NurbsCurve& curve, double xi, int max_deriv) {
  // Derivatives of the rational basis need the B-spline derivatives up to the same order.
  return rationalize(curve, bspline_basis(curve.knot_vector(), xi, std::max(max_deriv, 0)));
}

BasisEval nurbs_basis_on_element(const NurbsCurve& curve, int element, double xi, int max_deriv) {
  return rationalize(curve, bspline_basis_on_element(curve.knot_vector(), element, xi, std::max(max_deriv, 0)));
}

CurvePoint evaluate_geometry(const NurbsCurve& curve, const BasisEval& basis) {
  CurvePoint c{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  const auto& Q = curve.control_points();
  for (int j = 0; j < basis.count; ++j) {
    const Vec2& q = Q[basis.first_active + j];
    c.point += basis.values[j] * q;
    c.d_xi += basis.d1[j] * q;
    c.d_xi_xi += basis.d2[j] * q;
  }
  return c;
}

CurvePoint evaluate_geometry(const NurbsCurve& curve, double xi) {
  return evaluate_geometry(curve, nurbs_basis(curve, xi, 2));
}

NurbsCurve insert_knot(const NurbsCurve& curve, double xi) {
  const KnotVector& kv = curve.knot_vector();
  const int p = kv.degree();
  const int n = kv.num_basis();
  const auto& U = kv.knots();
  const int k = kv.find_element(xi) + p;  // U[k] <= xi < U[k+1]
  if (xi <= U[k] || xi >= U[k + 1]) throw InvalidArgument("inserted knot must lie strictly inside an element");

  // Work in homogeneous coordinates (w*x, w*y, w).
  std::vector<Eigen::Vector3d> Pw(n);
  for (int i = 0; i < n; ++i) {
    const double w = curve.weights()[i];
    Pw[i] << w * curve.control_points()[i], w;
  }
  std::vector<Eigen::Vector3d> Qw(n + 1);
  for (int i = 0; i <= k - p; ++i) Qw[i] = Pw[i];
  for (int i = k - p + 1; i <= k; ++i) {
    const double alpha = (xi - U[i]) / (U[i + p] - U[i]);
    Qw[i] = alpha * Pw[i] + (1.0 - alpha) * Pw[i - 1];
  }
  for (int i = k + 1; i <= n; ++i) Qw[i] = Pw[i - 1];

  std::vector<double> knots(U);
  knots.insert(knots.begin() + k + 1, xi);
  std::vector<Vec2> points(n + 1);
  std::vector<double> weights(n + 1);
  for (int i = 0; i <= n; ++i) {
    weights[i] = Qw[i].z();
    points[i] = Qw[i].head<2>() / Qw[i].z();
  }
  return NurbsCurve(KnotVector(p, std::move(knots)), std::move(points), std::move(weights));
}

NurbsCurve refine_uniform(const NurbsCurve& curve) {
  const KnotVector& kv = curve.knot_vector();
  std::vector<double> mids;
  mids.reserve(kv.num_elements());
  for (int e = 0; e < kv.num_elements(); ++e) mids.push_back(0.5 * (kv.element_begin(e) + kv.element_end(e)));
  NurbsCurve out = curve;
  for (double m : mids) out = insert_knot(out, m);
  return out;
}

NurbsCurve refine_uniform(const NurbsCurve& curve, int times) {
  if (times < 0) throw InvalidArgument("refinement count must be >= 0");
  NurbsCurve out = curve;
  for (int i = 0; i < times; ++i) out = refine_uniform(out);
  return out;
}

}  // namespace casrod
