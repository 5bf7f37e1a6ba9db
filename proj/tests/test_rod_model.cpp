#include "casrod/benchmarks.hpp"
#include "casrod/errors.hpp"
#include "casrod/formulations.hpp"
#include "casrod/rod_model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace casrod;

namespace {

NurbsCurve straight_x(double length, int n_elements) { return test::straight_rod(length, n_elements); }

}  // namespace

TEST_CASE("frame on a circle and a straight line") {
  const double R = 2.0;
  const NurbsCurve circle = quarter_conic(R, R);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const GeometryFrame f = frame_at(circle, dist(rng));
    CHECK(std::abs(f.a1.norm() - 1.0) < 1e-12);
    CHECK(std::abs(f.a2.norm() - 1.0) < 1e-12);
    CHECK(std::abs(f.a1.dot(f.a2)) < 1e-12);
    CHECK((f.a2 - rot90(f.a1)).norm() < 1e-15);
    CHECK(std::abs(f.da2_ds.norm() - 1.0 / R) < 1e-10);
    CHECK(std::abs(f.da2_ds.dot(f.a2)) < 1e-10);
  }
  const GeometryFrame s = frame_at(straight_x(3.0, 1), 0.4);
  CHECK(s.a1.x() == doctest::Approx(1.0));
  CHECK(s.a1.y() == doctest::Approx(0.0));
  CHECK(s.a2.x() == doctest::Approx(0.0));
  CHECK(s.a2.y() == doctest::Approx(1.0));
  CHECK(s.da2_ds.norm() < 1e-14);
}

TEST_CASE("ellipse radii of curvature at the ends") {
  const NurbsCurve e = quarter_conic(2.0, 1.0);
  // Top end (0, b): R_max = a^2 / b = 4. Side end (-a, 0): R_min = b^2 / a = 0.5.
  CHECK(1.0 / frame_at(e, 1.0).da1_ds.norm() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(1.0 / frame_at(e, 0.0).da1_ds.norm() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("degenerate parametrization is rejected") {
  const NurbsCurve c(make_open_uniform_knot_vector(2, 1), {Vec2(0, 0), Vec2(0, 0), Vec2(0, 0)}, {1, 1, 1});
  CHECK_THROWS_AS(frame_at(c, 0.5), DegenerateParametrization);
}

TEST_CASE("second arc-length derivative matches differences of the first") {
  const NurbsCurve c = refine_uniform(quarter_conic(2.0, 1.0), 2);
  const double L = 2.4221;  // approximate quarter-ellipse length; only scales the step
  for (double xi : {0.1, 0.3, 0.55, 0.8}) {
    const GeometryFrame f = frame_at(c, xi);
    const double ds = 1e-5 * L;
    const double dxi = ds / f.jac;
    const GeometryFrame fp = frame_at(c, xi + dxi);
    const GeometryFrame fm = frame_at(c, xi - dxi);
    REQUIRE(fp.first_active() == f.first_active());
    REQUIRE(fm.first_active() == f.first_active());
    for (int b = 0; b < f.count(); ++b) {
      const double fd = (fp.dN_ds[b] - fm.dN_ds[b]) / (2 * ds);
      CHECK(f.d2N_ds2[b] == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("membrane and bending strain of simple fields") {
  SUBCASE("rigid translation") {
    for (const NurbsCurve& c : {quarter_conic(1.0, 1.0), quarter_conic(2.0, 1.0), straight_x(1.0, 4)}) {
      const NurbsCurve r = refine_uniform(c, 2);
      for (double xi : {0.0, 0.13, 0.5, 0.91, 1.0}) {
        const GeometryFrame f = frame_at(r, xi);
        const std::vector<Vec2> u(f.count(), Vec2(0.7, -1.3));
        CHECK(std::abs(membrane_strain(f, u)) < 1e-12);
        CHECK(std::abs(bending_strain(f, u)) < 1e-12);
      }
    }
  }
  SUBCASE("straight rod: stretch and quadratic deflection") {
    const NurbsCurve c = straight_x(1.0, 4);
    const ControlDisplacements stretch = test::interpolate(c, [](const Vec2& p) { return Vec2(p.x(), 0.0); });
    const ControlDisplacements bend = test::interpolate(c, [](const Vec2& p) { return Vec2(0.0, 0.5 * p.x() * p.x()); });
    for (double xi : {0.05, 0.4, 0.77}) {
      const GeometryFrame f = frame_at(c, xi);
      CHECK(membrane_strain(f, gather_active(f, stretch)) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(bending_strain(f, gather_active(f, bend)) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("infinitesimal rigid rotation on the quarter circle") {
    const NurbsCurve c = refine_uniform(quarter_conic(1.0, 1.0), 3);
    const Vec2 centre(0.3, -0.2);
    // u = theta rot90(r - c) is linear in r; control points transform the same way.
    ControlDisplacements u;
    for (const Vec2& q : c.control_points()) u.u.push_back(0.01 * rot90(q - centre));
    for (int i = 0; i <= 20; ++i) {
      const GeometryFrame f = frame_at(c, i / 20.0);
      CHECK(std::abs(membrane_strain(f, gather_active(f, u))) < 1e-10);
      CHECK(std::abs(bending_strain(f, gather_active(f, u))) < 1e-10);
    }
  }
  SUBCASE("inextensional mode of the quarter circle") {
    // With u = u_t a1 + u_n a2 on a circle, eps = (du_t/dphi + u_n) / R.
    // u_t = sin(2 phi), u_n = -2 cos(2 phi) is inextensional and not rigid.
    const double R = 1.0;
    const double amp = 1e-3;
    const NurbsCurve c = refine_uniform(quarter_conic(R, R), 6);
    auto field = [=](const Vec2& p) {
      const double phi = std::atan2(p.y(), -p.x());
      const Vec2 a1(std::sin(phi), std::cos(phi));
      return Vec2(amp * (std::sin(2 * phi) * a1 - 2.0 * std::cos(2 * phi) * rot90(a1)));
    };
    {
      // The oracle itself: a1 . du/ds vanishes by central differences.
      const double phi = 0.4;
      const double h = 1e-6;
      auto at = [&](double ph) { return field(Vec2(-R * std::cos(ph), R * std::sin(ph))); };
      const Vec2 du_ds = (at(phi + h) - at(phi - h)) / (2 * h * R);
      CHECK(std::abs(Vec2(std::sin(phi), std::cos(phi)).dot(du_ds)) < 1e-12);
    }
    const ControlDisplacements fit = test::interpolate(c, field);
    const auto& U = c.knot_vector().knots();
    const int n = c.num_basis();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, 2 * n);
    std::vector<GeometryFrame> greville;
    for (int b = 0; b < n; ++b) {
      greville.push_back(frame_at(c, 0.5 * (U[b + 1] + U[b + 2])));
      const GeometryFrame& f = greville.back();
      const Eigen::VectorXd row = membrane_strain_row(f);
      C.block(b, 2 * f.first_active(), 1, row.size()) = row.transpose();
    }
    double raw = 0.0;
    for (const auto& f : greville) raw = std::max(raw, std::abs(membrane_strain(f, gather_active(f, fit))));
    // The projected field is inextensional up to its interpolation error.
    CHECK(raw < 2e-3 * amp / R);  // O(h^2) interpolation error, h = pi / 256

    // Removing the strain-producing component moves the field by the same
    // tiny amount and leaves an exact discrete inextensional mode.
    Eigen::VectorXd x(2 * n);
    for (int b = 0; b < n; ++b) x.segment<2>(2 * b) = fit.u[b];
    const Eigen::VectorXd corr = C.transpose() * (C * C.transpose()).ldlt().solve(C * x);
    const Eigen::VectorXd y = x - corr;
    CHECK(corr.norm() < 1e-3 * x.norm());
    ControlDisplacements mode;
    for (int b = 0; b < n; ++b) mode.u.emplace_back(y(2 * b), y(2 * b + 1));
    double worst = 0.0;
    for (const auto& f : greville) worst = std::max(worst, std::abs(membrane_strain(f, gather_active(f, mode))));
    CHECK(worst < 1e-10 * amp / R);
  }
}

TEST_CASE("stress resultants") {
  const CrossSection s(1e4, 1.0);
  const StressResultants r = stress_resultants(s, 1e-3, 0.0);
  CHECK(r.membrane_force == doctest::Approx(10.0));
  CHECK(r.bending_moment == 0.0);
  CHECK_THROWS_AS(CrossSection(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(CrossSection(1.0, -1.0), InvalidArgument);
  const CrossSection rect = CrossSection::rectangular(2.1e11, 0.1, 0.1);
  CHECK(rect.ea == doctest::Approx(2.1e11 * 0.01));
  CHECK(rect.ei == doctest::Approx(2.1e11 * 1e-3 * 0.1 / 12.0));
  // Ring exact membrane force at phi = 0.
  const BenchmarkProblem ring = build_ring_quarter(2, 1e4);
  CHECK(exact_fields(ring, 0.0).membrane_force == doctest::Approx(-0.5));
}

TEST_CASE("rigid modes produce no strain at quadrature points of every benchmark") {
  const QuadratureRule quad = gauss_rule(3);
  for (const BenchmarkProblem& pb :
       {build_ring_quarter(8, 1e6), build_arch_half(8, 0.01), build_ellipse_quarter(8, 0.04, false)}) {
    for (const Vec2& t : {Vec2(1, 0), Vec2(0, 1)}) {
      ControlDisplacements u;
      u.u.assign(pb.curve.num_basis(), t);
      for (int e = 0; e < pb.curve.num_elements(); ++e) {
        for (const auto& pt : element_points(pb.curve, e, quad)) {
          const auto ua = gather_active(pt.frame, u);
          CHECK(std::abs(membrane_strain(pt.frame, ua)) < 1e-9);
          CHECK(std::abs(bending_strain(pt.frame, ua)) < 1e-9);
        }
      }
    }
  }
}
