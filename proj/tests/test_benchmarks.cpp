#include "casrod/benchmarks.hpp"
#include "casrod/errors.hpp"
#include "casrod/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace casrod;

namespace {

constexpr double kPi = std::numbers::pi;

// Five-point central stencils, O(h^4).
template <typename F>
auto d1(const F& f, double x, double h) -> decltype(f(x)) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}
template <typename F>
auto d2(const F& f, double x, double h) -> decltype(f(x)) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) / (12.0 * h * h);
}

// Arch axis r = R(-cos phi, sin phi), s = R phi.
Vec2 arch_a1(double phi) { return {std::sin(phi), std::cos(phi)}; }
Vec2 arch_a2(double phi) { return {-std::cos(phi), std::sin(phi)}; }
Vec2 arch_da2_ds(double phi) { return arch_a1(phi) / ArchParameters::radius; }

}  // namespace

TEST_CASE("ring closed forms") {
  CHECK(ring_exact_uxA(1e4) == doctest::Approx(-7.44283e-2).epsilon(1e-5));
  CHECK(ring_exact_uyB(1e4) == doctest::Approx(-6.82849e-2).epsilon(1e-5));
  const BenchmarkProblem pb = build_ring_quarter(2, 1e4);
  CHECK(exact_fields(pb, 0.0).bending_moment == doctest::Approx(-0.18169).epsilon(1e-4));
  CHECK(exact_fields(pb, 0.0).bending_moment == doctest::Approx(0.5 * (2.0 / kPi - 1.0)).epsilon(1e-14));
  CHECK(std::abs(exact_fields(pb, kPi / 2).membrane_force) < 1e-16);
  CHECK(exact_fields(pb, 0.0).membrane_force == doctest::Approx(-0.5));
  CHECK_FALSE(exact_fields(pb, 0.3).displacement.has_value());
  CHECK_THROWS_AS(exact_fields(pb, -0.1), OutOfDomain);
  CHECK_THROWS_AS(exact_fields(pb, kPi / 2 + 0.1), OutOfDomain);
  // Point references: A at the start, B at the finish.
  REQUIRE(pb.point_references.size() == 2);
  CHECK(pb.point_references[0].name == "uxA");
  CHECK(pb.point_references[0].end == End::Start);
  CHECK(pb.point_references[1].name == "uyB");
  CHECK(pb.point_references[1].end == End::Finish);
  CHECK(pb.angle_at(0.0) == doctest::Approx(kPi / 2));
  CHECK(pb.angle_at(1.0) == doctest::Approx(0.0));
}

TEST_CASE("builders reject invalid input") {
  CHECK_THROWS_AS(build_ring_quarter(0, 1e4), InvalidArgument);
  CHECK_THROWS_AS(build_ring_quarter(4, -1.0), InvalidArgument);
  CHECK_THROWS_AS(build_arch_half(4, 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_ellipse_quarter(4, -0.1, false), InvalidArgument);
  CHECK_THROWS_AS(parse_problem("torus"), InvalidArgument);
  for (ProblemKind k : {ProblemKind::Ring, ProblemKind::Arch, ProblemKind::Ellipse}) {
    CHECK(parse_problem(to_string(k)) == k);
  }
}

TEST_CASE("geometry is exact for all three problems") {
  for (int n : {1, 3, 16}) {
    const BenchmarkProblem ring = build_ring_quarter(n, 1e4);
    const BenchmarkProblem arch = build_arch_half(n, 0.1);
    const BenchmarkProblem ell = build_ellipse_quarter(n, 0.1, false);
    CHECK(ring.curve.num_elements() == n);
    for (int i = 0; i <= 100; ++i) {
      const double xi = i / 100.0;
      CHECK(std::abs(evaluate_geometry(ring.curve, xi).point.norm() - RingParameters::radius) < 1e-12);
      CHECK(std::abs(evaluate_geometry(arch.curve, xi).point.norm() - ArchParameters::radius) < 1e-12);
      const Vec2 p = evaluate_geometry(ell.curve, xi).point;
      CHECK(std::abs(p.x() * p.x() / 4.0 + p.y() * p.y() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("angle map follows arc length on circles") {
  for (const BenchmarkProblem& pb : {build_ring_quarter(4, 1e4), build_arch_half(4, 0.1)}) {
    const double R = pb.kind == ProblemKind::Ring ? RingParameters::radius : ArchParameters::radius;
    const ArcLength arc(pb.curve);
    CHECK(arc.total() == doctest::Approx(kPi * R / 2.0).epsilon(1e-13));
    double prev = pb.angle_at(0.0);
    const double sign = pb.angle_at(1.0) > prev ? 1.0 : -1.0;
    for (int i = 1; i < 50; ++i) {
      const double xi = i / 50.0;
      const double phi = pb.angle_at(xi);
      CHECK(sign * (phi - prev) > 0.0);
      prev = phi;
      const double h = 1e-3;
      const double dphi_ds = (pb.angle_at(xi + h) - pb.angle_at(xi - h)) / (arc.at(xi + h) - arc.at(xi - h));
      CHECK(std::abs(std::abs(dphi_ds) - 1.0 / R) < 1e-10);
    }
  }
}

TEST_CASE("arch exact solution") {
  const double R = ArchParameters::radius;
  SUBCASE("A3 reproduces its formula") {
    for (double t : {0.1, 0.01}) {
      const ArchConstants c = arch_constants(t);
      const double expected = -2.0 * c.q * R * (c.c1 - c.c2) / 3.0 - 3.0 * c.q * R * R * c.c3 / 4.0;
      CHECK(c.a3 == doctest::Approx(expected).epsilon(1e-14));
      CHECK(c.c1 == doctest::Approx(0.5 * (R / c.ea + R * R * R / c.ei)).epsilon(1e-15));
      CHECK(c.c2 == doctest::Approx(R * R * R / c.ei).epsilon(1e-15));
      CHECK(c.c3 == doctest::Approx(R * R / c.ei).epsilon(1e-15));
      CHECK(c.q == doctest::Approx(1e6 * t * t * t));
    }
  }
  SUBCASE("clamped end: zero displacement and rotation at phi = 0") {
    for (double t : {0.1, 0.01, 0.001}) {
      const BenchmarkProblem pb = build_arch_half(2, t);
      const auto u = pb.exact->displacement;
      double scale = 0.0;
      for (int i = 0; i <= 50; ++i) scale = std::max(scale, u(kPi / 2 * i / 50.0).norm());
      CHECK(u(0.0).norm() < 1e-9 * scale);
      const ArchDisplacement tn = arch_exact_tn(arch_constants(t), 0.0);
      CHECK(std::abs(tn.ut) < 1e-9 * scale);
      CHECK(std::abs(tn.un) < 1e-9 * scale);
      const double h = 1e-3;
      const double theta = arch_a2(0.0).dot(d1(u, 0.0, h)) / R;
      CHECK(std::abs(theta) < 1e-9 * scale / R);
    }
  }
  SUBCASE("symmetry end: zero tangential displacement and rotation at the crown") {
    for (double t : {0.1, 0.01}) {
      const BenchmarkProblem pb = build_arch_half(2, t);
      const auto u = pb.exact->displacement;
      const double scale = u(kPi / 2).norm();
      CHECK(std::abs(u(kPi / 2).x()) < 1e-9 * scale);
      CHECK(std::abs(arch_a2(kPi / 2).dot(d1(u, kPi / 2, 1e-3))) / R < 1e-8 * scale / R);
    }
  }
  SUBCASE("constitutive self-consistency at 50 angles") {
    // eps = a1 . u' and kappa = a2 . u'' + a2' . u' by differences of the printed
    // displacement field must reproduce the printed N / EA and M / EI.
    for (double t : {0.3, 0.1}) {
      const BenchmarkProblem pb = build_arch_half(2, t);
      const ExactSolution& ex = *pb.exact;
      const auto u = [&](double phi) { return Vec2(ex.displacement(phi)); };
      double nmax = 0.0, mmax = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double phi = kPi / 2 * (i + 0.5) / 50.0;
        nmax = std::max(nmax, std::abs(ex.membrane_force(phi)));
        mmax = std::max(mmax, std::abs(ex.bending_moment(phi)));
      }
      double worst_n = 0.0, worst_m = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double phi = kPi / 2 * (i + 0.5) / 50.0;
        const Vec2 du_ds = d1(u, phi, 1e-3) / R;
        const Vec2 d2u_ds2 = d2(u, phi, 1e-2) / (R * R);
        const double eps = arch_a1(phi).dot(du_ds);
        const double kappa = arch_a2(phi).dot(d2u_ds2) + arch_da2_ds(phi).dot(du_ds);
        worst_n = std::max(worst_n, std::abs(pb.section.ea * eps - ex.membrane_force(phi)) / nmax);
        worst_m = std::max(worst_m, std::abs(pb.section.ei * kappa - ex.bending_moment(phi)) / mmax);
      }
      CHECK(worst_n < 1e-6);
      CHECK(worst_m < 1e-6);
    }
  }
  SUBCASE("equilibrium of the printed resultants") {
    // Euler-Lagrange equation of the rod energy: (M a2)'' - (N a1 + M a2')' = f.
    const double t = 0.1;
    const BenchmarkProblem pb = build_arch_half(2, t);
    const ExactSolution& ex = *pb.exact;
    const double q = ArchParameters::load(t);
    const auto v = [&](double phi) { return Vec2(ex.bending_moment(phi) * arch_a2(phi)); };
    const auto w = [&](double phi) {
      return Vec2(ex.membrane_force(phi) * arch_a1(phi) + ex.bending_moment(phi) * arch_da2_ds(phi));
    };
    for (int i = 0; i < 50; ++i) {
      const double phi = kPi / 2 * (i + 0.5) / 50.0;
      const Vec2 lhs = d2(v, phi, 1e-2) / (R * R) - d1(w, phi, 1e-3) / R;
      const Vec2 f(0.0, -q * std::sin(phi));
      CHECK((lhs - f).norm() < 1e-6 * q);
    }
  }
  SUBCASE("256-element CAS solve, t = 0.1") {
    const ErrorReport r =
        l2_errors(solve_problem(build_arch_half(256, 0.1), ElementFormulation::make(Formulation::Cas)));
    CHECK(*r.e_u < 1e-4);
    CHECK(*r.e_N < 1e-4);
    // The bending moment converges at first order: the error halves per refinement.
    const ErrorReport r128 =
        l2_errors(solve_problem(build_arch_half(128, 0.1), ElementFormulation::make(Formulation::Cas)));
    CHECK(*r.e_M < 1e-2);
    CHECK(*r128.e_M / *r.e_M == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("ellipse") {
  const double t = 0.04;
  const BenchmarkProblem pb = build_ellipse_quarter(4, t, false);
  const double P = EllipseParameters::load(t);
  CHECK_THROWS_AS(exact_fields(pb, 0.3), MissingExactField);
  CHECK(pb.point_references.empty());
  // Static equilibrium: the tip load P acts at horizontal distance a from the clamp.
  REQUIRE(pb.clamped_bending_moment.has_value());
  CHECK(std::abs(*pb.clamped_bending_moment) == doctest::Approx(P * EllipseParameters::semi_x).epsilon(1e-14));
  CHECK(std::abs(*pb.clamped_membrane_force) == doctest::Approx(P).epsilon(1e-14));
  CHECK(slenderness_ratio(ProblemKind::Ellipse, 4e-4) == doctest::Approx(1e4));

  // The clamped-end reactions of a solved model balance the load the same way.
  const BenchmarkProblem fine = build_ellipse_quarter(64, t, false);
  const Solved s = solve_problem(fine, ElementFormulation::make(Formulation::Cas));
  CHECK(s.fields.bending_moment_on_element(0, 0.0) ==
        doctest::Approx(*fine.clamped_bending_moment).epsilon(2e-2));
}

TEST_CASE("ellipse reference is converged") {
  const double t = EllipseParameters::max_radius() / 1e3;
  const EllipseReference ref = ellipse_reference(t);
  CHECK(ref.n_elements == 1024);
  // Successive meshes agree to five significant digits.
  CHECK(std::abs(ref.ux - ref.ux_coarse) < 5e-6 * std::abs(ref.ux));
  CHECK(std::abs(ref.uy - ref.uy_coarse) < 5e-6 * std::abs(ref.uy));
  // Memoized.
  const EllipseReference again = ellipse_reference(t);
  CHECK(again.ux == ref.ux);
  const BenchmarkProblem pb = build_ellipse_quarter(8, t);
  REQUIRE(pb.point_references.size() == 2);
  CHECK(pb.point_references[0].name == "ux_free");
  CHECK(pb.point_references[0].value == ref.ux);
  CHECK(pb.point_references[1].value == ref.uy);
}

TEST_CASE("ellipse reference agrees with an independent global B-bar solve") {
  for (double ratio : {1e1, 1e2, 1e3, 1e4}) {
    const double t = EllipseParameters::max_radius() / ratio;
    const EllipseReference ref = ellipse_reference(t);
    const Solved gb = solve_problem(build_ellipse_quarter(256, t, false), ElementFormulation::make(Formulation::GlobalBbar));
    const Vec2 u = gb.fields.solution().u.back();
    CHECK(std::abs(u.x() - ref.ux) < 2e-5 * std::abs(ref.ux));
    CHECK(std::abs(u.y() - ref.uy) < 2e-5 * std::abs(ref.uy));
  }
}

TEST_CASE("slenderness labels") {
  CHECK(default_slenderness(ProblemKind::Ring) == std::vector<double>{1e4, 1e6, 1e8});
  CHECK(default_slenderness(ProblemKind::Arch) == std::vector<double>{0.1, 0.01, 0.001});
  CHECK(slenderness_ratio(ProblemKind::Ring, 1e6) == doctest::Approx(1e3));
  CHECK(slenderness_ratio(ProblemKind::Arch, 0.01) == doctest::Approx(1e3));
  const auto ell = default_slenderness(ProblemKind::Ellipse);
  REQUIRE(ell.size() == 5);
  for (std::size_t i = 0; i < ell.size(); ++i) {
    CHECK(slenderness_ratio(ProblemKind::Ellipse, ell[i]) == doctest::Approx(std::pow(10.0, i + 1)));
  }
}
