#include "casrod/benchmarks.hpp"

#include "casrod/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace casrod {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

void check_elements(int n) {
  if (n < 1) throw InvalidArgument("element count must be >= 1");
}

NurbsCurve refined_to(const NurbsCurve& coarse, int n_elements) {
  // Uniform knots of the target mesh come from repeated bisection when
  // n_elements is a power of two; otherwise insert the uniform knots directly.
  int m = 1;
  int times = 0;
  while (m < n_elements) {
    m *= 2;
    ++times;
  }
  if (m == n_elements) return refine_uniform(coarse, times);
  NurbsCurve out = coarse;
  for (int i = 1; i < n_elements; ++i) out = insert_knot(out, static_cast<double>(i) / n_elements);
  return out;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Ring: return "ring";
    case ProblemKind::Arch: return "arch";
    case ProblemKind::Ellipse: return "ellipse";
  }
  return "unknown";
}

ProblemKind parse_problem(std::string_view name) {
  for (ProblemKind k : {ProblemKind::Ring, ProblemKind::Arch, ProblemKind::Ellipse}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

NurbsCurve quarter_conic(double a, double b) {
  return NurbsCurve(make_open_uniform_knot_vector(2, 1), {Vec2(-a, 0.0), Vec2(-a, b), Vec2(0.0, b)},
                    {1.0, std::sqrt(2.0) / 2.0, 1.0});
}

double BenchmarkProblem::angle(const Vec2& global) const {
  const Vec2 p = orientation.transpose() * global;
  switch (kind) {
    // Ring lives in the fourth quadrant: phi = 0 at B = (0, -R), pi/2 at A = (R, 0).
    case ProblemKind::Ring: return std::atan2(p.x(), -p.y());
    // Arch: phi = 0 at the clamped base (-R, 0), pi/2 at the crown.
    case ProblemKind::Arch: return std::atan2(p.y(), -p.x());
    case ProblemKind::Ellipse:
      return std::atan2(p.y() / EllipseParameters::semi_y, -p.x() / EllipseParameters::semi_x);
  }
  return 0.0;
}

double BenchmarkProblem::angle_at(double xi) const { return angle(evaluate_geometry(curve, xi).point); }

double ring_exact_uxA(double ea) {
  check_positive(ea, "EA");
  const double P = RingParameters::load;
  const double R = RingParameters::radius;
  const double EI = RingParameters::ei;
  const double tr2 = EI / ea / (R * R);  // (t/R)^2 with t = sqrt(EI/EA)
  return -(P * R * R * R / EI) * ((kPi * kPi - 8.0) / (8.0 * kPi) + kPi / 8.0 * tr2);
}

double ring_exact_uyB(double ea) {
  check_positive(ea, "EA");
  const double P = RingParameters::load;
  const double R = RingParameters::radius;
  const double EI = RingParameters::ei;
  const double tr2 = EI / ea / (R * R);
  return -(P * R * R * R / EI) * ((4.0 - kPi) / (4.0 * kPi) - 0.25 * tr2);
}

BenchmarkProblem build_ring_quarter(int n_elements, double ea) {
  check_elements(n_elements);
  check_positive(ea, "EA");
  const double R = RingParameters::radius;
  const double P = RingParameters::load;
  // Quarter from A = (R, 0) clockwise to B = (0, -R): the conic of quarter_conic rotated by pi.
  NurbsCurve coarse(make_open_uniform_knot_vector(2, 1), {Vec2(R, 0.0), Vec2(R, -R), Vec2(0.0, -R)},
                    {1.0, std::sqrt(2.0) / 2.0, 1.0});
  BenchmarkProblem pb{ProblemKind::Ring,
                      ea,
                      std::sqrt(RingParameters::ei / ea),
                      refined_to(coarse, n_elements),
                      CrossSection(ea, RingParameters::ei),
                      {},
                      {},
                      std::nullopt,
                      {},
                      std::nullopt,
                      std::nullopt};
  // Half of the pinching load P enters the quarter at A, pushing inward.
  pb.loads.point_loads.push_back({End::Start, Vec2(-P / 2.0, 0.0)});
  pb.constraints.supports = {{End::Start, SupportKind::Symmetry, 1}, {End::Finish, SupportKind::Symmetry, 0}};
  ExactSolution ex;
  ex.membrane_force = [P](double phi) { return -P / 2.0 * std::cos(phi); };
  ex.bending_moment = [P, R](double phi) { return P * R / 2.0 * (2.0 / kPi - std::cos(phi)); };
  pb.exact = ex;
  pb.point_references = {{"uxA", End::Start, 0, ring_exact_uxA(ea)}, {"uyB", End::Finish, 1, ring_exact_uyB(ea)}};
  return pb;
}

ArchConstants arch_constants(double t) {
  check_positive(t, "thickness");
  const CrossSection s = CrossSection::rectangular(ArchParameters::young, t, ArchParameters::depth);
  const double R = ArchParameters::radius;
  const double q = ArchParameters::load(t);
  ArchConstants c{};
  c.q = q;
  c.ea = s.ea;
  c.ei = s.ei;
  c.c1 = 0.5 * (R / s.ea + R * R * R / s.ei);
  c.c2 = R * R * R / s.ei;
  c.c3 = R * R / s.ei;
  c.a1 = (8.0 * kPi * q * (c.c1 - c.c2) + 3.0 * kPi * q * R * c.c3) /
         (6.0 * kPi * kPi * (c.c1 / R) - 24.0 * c.c3);
  c.a2 = q * R * R / 2.0 - (16.0 * kPi * q * R * (c.c1 - c.c2) + 6.0 * kPi * q * R * R * c.c3) /
                               (6.0 * kPi * kPi * kPi * (c.c1 / R) - 24.0 * kPi * c.c3);
  c.a3 = -2.0 * q * R * (c.c1 - c.c2) / 3.0 - 3.0 * q * R * R * c.c3 / 4.0;
  return c;
}

ArchDisplacement arch_exact_tn(const ArchConstants& c, double phi) {
  const double R = ArchParameters::radius;
  const double s = std::sin(phi);
  const double co = std::cos(phi);
  const double ut = c.a1 * (c.c1 * phi * s - c.c3 * R * (1.0 - co)) - c.a2 * c.c3 * (phi - s) + c.a3 * s -
                    c.q * R * (std::sin(2.0 * phi) * (2.0 / 3.0 * c.c1 - 1.0 / 6.0 * c.c2 - 1.0 / 8.0 * c.c3 * R) -
                               phi * c.c3 * R / 2.0);
  const double un = c.a1 * (c.c1 * (phi * co - s) + c.c2 * s - c.c3 * R * s) - c.a2 * c.c3 * (1.0 - co) + c.a3 * co +
                    c.q * R * (c.c1 - 0.5 * c.c2 + 0.5 * c.c3 * R -
                               std::cos(2.0 * phi) * (1.0 / 3.0 * c.c1 + 1.0 / 6.0 * c.c2 - 1.0 / 4.0 * c.c3 * R));
  return {ut, un};
}

BenchmarkProblem build_arch_half(int n_elements, double t) {
  check_elements(n_elements);
  check_positive(t, "thickness");
  const double R = ArchParameters::radius;
  const ArchConstants c = arch_constants(t);
  BenchmarkProblem pb{ProblemKind::Arch,
                      t,
                      t,
                      refined_to(quarter_conic(R, R), n_elements),
                      CrossSection::rectangular(ArchParameters::young, t, ArchParameters::depth),
                      {},
                      {},
                      std::nullopt,
                      {},
                      std::nullopt,
                      std::nullopt};
  // q is per unit horizontal length: per unit arc length it is q sin(phi).
  const double q = c.q;
  pb.loads.distributed = [q](const Vec2& p, double) {
    const double phi = std::atan2(p.y(), -p.x());
    return Vec2(0.0, -q * std::sin(phi));
  };
  pb.constraints.supports = {{End::Start, SupportKind::Clamped, 0}, {End::Finish, SupportKind::Symmetry, 0}};
  ExactSolution ex;
  ex.displacement = [c](double phi) {
    const ArchDisplacement d = arch_exact_tn(c, phi);
    const double s = std::sin(phi);
    const double co = std::cos(phi);
    return Vec2(d.ut * s + d.un * co, d.ut * co - d.un * s);
  };
  ex.membrane_force = [c, R](double phi) { return c.a1 * std::sin(phi) - c.q * R * std::cos(phi) * std::cos(phi); };
  ex.bending_moment = [c, R](double phi) {
    return c.a1 * R * std::sin(phi) + c.a2 - c.q * R * R / 2.0 * (1.0 + 0.5 * std::cos(2.0 * phi));
  };
  pb.exact = ex;
  return pb;
}

EllipseReference ellipse_reference(double t, int n_elements) {
  check_positive(t, "thickness");
  check_elements(n_elements);
  static std::mutex mutex;
  static std::map<std::pair<double, int>, EllipseReference> cache;
  {
    const std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({t, n_elements}); it != cache.end()) return it->second;
  }
  auto free_end = [t](int n) {
    BenchmarkProblem pb = build_ellipse_quarter(n, t, false);
    const GlobalSystem sys = assemble(pb.curve, pb.section, ElementFormulation::make(Formulation::Cas), pb.loads);
    const ControlDisplacements u = solve(apply_constraints(sys, pb.curve, pb.constraints));
    return u.u.back();
  };
  const Vec2 fine = free_end(n_elements);
  const Vec2 coarse = free_end(std::max(1, n_elements / 2));
  const EllipseReference ref{fine.x(), fine.y(), coarse.x(), coarse.y(), n_elements};
  const std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_pair(t, n_elements), ref);
  return ref;
}

BenchmarkProblem build_ellipse_quarter(int n_elements, double t, bool with_reference) {
  check_elements(n_elements);
  check_positive(t, "thickness");
  const double a = EllipseParameters::semi_x;
  const double b = EllipseParameters::semi_y;
  const double P = EllipseParameters::load(t);
  BenchmarkProblem pb{ProblemKind::Ellipse,
                      t,
                      t,
                      refined_to(quarter_conic(a, b), n_elements),
                      CrossSection::rectangular(EllipseParameters::young, t, EllipseParameters::depth),
                      {},
                      {},
                      std::nullopt,
                      {},
                      std::nullopt,
                      std::nullopt};
  const Vec2 force(0.0, -P);
  pb.loads.point_loads.push_back({End::Finish, force});
  pb.constraints.supports = {{End::Start, SupportKind::Clamped, 0}};
  // Equilibrium of the whole rod beyond the clamp: N = F . a1, M = F . rot90(r_load - r_clamp).
  const Vec2 clamp(-a, 0.0);
  const Vec2 tip(0.0, b);
  const Vec2 a1_clamp(0.0, 1.0);
  pb.clamped_membrane_force = force.dot(a1_clamp);
  pb.clamped_bending_moment = force.dot(rot90(tip - clamp));
  if (with_reference) {
    const EllipseReference ref = ellipse_reference(t);
    pb.point_references = {{"ux_free", End::Finish, 0, ref.ux}, {"uy_free", End::Finish, 1, ref.uy}};
  }
  return pb;
}

ExactFieldValues exact_fields(const BenchmarkProblem& problem, double phi) {
  if (!problem.exact) throw MissingExactField("problem has no closed-form fields");
  if (!(phi >= -1e-12 && phi <= kPi / 2.0 + 1e-12)) throw OutOfDomain("angle outside [0, pi/2]");
  const ExactSolution& ex = *problem.exact;
  ExactFieldValues v{std::nullopt, ex.membrane_force(phi), ex.bending_moment(phi)};
  if (ex.displacement) v.displacement = ex.displacement(phi);
  return v;
}

std::vector<double> default_slenderness(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Ring: return {1e4, 1e6, 1e8};
    case ProblemKind::Arch: return {0.1, 0.01, 0.001};
    case ProblemKind::Ellipse: return {0.4, 0.04, 0.004, 0.0004, 0.00004};
  }
  return {};
}

double slenderness_ratio(ProblemKind kind, double parameter) {
  switch (kind) {
    case ProblemKind::Ring: return RingParameters::radius / std::sqrt(RingParameters::ei / parameter);
    case ProblemKind::Arch: return ArchParameters::radius / parameter;
    case ProblemKind::Ellipse: return EllipseParameters::max_radius() / parameter;
  }
  return 0.0;
}

}  // namespace casrod
