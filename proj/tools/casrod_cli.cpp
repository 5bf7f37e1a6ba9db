// casrod: convergence studies and field dumps for the curved-rod benchmarks.

#include "casrod/errors.hpp"
#include "casrod/study.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Options {
  std::string problem = "ring";
  std::string formulation = "cas";
  std::vector<double> slenderness;
  int start_elements = 2;
  int refinements = 7;
  int quad_points = 0;
  int elements = 16;
  int samples = 101;
  std::string out;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--problem", o.problem, "ring | arch | ellipse")->check(CLI::IsMember({"ring", "arch", "ellipse"}));
  cmd->add_option("--formulation", o.formulation, "nurbs | nurbs-reduced | cas | local-bbar | local-ans | global-bbar")
      ->check(CLI::IsMember({"nurbs", "nurbs-reduced", "cas", "local-bbar", "local-ans", "global-bbar"}));
  cmd->add_option("--quad-points", o.quad_points, "Gauss points per element (default: 2 for nurbs-reduced, else 3)")
      ->check(CLI::Range(1, 10));
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
}

casrod::RunConfig to_config(const Options& o) {
  casrod::RunConfig c;
  c.problem = casrod::parse_problem(o.problem);
  c.formulation = casrod::parse_formulation(o.formulation);
  c.slenderness = o.slenderness;
  c.start_elements = o.start_elements;
  c.refinements = o.refinements;
  c.quad_points = o.quad_points;
  c.elements = o.elements;
  c.samples = o.samples;
  return c;
}

template <typename Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw CLI::ValidationError("--out", "cannot open " + path);
  write(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curved Kirchhoff rod benchmarks with NURBS, CAS and B-bar/ANS elements"};
  app.require_subcommand(1);
  Options o;

  const std::string slender_help =
      "slenderness case, repeatable: EA for ring (default 1e4 1e6 1e8), "
      "thickness t for arch (0.1 0.01 0.001) and ellipse (0.4 ... 4e-5)";

  auto* converge = app.add_subcommand("converge", "uniform h-refinement study, one CSV row per mesh and case");
  add_common(converge, o);
  converge->add_option("--slenderness", o.slenderness, slender_help)->check(CLI::PositiveNumber);
  converge->add_option("--start-elements", o.start_elements, "elements of the coarsest mesh")->check(CLI::Range(1, 1 << 20));
  converge->add_option("--refinements", o.refinements, "number of uniform refinements")->check(CLI::Range(0, 16));

  auto* fields = app.add_subcommand("fields", "sample u, N and M along the rod for one mesh");
  add_common(fields, o);
  fields->add_option("--slenderness", o.slenderness, slender_help)->check(CLI::PositiveNumber)->expected(1);
  fields->add_option("--elements", o.elements, "number of elements")->check(CLI::Range(1, 1 << 20));
  fields->add_option("--samples", o.samples, "number of samples, uniform in the parameter")->check(CLI::Range(2, 1 << 24));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const casrod::RunConfig config = to_config(o);
  try {
    if (converge->parsed()) {
      const auto rows = casrod::run_convergence_study(config);
      emit(o.out, [&](std::ostream& os) { casrod::write_convergence_csv(os, rows); });
    } else {
      const auto dump = casrod::run_field_dump(config);
      emit(o.out, [&](std::ostream& os) { casrod::write_fields_csv(os, dump.samples); });
      if (!dump.reference_rows.empty()) {
        if (o.out.empty() || o.out == "-") {
          casrod::write_reference_csv(std::cerr, dump.reference_rows);
        } else {
          emit(o.out + ".reference.csv", [&](std::ostream& os) { casrod::write_reference_csv(os, dump.reference_rows); });
        }
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "casrod: " << e.what() << '\n';
    return kExitUsage;
  } catch (const casrod::InvalidArgument& e) {
    std::cerr << "casrod: " << to_string(config.problem) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "casrod: " << to_string(config.problem) << " (" << to_string(config.formulation)
              << "): numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
