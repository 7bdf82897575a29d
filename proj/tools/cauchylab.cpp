#include <charconv>
#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cauchylab/suites.hpp"

namespace {

std::string command_list() {
  std::string out;
  for (const auto& c : cauchylab::suites::commands()) out += (out.empty() ? "" : ", ") + c;
  return out;
}

double parse_tolerance(const std::string& name, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v) || v < 0.0)
    throw CLI::ValidationError("--tol." + name, "needs a finite nonnegative number, got '" + text + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  cauchylab::suites::RunConfig cfg;
  CLI::App app{"Numerical checks for Cauchy integrals, Clifford analysis and potentials on regular sets"};
  app.allow_extras();
  app.add_option("--cmd", cfg.command, "one of: " + command_list())->required();
  app.add_option("--in", cfg.input, "input file (point-cloud CSV, contour, surface or plane JSON)");
  app.add_option("--out", cfg.output, "report path (the fixture file for fixture-gen); stdout when absent");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--fixture", cfg.fixture, "koch, cantor, grid, disc, lipschitz, line or sphere");
  app.add_option("--depth", cfg.depth, "fixture depth or subdivision level");
  app.add_option("--spacing", cfg.spacing, "lattice spacing for grid, line, disc and lipschitz");
  app.add_option("--lip-const", cfg.lip_const, "Lipschitz constant of the graph fixture");
  app.add_option("--ambient", cfg.ambient, "Cantor fixture ambient dimension (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.footer("Tolerance overrides: --tol.<check-name>=<value>. CAUCHYLAB_THREADS caps the worker count.\n"
             "Exit status: 0 when every check passes, 1 when one fails, 2 on errors.");

  try {
    app.parse(argc, argv);
    const auto extras = app.remaining();
    for (std::size_t k = 0; k < extras.size(); ++k) {
      const std::string& arg = extras[k];
      if (arg.rfind("--tol.", 0) != 0) throw CLI::ExtrasError({arg});
      std::string name = arg.substr(6), value;
      if (const auto eq = name.find('='); eq != std::string::npos) {
        value = name.substr(eq + 1);
        name.resize(eq);
      } else if (k + 1 < extras.size()) {
        value = extras[++k];
      }
      if (name.empty()) throw CLI::ValidationError("--tol.", "missing check name");
      cfg.tolerances[name] = parse_tolerance(name, value);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return cauchylab::suites::run(cfg, std::cout, std::cerr);
}
