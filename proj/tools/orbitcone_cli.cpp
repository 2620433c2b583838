#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "orbitcone/report.hpp"

int main(int argc, char** argv) {
  orbitcone::RunConfig cfg;
  std::string commands;
  for (const auto& c : orbitcone::subcommands()) commands += (commands.empty() ? "" : " | ") + c;

  CLI::App app{"Asymptotic cones, wave front sets and branching checks for coadjoint orbits"};
  app.add_option("command", cfg.command, "Subcommand: " + commands)->required();
  app.add_option("--algebra", cfg.algebra, "sl2R, so(p,q), su(2,1), abelian(n), prod(...)");
  app.add_option("--pair", cfg.pair, "Subgroup pair, e.g. \"pair(su(2,1), so(2,1))\" or \"so(3,1)|blocks[(1,1),(2,0)]\"");
  app.add_option("--rep", cfg.rep, "Catalog label, e.g. sigma_disc:3:+, L2_GK, tensor(2,+,3,-), quaternionic");
  app.add_option("--point", cfg.point, "Comma-separated coordinates");
  app.add_option("--generators", cfg.generators, "Cone generators: points separated by ';'");
  app.add_option("--seed", cfg.seed, "Random seed (recorded in the report)");
  int samples = 0;
  auto* samples_opt = app.add_option("--samples", samples, "Sample budget (subcommand-specific default)");
  app.add_option("--radii", cfg.radii, "Radius schedule for asymptotic cones")->delimiter(',');
  app.add_option("--angular-tol", cfg.angular_tol, "Angular tolerance in radians")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output directory for report.json and CSV files");
  app.add_flag("--timings", cfg.timings, "Add wall-clock time to the report (breaks byte-identical reruns)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : orbitcone::kExitInvalid;
  }
  if (samples_opt->count() > 0) cfg.samples = samples;
  return orbitcone::run_and_write(cfg);
}
