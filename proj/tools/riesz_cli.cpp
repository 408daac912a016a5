// riesz: run scenario files and audit the tensor-lattice identities.

#include "riesz/scenario.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on model vector lattices and their tensor grids"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Execute a scenario file");
  std::string scenario;
  std::optional<std::int64_t> horizon;
  std::optional<std::string> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--horizon", horizon, "Trace horizon H");
  run->add_option("--tol", tol, "Tolerance as p/q");
  run->add_option("--seed", seed, "Seed for randomized checks and audits");
  run->add_option("--out", out, "Output directory (default: reports)");

  auto* lemmas = app.add_subcommand("check-lemmas", "Audit all registered identities");
  riesz::LemmaOptions lo;
  std::optional<std::string> expect;
  lemmas->add_option("--trials", lo.trials, "Random trials per claim")->capture_default_str();
  lemmas->add_option("--seed", lo.seed, "Seed of the randomized audits")->capture_default_str();
  lemmas->add_option("--out", lo.out, "Output directory")->capture_default_str();
  lemmas->add_option("--expect", expect, "Expected-status registry (JSON object)");
  lemmas->add_option("--max-dim", lo.max_dim, "Largest square grid audited exhaustively")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    riesz::RunOverrides flags;
    flags.horizon = horizon;
    flags.seed = seed;
    flags.out = out;
    if (tol) {
      try {
        flags.tol = riesz::parse_rational(*tol);
      } catch (const riesz::Error& e) {
        std::cerr << "error: --tol: " << e.what() << "\n";
        return 2;
      }
      if (*flags.tol <= 0) {
        std::cerr << "error: --tol must be positive\n";
        return 2;
      }
    }
    if (horizon && *horizon < 1) {
      std::cerr << "error: --horizon must be >= 1\n";
      return 2;
    }
    return riesz::run_scenario(scenario, flags);
  }
  lo.registry = expect;
  return riesz::check_lemmas(lo);
}
