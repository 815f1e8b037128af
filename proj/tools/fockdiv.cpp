#include "fockdiv/commands.hpp"
#include "fockdiv/errors.hpp"
#include "fockdiv/parallel.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

int main(int argc, char** argv) {
  using namespace fockdiv;
  CLI::App app{"Sampling and interpolation experiments for divisors in the Fock space"};
  std::string command, config_path, out = ".";
  unsigned workers = 0;
  std::uint64_t seed = 0;
  app.add_option("command", command, "geometry | frame | uniqueness | dichotomy")
      ->required()
      ->check(CLI::IsMember({"geometry", "frame", "uniqueness", "dichotomy"}));
  app.add_option("--config", config_path, "experiment configuration (JSON)")->required();
  app.add_option("--out", out, "output directory");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed, overrides the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    parallel::set_workers(workers);
    Config cfg = load_config(config_path);
    if (seed_opt->count()) set_seed(cfg, seed);
    CommandResult r;
    if (command == "geometry") r = cmd_geometry(cfg, out);
    else if (command == "frame") r = cmd_frame(cfg, out);
    else if (command == "uniqueness") r = cmd_uniqueness(cfg, out);
    else r = cmd_dichotomy(cfg, out);
    for (const auto& line : r.summary) std::cout << line << '\n';
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "fockdiv " << command << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}
