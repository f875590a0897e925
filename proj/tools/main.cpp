#include <iostream>

#include <CLI11.hpp>

#include "swindex/engine.hpp"
#include "swindex/protocol.hpp"
#include "swindex/selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window string index over a symbol stream"};

  swindex::EngineConfig config;
  std::string engine = "auto";
  bool stats = false;
  std::uint64_t selftest = 0;
  std::uint64_t alphabet = 0;

  app.add_option("-w,--window", config.w, "window length w")->check(CLI::PositiveNumber);
  app.add_option("-d,--delay", config.delta, "allowed answer delay in characters");
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--engine", engine, "auto | timely | delayed | oracle")
      ->check(CLI::IsMember({"auto", "timely", "delayed", "oracle"}));
  app.add_option("--boost", config.boost, "hash attempts before falling back to sorting")
      ->check(CLI::PositiveNumber);
  app.add_option("--ledger-c", config.ledger_c, "work budget constant C");
  app.add_flag("--stats", stats, "print statistics at the end of input");
  app.add_option("--selftest", selftest, "run N randomized trials against the oracle");
  app.add_option("--alphabet", alphabet, "selftest alphabet size (0 = mixed)");

  CLI11_PARSE(app, argc, argv);
  config.kind = swindex::parse_engine_kind(engine);

  if (selftest > 0) {
    const swindex::TrialReport report = swindex::run_selftest(config, selftest, alphabet);
    swindex::print_report(report, std::cout);
    return report.ok() ? 0 : 2;
  }

  std::ios::sync_with_stdio(false);
  auto eng = swindex::make_engine(config);
  return swindex::run_protocol(*eng, std::cin, std::cout, stats);
}
