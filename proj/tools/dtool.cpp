#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dfactor/commands.h"
#include "dfactor/config.h"
#include "dfactor/errors.h"

using namespace dfactor;

int main(int argc, char** argv) {
  CLI::App app{"dtool: Delta-factor a-point experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string format;
  unsigned threads = 0;

  const std::map<std::string, std::string> blurb = {
      {"info", "invariants of a datum"},
      {"eval-delta", "exact and asymptotic Delta at given points"},
      {"find-apoints", "certified a-points in windows"},
      {"verify-rvm", "a-point counts against the asymptotic count"},
      {"landau", "Landau-type sums over a-points"},
      {"equidist", "discrepancy and Weyl sums of alpha*gamma mod 1"},
      {"mean-value", "L summed over a-points against the prediction"},
      {"catalog", "list built-in L-functions"},
  };
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, blurb.count(name) ? blurb.at(name) : "");
    auto* opt = sub->add_option("--config", config_path, "YAML run configuration");
    if (name != "catalog") opt->required();
    sub->add_option("--out", out_path, "output file (default: config output.path or stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "worker threads for window searches")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "dtool " << cmd << ": " << e.kind() << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (!format.empty()) cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (threads > 0) cfg.threads = threads;
  if (!out_path.empty()) cfg.output_path = out_path;

  if (cfg.output_path.empty() || cfg.output_path == "-") {
    return run_command(cmd, cfg, std::cout, std::cerr);
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "dtool " << cmd << ": cannot write '" << cfg.output_path << "'\n";
    return kExitFailure;
  }
  return run_command(cmd, cfg, out, std::cerr);
}
