#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "asep/experiment.hpp"

namespace {

int run_scenario(asep::Scenario scenario, const std::string& config_path,
                 long long seed, long long replicas, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return static_cast<int>(asep::ExitStatus::validation_error);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  asep::ParseResult parsed = asep::parse_config(buf.str());
  if (!parsed.config) {
    for (const auto& e : parsed.errors) {
      if (e.line > 0)
        std::cerr << config_path << ":" << e.line << ": " << e.message << "\n";
      else
        std::cerr << config_path << ": " << e.message << "\n";
    }
    return static_cast<int>(asep::ExitStatus::validation_error);
  }
  asep::ExperimentConfig cfg = *parsed.config;
  cfg.scenario = scenario;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (replicas >= 1) cfg.replicas = static_cast<std::uint64_t>(replicas);
  std::string console;
  const asep::ExitStatus status = asep::run_experiment(cfg, out, &console);
  std::cout << console;
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verification toolkit for asymmetric exclusion "
               "processes on blocking configurations"};
  app.require_subcommand(1);

  struct Common {
    std::string config;
    long long seed = -1;
    long long replicas = 0;
    std::string out = "out";
  };

  const std::pair<std::string, asep::Scenario> scenarios[] = {
      {"simulate", asep::Scenario::simulate},
      {"couple", asep::Scenario::couple},
      {"check-rates", asep::Scenario::check_rates},
      {"gibbs", asep::Scenario::gibbs},
      {"measure-compare", asep::Scenario::measure_compare},
      {"order-cases", asep::Scenario::order_cases},
  };
  const char* descriptions[] = {
      "Run the marked-stream simulation and log events",
      "Run two processes on shared marks and audit the partial order",
      "Validate a rate family and check domination against a comparison family",
      "Enumerate a finite-volume Gibbs measure and its reversibility residual",
      "Compare time-averaged densities against the product reference measure",
      "Brute-force order preservation over random ordered pairs",
  };

  std::vector<std::shared_ptr<Common>> opts;
  int k = 0;
  for (const auto& [name, scenario] : scenarios) {
    auto common = std::make_shared<Common>();
    CLI::App* sub = app.add_subcommand(name, descriptions[k++]);
    sub->add_option("--config", common->config, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", common->seed, "Override the config seed");
    sub->add_option("--replicas", common->replicas,
                    "Override the replica count");
    sub->add_option("--out", common->out, "Output directory")
        ->capture_default_str();
    const asep::Scenario s = scenario;
    sub->callback([common, s]() {
      std::exit(run_scenario(s, common->config, common->seed, common->replicas,
                             common->out));
    });
    opts.push_back(common);
  }

  CLI11_PARSE(app, argc, argv);
  return 0;
}
