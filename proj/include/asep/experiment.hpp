#ifndef ASEP_EXPERIMENT_HPP
#define ASEP_EXPERIMENT_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asep/blocking_config.hpp"
#include "asep/gibbs.hpp"
#include "asep/measures.hpp"
#include "asep/rates.hpp"

namespace asep {

enum class Scenario {
  simulate,
  couple,
  check_rates,
  gibbs,
  measure_compare,
  order_cases,
};

enum class ExitStatus : int {
  ok = 0,
  validation_error = 2,
  horizon_failure = 3,
  order_violation = 4,
  enumeration_cap = 5,
};

struct ConfigError {
  int line;  // 0 when not tied to a line
  std::string message;
};

// Fully validated experiment description.  Every recognized key is listed in
// the user documentation; unknown keys and constraint violations are
// collected as errors with their line numbers.
struct ExperimentConfig {
  Scenario scenario = Scenario::simulate;
  std::uint64_t seed = 1;
  std::uint64_t replicas = 1;

  // Rate model of the (lower) process.
  std::string rate_kind = "simple_ti";  // simple_ti|reversible|disordered_nn|heat_bath
  std::map<Site, double> a;             // simple_ti jump table
  std::map<Site, double> c;             // reversible forward table
  double alpha = 0.0;
  double K = 0.0, M = 0.0;
  std::map<Site, double> h;

  // Comparison (upper) process for couple / check_rates.
  std::string comparison = "";  // explicit|infimum_bar|disordered or empty
  std::string upper_kind = "simple_ti";
  std::map<Site, double> upper_a;
  std::map<Site, double> upper_c;
  double upper_alpha = 0.0;

  // Initial configurations.
  std::string init = "heaviside";  // heaviside|explicit|product
  Site init_class = 0;
  std::string init_text;  // explicit: blocking-config round-trip format
  std::string upper_init = "heaviside";
  Site upper_init_class = 0;
  std::string upper_init_text;
  Site cutoff = 30;

  // Horizon and observation.
  std::uint64_t max_events = 10000;
  double max_time = std::numeric_limits<double>::infinity();
  Site window_lo = -8;
  Site window_hi = 8;
  std::uint64_t batches = 16;
  std::string sampler = "harris";  // harris|gillespie
  std::uint64_t audit_every = 1;
  bool strict = true;
  bool keep_log = true;

  // Product-measure reference for measure_compare / detailed balance.
  double spec_alpha = 0.0;  // defaults to alpha when 0
  Site spec_class = 0;

  // Gibbs scenario.
  std::string potential = "linear";  // linear|cubic|table
  double potential_beta = 0.0;
  std::map<Site, double> J;  // table one-body
  double tail_c = 0.0, tail_r = 0.0;
  std::vector<std::pair<std::vector<Site>, double>> couplings;
  int N = 3;
  int N2 = 0;  // second volume for a tv comparison, 0 = skip
  int L = 1;
  double conv_tol = 1e-9;
  Site hb_range = 1;

  // order_cases scenario.
  std::uint64_t trials = 10000;

  std::string source_text;  // raw config text, echoed into output headers
};

// Parses and validates; on failure returns the error list and no config.
struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<ConfigError> errors;
};
ParseResult parse_config(const std::string& text);

// Runs the scenario, writing CSV artifacts into out_dir (created if absent).
// Messages meant for the console are appended to *console.
ExitStatus run_experiment(const ExperimentConfig& cfg,
                          const std::string& out_dir, std::string* console);

}  // namespace asep

#endif
