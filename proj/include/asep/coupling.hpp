#ifndef ASEP_COUPLING_HPP
#define ASEP_COUPLING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asep/harris.hpp"

namespace asep {

// Two processes driven by the same marked Poisson streams, with a running
// audit of the partial order between the marginals.
struct CoupledState {
  BlockingConfig lower;  // rates p
  BlockingConfig upper;  // rates p_bar
  double clock = 0.0;
  std::uint64_t event_count = 0;
  std::vector<std::uint64_t> violation_log;  // event indices with order broken
  RandomStream rng;

  CoupledState(BlockingConfig lo, BlockingConfig up, std::uint64_t seed)
      : lower(std::move(lo)), upper(std::move(up)), rng(seed) {}
};

struct CoupledEvent {
  double time = 0.0;
  Channel channel;
  double mark = 0.0;
  bool lower_accepted = false;
  bool upper_accepted = false;
  bool order_ok = true;
};

// One shared-mark event: the active set is the union of the two marginals'
// active channels, one channel is drawn uniformly at rate equal to the set
// size, and a single mark is compared against each marginal's own threshold.
// Returns nullopt when neither marginal has an active channel.
std::optional<CoupledEvent> coupled_step(CoupledState& cs, const RateFamily& p,
                                         const RateFamily& p_bar);

struct CoupledOptions {
  std::uint64_t audit_every = 1;  // order check frequency, in events
  bool strict = false;            // throw on first violation
  bool keep_log = false;
  Site window_lo = -8;
  Site window_hi = 8;
};

class OrderViolation : public std::runtime_error {
 public:
  OrderViolation(std::uint64_t event_index)
      : std::runtime_error("order violated at event " +
                           std::to_string(event_index)),
        event_index_(event_index) {}
  std::uint64_t event_index() const { return event_index_; }

 private:
  std::uint64_t event_index_;
};

struct CoupledSummary {
  BlockingConfig lower_final;
  BlockingConfig upper_final;
  double elapsed = 0.0;
  std::uint64_t events = 0;
  std::uint64_t lower_accepted = 0;
  std::uint64_t upper_accepted = 0;
  bool exhausted = false;
  std::vector<std::uint64_t> violation_log;
  std::vector<CoupledEvent> log;
  // Time-integrated occupancy per site of the observation window, per marginal.
  Site window_lo = 0;
  std::vector<double> lower_occupancy_time;
  std::vector<double> upper_occupancy_time;

  CoupledSummary(BlockingConfig lo, BlockingConfig up)
      : lower_final(std::move(lo)), upper_final(std::move(up)) {}
};

// Runs the coupling from an ordered pair (throws std::invalid_argument if
// precedes(init_lower, init_upper) fails), auditing the order after events.
CoupledSummary run_coupled(const BlockingConfig& init_lower,
                           const BlockingConfig& init_upper,
                           const RateFamily& p, const RateFamily& p_bar,
                           const Horizon& horizon, std::uint64_t seed,
                           const CoupledOptions& opts);

// Brute-force verification that single and simultaneous (i, j) exchanges
// preserve the partial order, in all geometric cases:
//   both-below:   xbar <= x < y <= ybar  — lower-only and simultaneous jumps;
//   both-above:   y <= ybar < xbar <= x  — upper-only and simultaneous jumps;
//   straddling:   x > y and xbar < ybar  — either single jump.
struct OrderCaseReport {
  std::uint64_t pairs = 0;
  std::uint64_t checks[5] = {0, 0, 0, 0, 0};
  struct Counterexample {
    int case_id;  // 0..4 in the order above
    std::string lower, upper;
    std::size_t i, j;
  };
  std::vector<Counterexample> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

OrderCaseReport verify_order_cases(std::uint64_t trials, Site window_lo,
                                   Site window_hi, std::uint64_t seed);

}  // namespace asep

#endif
