#ifndef ASEP_HARRIS_HPP
#define ASEP_HARRIS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "asep/blocking_config.hpp"
#include "asep/rates.hpp"
#include "asep/rng.hpp"

namespace asep {

// One marked Poisson stream: the (i-th particle, j-th hole) pair, split by
// jump direction so that a shared-mark coupling never moves two processes in
// opposite directions off the same event.
struct Channel {
  std::size_t i = 0;
  std::size_t j = 0;
  enum class Dir { plus, minus } dir = Dir::plus;
  bool operator==(const Channel&) const = default;
};

struct ActiveChannel {
  Channel channel;
  double threshold = 0.0;  // acceptance threshold = jump rate, in (0, 1]
  Site from = 0, to = 0;
};

// Acceptance thresholds for the (i, j) pair: the jump rate gated by the
// direction indicator.  At most one of the two is nonzero.
struct Thresholds {
  double a_plus = 0.0;
  double a_minus = 0.0;
};
Thresholds thresholds(const BlockingConfig& cfg, const RateFamily& f,
                      std::size_t i, std::size_t j);

// All channels with nonzero threshold, in lexicographic (i, j, dir) order.
// Finite because the rate family has finite jump range.
std::vector<ActiveChannel> active_channels(const BlockingConfig& cfg,
                                           const RateFamily& f);

struct EventRecord {
  double time = 0.0;  // clock after the event
  Channel channel;
  double mark = 0.0;
  bool accepted = false;
  Site from = 0, to = 0;  // meaningful when accepted
};

struct SimState {
  BlockingConfig cfg;
  double clock = 0.0;
  std::uint64_t event_count = 0;
  RandomStream rng;

  SimState(BlockingConfig c, std::uint64_t seed)
      : cfg(std::move(c)), rng(seed) {}
};

// Hard cap on events per run; exceeding it throws (explosion guard).
inline constexpr std::uint64_t kMaxEventCap = 10'000'000;

// One event of the thinned construction: exponential holding time at rate
// equal to the number of active channels, a uniformly chosen channel, and a
// uniform mark; the swap is applied iff the mark is below the channel's
// threshold.  Returns nullopt when no channel is active (absorbing state).
std::optional<EventRecord> harris_step(SimState& s, const RateFamily& f);

// Exact event-driven alternative: holding time at the total exit rate, jump
// chosen proportionally to its rate, always accepted.  Equal in law to the
// accepted-event subsequence of harris_step.
std::optional<EventRecord> gillespie_step(SimState& s, const RateFamily& f);

struct Horizon {
  std::uint64_t max_events = kMaxEventCap;
  double max_time = std::numeric_limits<double>::infinity();
};

enum class Sampler { harris, gillespie };

struct RunOptions {
  Site window_lo = -8;
  Site window_hi = 8;
  bool keep_log = false;
  std::size_t batches = 16;
  Sampler sampler = Sampler::harris;
};

struct RunSummary {
  BlockingConfig initial_cfg;
  BlockingConfig final_cfg;
  double elapsed = 0.0;
  std::uint64_t events = 0;
  std::uint64_t accepted = 0;
  bool exhausted = false;  // stopped because no channel was active
  Site window_lo = 0;
  // Time-integrated occupancy per site of the window, and the same split
  // into event-count batches for error bars.
  std::vector<double> occupancy_time;
  std::vector<std::vector<double>> batch_occupancy;
  std::vector<double> batch_time;
  std::vector<EventRecord> log;

  RunSummary(BlockingConfig init) : initial_cfg(init), final_cfg(init) {}
};

RunSummary run(SimState& s, const RateFamily& f, const Horizon& horizon,
               const RunOptions& opts);

}  // namespace asep

#endif
