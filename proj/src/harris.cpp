#include "asep/harris.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asep {

Thresholds thresholds(const BlockingConfig& cfg, const RateFamily& f,
                      std::size_t i, std::size_t j) {
  const Site x = cfg.particle_position(i);
  const Site y = cfg.hole_position(j);
  const double r = f.rate(x, y, cfg);
  Thresholds t;
  if (y > x)
    t.a_plus = r;
  else
    t.a_minus = r;
  return t;
}

std::vector<ActiveChannel> active_channels(const BlockingConfig& cfg,
                                           const RateFamily& f) {
  std::vector<ActiveChannel> out;
  const Site R = f.jump_range();
  if (R < 1) return out;
  const Site hole_max = cfg.hole_position(0);
  const Site particle_min = cfg.particle_position(0);
  for (std::size_t i = 0; cfg.particle_position(i) <= hole_max + R; ++i) {
    const Site x = cfg.particle_position(i);
    for (std::size_t j = 0; cfg.hole_position(j) >= particle_min - R; ++j) {
      const Site y = cfg.hole_position(j);
      const double r = f.rate(x, y, cfg);
      if (r > 0.0) {
        out.push_back({{i, j, y > x ? Channel::Dir::plus : Channel::Dir::minus},
                       r,
                       x,
                       y});
      }
    }
  }
  return out;  // construction order is already lexicographic in (i, j)
}

namespace {

void check_event_cap(const SimState& s) {
  if (s.event_count >= kMaxEventCap)
    throw std::runtime_error("event cap exceeded (explosion guard)");
}

}  // namespace

std::optional<EventRecord> harris_step(SimState& s, const RateFamily& f) {
  check_event_cap(s);
  const auto active = active_channels(s.cfg, f);
  if (active.empty()) return std::nullopt;
  s.clock += s.rng.exponential(static_cast<double>(active.size()));
  const auto& ch = active[s.rng.below(active.size())];
  const double mark = s.rng.uniform();
  EventRecord rec;
  rec.channel = ch.channel;
  rec.mark = mark;
  rec.accepted = mark < ch.threshold;
  if (rec.accepted) {
    s.cfg = s.cfg.swapped(ch.from, ch.to);
    rec.from = ch.from;
    rec.to = ch.to;
  }
  rec.time = s.clock;
  ++s.event_count;
  return rec;
}

std::optional<EventRecord> gillespie_step(SimState& s, const RateFamily& f) {
  check_event_cap(s);
  const auto active = active_channels(s.cfg, f);
  if (active.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& ch : active) total += ch.threshold;
  s.clock += s.rng.exponential(total);
  double u = s.rng.uniform() * total;
  std::size_t pick = active.size() - 1;
  for (std::size_t k = 0; k < active.size(); ++k) {
    u -= active[k].threshold;
    if (u <= 0.0) {
      pick = k;
      break;
    }
  }
  const auto& ch = active[pick];
  EventRecord rec;
  rec.channel = ch.channel;
  rec.mark = 0.0;
  rec.accepted = true;
  s.cfg = s.cfg.swapped(ch.from, ch.to);
  rec.from = ch.from;
  rec.to = ch.to;
  rec.time = s.clock;
  ++s.event_count;
  return rec;
}

RunSummary run(SimState& s, const RateFamily& f, const Horizon& horizon,
               const RunOptions& opts) {
  if (opts.window_hi < opts.window_lo)
    throw std::invalid_argument("bad observation window");
  const std::size_t width =
      static_cast<std::size_t>(opts.window_hi - opts.window_lo + 1);
  RunSummary summary(s.cfg);
  summary.window_lo = opts.window_lo;
  summary.occupancy_time.assign(width, 0.0);
  const std::size_t nbatch = std::max<std::size_t>(opts.batches, 1);
  summary.batch_occupancy.assign(nbatch, std::vector<double>(width, 0.0));
  summary.batch_time.assign(nbatch, 0.0);

  // Batch boundaries: by event count when the horizon is event-bounded,
  // otherwise by time.
  const bool by_events = horizon.max_events < kMaxEventCap;
  const std::uint64_t events_per_batch =
      by_events ? std::max<std::uint64_t>(1, horizon.max_events / nbatch) : 0;

  const double t0 = s.clock;
  double prev_clock = s.clock;
  std::uint64_t n = 0;
  while (n < horizon.max_events) {
    const BlockingConfig before = s.cfg;
    auto rec = opts.sampler == Sampler::harris ? harris_step(s, f)
                                               : gillespie_step(s, f);
    if (!rec) {
      summary.exhausted = true;
      break;
    }
    double dt = s.clock - prev_clock;
    bool past_horizon = false;
    if (s.clock - t0 > horizon.max_time) {
      dt = (t0 + horizon.max_time) - prev_clock;
      past_horizon = true;
    }
    std::size_t b;
    if (by_events) {
      b = std::min<std::size_t>(n / events_per_batch, nbatch - 1);
    } else if (std::isfinite(horizon.max_time)) {
      b = std::min<std::size_t>(
          static_cast<std::size_t>((prev_clock - t0) / horizon.max_time *
                                   static_cast<double>(nbatch)),
          nbatch - 1);
    } else {
      b = 0;
    }
    summary.batch_time[b] += dt;
    for (std::size_t k = 0; k < width; ++k) {
      const int occ = before.occupancy(opts.window_lo + static_cast<Site>(k));
      summary.occupancy_time[k] += occ * dt;
      summary.batch_occupancy[b][k] += occ * dt;
    }
    if (past_horizon) {
      // The drawn event lands beyond the time horizon; the trajectory is
      // observed only up to max_time.
      s.cfg = before;
      s.clock = t0 + horizon.max_time;
      break;
    }
    ++n;
    summary.events = n;
    if (rec->accepted) ++summary.accepted;
    if (opts.keep_log) summary.log.push_back(*rec);
    prev_clock = s.clock;
  }
  summary.elapsed = s.clock - t0;
  summary.final_cfg = s.cfg;
  return summary;
}

}  // namespace asep
