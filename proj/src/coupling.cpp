#include "asep/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace asep {

namespace {

struct CoupledChannel {
  Channel channel;
  double lower_threshold = 0.0;
  double upper_threshold = 0.0;
  Site lower_from = 0, lower_to = 0;
  Site upper_from = 0, upper_to = 0;
};

// Union of the two marginals' active channel sets, keyed by (i, j, dir).
// Each marginal's threshold is evaluated at its own ordered positions.
std::vector<CoupledChannel> coupled_channels(const BlockingConfig& lower,
                                             const BlockingConfig& upper,
                                             const RateFamily& p,
                                             const RateFamily& p_bar) {
  std::vector<CoupledChannel> out;
  const Site R = std::max(p.jump_range(), p_bar.jump_range());
  if (R < 1) return out;
  const Site hole_max = std::max(lower.hole_position(0), upper.hole_position(0));
  const Site particle_min =
      std::min(lower.particle_position(0), upper.particle_position(0));
  for (std::size_t i = 0;
       std::min(lower.particle_position(i), upper.particle_position(i)) <=
       hole_max + R;
       ++i) {
    const Site x = lower.particle_position(i);
    const Site xb = upper.particle_position(i);
    for (std::size_t j = 0;
         std::max(lower.hole_position(j), upper.hole_position(j)) >=
         particle_min - R;
         ++j) {
      const Site y = lower.hole_position(j);
      const Site yb = upper.hole_position(j);
      const double rl = p.rate(x, y, lower);
      const double ru = p_bar.rate(xb, yb, upper);
      for (auto dir : {Channel::Dir::plus, Channel::Dir::minus}) {
        const bool plus = dir == Channel::Dir::plus;
        const double bl = (plus == (y > x)) ? rl : 0.0;
        const double bu = (plus == (yb > xb)) ? ru : 0.0;
        if (bl > 0.0 || bu > 0.0)
          out.push_back({{i, j, dir}, bl, bu, x, y, xb, yb});
      }
    }
  }
  return out;
}

}  // namespace

std::optional<CoupledEvent> coupled_step(CoupledState& cs, const RateFamily& p,
                                         const RateFamily& p_bar) {
  if (cs.event_count >= kMaxEventCap)
    throw std::runtime_error("event cap exceeded (explosion guard)");
  const auto active = coupled_channels(cs.lower, cs.upper, p, p_bar);
  if (active.empty()) return std::nullopt;
  cs.clock += cs.rng.exponential(static_cast<double>(active.size()));
  const auto& ch = active[cs.rng.below(active.size())];
  const double mark = cs.rng.uniform();
  CoupledEvent ev;
  ev.channel = ch.channel;
  ev.mark = mark;
  ev.time = cs.clock;
  if (mark < ch.lower_threshold) {
    cs.lower = cs.lower.swapped(ch.lower_from, ch.lower_to);
    ev.lower_accepted = true;
  }
  if (mark < ch.upper_threshold) {
    cs.upper = cs.upper.swapped(ch.upper_from, ch.upper_to);
    ev.upper_accepted = true;
  }
  ++cs.event_count;
  return ev;
}

CoupledSummary run_coupled(const BlockingConfig& init_lower,
                           const BlockingConfig& init_upper,
                           const RateFamily& p, const RateFamily& p_bar,
                           const Horizon& horizon, std::uint64_t seed,
                           const CoupledOptions& opts) {
  if (!precedes(init_lower, init_upper))
    throw std::invalid_argument("initial pair is not ordered");
  CoupledState cs(init_lower, init_upper, seed);
  CoupledSummary summary(init_lower, init_upper);
  const std::size_t width =
      static_cast<std::size_t>(opts.window_hi - opts.window_lo + 1);
  summary.window_lo = opts.window_lo;
  summary.lower_occupancy_time.assign(width, 0.0);
  summary.upper_occupancy_time.assign(width, 0.0);
  const std::uint64_t audit_every = std::max<std::uint64_t>(1, opts.audit_every);
  double prev_clock = 0.0;
  std::uint64_t n = 0;
  while (n < horizon.max_events && cs.clock < horizon.max_time) {
    const BlockingConfig lower_before = cs.lower;
    const BlockingConfig upper_before = cs.upper;
    auto ev = coupled_step(cs, p, p_bar);
    if (!ev) {
      summary.exhausted = true;
      break;
    }
    double dt = cs.clock - prev_clock;
    bool past_horizon = false;
    if (cs.clock > horizon.max_time) {
      dt = horizon.max_time - prev_clock;
      past_horizon = true;
    }
    for (std::size_t k = 0; k < width; ++k) {
      const Site x = opts.window_lo + static_cast<Site>(k);
      summary.lower_occupancy_time[k] += lower_before.occupancy(x) * dt;
      summary.upper_occupancy_time[k] += upper_before.occupancy(x) * dt;
    }
    if (past_horizon) {
      cs.lower = lower_before;
      cs.upper = upper_before;
      cs.clock = horizon.max_time;
      break;
    }
    ++n;
    summary.events = n;
    if (ev->lower_accepted) ++summary.lower_accepted;
    if (ev->upper_accepted) ++summary.upper_accepted;
    if ((ev->lower_accepted || ev->upper_accepted) && n % audit_every == 0) {
      ev->order_ok = precedes(cs.lower, cs.upper);
      if (!ev->order_ok) {
        summary.violation_log.push_back(n);
        if (opts.strict) throw OrderViolation(n);
      }
    }
    if (opts.keep_log) summary.log.push_back(*ev);
    prev_clock = cs.clock;
  }
  summary.elapsed = cs.clock;
  summary.lower_final = cs.lower;
  summary.upper_final = cs.upper;
  return summary;
}

OrderCaseReport verify_order_cases(std::uint64_t trials, Site window_lo,
                                   Site window_hi, std::uint64_t seed) {
  OrderCaseReport report;
  RandomStream rng(seed);
  auto record = [&](int case_id, bool ok, const BlockingConfig& lo,
                    const BlockingConfig& up, std::size_t i, std::size_t j) {
    ++report.checks[case_id];
    if (!ok)
      report.counterexamples.push_back(
          {case_id, lo.to_string(), up.to_string(), i, j});
  };
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto [lower, upper] =
        random_ordered_pair(0, window_lo, window_hi, 3.0, rng);
    ++report.pairs;
    const auto in_window = [&](Site s) {
      return s >= window_lo && s <= window_hi;
    };
    for (std::size_t i = 0; upper.particle_position(i) <= window_hi; ++i) {
      for (std::size_t j = 0; upper.hole_position(j) >= window_lo; ++j) {
        const Site x = lower.particle_position(i);
        const Site y = lower.hole_position(j);
        const Site xb = upper.particle_position(i);
        const Site yb = upper.hole_position(j);
        if (!in_window(x) || !in_window(y) || !in_window(xb) || !in_window(yb))
          continue;
        if (xb <= x && x < y && y <= yb) {
          record(0, precedes(lower.swapped(x, y), upper), lower, upper, i, j);
          record(2, precedes(lower.swapped(x, y), upper.swapped(xb, yb)),
                 lower, upper, i, j);
        } else if (y <= yb && yb < xb && xb <= x) {
          record(1, precedes(lower, upper.swapped(xb, yb)), lower, upper, i, j);
          record(3, precedes(lower.swapped(x, y), upper.swapped(xb, yb)),
                 lower, upper, i, j);
        } else if (x > y && xb < yb) {
          record(4, precedes(lower, upper.swapped(xb, yb)) &&
                        precedes(lower.swapped(x, y), upper),
                 lower, upper, i, j);
        }
      }
    }
  }
  return report;
}

}  // namespace asep
