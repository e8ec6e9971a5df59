#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "asep/harris.hpp"
#include "doctest.h"

using namespace asep;

namespace {
const RateFamily nn() { return RateFamily::simple_ti({{1, 0.8}, {-1, 0.1}}); }
}  // namespace

TEST_CASE("thresholds gate by direction") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  const RateFamily f = nn();
  // Step profile: every hole lies left of every particle, so no plus channel.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(thresholds(h0, f, i, j).a_plus == 0.0);
  const Thresholds t00 = thresholds(h0, f, 0, 0);
  CHECK(t00.a_minus == doctest::Approx(0.1));
  const BlockingConfig s = h0.swapped(1, 0);
  const Thresholds u00 = thresholds(s, f, 0, 0);
  CHECK(u00.a_plus == doctest::Approx(0.8));
  CHECK(u00.a_minus == 0.0);
}

TEST_CASE("active channel enumeration") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  {
    const auto chans = active_channels(h0, nn());
    REQUIRE(chans.size() == 1);
    CHECK(chans[0].channel == Channel{0, 0, Channel::Dir::minus});
    CHECK(chans[0].threshold == doctest::Approx(0.1));
    CHECK(chans[0].from == 1);
    CHECK(chans[0].to == 0);
  }
  {
    const RateFamily tasep = RateFamily::simple_ti({{1, 1.0}});
    CHECK(active_channels(h0, tasep).empty());  // absorbing
  }
  {
    const auto chans = active_channels(h0.swapped(1, 0), nn());
    REQUIRE(chans.size() == 3);
    CHECK(chans[0].channel == Channel{0, 0, Channel::Dir::plus});
    CHECK(chans[0].threshold == doctest::Approx(0.8));
    CHECK(chans[1].channel == Channel{0, 1, Channel::Dir::minus});
    CHECK(chans[1].threshold == doctest::Approx(0.1));
    CHECK(chans[2].channel == Channel{1, 0, Channel::Dir::minus});
    CHECK(chans[2].threshold == doctest::Approx(0.1));
  }
}

TEST_CASE("active set stays bounded by the window geometry") {
  RandomStream rng(31);
  const RateFamily f = RateFamily::simple_ti({{1, 0.6}, {2, 0.2}, {-1, 0.1}});
  for (int t = 0; t < 500; ++t) {
    const BlockingConfig cfg = random_config(0, -6, 6, 4.0, rng);
    const Site width = std::max<Site>(0, cfg.window_hi() - cfg.window_lo() + 1);
    const Site bound = width + 2 * f.jump_range();
    CHECK(static_cast<Site>(active_channels(cfg, f).size()) <= bound * bound);
  }
}

TEST_CASE("stepping: exhaustion and acceptance") {
  const RateFamily tasep = RateFamily::simple_ti({{1, 1.0}});
  SimState s(BlockingConfig::heaviside(0), 1);
  CHECK_FALSE(harris_step(s, tasep).has_value());
  CHECK_FALSE(gillespie_step(s, tasep).has_value());

  // Single-channel case: acceptance follows the mark/threshold comparison.
  SimState t(BlockingConfig::heaviside(0), 2);
  int accepted = 0, total = 0;
  while (total < 2000) {
    SimState u(BlockingConfig::heaviside(0),
               RandomStream::derive(7, static_cast<std::uint64_t>(total)));
    const auto ev = harris_step(u, nn());
    REQUIRE(ev.has_value());
    REQUIRE(ev->accepted == (ev->mark < 0.1));
    if (ev->accepted) {
      CHECK(ev->from == 1);
      CHECK(ev->to == 0);
      CHECK(u.cfg == BlockingConfig::heaviside(0).swapped(1, 0));
      ++accepted;
    } else {
      CHECK(u.cfg == BlockingConfig::heaviside(0));
    }
    ++total;
  }
  // Thinning: acceptance frequency tracks the 0.1 threshold (3 sigma).
  const double phat = static_cast<double>(accepted) / total;
  CHECK(std::abs(phat - 0.1) < 3.0 * std::sqrt(0.1 * 0.9 / total));
}

TEST_CASE("holding-time means: thinned vs exact sampler") {
  // Single active channel of rate 0.1: channel clock rate 1 for the thinned
  // sampler, total exit rate 0.1 for the exact one.
  double sum_h = 0.0, sum_g = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    SimState a(BlockingConfig::heaviside(0), RandomStream::derive(100, k));
    sum_h += harris_step(a, nn())->time;
    SimState b(BlockingConfig::heaviside(0), RandomStream::derive(200, k));
    sum_g += gillespie_step(b, nn())->time;
  }
  CHECK(sum_h / n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(sum_g / n == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("per-channel thinning on a frozen 3-channel configuration") {
  const BlockingConfig frozen = BlockingConfig::heaviside(0).swapped(1, 0);
  const RateFamily f = nn();
  SimState s(frozen, 42);
  // Count accepted events per channel over many single steps from the same
  // frozen configuration (state reset each time).
  std::map<std::pair<std::size_t, std::size_t>, int> accepted;
  const int n = 100000;
  int seen = 0;
  for (int k = 0; k < n; ++k) {
    SimState u(frozen, RandomStream::derive(300, k));
    const auto ev = harris_step(u, f);
    REQUIRE(ev.has_value());
    if (ev->accepted) {
      ++accepted[{ev->channel.i, ev->channel.j}];
      ++seen;
    }
  }
  // Each channel fires with probability threshold/3 per step.
  const double expect[3] = {0.8 / 3, 0.1 / 3, 0.1 / 3};
  const std::pair<std::size_t, std::size_t> keys[3] = {{0, 0}, {0, 1}, {1, 0}};
  for (int c = 0; c < 3; ++c) {
    const double p = expect[c];
    const double phat = static_cast<double>(accepted[keys[c]]) / n;
    REQUIRE(std::abs(phat - p) < 3.0 * std::sqrt(p * (1 - p) / n));
  }
  CHECK(seen > 0);
}

TEST_CASE("run harness") {
  const RateFamily f = RateFamily::reversible({{1, 0.8}}, 0.5);
  {
    SimState s(BlockingConfig::heaviside(0), 5);
    const RunSummary sum = run(s, f, {0, 1e300}, {});
    CHECK(sum.events == 0);
    CHECK(sum.elapsed == 0.0);
    CHECK(sum.final_cfg == BlockingConfig::heaviside(0));
  }
  {
    // Determinism: same seed, same everything.
    RunOptions opts;
    opts.keep_log = true;
    SimState a(BlockingConfig::heaviside(0), 6);
    SimState b(BlockingConfig::heaviside(0), 6);
    const RunSummary ra = run(a, f, {500, 1e300}, opts);
    const RunSummary rb = run(b, f, {500, 1e300}, opts);
    CHECK(ra.final_cfg == rb.final_cfg);
    CHECK(ra.elapsed == rb.elapsed);
    REQUIRE(ra.log.size() == rb.log.size());
    for (std::size_t k = 0; k < ra.log.size(); ++k) {
      CHECK(ra.log[k].time == rb.log[k].time);
      CHECK(ra.log[k].mark == rb.log[k].mark);
      CHECK(ra.log[k].accepted == rb.log[k].accepted);
    }
  }
  {
    // Clock strictly increases and class is conserved.
    RunOptions opts;
    opts.keep_log = true;
    SimState s(BlockingConfig::heaviside(0), 7);
    const RunSummary sum = run(s, f, {2000, 1e300}, opts);
    double prev = 0.0;
    for (const auto& ev : sum.log) {
      REQUIRE(ev.time > prev);
      prev = ev.time;
    }
    CHECK(sum.final_cfg.class_index() == 0);
  }
  {
    // Time horizon: elapsed never exceeds max_time.
    SimState s(BlockingConfig::heaviside(0), 8);
    const RunSummary sum = run(s, f, {kMaxEventCap, 25.0}, {});
    CHECK(sum.elapsed == doctest::Approx(25.0));
  }
}
