#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "asep/blocking_config.hpp"
#include "doctest.h"

using namespace asep;

TEST_CASE("step profile basics") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  CHECK(h0.occupancy(1) == 1);
  CHECK(h0.occupancy(0) == 0);
  CHECK(h0.occupancy(7) == 1);
  CHECK(h0.class_index() == 0);
  CHECK(h0.defect_count() == 0);
  CHECK(h0.window_lo() > h0.window_hi());  // degenerate window
  CHECK(BlockingConfig::heaviside(5).class_index() == 5);
}

TEST_CASE("swap definition, involution, preconditions") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  const BlockingConfig s = h0.swapped(1, 0);
  CHECK(s.occupancy(0) == 1);
  CHECK(s.occupancy(1) == 0);
  CHECK(s.occupancy(2) == 1);
  CHECK(s.occupancy(-1) == 0);
  CHECK(s.class_index() == 0);
  CHECK(s.swapped(0, 1) == h0);
  CHECK_THROWS_AS(h0.swapped(0, 1), SwapError);
  CHECK_THROWS_AS(h0.swapped(1, 2), SwapError);
}

TEST_CASE("ordered positions") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  CHECK(h0.particle_position(0) == 1);
  CHECK(h0.particle_position(3) == 4);
  CHECK(h0.hole_position(0) == 0);
  CHECK(h0.hole_position(2) == -2);
  const BlockingConfig s = h0.swapped(1, 0);
  CHECK(s.particle_position(0) == 0);
  CHECK(s.particle_position(1) == 2);
  CHECK(s.hole_position(0) == 1);
  CHECK(s.hole_position(1) == -1);
}

TEST_CASE("interface height: step profile and worked configurations") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  for (Site x : {Site{-3}, Site{0}, Site{4}})
    CHECK(h0.interface_height(x) == std::llabs(x));
  CHECK(h0.swapped(1, 0).interface_height(0) == 2);
  const BlockingConfig c = BlockingConfig::from_defects(0, {0}, {2});
  CHECK(c.interface_height(1) == 3);
}

TEST_CASE("interface height: the two routes agree, steps are unit") {
  RandomStream rng(11);
  for (int t = 0; t < 10000; ++t) {
    const Site n = static_cast<Site>(rng.below(7)) - 3;
    const BlockingConfig cfg = random_config(n, n - 8, n + 8, 3.0, rng);
    const Site lo = std::min(cfg.window_lo(), n) - 2;
    const Site hi = std::max(cfg.window_hi(), n) + 2;
    std::int64_t prev = 0;
    for (Site x = lo; x <= hi; ++x) {
      const std::int64_t phi = cfg.interface_height(x);
      REQUIRE(phi == cfg.interface_height_from_right(x));
      if (x > lo) REQUIRE(std::llabs(phi - prev) == 1);
      prev = phi;
    }
    // Outside the defect window the height is the translated absolute value.
    REQUIRE(cfg.interface_height(lo) == std::llabs(lo - n));
    REQUIRE(cfg.interface_height(hi) == std::llabs(hi - n));
  }
}

TEST_CASE("swap moves the interface by -2/+2 on the traversed interval") {
  RandomStream rng(12);
  for (int t = 0; t < 2000; ++t) {
    const BlockingConfig cfg = random_config(0, -6, 6, 3.0, rng);
    for (Site x = -6; x <= 6; ++x) {
      if (cfg.occupancy(x) != 1) continue;
      for (Site y = -6; y <= 6; ++y) {
        if (y == x || cfg.occupancy(y) != 0) continue;
        const BlockingConfig after = cfg.swapped(x, y);
        for (Site z = -7; z <= 7; ++z) {
          const std::int64_t diff =
              after.interface_height(z) - cfg.interface_height(z);
          std::int64_t expect = 0;
          if (x <= z && z < y) expect = -2;
          if (y <= z && z < x) expect = 2;
          REQUIRE(diff == expect);
        }
      }
    }
  }
}

TEST_CASE("order: basic facts") {
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  const BlockingConfig s = h0.swapped(1, 0);
  CHECK(precedes(h0, s));
  CHECK(precedes(h0, h0));
  CHECK(precedes(s, s));
  CHECK_FALSE(precedes(s, h0));
  // The step profile precedes everything in its class.
  RandomStream rng(13);
  for (int t = 0; t < 200; ++t)
    CHECK(precedes(h0, random_config(0, -6, 6, 3.0, rng)));
  // Cross-class pairs are incomparable both ways.
  const BlockingConfig h1 = BlockingConfig::heaviside(1);
  CHECK_FALSE(precedes(h0, h1));
  CHECK_FALSE(precedes(h1, h0));
  CHECK_FALSE(classes_comparable(h0, h1));
}

TEST_CASE("order: position route equals interface route") {
  RandomStream rng(14);
  for (int t = 0; t < 10000; ++t) {
    const BlockingConfig a = random_config(0, -8, 8, 3.0, rng);
    const BlockingConfig b = random_config(0, -8, 8, 3.0, rng);
    REQUIRE(precedes(a, b) == precedes_by_positions(a, b));
    REQUIRE(precedes(b, a) == precedes_by_positions(b, a));
  }
}

TEST_CASE("ordered pair generator produces ordered pairs") {
  RandomStream rng(15);
  for (int t = 0; t < 2000; ++t) {
    const auto [lo, hi] = random_ordered_pair(0, -8, 8, 3.0, rng);
    REQUIRE(precedes(lo, hi));
  }
}

TEST_CASE("interface gaps count the crossing indices") {
  RandomStream rng(16);
  for (int t = 0; t < 2000; ++t) {
    const auto [a, b] = random_ordered_pair(0, -8, 8, 3.0, rng);
    for (Site z = -10; z <= 10; ++z) {
      const std::int64_t gap = b.interface_height(z) - a.interface_height(z);
      REQUIRE(gap >= 0);
      std::int64_t cross_particles = 0;
      for (std::size_t i = 0;; ++i) {
        const Site xa = a.particle_position(i);
        const Site xb = b.particle_position(i);
        if (xb > z && xa > z) break;
        if (xb <= z && z < xa) ++cross_particles;
        if (i > 64) break;
      }
      std::int64_t cross_holes = 0;
      for (std::size_t j = 0;; ++j) {
        const Site ya = a.hole_position(j);
        const Site yb = b.hole_position(j);
        if (ya <= z && yb <= z) break;
        if (ya <= z && z < yb) ++cross_holes;
        if (j > 64) break;
      }
      REQUIRE(gap == 2 * cross_particles);
      REQUIRE(gap == 2 * cross_holes);
    }
  }
}

TEST_CASE("positions stay sorted after swaps") {
  RandomStream rng(17);
  for (int t = 0; t < 1000; ++t) {
    const BlockingConfig cfg = random_config(0, -7, 7, 4.0, rng);
    for (std::size_t k = 0; k < 20; ++k) {
      REQUIRE(cfg.particle_position(k) < cfg.particle_position(k + 1));
      REQUIRE(cfg.hole_position(k) > cfg.hole_position(k + 1));
    }
  }
}

TEST_CASE("text format round trip") {
  RandomStream rng(18);
  for (int t = 0; t < 2000; ++t) {
    const Site n = static_cast<Site>(rng.below(9)) - 4;
    const BlockingConfig cfg = random_config(n, n - 8, n + 8, 3.0, rng);
    REQUIRE(BlockingConfig::parse(cfg.to_string()) == cfg);
  }
  const BlockingConfig h0 = BlockingConfig::heaviside(0);
  CHECK(h0.to_string() == "class=0; particles=[]; holes=[]");
  CHECK(BlockingConfig::parse("class=0; particles=[0]; holes=[1]") ==
        h0.swapped(1, 0));
  CHECK_THROWS(BlockingConfig::parse("garbage"));
}

TEST_CASE("canonical class from a window") {
  const BlockingConfig all_ones =
      BlockingConfig::from_window(0, -1, {1, 1, 1, 1});
  CHECK(all_ones.class_index() == -2);
  const BlockingConfig step = BlockingConfig::from_window(0, -1, {0, 0, 1, 1});
  CHECK(step == BlockingConfig::heaviside(0));
}
