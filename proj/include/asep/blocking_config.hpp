#ifndef ASEP_BLOCKING_CONFIG_HPP
#define ASEP_BLOCKING_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "asep/rng.hpp"

namespace asep {

using Site = std::int64_t;

class SwapError : public std::runtime_error {
 public:
  SwapError(const std::string& what, Site site)
      : std::runtime_error(what), site_(site) {}
  Site site() const { return site_; }

 private:
  Site site_;
};

// A blocking configuration: finitely many particles at or below the class
// index n, finitely many holes above it, stored as the deviation from the
// step profile of class n (empty at sites <= n, full at sites > n).
//
// The representation is canonical: the class index is the unique n for which
// the particle count at sites <= n equals the hole count at sites > n, so
// equality of configurations is structural equality.
class BlockingConfig {
 public:
  // Maximum defect-list length; construction beyond this throws.
  static constexpr std::size_t kDefectCap = 1'000'000;

  // Step profile of class n: occupied exactly at sites >= n+1.
  static BlockingConfig heaviside(Site n);

  // Build from explicit defect lists relative to class n.  `particles` must
  // be strictly increasing with all entries <= n; `holes` strictly decreasing
  // with all entries > n; equal lengths.
  static BlockingConfig from_defects(Site n, std::vector<Site> particles,
                                     std::vector<Site> holes);

  // Build from an occupancy window [lo, lo + bits.size() - 1]; outside the
  // window the configuration is heaviside(tail_class).  The canonical class
  // index is computed from the particle/hole balance.
  static BlockingConfig from_window(Site tail_class, Site lo,
                                    const std::vector<int>& bits);

  int occupancy(Site x) const;
  Site class_index() const { return class_; }

  // Ordered positions: particle k counted from the leftmost particle
  // rightward, hole k from the rightmost hole leftward.
  Site particle_position(std::size_t k) const;
  Site hole_position(std::size_t k) const;

  // Height of the integrated profile at x, normalized so that the step
  // profile of class n has height |x - n|.  Two routes: a left sum over
  // particles and a right sum over holes; they agree identically.
  std::int64_t interface_height(Site x) const;
  std::int64_t interface_height_from_right(Site x) const;

  // Exchange the particle at x with the hole at y.  Throws SwapError naming
  // the offending site if occupancy(x) != 1 or occupancy(y) != 0.
  BlockingConfig swapped(Site x, Site y) const;

  // Smallest closed interval outside which the configuration equals the step
  // profile.  Empty (lo > hi) when there are no defects.
  Site window_lo() const;
  Site window_hi() const;

  const std::vector<Site>& left_particles() const { return left_; }
  const std::vector<Site>& right_holes() const { return right_; }
  std::size_t defect_count() const { return left_.size(); }

  bool operator==(const BlockingConfig&) const = default;

  // Round-trip text format: class=<n>; particles=[p1,p2,...]; holes=[h1,...]
  std::string to_string() const;
  static BlockingConfig parse(const std::string& text);

 private:
  BlockingConfig(Site n, std::vector<Site> left, std::vector<Site> right)
      : class_(n), left_(std::move(left)), right_(std::move(right)) {}

  Site class_ = 0;
  std::vector<Site> left_;   // particle sites <= class_, strictly increasing
  std::vector<Site> right_;  // hole sites > class_, strictly decreasing
};

// Partial order: a precedes b iff the interface of a lies nowhere above the
// interface of b.  Configurations in different classes are incomparable
// (both directions return false); see classes_comparable.
bool precedes(const BlockingConfig& a, const BlockingConfig& b);

// The same order computed from ordered particle/hole positions:
// x_i(a) >= x_i(b) and y_j(a) <= y_j(b) for all i, j.  Equivalent to
// precedes(); kept as an independent route for cross-checking.
bool precedes_by_positions(const BlockingConfig& a, const BlockingConfig& b);

inline bool classes_comparable(const BlockingConfig& a,
                               const BlockingConfig& b) {
  return a.class_index() == b.class_index();
}

// Random configuration near the step profile: start from heaviside(n) and
// apply a geometric(mean_swaps) number of uniformly chosen legal swaps with
// both endpoints in [wlo, whi].
BlockingConfig random_config(Site n, Site wlo, Site whi, double mean_swaps,
                             RandomStream& rng);

// Ordered pair (lower, upper): sample upper as above, then lower it by random
// rightward (interface-lowering) swaps, each of which preserves the order.
std::pair<BlockingConfig, BlockingConfig> random_ordered_pair(
    Site n, Site wlo, Site whi, double mean_swaps, RandomStream& rng);

}  // namespace asep

#endif
