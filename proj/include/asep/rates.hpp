#ifndef ASEP_RATES_HPP
#define ASEP_RATES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "asep/blocking_config.hpp"

namespace asep {

enum class RateKind { simple_ti, reversible, disordered_nn, custom };

// A jump-rate rule p(x, y; eta) with finite jump range and rates in [0, 1].
// rate() already enforces the exclusion constraint: it vanishes unless there
// is a particle at x and a hole at y, and for |x - y| beyond the range.
class RateFamily {
 public:
  // p(x, y; eta) = a(y - x) on legal jumps.  All entries in [0, 1].
  static RateFamily simple_ti(const std::map<Site, double>& a);

  // Forward rates c(d) for jump distance d >= 1, backward rates alpha^d c(d),
  // alpha in [0, 1).  Reversible for the product measure with ratio alpha.
  static RateFamily reversible(const std::map<Site, double>& c_forward,
                               double alpha);

  static RateFamily custom(
      Site range,
      std::function<double(Site, Site, const BlockingConfig&)> rule);

  double rate(Site x, Site y, const BlockingConfig& cfg) const;

  Site jump_range() const { return range_; }
  RateKind kind() const { return kind_; }
  bool has_table() const {
    return kind_ == RateKind::simple_ti || kind_ == RateKind::reversible;
  }
  // Table entry a(z); 0 when absent.  Only for table-backed kinds.
  double table(Site z) const;
  double alpha() const { return alpha_; }
  // Rescaling applied to keep rates within [0, 1] (1 when none was needed).
  double time_scale() const { return time_scale_; }

 private:
  RateFamily() = default;
  friend std::pair<RateFamily, RateFamily> make_disordered_pair(
      double K, const std::map<Site, double>& h, double M);

  RateKind kind_ = RateKind::custom;
  Site range_ = 0;
  std::map<Site, double> a_;
  double alpha_ = 0.0;
  double time_scale_ = 1.0;
  // disordered_nn fields
  double K_ = 0.0;
  double M_ = 0.0;
  std::map<Site, double> h_;
  bool comparison_ = false;
  std::function<double(Site, Site, const BlockingConfig&)> rule_;
};

// Reversible comparison family dominated by a given simple
// translation-invariant family: abar(x) = min over 0 < y <= x of a(y) for
// x > 0, abar(-x) = alpha^x abar(x).  The bool reports whether
// a(-x) <= alpha^x * min_{0<y<=x} a(y) holds for every x in range, which is
// the hypothesis under which the original family dominates this one.
std::pair<RateFamily, bool> build_infimum_bar(const std::map<Site, double>& a,
                                           double alpha);

// Nearest-neighbor process with symmetric disorder h on top of a constant
// drive K (forward K + h(x), backward h(x)), paired with its reversible
// comparison family (forward K + h(x), backward [M/(M+K)] (K + h(x))).
// M must bound h; if K + M > 1 both families are rescaled by 1/(K+M) and the
// factor is recorded in time_scale().
std::pair<RateFamily, RateFamily> make_disordered_pair(
    double K, const std::map<Site, double>& h, double M);

struct ValidationReport {
  bool bounded = true;        // all probed rates in [0, 1]
  bool exclusion_ok = true;   // rate vanishes off particle->hole pairs
  std::vector<std::string> failures;
  std::vector<double> exit_rates;  // total exit rate per probe
  bool ok() const { return bounded && exclusion_ok; }
};

ValidationReport validate(const RateFamily& f,
                          const std::vector<BlockingConfig>& probes);

struct ComparisonWitness {
  Site x, y, xbar, ybar;
  std::string lower_cfg, upper_cfg;  // empty for the exact table check
};

struct ComparisonReport {
  bool satisfied = true;
  std::vector<ComparisonWitness> witnesses;
  std::uint64_t checked_pairs = 0;
};

enum class ComparisonMode { exact_ti, randomized };

// Domination conditions between a family p and a comparison family p_bar:
//   a(x) >= abar(y) for 0 < x <= y <= range, and
//   a(y) <= abar(x) for -range <= y <= x < 0      (exact_ti, tables only);
// or, sampling ordered configuration pairs eta ≺ etabar and all index pairs
// whose positions fall in the sampling window,
//   p(x,y;eta) >= pbar(xbar,ybar;etabar) when xbar <= x < y <= ybar, and
//   p(x,y;eta) <= pbar(xbar,ybar;etabar) when y <= ybar < xbar <= x
// (randomized; a falsifier, not a prover).
ComparisonReport check_comparison(const RateFamily& p,
                                  const RateFamily& p_bar, ComparisonMode mode,
                                  std::uint64_t trials = 0,
                                  std::uint64_t rng_seed = 0);

}  // namespace asep

#endif
