#ifndef ASEP_MEASURES_HPP
#define ASEP_MEASURES_HPP

#include <vector>

#include "asep/blocking_config.hpp"
#include "asep/harris.hpp"
#include "asep/rates.hpp"

namespace asep {

// Product measure with marginal 1/(1 + alpha^(x - n)): density rising from 0
// on the far left to 1 on the far right, centered at class n.
struct ProductBlockingSpec {
  double alpha = 0.5;  // in (0, 1)
  Site class_index = 0;
};

double marginal(const ProductBlockingSpec& spec, Site x);

// Independent per-site sample inside [n - cutoff, n + cutoff]; outside the
// window the step-profile tail is forced.  Throws when the forced-tail bias
// bound exceeds tol.  The returned configuration carries its realized class.
BlockingConfig sample_product_blocking(const ProductBlockingSpec& spec,
                                       Site cutoff, RandomStream& rng,
                                       double tol = 1e-9);

// Product weight of cfg relative to the step profile of spec.class_index:
// a finite product over the sites where the two differ.
double product_weight_ratio(const ProductBlockingSpec& spec,
                            const BlockingConfig& cfg);

// Relative detailed-balance defect of the jump x -> y at cfg:
// |p(x,y;cfg) w(cfg) - p(y,x;cfg^{x,y}) w(cfg^{x,y})| / max(terms).
// Zero iff the rate family is in balance with the product measure there.
double detailed_balance_residual(const RateFamily& f,
                                 const ProductBlockingSpec& spec,
                                 const BlockingConfig& cfg, Site x, Site y);

struct DensityEstimate {
  Site window_lo = 0;
  std::vector<double> time_average;  // per site, in [0, 1]
  std::vector<double> sigma;         // batch-means standard error per site
  double total_time = 0.0;
  std::size_t batches = 0;
};

// Time-weighted average occupancy from a run summary.  Throws on a run with
// no elapsed time.
DensityEstimate empirical_density(const RunSummary& summary);

struct DeviationReport {
  Site window_lo = 0;
  std::vector<double> empirical;
  std::vector<double> exact;
  std::vector<double> abs_error;
  std::vector<double> sigma;
  double max_abs_error = 0.0;
};

DeviationReport compare_to_product(const DensityEstimate& est,
                                   const ProductBlockingSpec& spec);

}  // namespace asep

#endif
