#include "asep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asep {

double marginal(const ProductBlockingSpec& spec, Site x) {
  return 1.0 / (1.0 + std::pow(spec.alpha, static_cast<double>(x - spec.class_index)));
}

BlockingConfig sample_product_blocking(const ProductBlockingSpec& spec,
                                       Site cutoff, RandomStream& rng,
                                       double tol) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  // Probability mass forced wrong by the tail truncation: at distance d the
  // defect probability is min(alpha^d, alpha^-d)/(1+..) <= alpha^d.
  const double bias = 2.0 * std::pow(spec.alpha, static_cast<double>(cutoff + 1)) /
                      (1.0 - spec.alpha);
  if (bias > tol)
    throw std::invalid_argument("cutoff too small for requested tolerance");
  const Site n = spec.class_index;
  std::vector<int> bits;
  bits.reserve(static_cast<std::size_t>(2 * cutoff + 1));
  for (Site x = n - cutoff; x <= n + cutoff; ++x)
    bits.push_back(rng.bernoulli(marginal(spec, x)) ? 1 : 0);
  return BlockingConfig::from_window(n, n - cutoff, bits);
}

double product_weight_ratio(const ProductBlockingSpec& spec,
                            const BlockingConfig& cfg) {
  // Each site where cfg differs from the step profile of class n contributes
  // the odds factor of the marginal there; both factor types are alpha to a
  // nonnegative power, so the product is finite and <= 1.
  const Site n = spec.class_index;
  const Site lo = std::min(cfg.window_lo(), std::min(n, cfg.class_index()) + 1);
  const Site hi = std::max(cfg.window_hi(), std::max(n, cfg.class_index()));
  double w = 1.0;
  for (Site x = lo; x <= hi; ++x) {
    const int step = x >= n + 1 ? 1 : 0;
    const int occ = cfg.occupancy(x);
    if (occ == step) continue;
    w *= occ == 1 ? std::pow(spec.alpha, static_cast<double>(n - x))
                  : std::pow(spec.alpha, static_cast<double>(x - n));
  }
  return w;
}

double detailed_balance_residual(const RateFamily& f,
                                 const ProductBlockingSpec& spec,
                                 const BlockingConfig& cfg, Site x, Site y) {
  if (cfg.occupancy(x) != 1) throw SwapError("no particle at source site", x);
  if (cfg.occupancy(y) != 0) throw SwapError("no hole at target site", y);
  const BlockingConfig swapped = cfg.swapped(x, y);
  const double lhs = f.rate(x, y, cfg) * product_weight_ratio(spec, cfg);
  const double rhs = f.rate(y, x, swapped) * product_weight_ratio(spec, swapped);
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  if (denom == 0.0) return 0.0;
  return std::abs(lhs - rhs) / denom;
}

DensityEstimate empirical_density(const RunSummary& summary) {
  if (!(summary.elapsed > 0.0))
    throw std::invalid_argument("run has no elapsed time");
  DensityEstimate est;
  est.window_lo = summary.window_lo;
  est.total_time = summary.elapsed;
  est.batches = summary.batch_time.size();
  const std::size_t width = summary.occupancy_time.size();
  est.time_average.resize(width);
  est.sigma.assign(width, 0.0);
  for (std::size_t k = 0; k < width; ++k)
    est.time_average[k] = summary.occupancy_time[k] / summary.elapsed;
  // Batch means over batches with positive time.
  std::vector<std::size_t> live;
  for (std::size_t b = 0; b < summary.batch_time.size(); ++b)
    if (summary.batch_time[b] > 0.0) live.push_back(b);
  if (live.size() >= 2) {
    for (std::size_t k = 0; k < width; ++k) {
      double mean = 0.0;
      for (auto b : live)
        mean += summary.batch_occupancy[b][k] / summary.batch_time[b];
      mean /= static_cast<double>(live.size());
      double var = 0.0;
      for (auto b : live) {
        const double m = summary.batch_occupancy[b][k] / summary.batch_time[b];
        var += (m - mean) * (m - mean);
      }
      var /= static_cast<double>(live.size() - 1);
      est.sigma[k] = std::sqrt(var / static_cast<double>(live.size()));
    }
  }
  return est;
}

DeviationReport compare_to_product(const DensityEstimate& est,
                                   const ProductBlockingSpec& spec) {
  DeviationReport report;
  report.window_lo = est.window_lo;
  const std::size_t width = est.time_average.size();
  for (std::size_t k = 0; k < width; ++k) {
    const Site x = est.window_lo + static_cast<Site>(k);
    const double mu = marginal(spec, x);
    report.empirical.push_back(est.time_average[k]);
    report.exact.push_back(mu);
    report.abs_error.push_back(std::abs(est.time_average[k] - mu));
    report.sigma.push_back(est.sigma[k]);
    report.max_abs_error = std::max(report.max_abs_error, report.abs_error.back());
  }
  return report;
}

}  // namespace asep
