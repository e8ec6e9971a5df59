#include "asep/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace asep {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " outside [0, 1]");
}

double table_lookup(const std::map<Site, double>& t, Site z) {
  auto it = t.find(z);
  return it == t.end() ? 0.0 : it->second;
}

}  // namespace

RateFamily RateFamily::simple_ti(const std::map<Site, double>& a) {
  RateFamily f;
  f.kind_ = RateKind::simple_ti;
  for (const auto& [z, v] : a) {
    if (z == 0) throw std::invalid_argument("jump length 0 not allowed");
    check_unit_interval(v, "rate table entry");
    if (v > 0.0) {
      f.a_[z] = v;
      f.range_ = std::max(f.range_, std::abs(z));
    }
  }
  return f;
}

RateFamily RateFamily::reversible(const std::map<Site, double>& c_forward,
                                  double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1)");
  RateFamily f;
  f.kind_ = RateKind::reversible;
  f.alpha_ = alpha;
  for (const auto& [d, v] : c_forward) {
    if (d < 1) throw std::invalid_argument("forward distances must be >= 1");
    check_unit_interval(v, "forward rate");
    if (v > 0.0) {
      f.a_[d] = v;
      f.a_[-d] = std::pow(alpha, static_cast<double>(d)) * v;
      f.range_ = std::max(f.range_, d);
    }
  }
  return f;
}

RateFamily RateFamily::custom(
    Site range, std::function<double(Site, Site, const BlockingConfig&)> rule) {
  if (range < 1) throw std::invalid_argument("range must be >= 1");
  RateFamily f;
  f.kind_ = RateKind::custom;
  f.range_ = range;
  f.rule_ = std::move(rule);
  return f;
}

double RateFamily::rate(Site x, Site y, const BlockingConfig& cfg) const {
  if (x == y || std::abs(x - y) > range_) return 0.0;
  if (cfg.occupancy(x) != 1 || cfg.occupancy(y) != 0) return 0.0;
  switch (kind_) {
    case RateKind::simple_ti:
    case RateKind::reversible:
      return table_lookup(a_, y - x);
    case RateKind::disordered_nn: {
      const double s = time_scale_;
      if (y == x + 1) return s * (K_ + table_lookup(h_, x));
      if (y == x - 1) {
        if (comparison_) return s * alpha_ * (K_ + table_lookup(h_, y));
        return s * table_lookup(h_, y);
      }
      return 0.0;
    }
    case RateKind::custom:
      return rule_(x, y, cfg);
  }
  return 0.0;
}

double RateFamily::table(Site z) const {
  if (!has_table()) throw std::logic_error("family has no rate table");
  return table_lookup(a_, z);
}

std::pair<RateFamily, bool> build_infimum_bar(const std::map<Site, double>& a,
                                           double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1)");
  RateFamily base = RateFamily::simple_ti(a);  // validates entries
  const Site range = base.jump_range();
  std::map<Site, double> abar;
  bool hypothesis_ok = true;
  double running_min = 1.0;
  double alpha_pow = 1.0;
  for (Site x = 1; x <= range; ++x) {
    running_min = std::min(running_min, table_lookup(a, x));
    alpha_pow *= alpha;
    abar[x] = running_min;
    abar[-x] = alpha_pow * running_min;
    if (table_lookup(a, -x) > alpha_pow * running_min) hypothesis_ok = false;
  }
  return {RateFamily::simple_ti(abar), hypothesis_ok};
}

std::pair<RateFamily, RateFamily> make_disordered_pair(
    double K, const std::map<Site, double>& h, double M) {
  if (!(K > 0.0)) throw std::invalid_argument("K must be positive");
  double sup_h = 0.0;
  for (const auto& [x, v] : h) {
    if (v < 0.0) throw std::invalid_argument("disorder values must be >= 0");
    sup_h = std::max(sup_h, v);
  }
  if (M < sup_h)
    throw std::invalid_argument("M must bound the disorder function");
  // Rescale time so the largest rate K + M stays within the unit bound.
  const double scale = (K + M > 1.0) ? 1.0 / (K + M) : 1.0;
  RateFamily process;
  process.kind_ = RateKind::disordered_nn;
  process.range_ = 1;
  process.K_ = K;
  process.M_ = M;
  process.h_ = h;
  process.time_scale_ = scale;
  RateFamily comparison = process;
  comparison.comparison_ = true;
  comparison.alpha_ = M / (M + K);
  return {process, comparison};
}

ValidationReport validate(const RateFamily& f,
                          const std::vector<BlockingConfig>& probes) {
  ValidationReport report;
  const Site R = std::max<Site>(f.jump_range(), 1);
  for (const auto& cfg : probes) {
    const Site n = cfg.class_index();
    const Site particle_min = std::min(cfg.window_lo(), n + 1);
    const Site hole_max = std::max(cfg.window_hi(), n);
    double exit_rate = 0.0;
    for (Site x = particle_min; x <= hole_max + R; ++x) {
      for (Site y = x - R; y <= x + R; ++y) {
        if (y == x) continue;
        const double r = f.rate(x, y, cfg);
        const bool legal = cfg.occupancy(x) == 1 && cfg.occupancy(y) == 0;
        if (!legal && r != 0.0) {
          report.exclusion_ok = false;
          std::ostringstream os;
          os << "nonzero rate on illegal pair (" << x << "," << y << ")";
          report.failures.push_back(os.str());
        }
        if (r < 0.0 || r > 1.0) {
          report.bounded = false;
          std::ostringstream os;
          os << "rate " << r << " at (" << x << "," << y << ") outside [0,1]";
          report.failures.push_back(os.str());
        }
        if (legal) exit_rate += r;
      }
    }
    report.exit_rates.push_back(exit_rate);
  }
  return report;
}

namespace {

ComparisonReport check_comparison_exact_ti(const RateFamily& p,
                                           const RateFamily& p_bar) {
  if (!p.has_table() || !p_bar.has_table())
    throw std::invalid_argument("exact_ti needs table-backed families");
  ComparisonReport report;
  const Site range = std::max(p.jump_range(), p_bar.jump_range());
  for (Site x = 1; x <= range; ++x) {
    for (Site y = x; y <= range; ++y) {
      ++report.checked_pairs;
      if (p.table(x) < p_bar.table(y)) {
        report.satisfied = false;
        report.witnesses.push_back({x, y, 0, 0, "", ""});
      }
    }
  }
  for (Site y = -range; y <= -1; ++y) {
    for (Site x = y; x <= -1; ++x) {
      ++report.checked_pairs;
      if (p.table(y) > p_bar.table(x)) {
        report.satisfied = false;
        report.witnesses.push_back({x, y, 0, 0, "", ""});
      }
    }
  }
  return report;
}

ComparisonReport check_comparison_randomized(const RateFamily& p,
                                             const RateFamily& p_bar,
                                             std::uint64_t trials,
                                             std::uint64_t seed) {
  constexpr Site kWlo = -8, kWhi = 8;
  constexpr double kMeanSwaps = 3.0;
  constexpr double kEps = 1e-12;
  ComparisonReport report;
  RandomStream rng(seed);
  const Site R = std::max(p.jump_range(), p_bar.jump_range());
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto [lower, upper] = random_ordered_pair(0, kWlo, kWhi, kMeanSwaps, rng);
    // Index ranges whose positions can matter: x_i(upper) <= x_i(lower) and
    // jumps reach at most R beyond the holes.
    const Site hole_max = std::max(lower.window_hi(), upper.window_hi());
    const Site particle_min = std::min(lower.window_lo(), upper.window_lo());
    std::size_t i = 0;
    while (upper.particle_position(i) <= hole_max + R) {
      std::size_t j = 0;
      while (upper.hole_position(j) >= particle_min - R) {
        const Site x = lower.particle_position(i);
        const Site y = lower.hole_position(j);
        const Site xb = upper.particle_position(i);
        const Site yb = upper.hole_position(j);
        ++report.checked_pairs;
        bool bad = false;
        if (xb <= x && x < y && y <= yb) {
          bad = p.rate(x, y, lower) < p_bar.rate(xb, yb, upper) - kEps;
        } else if (y <= yb && yb < xb && xb <= x) {
          bad = p.rate(x, y, lower) > p_bar.rate(xb, yb, upper) + kEps;
        }
        if (bad) {
          report.satisfied = false;
          report.witnesses.push_back(
              {x, y, xb, yb, lower.to_string(), upper.to_string()});
        }
        ++j;
      }
      ++i;
    }
  }
  return report;
}

}  // namespace

ComparisonReport check_comparison(const RateFamily& p, const RateFamily& p_bar,
                                  ComparisonMode mode, std::uint64_t trials,
                                  std::uint64_t rng_seed) {
  if (mode == ComparisonMode::exact_ti) return check_comparison_exact_ti(p, p_bar);
  return check_comparison_randomized(p, p_bar, trials, rng_seed);
}

}  // namespace asep
