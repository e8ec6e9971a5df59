#ifndef TESTS_STATS_HPP
#define TESTS_STATS_HPP

#include <cmath>
#include <vector>

// Two-sample chi-square over matched count vectors; survival probability for
// k cells uses k-1 degrees of freedom (closed form for even dof).
inline double two_sample_chi2(const std::vector<long>& n1,
                              const std::vector<long>& n2) {
  double stat = 0.0;
  for (std::size_t k = 0; k < n1.size(); ++k) {
    const double a = static_cast<double>(n1[k]);
    const double b = static_cast<double>(n2[k]);
    if (a + b > 0.0) stat += (a - b) * (a - b) / (a + b);
  }
  return stat;
}

// Survival function of the chi-square distribution with 2 degrees of freedom.
inline double chi2_survival_dof2(double x) { return std::exp(-x / 2.0); }

#endif
