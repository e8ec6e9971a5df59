#include "asep/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace asep {

double OneBodyPotential::operator()(Site x) const {
  switch (family) {
    case Family::linear:
      return beta * static_cast<double>(x);
    case Family::cubic:
      return beta * static_cast<double>(x) * static_cast<double>(x) *
             static_cast<double>(x);
    case Family::table: {
      auto it = table.find(x);
      if (it == table.end())
        throw std::out_of_range("one-body table does not cover site " +
                                std::to_string(x));
      return it->second;
    }
  }
  return 0.0;
}

OneBodyPotential OneBodyPotential::linear(double beta) {
  OneBodyPotential p;
  p.family = Family::linear;
  p.beta = beta;
  return p;
}

OneBodyPotential OneBodyPotential::cubic(double beta) {
  OneBodyPotential p;
  p.family = Family::cubic;
  p.beta = beta;
  return p;
}

OneBodyPotential OneBodyPotential::from_table(std::map<Site, double> t,
                                              double tail_c, double tail_r) {
  OneBodyPotential p;
  p.family = Family::table;
  p.table = std::move(t);
  p.tail_c = tail_c;
  p.tail_r = tail_r;
  return p;
}

void PotentialSpec::add_coupling(std::vector<Site> base, double strength) {
  if (base.size() < 2)
    throw std::invalid_argument("multi-body coupling needs >= 2 sites");
  std::sort(base.begin(), base.end());
  if (std::adjacent_find(base.begin(), base.end()) != base.end())
    throw std::invalid_argument("duplicate sites in coupling base");
  // Normalize translates so the base starts at 0.
  const Site shift = base.front();
  for (auto& s : base) s -= shift;
  multi_body.push_back({std::move(base), strength});
}

double PotentialSpec::coupling_bound() const {
  double K = 0.0;
  for (const auto& c : multi_body)
    K += static_cast<double>(c.base.size()) * std::abs(c.strength);
  return K;
}

Site PotentialSpec::max_diameter() const {
  Site d = 0;
  for (const auto& c : multi_body) d = std::max(d, c.base.back());
  return d;
}

int chi(const std::vector<Site>& R, const BlockingConfig& cfg) {
  if (R.empty()) throw std::invalid_argument("chi of empty set");
  int prod = 1;
  for (Site x : R) prod *= 2 * cfg.occupancy(x) - 1;
  return prod;
}

BlockingConfig star_extension(const std::vector<int>& bits, int N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (bits.size() != static_cast<std::size_t>(2 * N))
    throw std::invalid_argument("pattern length must be 2N");
  return BlockingConfig::from_window(0, -N + 1, bits);
}

namespace {

// Spin of the star extension without building a BlockingConfig.
inline int star_spin(const std::vector<int>& bits, int N, Site x) {
  if (x >= -N + 1 && x <= N)
    return 2 * bits[static_cast<std::size_t>(x + N - 1)] - 1;
  return x >= 1 ? 1 : -1;
}

}  // namespace

double energy(const PotentialSpec& pot, int N, const std::vector<int>& bits) {
  if (bits.size() != static_cast<std::size_t>(2 * N))
    throw std::invalid_argument("pattern length must be 2N");
  double H = 0.0;
  for (Site x = -N + 1; x <= N; ++x)
    H += pot.one_body(x) * star_spin(bits, N, x);
  for (const auto& c : pot.multi_body) {
    const Site diam = c.base.back();
    // Translates whose support meets T_N.
    for (Site k = -N + 1 - diam; k <= N; ++k) {
      int prod = 1;
      for (Site o : c.base) prod *= star_spin(bits, N, k + o);
      H += c.strength * prod;
    }
  }
  return H;
}

GibbsTable gibbs_table(const PotentialSpec& pot, int N) {
  if (2 * N > kEnumerationBitCap)
    throw EnumerationCapError("volume exceeds enumeration cap");
  const std::size_t count = std::size_t{1} << (2 * N);
  GibbsTable t;
  t.N = N;
  t.energies.resize(count);
  std::vector<int> bits(static_cast<std::size_t>(2 * N));
  double emin = std::numeric_limits<double>::infinity();
  for (std::size_t pattern = 0; pattern < count; ++pattern) {
    for (std::size_t b = 0; b < bits.size(); ++b)
      bits[b] = static_cast<int>((pattern >> b) & 1u);
    t.energies[pattern] = energy(pot, N, bits);
    emin = std::min(emin, t.energies[pattern]);
  }
  double z = 0.0;
  t.probabilities.resize(count);
  for (std::size_t pattern = 0; pattern < count; ++pattern) {
    t.probabilities[pattern] = std::exp(-(t.energies[pattern] - emin));
    z += t.probabilities[pattern];
  }
  for (auto& p : t.probabilities) p /= z;
  t.log_Z = std::log(z) - emin;
  return t;
}

std::vector<double> GibbsTable::cylinder_marginal(int L) const {
  if (L < 1 || L > N) throw std::invalid_argument("bad cylinder size");
  std::vector<double> m(std::size_t{1} << (2 * L), 0.0);
  const int offset = N - L;  // bit index of site -L+1 inside the T_N pattern
  const std::size_t mask = (std::size_t{1} << (2 * L)) - 1;
  for (std::size_t pattern = 0; pattern < probabilities.size(); ++pattern)
    m[(pattern >> offset) & mask] += probabilities[pattern];
  return m;
}

double tv_cylinder(const GibbsTable& t1, const GibbsTable& t2, int L) {
  if (L > std::min(t1.N, t2.N))
    throw std::invalid_argument("cylinder larger than a table volume");
  const auto m1 = t1.cylinder_marginal(L);
  const auto m2 = t2.cylinder_marginal(L);
  double tv = 0.0;
  for (std::size_t k = 0; k < m1.size(); ++k) tv += std::abs(m1[k] - m2[k]);
  return 0.5 * tv;
}

ConvReport conv_check(const PotentialSpec& pot, double tol) {
  ConvReport report;
  const auto& J = pot.one_body;
  auto fail = [&](const std::string& why) {
    report.pass = false;
    report.reason = why;
    return report;
  };
  switch (J.family) {
    case OneBodyPotential::Family::linear: {
      if (!(J.beta < 0.0)) return fail("linear one-body needs beta < 0");
      const double r = std::exp(2.0 * J.beta);
      report.right_sum = r / (1.0 - r);
      report.left_sum = 1.0 / (1.0 - r);
      report.remainder = 0.0;  // closed form
      report.pass = true;
      return report;
    }
    case OneBodyPotential::Family::cubic: {
      if (!(J.beta < 0.0)) return fail("cubic one-body needs beta < 0");
      // Terms e^{2 beta x^3} (right) and e^{-2 beta (-x)^3} = e^{2 beta |x|^3}
      // (left) are equal by symmetry; consecutive ratios decrease, so a
      // geometric tail bound applies from any index.
      double sum = 0.0, rem = 0.0;
      for (Site x = 1;; ++x) {
        const double xd = static_cast<double>(x);
        const double term = std::exp(2.0 * J.beta * xd * xd * xd);
        sum += term;
        const double ratio =
            std::exp(2.0 * J.beta * (3 * xd * xd + 3 * xd + 1));
        rem = term * ratio / (1.0 - ratio);
        if (rem < tol || term == 0.0) break;
      }
      report.right_sum = sum + rem;
      report.left_sum = 1.0 + sum + rem;  // x = 0 contributes e^0
      report.remainder = rem;
      report.pass = true;
      return report;
    }
    case OneBodyPotential::Family::table: {
      if (!(J.tail_r > 0.0 && J.tail_r < 1.0) || !(J.tail_c > 0.0))
        return fail("table one-body has no usable tail bound");
      Site xmax = 0, xmin = 0;
      for (const auto& [x, v] : J.table) {
        xmax = std::max(xmax, x);
        xmin = std::min(xmin, x);
      }
      double right = 0.0, left = 0.0;
      for (Site x = 1; x <= xmax; ++x) right += std::exp(2.0 * J(x));
      for (Site x = xmin; x <= 0; ++x) left += std::exp(-2.0 * J(x));
      const double rem_right = J.tail_c *
                               std::pow(J.tail_r, static_cast<double>(xmax + 1)) /
                               (1.0 - J.tail_r);
      const double rem_left = J.tail_c *
                              std::pow(J.tail_r, static_cast<double>(1 - xmin)) /
                              (1.0 - J.tail_r);
      report.right_sum = right + rem_right;
      report.left_sum = left + rem_left;
      report.remainder = rem_right + rem_left;
      report.pass = report.remainder < tol;
      if (!report.pass) report.reason = "declared tail bound exceeds tolerance";
      return report;
    }
  }
  return fail("unknown one-body family");
}

double local_energy_difference(const PotentialSpec& pot,
                               const BlockingConfig& cfg, Site x, Site y) {
  const BlockingConfig after = cfg.swapped(x, y);
  const int sx = 2 * cfg.occupancy(x) - 1;
  const int sy = 2 * cfg.occupancy(y) - 1;
  // One-body part telescopes to the two touched sites.
  double delta = pot.one_body(x) * (sy - sx) + pot.one_body(y) * (sx - sy);
  for (const auto& c : pot.multi_body) {
    std::set<Site> shifts;
    for (Site o : c.base) {
      shifts.insert(x - o);
      shifts.insert(y - o);
    }
    for (Site k : shifts) {
      int before = 1, now = 1;
      for (Site o : c.base) {
        before *= 2 * cfg.occupancy(k + o) - 1;
        now *= 2 * after.occupancy(k + o) - 1;
      }
      delta += c.strength * (now - before);
    }
  }
  return delta;
}

RateFamily heat_bath_rates(const PotentialSpec& pot, Site range) {
  return RateFamily::custom(
      range, [pot](Site x, Site y, const BlockingConfig& cfg) {
        const double delta = local_energy_difference(pot, cfg, x, y);
        return 1.0 / (1.0 + std::exp(delta));
      });
}

double reversibility_residual(const RateFamily& f, const PotentialSpec& pot,
                              int N) {
  const GibbsTable table = gibbs_table(pot, N);
  const Site D = pot.max_diameter();
  const Site lo = -N + 1, hi = N;
  double worst = 0.0;
  std::vector<int> bits(static_cast<std::size_t>(2 * N));
  for (std::size_t pattern = 0; pattern < table.probabilities.size();
       ++pattern) {
    for (std::size_t b = 0; b < bits.size(); ++b)
      bits[b] = static_cast<int>((pattern >> b) & 1u);
    const BlockingConfig star = star_extension(bits, N);
    for (Site x = lo; x <= hi; ++x) {
      if (star.occupancy(x) != 1) continue;
      for (Site y = std::max(lo, x - f.jump_range());
           y <= std::min(hi, x + f.jump_range()); ++y) {
        if (y == x || star.occupancy(y) != 0) continue;
        // Keep every touched coupling support inside T_N so the fixed star
        // tail plays no role in the balance being tested.
        if (std::min(x, y) - D < lo || std::max(x, y) + D > hi) continue;
        const std::size_t bx = static_cast<std::size_t>(x + N - 1);
        const std::size_t by = static_cast<std::size_t>(y + N - 1);
        const std::size_t swapped_pattern =
            pattern ^ (std::size_t{1} << bx) ^ (std::size_t{1} << by);
        const BlockingConfig star_after = star.swapped(x, y);
        const double lhs =
            table.probabilities[pattern] * f.rate(x, y, star);
        const double rhs = table.probabilities[swapped_pattern] *
                           f.rate(y, x, star_after);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

}  // namespace asep
