#ifndef ASEP_GIBBS_HPP
#define ASEP_GIBBS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "asep/blocking_config.hpp"
#include "asep/rates.hpp"

namespace asep {

// One-body coupling J_{x}.  Closed-form families admit the analytic tail
// bounds needed by the convergence check; a plain table needs declared
// geometric tail constants (e^{±2 J_x} <= tail_c * tail_r^|x| beyond the
// table) to be checkable.
struct OneBodyPotential {
  enum class Family { linear, cubic, table };
  Family family = Family::linear;
  double beta = 0.0;  // linear: J_x = beta x; cubic: J_x = beta x^3
  std::map<Site, double> table;
  double tail_c = 0.0;
  double tail_r = 0.0;

  double operator()(Site x) const;

  static OneBodyPotential linear(double beta);
  static OneBodyPotential cubic(double beta);
  static OneBodyPotential from_table(std::map<Site, double> t,
                                     double tail_c = 0.0, double tail_r = 0.0);
};

// Translation-invariant multi-site coupling: strength attached to every
// translate of `base`.  base is sorted, starts at 0, |base| >= 2.
struct MultiBodyCoupling {
  std::vector<Site> base;
  double strength = 0.0;
};

struct PotentialSpec {
  OneBodyPotential one_body;
  std::vector<MultiBodyCoupling> multi_body;

  // Sum over couplings containing a fixed site of |strength|; the constant
  // bounding how much the multi-body part can shift any single spin flip.
  double coupling_bound() const;
  Site max_diameter() const;
  void add_coupling(std::vector<Site> base, double strength);
};

// Spin product over the finite site set R: prod over x in R of (2 eta(x)-1).
int chi(const std::vector<Site>& R, const BlockingConfig& cfg);

// Pattern on T_N = [-N+1, N] (bits little-endian, bits[k] is site -N+1+k)
// extended by the class-0 step profile outside.  Throws on length mismatch.
BlockingConfig star_extension(const std::vector<int>& bits, int N);

// Energy of the extended configuration: all couplings whose support meets
// T_N, evaluated on the star extension (one-body terms restricted to T_N).
double energy(const PotentialSpec& pot, int N, const std::vector<int>& bits);

class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration cap: at most 2^22 configurations (2N <= 22 sites).
inline constexpr int kEnumerationBitCap = 22;

struct GibbsTable {
  int N = 0;
  std::vector<double> energies;       // indexed by pattern bits
  std::vector<double> probabilities;  // normalized, sum to 1
  double log_Z = 0.0;

  // Marginal distribution over the inner window T_L.
  std::vector<double> cylinder_marginal(int L) const;
};

GibbsTable gibbs_table(const PotentialSpec& pot, int N);

struct ConvReport {
  bool pass = false;
  double right_sum = 0.0;  // sum over x >= 1 of e^{2 J_x}, with tail bound
  double left_sum = 0.0;   // sum over x <= 0 of e^{-2 J_x}
  double remainder = 0.0;
  std::string reason;
};

// Checks the two series that control the step-profile tails of the
// finite-volume measures; passing means the cylinder limits exist.
ConvReport conv_check(const PotentialSpec& pot, double tol);

// Total variation distance between the T_L marginals of two tables.
double tv_cylinder(const GibbsTable& t1, const GibbsTable& t2, int L);

// Local energy change of the exchange x <-> y: finite sum over all couplings
// whose support meets {x, y}.
double local_energy_difference(const PotentialSpec& pot,
                               const BlockingConfig& cfg, Site x, Site y);

// Heat-bath rates p(x,y;eta) = logistic(-local energy difference).  In (0,1)
// by construction and in detailed balance with the Gibbs weights.
RateFamily heat_bath_rates(const PotentialSpec& pot, Site range);

// Max over patterns and strictly interior legal jumps of
// |nu_N(eta) p(x,y;eta*) - nu_N(eta^{x,y}) p(y,x;(eta^{x,y})*)|.
double reversibility_residual(const RateFamily& f, const PotentialSpec& pot,
                              int N);

}  // namespace asep

#endif
