#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectra/estimators.hpp"
#include "spectra/group.hpp"
#include "spectra/radial.hpp"
#include "spectra/rational.hpp"
#include "spectra/ring.hpp"

namespace spectra {

// Decreasing rearrangement of a normalized coefficient multiset: strictly
// decreasing values with (possibly huge) multiplicities.  Values live in
// (0, 1] and total_mass() <= 1 once normalized by the l1 norm.
struct LevelProfile {
  std::vector<std::pair<Rat, Int>> levels;  // (value, multiplicity)

  Rat total_mass() const;
  Int total_count() const;

  // Sorts descending and merges equal values; rejects nonpositive entries.
  static LevelProfile from_values(std::vector<std::pair<Rat, Int>> raw);
};

enum class GuaranteeStatus { Met, Violated, NotApplicable };

std::string guarantee_string(GuaranteeStatus s);

struct ThresholdReport {
  std::size_t chosen_level_index = 0;
  Rat lambda;      // selected normalized value f(x0)
  Rat x0;          // cumulative count fraction at the chosen block
  Rat objective;   // x0 * f(x0), exact
  Rat I;           // integral of the step function = total_mass / total_count
  double alpha = 0.0;      // 1/(-4 ln I), when I <= 1/3
  double guarantee = 0.0;  // I / (-4 ln I), upper endpoint
  GuaranteeStatus guarantee_met = GuaranteeStatus::NotApplicable;
  int precision_bits = 0;
};

// Maximizes x f(x) over block right-endpoints (f is constant on blocks, so
// this is exact).  Ties break toward the later block = larger support.  The
// guarantee comparison runs in outward-rounded interval arithmetic with
// escalating precision.
ThresholdReport threshold_select(const LevelProfile& profile, int precision_bits = 128);

// Corollary-style one-step minorant: b = lambda ||a||_1 on {g : a_g >= lambda ||a||_1}.
std::pair<RingElement, ThresholdReport> one_step_minorant(const RingElement& a);
std::pair<RadialElement, ThresholdReport> one_step_minorant(const RadialElement& a);

struct EstimatorParams {
  std::string engine = "auto";  // auto | dense | radial
  int moment_n_max = 3;
  int precision_bits = 128;
  std::size_t guard = kDefaultSupportGuard;
};

struct SkCertificate {
  int k = 0;
  std::string group;
  std::string sigma;
  unsigned sigma_size = 0;
  bool radial_mode = false;

  std::vector<unsigned> sk_spheres;  // radial mode
  std::vector<Word> sk_words;        // dense mode
  Int sk_size;

  Rat b_level;   // coefficient value of the minorant b
  Rat b_l1;      // ||b_k||_1, exact
  Int size_mk;   // size(m(Sigma)^k), exact
  bool corollary3_ok = false;  // b_l1 >= 1/(4 ln size_mk)

  EstimateReport rho_sigma;
  double theorem1_rhs = 0.0;     // upper endpoint of 4k ln|Sigma| rho(Sigma)^k
  double theorem1_rhs_lo = 0.0;  // lower endpoint
  bool rhs_is_upper_bound = false;  // false when rho_sigma was only a lower bound
  EstimateReport rho_sk_lower;
  EstimateReport rho_sk_upper;   // method "theorem1-bound"
  bool consistency_ok = false;   // rho_sk_lower <= theorem1_rhs

  ThresholdReport threshold;
};

SkCertificate generate_sk(const GroupPresentation& p, const GenSet& sigma, int k,
                          const EstimatorParams& params = {});

struct AugmentReport {
  std::string s_prime;
  Int s_prime_size;
  bool sigma_subset = false;   // Sigma already inside S_k
  double bound = 0.0;          // convexity bound with certified upper inputs
  double simplified_bound = 0.0;  // rho(S_k) + |Sigma| rho(Sigma) rho(S_k)^2
};

AugmentReport augment_with_sigma(const SkCertificate& cert);

struct EpsilonRow {
  int k = 0;
  double lhs_hi = 0.0;  // 4k ln|Sigma| rho^k, rounded up
  double rhs_lo = 0.0;  // (|Sigma|^k)^{-eps}, rounded down
  bool chain_ok = false;
};

struct EpsilonReport {
  double epsilon = 0.0;
  double epsilon_lo = 0.0, epsilon_hi = 0.0;
  std::vector<EpsilonRow> rows;
  std::optional<int> smallest_k;
};

// eps := -ln rho(Sigma) / (2 ln |Sigma|).  Refuses lower-bound-only rho.
EpsilonReport epsilon_certificate(const GenSet& sigma, const EstimateReport& rho_sigma,
                                  const std::vector<SkCertificate>& certs,
                                  int precision_bits = 192);
// Same chain arithmetic on bare k values (no certificates needed).
EpsilonReport epsilon_chain(unsigned sigma_size, const EstimateReport& rho_sigma,
                            const std::vector<int>& ks, int precision_bits = 192);

struct SharpnessRow {
  long n = 0;
  double I = 0.0;          // (1 + ln n)/n
  Rat objective;           // max_x x f_n(x) = 1/n, exact
  double guarantee = 0.0;  // I/(-4 ln I) when applicable
  bool guarantee_applicable = false;
  bool guarantee_met = false;
  double ratio = 0.0;      // objective / I = 1/(1 + ln n)
};

SharpnessRow sharpness_scan(long n, int precision_bits = 128);

// 2 (|S| rho)^{1/2}; refuses lower-bound-only rho.
double gamma_upper_bound(const Int& set_size, const EstimateReport& rho_upper);

struct GammaTrendRow {
  unsigned n_pairs = 0;
  Int set_size;
  double rho = 0.0;
  double gamma = 0.0;
  double ratio_to_sqrt_size = 0.0;
};

// Standard free sets of rank n for n in [n_min, n_max]; exact rho values.
std::vector<GammaTrendRow> gamma_trend(unsigned n_min, unsigned n_max);

}  // namespace spectra
