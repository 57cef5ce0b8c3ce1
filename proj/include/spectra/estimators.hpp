#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/group.hpp"
#include "spectra/radial.hpp"
#include "spectra/rational.hpp"
#include "spectra/ring.hpp"

namespace spectra {

// tau(a^{2n}) for n = 1..n_max, exact.
struct MomentSequence {
  std::string element;
  int n_max = 0;
  std::vector<Rat> tau;  // tau[i] = tau(a^{2(i+1)})
  bool exact = true;
};

enum class Direction { Lower, Upper, Exact };

std::string direction_string(Direction d);

// A spectral-radius estimate that always knows which side of the truth it
// sits on.  Closed-form values additionally carry rho^2 as an exact rational
// so downstream interval arithmetic can re-derive them at any precision.
struct EstimateReport {
  double value = 0.0;
  Direction direction = Direction::Lower;
  std::string method;

  int n = 0;
  int radius = 0;
  long iterations = 0;
  int precision_bits = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  std::optional<Rat> value_sq_exact;
};

MomentSequence trace_moments(const RingElement& a, int n_max,
                             std::size_t guard = kDefaultSupportGuard);
MomentSequence trace_moments(const RadialElement& a, int n_max);
// tau(m(Sigma)^{2n}) for the standard set of F_r, straight from the tree walk
// DP (no convolutions).
MomentSequence free_markov_moments(unsigned r, int n_max);

// Two lower-bound families from Eq-style moment asymptotics: root estimates
// tau^{1/2n} and ratio estimates (tau_{2n+2}/tau_{2n})^{1/2}.  All values are
// rounded down, so each report is a certified lower bound.
std::vector<EstimateReport> radius_lower_bounds(const MomentSequence& m,
                                                int precision_bits = 128);
EstimateReport best_lower_bound(const MomentSequence& m, int precision_bits = 128);

// Rayleigh-quotient lower bound on the ball of radius R.  Uses a per-sphere
// vector when the presentation is free and S is the standard set; otherwise
// enumerates the ball (guarded).
EstimateReport ball_power_iteration(const GroupPresentation& p, const GenSet& s,
                                    unsigned radius, long iters, double tol,
                                    std::size_t guard = kDefaultSupportGuard);

// Exact rho for the standard symmetric set of F_n: sqrt(2n-1)/n.
EstimateReport kesten_exact_free(unsigned n_pairs);

struct TreeBound {
  double paper_bound;    // |S|^{-1/2}
  double refined_bound;  // 2 sqrt(|S|-1)/|S|, the |S|-regular tree value
};
TreeBound tree_comparison_bound(const Int& set_size);

struct WalkResult {
  double frequency = 0.0;
  double stderr_est = 0.0;
  long returns = 0;
  long trials = 0;
  int steps = 0;
  std::uint64_t seed = 0;
};

// Fraction of `trials` uniform S-words of length `steps` reducing to e.
// Trial t draws from a splitmix64 stream derived from (seed, t), so the
// result is independent of evaluation order and bit-reproducible.
WalkResult monte_carlo_return(const GroupPresentation& p, const GenSet& s,
                              int steps, long trials, std::uint64_t seed);

// Deterministic 64-bit generator used everywhere randomness is needed.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n) via 128-bit multiply; no rejection, deterministic.
  std::uint64_t bounded(std::uint64_t n) {
    return std::uint64_t((unsigned __int128)(next()) * n >> 64);
  }
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace spectra
