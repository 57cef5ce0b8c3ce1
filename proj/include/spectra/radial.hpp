#pragma once

#include <vector>

#include "spectra/rational.hpp"
#include "spectra/ring.hpp"

namespace spectra {

// Element of R[F_r] constant on spheres of the word metric, stored as one
// exact rational per distance.  coef[l] is the per-element coefficient on
// sphere l; trailing zeros are trimmed.
struct RadialElement {
  unsigned rank = 2;
  std::vector<Rat> coef;

  int max_distance() const { return int(coef.size()) - 1; }
  bool is_zero() const { return coef.empty(); }
  Rat at(unsigned l) const { return l < coef.size() ? coef[l] : Rat(0); }
  void trim();

  friend bool operator==(const RadialElement&, const RadialElement&) = default;
};

// |{reduced words of length l}| in F_r: 1, 2r, 2r(2r-1)^{l-1}, ...
Int sphere_size(unsigned r, unsigned l);
Int ball_size(unsigned r, unsigned l);

// Distance distribution after k steps of the nearest-neighbor walk on the
// (2r)-regular tree: from 0 step out with probability 1, from j >= 1 out with
// (2r-1)/2r and in with 1/2r.  Exact, O(k^2).
std::vector<Rat> tree_walk_distribution(unsigned r, unsigned k);

// m(Sigma)^k for the standard symmetric set of F_r, as a radial element:
// coefficient P_k(l)/N(l) on sphere l.
RadialElement radial_markov_power(unsigned r, unsigned k);

// Structure constants of the radial subalgebra: 1_{S(i)} * 1_{S(j)} =
// sum_l K[l] 1_{S(l)}, returned as a vector indexed by l (length i+j+1).
// Computed by the sphere-product DP and memoized per (r, i, j).
std::vector<Int> sphere_product(unsigned r, unsigned i, unsigned j);

RadialElement radial_convolve(const RadialElement& u, const RadialElement& v);
RadialElement radial_add(const RadialElement& u, const RadialElement& v);
RadialElement radial_scale(const RadialElement& u, const Rat& c);

Rat radial_trace(const RadialElement& u);                 // coefficient at e
Rat radial_l1(const RadialElement& u);                    // sum N(l)|c[l]|
Int radial_support_size(const RadialElement& u);          // sum N(l) over c[l] != 0
std::vector<unsigned> radial_support_distances(const RadialElement& u);

RadialElement indicator_radial(unsigned r, const std::vector<unsigned>& distances);

// Bridge to the dense engine.  to_radial throws NonRadialError with a witness
// pair when two same-length words carry different coefficients.
RadialElement to_radial(const RingElement& a);
RingElement to_dense(const RadialElement& u);  // enumerates spheres; small L only

// All reduced words of length l in F_r, sorted shortlex.
std::vector<Word> sphere_words(unsigned r, unsigned l);

}  // namespace spectra
