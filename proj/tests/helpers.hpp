#pragma once

#include "spectra/estimators.hpp"
#include "spectra/group.hpp"
#include "spectra/ring.hpp"

namespace spectra::testing {

// mpq_class(n, d) does not reduce; exact == needs canonical values.
inline Rat rat(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

inline Word random_raw_word(SplitMix64& rng, unsigned rank, std::size_t max_len) {
  Word w;
  std::size_t len = std::size_t(rng.bounded(max_len + 1));
  for (std::size_t i = 0; i < len; ++i)
    w.letters.push_back(
        Letter{std::uint16_t(1 + rng.bounded(rank)), rng.bounded(2) == 1});
  return w;
}

inline Word random_word(SplitMix64& rng, const GroupPresentation& p,
                        std::size_t max_len) {
  return p.normal_form(random_raw_word(rng, p.rank(), max_len));
}

// Random nonnegative hermitean element: sum of c (delta_w + delta_{w^-1}).
inline RingElement random_nonneg_hermitean(SplitMix64& rng, const GroupPresentation& p,
                                           std::size_t terms, std::size_t max_len) {
  RingElement a(p);
  for (std::size_t i = 0; i < terms; ++i) {
    Word w = random_word(rng, p, max_len);
    Rat c = rat(long(1 + rng.bounded(8)), long(1 + rng.bounded(8)));
    a.add(w, c);
    a.add(p.invert(w), c);
  }
  return a;
}

}  // namespace spectra::testing
