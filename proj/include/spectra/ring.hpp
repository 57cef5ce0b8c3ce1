#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "spectra/group.hpp"
#include "spectra/rational.hpp"

namespace spectra {

inline constexpr std::size_t kDefaultSupportGuard = 5'000'000;

// Sparse group-ring element over exact rationals.  Keys are normal-form
// words; zero coefficients are never stored.
class RingElement {
 public:
  using CoeffMap = std::unordered_map<Word, Rat, WordHash>;

  explicit RingElement(GroupPresentation p) : pres_(std::move(p)) {}

  static RingElement zero(const GroupPresentation& p) { return RingElement(p); }
  static RingElement delta(const GroupPresentation& p, const Word& w, const Rat& c = 1);

  const GroupPresentation& pres() const { return pres_; }
  const CoeffMap& coeffs() const { return coef_; }

  // w must be in normal form; zero values erase the key.
  void set(const Word& w, const Rat& c);
  void add(const Word& w, const Rat& c);
  Rat at(const Word& w) const;

  std::size_t size() const { return coef_.size(); }  // size(a) = |supp(a)|
  bool is_zero() const { return coef_.empty(); }

  std::vector<Word> support_sorted() const;

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.pres_ == b.pres_ && a.coef_ == b.coef_;
  }

 private:
  GroupPresentation pres_;
  CoeffMap coef_;
};

RingElement convolve(const RingElement& a, const RingElement& b,
                     std::size_t guard = kDefaultSupportGuard);
RingElement add(const RingElement& a, const RingElement& b);
RingElement scale(const RingElement& a, const Rat& c);
RingElement star(const RingElement& a);
Rat trace(const RingElement& a);
Rat l1_norm(const RingElement& a);
bool is_hermitean(const RingElement& a);

// True iff b_g <= a_g over the union of supports.
bool leq_coefficientwise(const RingElement& b, const RingElement& a);

struct MarkovOperator {
  GenSet source;
  RingElement element;
};

MarkovOperator markov(const GenSet& s);

// Exact k-fold convolution power.  Uniform elements (single coefficient
// value) go through an integer-count convolution with one division at the
// end.  Throws GuardError when the support would exceed `guard`; for powers
// of length-one sets in free groups the predicted size is reported up front.
RingElement power_exact(const RingElement& a, unsigned k,
                        std::size_t guard = kDefaultSupportGuard);

}  // namespace spectra
