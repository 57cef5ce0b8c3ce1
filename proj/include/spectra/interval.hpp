#pragma once

#include <mpfr.h>

#include <string>

#include "spectra/rational.hpp"

namespace spectra {

// Closed interval [lo, hi] with outward-rounded mpfr endpoints.  Every
// operation rounds lo down and hi up, so any comparison that succeeds on the
// endpoints is a machine-checked inequality for the enclosed reals.
class Interval {
 public:
  explicit Interval(int prec_bits = 128);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_long(long v, int prec_bits = 128);
  static Interval from_int(const Int& v, int prec_bits = 128);
  static Interval from_rat(const Rat& q, int prec_bits = 128);
  static Interval from_double(double v, int prec_bits = 128);  // exact point

  int precision() const { return prec_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // 0 not in b
  Interval neg() const;

  friend Interval log(const Interval& a);   // requires a.lo > 0
  friend Interval exp(const Interval& a);
  friend Interval sqrt(const Interval& a);  // requires a.lo >= 0
  friend Interval pow_ui(const Interval& a, unsigned long k);  // requires a.lo >= 0

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up

  bool surely_lt(const Interval& o) const;   // hi <  o.lo
  bool surely_leq(const Interval& o) const;  // hi <= o.lo
  bool lo_positive() const;

  // Exact comparisons between a rational and the interval endpoints.
  bool rat_geq_hi(const Rat& q) const;  // q >= hi
  bool rat_lt_lo(const Rat& q) const;   // q <  lo

  std::string str() const;  // "[lo, hi]" for diagnostics

 private:
  mpfr_t lo_, hi_;
  int prec_;
};

}  // namespace spectra
