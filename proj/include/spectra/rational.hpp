#pragma once

#include <gmpxx.h>

#include <string>

namespace spectra {

using Rat = mpq_class;
using Int = mpz_class;

// "p/q" with the denominator always spelled out, so certificates re-parse
// without ambiguity.
inline std::string rat_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s);

}  // namespace spectra
