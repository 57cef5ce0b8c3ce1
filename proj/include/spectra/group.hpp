#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "spectra/error.hpp"

namespace spectra {

// One generator or its inverse.  Generator indices are 1-based.
struct Letter {
  std::uint16_t gen = 1;
  bool inv = false;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A group element as a sequence of letters.  Anything stored in a GenSet or
// RingElement is in normal form for its presentation; raw words only appear
// transiently before normal_form.
struct Word {
  std::vector<Letter> letters;

  bool is_identity() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }

  friend bool operator==(const Word&, const Word&) = default;
  // shortlex
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
    return a.letters <=> b.letters;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (const Letter& l : w.letters) {
      h ^= (std::uint64_t(l.gen) << 1) | (l.inv ? 1 : 0);
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};

enum class GroupKind { Free, FreeProductCyclic, FreeAbelian };

// Free(r), free products of cyclic groups Z/m1 * ... * Z/ms (0 = infinite
// factor), and Z^d.  Each has a closed-form confluent, length-nonincreasing
// normal form, which is all the pipeline needs.
class GroupPresentation {
 public:
  static GroupPresentation free_group(unsigned rank);
  static GroupPresentation free_abelian(unsigned rank);
  static GroupPresentation free_product_cyclic(std::vector<unsigned> orders);

  // "free:R", "fpc:M1,M2,...", "zd:D"
  static GroupPresentation parse(const std::string& s);
  std::string str() const;

  GroupKind kind() const { return kind_; }
  unsigned rank() const { return rank_; }
  // Order of cyclic factor i (1-based); 0 means infinite.
  unsigned factor_order(unsigned i) const { return orders_.at(i - 1); }

  Word normal_form(const Word& w) const;
  Word multiply(const Word& a, const Word& b) const;
  Word invert(const Word& w) const;

  void validate(const Word& w) const;  // generator indices in range

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  GroupKind kind_ = GroupKind::Free;
  unsigned rank_ = 1;
  std::vector<unsigned> orders_;  // FreeProductCyclic only
};

// Finite set of normal-form words, sorted shortlex, no duplicates.
struct GenSet {
  GroupPresentation pres;
  std::vector<Word> words;

  std::size_t size() const { return words.size(); }
  bool contains(const Word& w) const;
  bool is_symmetric() const;
  // First word whose inverse is missing, if any.
  const Word* missing_inverse() const;
};

GenSet symmetrize(const GroupPresentation& p, const std::vector<Word>& words);
// Dedup/sort without adding inverses; rejects words not in normal form.
GenSet make_genset(const GroupPresentation& p, std::vector<Word> words);

// Text round-tripping: 'a'..'z' generators 1..26, 'A'..'Z' inverses, "e" id.
Word parse_word(const GroupPresentation& p, const std::string& s);
std::string word_string(const Word& w);

GenSet parse_genset(const GroupPresentation& p, const std::string& csv);
std::string genset_string(const GenSet& s);

}  // namespace spectra
