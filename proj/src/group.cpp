#include "spectra/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace spectra {

GroupPresentation GroupPresentation::free_group(unsigned rank) {
  if (rank < 1) throw ValidationError("free group rank must be >= 1");
  GroupPresentation p;
  p.kind_ = GroupKind::Free;
  p.rank_ = rank;
  return p;
}

GroupPresentation GroupPresentation::free_abelian(unsigned rank) {
  if (rank < 1) throw ValidationError("free abelian rank must be >= 1");
  GroupPresentation p;
  p.kind_ = GroupKind::FreeAbelian;
  p.rank_ = rank;
  return p;
}

GroupPresentation GroupPresentation::free_product_cyclic(std::vector<unsigned> orders) {
  if (orders.empty()) throw ValidationError("free product needs at least one factor");
  for (unsigned m : orders)
    if (m == 1) throw ValidationError("cyclic factor order must be >= 2, or 0 for infinite");
  GroupPresentation p;
  p.kind_ = GroupKind::FreeProductCyclic;
  p.rank_ = unsigned(orders.size());
  p.orders_ = std::move(orders);
  return p;
}

GroupPresentation GroupPresentation::parse(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ValidationError("bad presentation: " + s);
  std::string head = s.substr(0, colon);
  std::string tail = s.substr(colon + 1);
  auto parse_uint = [&](const std::string& t) -> unsigned {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("bad presentation parameter '" + t + "' in: " + s);
    return unsigned(std::strtoul(t.c_str(), nullptr, 10));
  };
  if (head == "free") return free_group(parse_uint(tail));
  if (head == "zd") return free_abelian(parse_uint(tail));
  if (head == "fpc") {
    std::vector<unsigned> orders;
    std::stringstream ss(tail);
    std::string item;
    while (std::getline(ss, item, ',')) orders.push_back(parse_uint(item));
    return free_product_cyclic(std::move(orders));
  }
  throw ValidationError("unknown presentation kind: " + head);
}

std::string GroupPresentation::str() const {
  switch (kind_) {
    case GroupKind::Free:
      return "free:" + std::to_string(rank_);
    case GroupKind::FreeAbelian:
      return "zd:" + std::to_string(rank_);
    case GroupKind::FreeProductCyclic: {
      std::string s = "fpc:";
      for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(orders_[i]);
      }
      return s;
    }
  }
  return "?";
}

void GroupPresentation::validate(const Word& w) const {
  for (const Letter& l : w.letters)
    if (l.gen < 1 || l.gen > rank_)
      throw ValidationError("generator index " + std::to_string(l.gen) +
                            " out of range for " + str());
}

namespace {

// Canonical exponent for a cyclic factor of order m: the residue in
// (-m/2, m/2], ties at m/2 resolved to the positive exponent.
long canonical_exponent(long e, unsigned m) {
  if (m == 0) return e;
  long mm = long(m);
  long r = e % mm;
  if (r < 0) r += mm;
  if (2 * r > mm) r -= mm;
  return r;  // 2r == mm stays at +m/2
}

void append_syllable(std::vector<Letter>& out, std::uint16_t gen, long e) {
  Letter l{gen, e < 0};
  for (long i = 0, n = e < 0 ? -e : e; i < n; ++i) out.push_back(l);
}

}  // namespace

Word GroupPresentation::normal_form(const Word& w) const {
  validate(w);
  switch (kind_) {
    case GroupKind::Free: {
      Word out;
      out.letters.reserve(w.letters.size());
      for (const Letter& l : w.letters) {
        if (!out.letters.empty() && out.letters.back().gen == l.gen &&
            out.letters.back().inv != l.inv)
          out.letters.pop_back();
        else
          out.letters.push_back(l);
      }
      return out;
    }
    case GroupKind::FreeProductCyclic: {
      std::vector<std::pair<std::uint16_t, long>> syl;  // (gen, exponent)
      for (const Letter& l : w.letters) {
        long e = l.inv ? -1 : 1;
        if (!syl.empty() && syl.back().first == l.gen) {
          syl.back().second =
              canonical_exponent(syl.back().second + e, factor_order(l.gen));
          if (syl.back().second == 0) syl.pop_back();
        } else {
          syl.emplace_back(l.gen, canonical_exponent(e, factor_order(l.gen)));
          if (syl.back().second == 0) syl.pop_back();  // order-1 impossible; keeps invariant
        }
      }
      Word out;
      for (auto& [g, e] : syl) append_syllable(out.letters, g, e);
      return out;
    }
    case GroupKind::FreeAbelian: {
      std::vector<long> exps(rank_, 0);
      for (const Letter& l : w.letters) exps[l.gen - 1] += l.inv ? -1 : 1;
      Word out;
      for (unsigned g = 1; g <= rank_; ++g) append_syllable(out.letters, g, exps[g - 1]);
      return out;
    }
  }
  return {};
}

Word GroupPresentation::multiply(const Word& a, const Word& b) const {
  Word c;
  c.letters.reserve(a.letters.size() + b.letters.size());
  c.letters.insert(c.letters.end(), a.letters.begin(), a.letters.end());
  c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
  return normal_form(c);
}

Word GroupPresentation::invert(const Word& w) const {
  Word r;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(Letter{it->gen, !it->inv});
  return normal_form(r);
}

bool GenSet::contains(const Word& w) const {
  return std::binary_search(words.begin(), words.end(), w);
}

const Word* GenSet::missing_inverse() const {
  for (const Word& w : words)
    if (!contains(pres.invert(w))) return &w;
  return nullptr;
}

bool GenSet::is_symmetric() const { return missing_inverse() == nullptr; }

GenSet make_genset(const GroupPresentation& p, std::vector<Word> words) {
  for (const Word& w : words) {
    p.validate(w);
    if (p.normal_form(w) != w)
      throw ValidationError("word not in normal form: " + word_string(w));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return GenSet{p, std::move(words)};
}

GenSet symmetrize(const GroupPresentation& p, const std::vector<Word>& words) {
  std::vector<Word> all;
  all.reserve(words.size() * 2);
  for (const Word& w : words) {
    Word nw = p.normal_form(w);
    all.push_back(nw);
    all.push_back(p.invert(nw));
  }
  return make_genset(p, std::move(all));
}

Word parse_word(const GroupPresentation& p, const std::string& s) {
  Word w;
  if (s == "e") return w;
  for (char c : s) {
    Letter l;
    if (c >= 'a' && c <= 'z') {
      l.gen = std::uint16_t(c - 'a' + 1);
      l.inv = false;
    } else if (c >= 'A' && c <= 'Z') {
      l.gen = std::uint16_t(c - 'A' + 1);
      l.inv = true;
    } else {
      throw ValidationError(std::string("bad character '") + c + "' in word: " + s);
    }
    w.letters.push_back(l);
  }
  p.validate(w);
  return w;
}

std::string word_string(const Word& w) {
  if (w.is_identity()) return "e";
  std::string s;
  for (const Letter& l : w.letters) {
    if (l.gen > 26) return "<rank>26>";
    s += char((l.inv ? 'A' : 'a') + l.gen - 1);
  }
  return s;
}

GenSet parse_genset(const GroupPresentation& p, const std::string& csv) {
  std::vector<Word> words;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    // accept any spelling; the set holds normal forms
    words.push_back(p.normal_form(parse_word(p, item)));
  }
  return make_genset(p, std::move(words));
}

std::string genset_string(const GenSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    if (i) out += ',';
    out += word_string(s.words[i]);
  }
  return out;
}

}  // namespace spectra
