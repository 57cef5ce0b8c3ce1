#include "spectra/ring.hpp"

#include <algorithm>
#include <optional>

#include "spectra/radial.hpp"

namespace spectra {

RingElement RingElement::delta(const GroupPresentation& p, const Word& w, const Rat& c) {
  RingElement e(p);
  e.set(p.normal_form(w), c);
  return e;
}

void RingElement::set(const Word& w, const Rat& c) {
  if (c == 0)
    coef_.erase(w);
  else
    coef_[w] = c;
}

void RingElement::add(const Word& w, const Rat& c) {
  auto it = coef_.find(w);
  if (it == coef_.end()) {
    if (c != 0) coef_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) coef_.erase(it);
}

Rat RingElement::at(const Word& w) const {
  auto it = coef_.find(w);
  return it == coef_.end() ? Rat(0) : it->second;
}

std::vector<Word> RingElement::support_sorted() const {
  std::vector<Word> ws;
  ws.reserve(coef_.size());
  for (const auto& [w, c] : coef_) ws.push_back(w);
  std::sort(ws.begin(), ws.end());
  return ws;
}

namespace {

void check_same_pres(const RingElement& a, const RingElement& b) {
  if (!(a.pres() == b.pres()))
    throw ValidationError("presentation mismatch: " + a.pres().str() + " vs " +
                          b.pres().str());
}

[[noreturn]] void throw_guard(std::size_t size, std::size_t guard) {
  throw GuardError("support-size guard exceeded: " + std::to_string(size) + " > " +
                   std::to_string(guard) +
                   " stored words; for free-group Markov powers use the radial engine");
}

}  // namespace

RingElement convolve(const RingElement& a, const RingElement& b, std::size_t guard) {
  check_same_pres(a, b);
  const GroupPresentation& p = a.pres();
  RingElement r(p);
  for (const auto& [u, cu] : a.coeffs())
    for (const auto& [v, cv] : b.coeffs()) {
      r.add(p.multiply(u, v), cu * cv);
      if (r.size() > guard) throw_guard(r.size(), guard);
    }
  return r;
}

RingElement add(const RingElement& a, const RingElement& b) {
  check_same_pres(a, b);
  RingElement r = a;
  for (const auto& [w, c] : b.coeffs()) r.add(w, c);
  return r;
}

RingElement scale(const RingElement& a, const Rat& c) {
  RingElement r(a.pres());
  if (c == 0) return r;
  for (const auto& [w, v] : a.coeffs()) r.set(w, v * c);
  return r;
}

RingElement star(const RingElement& a) {
  RingElement r(a.pres());
  for (const auto& [w, c] : a.coeffs()) r.set(a.pres().invert(w), c);
  return r;
}

Rat trace(const RingElement& a) { return a.at(Word{}); }

Rat l1_norm(const RingElement& a) {
  Rat s = 0;
  for (const auto& [w, c] : a.coeffs()) s += abs(c);
  return s;
}

bool is_hermitean(const RingElement& a) {
  for (const auto& [w, c] : a.coeffs())
    if (a.at(a.pres().invert(w)) != c) return false;
  return true;
}

bool leq_coefficientwise(const RingElement& b, const RingElement& a) {
  check_same_pres(b, a);
  for (const auto& [w, c] : b.coeffs())
    if (c > a.at(w)) return false;
  for (const auto& [w, c] : a.coeffs())
    if (b.at(w) > c) return false;  // covers words absent from b with c < 0
  return true;
}

MarkovOperator markov(const GenSet& s) {
  if (s.words.empty()) throw ValidationError("markov of empty set");
  if (const Word* w = s.missing_inverse())
    throw ValidationError("set not symmetric: missing " +
                          word_string(s.pres.invert(*w)));
  RingElement e(s.pres);
  Rat c(1, long(s.words.size()));
  for (const Word& w : s.words) e.set(w, c);
  return MarkovOperator{s, std::move(e)};
}

namespace {

// All coefficients equal?  Returns the common value.
std::optional<Rat> one_step_value(const RingElement& a) {
  std::optional<Rat> v;
  for (const auto& [w, c] : a.coeffs()) {
    if (!v)
      v = c;
    else if (*v != c)
      return std::nullopt;
  }
  return v;
}

// Predicted support of m(Sigma)^k when Sigma is the standard length-one set
// of a free group: spheres of matching parity up to radius k.
std::optional<Int> predicted_free_power_support(const RingElement& a, unsigned k) {
  if (a.pres().kind() != GroupKind::Free) return std::nullopt;
  for (const auto& [w, c] : a.coeffs())
    if (w.length() != 1) return std::nullopt;
  if (a.size() != 2u * a.pres().rank()) return std::nullopt;
  Int total = 0;
  for (unsigned l = k % 2; l <= k; l += 2) total += sphere_size(a.pres().rank(), l);
  return total;
}

using CountMap = std::unordered_map<Word, Int, WordHash>;

CountMap count_convolve(const GroupPresentation& p, const CountMap& acc,
                        const std::vector<Word>& base, std::size_t guard) {
  CountMap next;
  next.reserve(acc.size() * 2);
  for (const auto& [w, c] : acc)
    for (const Word& s : base) {
      next[p.multiply(w, s)] += c;
      if (next.size() > guard) throw_guard(next.size(), guard);
    }
  return next;
}

}  // namespace

RingElement power_exact(const RingElement& a, unsigned k, std::size_t guard) {
  if (k < 1) throw ValidationError("power_exact needs k >= 1");
  if (auto pred = predicted_free_power_support(a, k);
      pred && *pred > (unsigned long)guard)
    throw GuardError("support-size guard: predicted size " + pred->get_str() + " > " +
                     std::to_string(guard) + "; use the radial engine");
  if (auto v = one_step_value(a)) {
    // Integer-count fast path: counts of k-letter products, scaled by v^k.
    const GroupPresentation& p = a.pres();
    std::vector<Word> base = a.support_sorted();
    CountMap acc;
    for (const Word& w : base) acc[w] = 1;
    for (unsigned i = 1; i < k; ++i) acc = count_convolve(p, acc, base, guard);
    Rat vk = 1;
    for (unsigned i = 0; i < k; ++i) vk *= *v;
    RingElement r(p);
    for (const auto& [w, c] : acc) r.set(w, Rat(c) * vk);
    return r;
  }
  RingElement r = a;
  for (unsigned i = 1; i < k; ++i) r = convolve(r, a, guard);
  return r;
}

}  // namespace spectra
