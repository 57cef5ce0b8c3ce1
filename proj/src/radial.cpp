#include "spectra/radial.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "spectra/error.hpp"

namespace spectra {

void RadialElement::trim() {
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
}

Int sphere_size(unsigned r, unsigned l) {
  if (r < 1) throw ValidationError("sphere_size needs rank >= 1");
  if (l == 0) return 1;
  Int n = 2 * r;
  for (unsigned i = 1; i < l; ++i) n *= 2 * r - 1;
  return n;
}

Int ball_size(unsigned r, unsigned l) {
  Int total = 0;
  for (unsigned i = 0; i <= l; ++i) total += sphere_size(r, i);
  return total;
}

std::vector<Rat> tree_walk_distribution(unsigned r, unsigned k) {
  const Rat out(long(2 * r - 1), long(2 * r));
  const Rat in(1, long(2 * r));
  std::vector<Rat> p(k + 1, Rat(0));
  p[0] = 1;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<Rat> q(k + 1, Rat(0));
    for (unsigned j = 0; j <= step; ++j) {
      if (p[j] == 0) continue;
      if (j == 0) {
        q[1] += p[0];
      } else {
        q[j + 1] += p[j] * out;
        q[j - 1] += p[j] * in;
      }
    }
    p.swap(q);
  }
  return p;
}

RadialElement radial_markov_power(unsigned r, unsigned k) {
  if (k < 1) throw ValidationError("radial_markov_power needs k >= 1");
  std::vector<Rat> p = tree_walk_distribution(r, k);
  RadialElement e{r, {}};
  e.coef.resize(k + 1, Rat(0));
  for (unsigned l = 0; l <= k; ++l)
    if (p[l] != 0) e.coef[l] = p[l] / Rat(sphere_size(r, l));
  e.trim();
  return e;
}

namespace {

// sigma_1 * (vector in the sphere basis): sigma_1 sigma_0 = sigma_1,
// sigma_1 sigma_1 = 2r sigma_0 + sigma_2,
// sigma_1 sigma_l = (2r-1) sigma_{l-1} + sigma_{l+1} for l >= 2.
std::vector<Int> sigma1_mult(unsigned r, const std::vector<Int>& x) {
  std::vector<Int> y(x.size() + 1, 0);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] == 0) continue;
    y[l + 1] += x[l];
    if (l == 1)
      y[0] += 2 * r * x[l];
    else if (l >= 2)
      y[l - 1] += (2 * r - 1) * x[l];
  }
  return y;
}

struct SphereProductCache {
  std::mutex mu;
  std::map<std::tuple<unsigned, unsigned, unsigned>, std::vector<Int>> table;
};

SphereProductCache& cache() {
  static SphereProductCache c;
  return c;
}

}  // namespace

std::vector<Int> sphere_product(unsigned r, unsigned i, unsigned j) {
  if (i > j) std::swap(i, j);  // commutative subalgebra
  {
    std::lock_guard<std::mutex> lk(cache().mu);
    auto it = cache().table.find({r, i, j});
    if (it != cache().table.end()) return it->second;
  }
  // rows in i for fixed j via sigma_{i+1} = sigma_1 sigma_i - c_i sigma_{i-1}
  std::vector<Int> prev(j + 1, 0), cur;
  prev[j] = 1;  // sigma_0 * sigma_j
  if (i == 0) return prev;
  cur = sigma1_mult(r, prev);  // sigma_1 * sigma_j
  for (unsigned m = 1; m < i; ++m) {
    std::vector<Int> next = sigma1_mult(r, cur);
    Int c = (m == 1) ? Int(2 * r) : Int(2 * r - 1);
    for (std::size_t l = 0; l < prev.size(); ++l) next[l] -= c * prev[l];
    prev.swap(cur);
    cur.swap(next);
  }
  cur.resize(i + j + 1, 0);
  {
    std::lock_guard<std::mutex> lk(cache().mu);
    cache().table.emplace(std::tuple{r, i, j}, cur);
  }
  return cur;
}

RadialElement radial_convolve(const RadialElement& u, const RadialElement& v) {
  if (u.rank != v.rank) throw ValidationError("radial rank mismatch");
  RadialElement res{u.rank, {}};
  if (u.is_zero() || v.is_zero()) return res;
  res.coef.assign(u.coef.size() + v.coef.size() - 1, Rat(0));
  for (std::size_t i = 0; i < u.coef.size(); ++i) {
    if (u.coef[i] == 0) continue;
    for (std::size_t j = 0; j < v.coef.size(); ++j) {
      if (v.coef[j] == 0) continue;
      Rat cij = u.coef[i] * v.coef[j];
      std::vector<Int> K = sphere_product(u.rank, unsigned(i), unsigned(j));
      for (std::size_t l = 0; l < K.size(); ++l)
        if (K[l] != 0) res.coef[l] += cij * Rat(K[l]);
    }
  }
  res.trim();
  return res;
}

RadialElement radial_add(const RadialElement& u, const RadialElement& v) {
  if (u.rank != v.rank) throw ValidationError("radial rank mismatch");
  RadialElement res{u.rank, {}};
  res.coef.resize(std::max(u.coef.size(), v.coef.size()), Rat(0));
  for (std::size_t l = 0; l < res.coef.size(); ++l) res.coef[l] = u.at(unsigned(l)) + v.at(unsigned(l));
  res.trim();
  return res;
}

RadialElement radial_scale(const RadialElement& u, const Rat& c) {
  RadialElement res{u.rank, {}};
  if (c == 0) return res;
  res.coef.reserve(u.coef.size());
  for (const Rat& x : u.coef) res.coef.push_back(x * c);
  res.trim();
  return res;
}

Rat radial_trace(const RadialElement& u) { return u.at(0); }

Rat radial_l1(const RadialElement& u) {
  Rat s = 0;
  for (std::size_t l = 0; l < u.coef.size(); ++l)
    if (u.coef[l] != 0) s += abs(u.coef[l]) * Rat(sphere_size(u.rank, unsigned(l)));
  return s;
}

Int radial_support_size(const RadialElement& u) {
  Int s = 0;
  for (std::size_t l = 0; l < u.coef.size(); ++l)
    if (u.coef[l] != 0) s += sphere_size(u.rank, unsigned(l));
  return s;
}

std::vector<unsigned> radial_support_distances(const RadialElement& u) {
  std::vector<unsigned> ds;
  for (std::size_t l = 0; l < u.coef.size(); ++l)
    if (u.coef[l] != 0) ds.push_back(unsigned(l));
  return ds;
}

RadialElement indicator_radial(unsigned r, const std::vector<unsigned>& distances) {
  RadialElement e{r, {}};
  for (unsigned d : distances) {
    if (e.coef.size() <= d) e.coef.resize(d + 1, Rat(0));
    e.coef[d] = 1;
  }
  return e;
}

std::vector<Word> sphere_words(unsigned r, unsigned l) {
  std::vector<Word> out;
  Word cur;
  auto rec = [&](auto&& self, unsigned depth) -> void {
    if (depth == l) {
      out.push_back(cur);
      return;
    }
    for (std::uint16_t g = 1; g <= r; ++g)
      for (bool inv : {false, true}) {
        if (!cur.letters.empty() && cur.letters.back().gen == g &&
            cur.letters.back().inv != inv)
          continue;  // would cancel
        cur.letters.push_back(Letter{g, inv});
        self(self, depth + 1);
        cur.letters.pop_back();
      }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

RadialElement to_radial(const RingElement& a) {
  if (a.pres().kind() != GroupKind::Free)
    throw ValidationError("to_radial requires a free presentation");
  unsigned r = a.pres().rank();
  // group coefficients by word length
  std::map<unsigned, std::pair<Rat, Int>> per_length;  // value, count seen
  for (const auto& [w, c] : a.coeffs()) {
    unsigned l = unsigned(w.length());
    auto it = per_length.find(l);
    if (it == per_length.end()) {
      per_length[l] = {c, 1};
    } else {
      if (it->second.first != c) {
        // find a concrete witness pair
        Word w2;
        for (const auto& [x, cx] : a.coeffs())
          if (x.length() == l && cx != c) {
            w2 = x;
            break;
          }
        throw NonRadialError("element is not radial: coefficients differ on sphere " +
                                 std::to_string(l) + " (" + word_string(w) + " vs " +
                                 word_string(w2) + ")",
                             word_string(w), word_string(w2));
      }
      it->second.second += 1;
    }
  }
  RadialElement e{r, {}};
  for (const auto& [l, vc] : per_length) {
    const auto& [value, count] = vc;
    if (count != sphere_size(r, l)) {
      // some sphere word is missing, i.e. carries coefficient 0 != value
      Word present;
      for (const auto& [x, cx] : a.coeffs())
        if (x.length() == l) {
          present = x;
          break;
        }
      std::string absent = "<sphere too large to enumerate>";
      if (sphere_size(r, l) <= 1'000'000) {
        for (const Word& w : sphere_words(r, l))
          if (a.at(w) == 0) {
            absent = word_string(w);
            break;
          }
      }
      throw NonRadialError("element is not radial: sphere " + std::to_string(l) +
                               " only partially covered (" + word_string(present) +
                               " vs " + absent + ")",
                           word_string(present), absent);
    }
    if (e.coef.size() <= l) e.coef.resize(l + 1, Rat(0));
    e.coef[l] = value;
  }
  e.trim();
  return e;
}

RingElement to_dense(const RadialElement& u) {
  GroupPresentation p = GroupPresentation::free_group(u.rank);
  RingElement a(p);
  for (std::size_t l = 0; l < u.coef.size(); ++l) {
    if (u.coef[l] == 0) continue;
    for (const Word& w : sphere_words(u.rank, unsigned(l))) a.set(w, u.coef[l]);
  }
  return a;
}

}  // namespace spectra
