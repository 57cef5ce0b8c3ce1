#include "spectra/estimators.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "spectra/interval.hpp"

namespace spectra {

std::string direction_string(Direction d) {
  switch (d) {
    case Direction::Lower: return "lower";
    case Direction::Upper: return "upper";
    case Direction::Exact: return "exact";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return g.next();
}

namespace {

std::optional<Rat> uniform_value(const RingElement& a) {
  std::optional<Rat> v;
  for (const auto& [w, c] : a.coeffs()) {
    if (!v)
      v = c;
    else if (*v != c)
      return std::nullopt;
  }
  return v;
}

[[noreturn]] void throw_guard(std::size_t size, std::size_t guard) {
  throw GuardError("support-size guard exceeded: " + std::to_string(size) + " > " +
                   std::to_string(guard) + " stored words");
}

// Integer-count moment kernel for a uniform element v * 1_B: walks the
// counts of n-letter products and reads tau(a^{2n}) = v^{2n} sum_g c_n(g)
// c_n(g^{-1}).  Key type is pluggable so Z^d can use packed exponent vectors
// instead of letter strings.
template <class Key, class Hash, class Mul, class Inv>
std::vector<Int> count_moments(const std::vector<Key>& base, int n_max, Mul mul,
                               Inv inv, std::size_t guard) {
  using Map = std::unordered_map<Key, Int, Hash>;
  Map acc;
  for (const Key& s : base) acc[s] += 1;
  std::vector<Int> taus;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      Map next;
      next.reserve(acc.size() * 2);
      for (const auto& [k, c] : acc)
        for (const Key& s : base) {
          next[mul(k, s)] += c;
          if (next.size() > guard) throw_guard(next.size(), guard);
        }
      acc = std::move(next);
    }
    Int t = 0;
    for (const auto& [k, c] : acc) {
      auto it = acc.find(inv(k));
      if (it != acc.end()) t += c * it->second;
    }
    taus.push_back(t);
  }
  return taus;
}

struct ZVec {
  std::vector<std::int32_t> e;
  friend bool operator==(const ZVec&, const ZVec&) = default;
};

struct ZVecHash {
  std::size_t operator()(const ZVec& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v.e) {
      h ^= std::uint64_t(std::uint32_t(x));
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};

ZVec word_to_zvec(const Word& w, unsigned rank) {
  ZVec v;
  v.e.assign(rank, 0);
  for (const Letter& l : w.letters) v.e[l.gen - 1] += l.inv ? -1 : 1;
  return v;
}

}  // namespace

MomentSequence trace_moments(const RingElement& a, int n_max, std::size_t guard) {
  if (n_max < 1) throw ValidationError("trace_moments needs n_max >= 1");
  if (!is_hermitean(a)) throw ValidationError("trace_moments needs a hermitean element");
  MomentSequence m;
  m.element = a.pres().str();
  m.n_max = n_max;
  if (a.is_zero()) {
    m.tau.assign(std::size_t(n_max), Rat(0));
    return m;
  }
  const GroupPresentation& p = a.pres();
  if (auto v = uniform_value(a)) {
    std::vector<Int> taus;
    if (p.kind() == GroupKind::FreeAbelian) {
      std::vector<ZVec> base;
      for (const Word& w : a.support_sorted()) base.push_back(word_to_zvec(w, p.rank()));
      taus = count_moments<ZVec, ZVecHash>(
          base, n_max,
          [](const ZVec& x, const ZVec& s) {
            ZVec y = x;
            for (std::size_t i = 0; i < y.e.size(); ++i) y.e[i] += s.e[i];
            return y;
          },
          [](const ZVec& x) {
            ZVec y = x;
            for (auto& c : y.e) c = -c;
            return y;
          },
          guard);
    } else {
      std::vector<Word> base = a.support_sorted();
      taus = count_moments<Word, WordHash>(
          base, n_max, [&](const Word& x, const Word& s) { return p.multiply(x, s); },
          [&](const Word& x) { return p.invert(x); }, guard);
    }
    Rat v2 = (*v) * (*v);
    Rat scale = 1;
    for (int n = 1; n <= n_max; ++n) {
      scale *= v2;
      m.tau.push_back(Rat(taus[std::size_t(n - 1)]) * scale);
    }
    return m;
  }
  RingElement pw = a;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) pw = convolve(pw, a, guard);
    Rat t = 0;
    for (const auto& [w, c] : pw.coeffs()) t += c * pw.at(p.invert(w));
    m.tau.push_back(t);
  }
  return m;
}

MomentSequence trace_moments(const RadialElement& a, int n_max) {
  if (n_max < 1) throw ValidationError("trace_moments needs n_max >= 1");
  MomentSequence m;
  m.element = "free:" + std::to_string(a.rank) + " (radial)";
  m.n_max = n_max;
  RadialElement pw = a;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) pw = radial_convolve(pw, a);
    // tau(a^{2n}) = sum_l N(l) c_n[l]^2 (radial elements are hermitean)
    Rat t = 0;
    for (std::size_t l = 0; l < pw.coef.size(); ++l)
      if (pw.coef[l] != 0) t += pw.coef[l] * pw.coef[l] * Rat(sphere_size(a.rank, unsigned(l)));
    m.tau.push_back(t);
  }
  return m;
}

MomentSequence free_markov_moments(unsigned r, int n_max) {
  if (n_max < 1) throw ValidationError("free_markov_moments needs n_max >= 1");
  MomentSequence m;
  m.element = "free:" + std::to_string(r) + " standard set";
  m.n_max = n_max;
  const Rat out(long(2 * r - 1), long(2 * r));
  const Rat in(1, long(2 * r));
  std::vector<Rat> p(std::size_t(2 * n_max + 2), Rat(0));
  std::vector<Rat> q(p.size(), Rat(0));
  p[0] = 1;
  for (int step = 1; step <= 2 * n_max; ++step) {
    std::fill(q.begin(), q.end(), Rat(0));
    for (int j = 0; j < step; ++j) {
      if (p[std::size_t(j)] == 0) continue;
      if (j == 0)
        q[1] += p[0];
      else {
        q[std::size_t(j + 1)] += p[std::size_t(j)] * out;
        q[std::size_t(j - 1)] += p[std::size_t(j)] * in;
      }
    }
    p.swap(q);
    if (step % 2 == 0) m.tau.push_back(p[0]);
  }
  return m;
}

namespace {

double mpq_root_lower(const Rat& q, unsigned long n, int prec) {
  mpfr_t x;
  mpfr_init2(x, prec);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
  mpfr_rootn_ui(x, x, n, MPFR_RNDD);
  double d = mpfr_get_d(x, MPFR_RNDD);
  mpfr_clear(x);
  return d;
}

}  // namespace

std::vector<EstimateReport> radius_lower_bounds(const MomentSequence& m, int precision_bits) {
  std::vector<EstimateReport> out;
  for (int n = 1; n <= int(m.tau.size()); ++n) {
    const Rat& t = m.tau[std::size_t(n - 1)];
    if (t < 0) throw ValidationError("negative even moment; element not hermitean?");
    EstimateReport r;
    r.value = t == 0 ? 0.0 : mpq_root_lower(t, 2u * unsigned(n), precision_bits);
    r.direction = Direction::Lower;
    r.method = "root-moment";
    r.n = n;
    r.precision_bits = precision_bits;
    out.push_back(r);
  }
  for (int n = 1; n + 1 <= int(m.tau.size()); ++n) {
    const Rat& lo = m.tau[std::size_t(n - 1)];
    const Rat& hi = m.tau[std::size_t(n)];
    EstimateReport r;
    if (lo == 0) {
      r.value = 0.0;
    } else {
      r.value = mpq_root_lower(hi / lo, 2, precision_bits);
    }
    r.direction = Direction::Lower;
    r.method = "ratio-moment";
    r.n = n;
    r.precision_bits = precision_bits;
    out.push_back(r);
  }
  return out;
}

EstimateReport best_lower_bound(const MomentSequence& m, int precision_bits) {
  if (m.tau.size() < 2)
    throw ValidationError("ratio-moment family needs at least 2 moments");
  auto all = radius_lower_bounds(m, precision_bits);
  return all.back();
}

EstimateReport kesten_exact_free(unsigned n_pairs) {
  if (n_pairs < 1) throw ValidationError("kesten_exact_free needs n >= 1");
  EstimateReport r;
  Rat sq(long(2 * n_pairs - 1), long(n_pairs) * long(n_pairs));
  r.value_sq_exact = sq;
  r.value = std::sqrt(double(2 * n_pairs - 1)) / double(n_pairs);
  r.direction = Direction::Exact;
  r.method = "closed-form";
  r.n = int(n_pairs);
  return r;
}

TreeBound tree_comparison_bound(const Int& set_size) {
  if (set_size < 1) throw ValidationError("tree_comparison_bound needs |S| >= 1");
  double s = set_size.get_d();
  TreeBound b;
  b.paper_bound = 1.0 / std::sqrt(s);
  b.refined_bound = set_size == 1 ? 1.0 : 2.0 * std::sqrt(s - 1.0) / s;
  return b;
}

namespace {

EstimateReport rayleigh_report(double best, unsigned radius, long iters_done, double tol) {
  EstimateReport r;
  r.value = best;
  r.direction = Direction::Lower;
  r.method = "ball-power-iteration";
  r.radius = int(radius);
  r.iterations = iters_done;
  r.tolerance = tol;
  return r;
}

bool is_standard_free_set(const GroupPresentation& p, const GenSet& s) {
  if (p.kind() != GroupKind::Free) return false;
  if (s.words.size() != 2u * p.rank()) return false;
  for (const Word& w : s.words)
    if (w.length() != 1) return false;
  return true;
}

// Per-sphere power iteration for the free group: the iterates of delta_e
// under a radial operator stay constant on spheres, so the ball collapses to
// R+1 weighted coordinates.
EstimateReport ball_power_radial(unsigned r, unsigned R, long iters, double tol) {
  std::vector<double> weight(R + 1);
  for (unsigned l = 0; l <= R; ++l) weight[l] = sphere_size(r, l).get_d();
  std::vector<double> x(R + 1, 0.0), y(R + 1, 0.0);
  x[0] = 1.0;
  double best = 0.0, prev_q = -2.0;
  long done = 0;
  const double tr = 2.0 * r;
  for (long it = 0; it < iters; ++it) {
    y[0] = R >= 1 ? x[1] : 0.0;
    for (unsigned l = 1; l <= R; ++l) {
      double up = l + 1 <= R ? (tr - 1.0) * x[l + 1] : 0.0;
      y[l] = (x[l - 1] + up) / tr;
    }
    // ||Mx||/||x|| = sqrt of the Rayleigh quotient of M^2; the plain
    // quotient x.Mx vanishes on alternating-parity iterates.
    double num = 0.0, den = 0.0;
    for (unsigned l = 0; l <= R; ++l) {
      num += weight[l] * y[l] * y[l];
      den += weight[l] * x[l] * x[l];
    }
    double q = den > 0 ? std::sqrt(num / den) : 0.0;
    best = std::max(best, q);
    ++done;
    if (num == 0.0) break;
    double norm = std::sqrt(num);
    for (unsigned l = 0; l <= R; ++l) x[l] = y[l] / norm;
    if (tol > 0 && std::abs(q - prev_q) < tol) break;
    prev_q = q;
  }
  return rayleigh_report(best, R, done, tol);
}

}  // namespace

EstimateReport ball_power_iteration(const GroupPresentation& p, const GenSet& s,
                                    unsigned radius, long iters, double tol,
                                    std::size_t guard) {
  if (!(p == s.pres)) throw ValidationError("presentation mismatch");
  if (s.words.empty()) throw ValidationError("ball_power_iteration needs a nonempty set");
  if (const Word* w = s.missing_inverse())
    throw ValidationError("set not symmetric: missing " + word_string(s.pres.invert(*w)));
  if (is_standard_free_set(p, s))
    return ball_power_radial(p.rank(), radius, iters, tol);

  // enumerate the ball |w| <= radius by breadth-first search
  std::unordered_map<Word, int, WordHash> index;
  std::vector<Word> basis;
  std::deque<Word> queue;
  index[Word{}] = 0;
  basis.push_back(Word{});
  queue.push_back(Word{});
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    for (const Word& g : s.words) {
      Word t = p.multiply(g, w);
      if (t.length() > radius) continue;
      if (index.emplace(t, int(basis.size())).second) {
        basis.push_back(t);
        queue.push_back(t);
        if (basis.size() > guard)
          throw GuardError("ball enumeration guard exceeded at radius " +
                           std::to_string(radius));
      }
    }
  }
  std::vector<std::vector<int>> adj(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const Word& g : s.words) {
      Word t = p.multiply(g, basis[i]);
      auto it = index.find(t);
      if (it != index.end()) adj[i].push_back(it->second);
    }
  const double inv_deg = 1.0 / double(s.words.size());
  std::vector<double> x(basis.size(), 0.0), y(basis.size(), 0.0);
  x[0] = 1.0;
  double best = 0.0, prev_q = -2.0;
  long done = 0;
  for (long it = 0; it < iters; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (x[i] == 0.0) continue;
      for (int j : adj[i]) y[std::size_t(j)] += x[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      y[i] *= inv_deg;
      num += y[i] * y[i];
      den += x[i] * x[i];
    }
    double q = den > 0 ? std::sqrt(num / den) : 0.0;
    best = std::max(best, q);
    ++done;
    if (num == 0.0) break;
    double norm = std::sqrt(num);
    for (std::size_t i = 0; i < basis.size(); ++i) x[i] = y[i] / norm;
    if (tol > 0 && std::abs(q - prev_q) < tol) break;
    prev_q = q;
  }
  return rayleigh_report(best, radius, done, tol);
}

WalkResult monte_carlo_return(const GroupPresentation& p, const GenSet& s, int steps,
                              long trials, std::uint64_t seed) {
  if (!(p == s.pres)) throw ValidationError("presentation mismatch");
  if (steps < 0 || steps % 2 != 0) throw ValidationError("steps must be even");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (s.words.empty()) throw ValidationError("empty generating set");
  long hits = 0;
  const std::uint64_t n = s.words.size();
  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, std::uint64_t(t)));
    Word w;
    for (int i = 0; i < steps; ++i) w = p.multiply(w, s.words[rng.bounded(n)]);
    if (w.is_identity()) ++hits;
  }
  WalkResult r;
  r.returns = hits;
  r.trials = trials;
  r.steps = steps;
  r.seed = seed;
  r.frequency = double(hits) / double(trials);
  r.stderr_est = std::sqrt(r.frequency * (1.0 - r.frequency) / double(trials));
  return r;
}

}  // namespace spectra
