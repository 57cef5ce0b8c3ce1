#include "spectra/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spectra/interval.hpp"

namespace spectra {

std::string guarantee_string(GuaranteeStatus s) {
  switch (s) {
    case GuaranteeStatus::Met: return "met";
    case GuaranteeStatus::Violated: return "violated";
    case GuaranteeStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

Rat LevelProfile::total_mass() const {
  Rat m = 0;
  for (const auto& [v, n] : levels) m += v * Rat(n);
  return m;
}

Int LevelProfile::total_count() const {
  Int c = 0;
  for (const auto& [v, n] : levels) c += n;
  return c;
}

LevelProfile LevelProfile::from_values(std::vector<std::pair<Rat, Int>> raw) {
  std::map<Rat, Int> merged;
  for (auto& [v, n] : raw) {
    if (v <= 0) throw ValidationError("level values must be positive");
    if (n < 1) throw ValidationError("level multiplicities must be >= 1");
    merged[v] += n;
  }
  LevelProfile p;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it)
    p.levels.emplace_back(it->first, it->second);
  return p;
}

namespace {

// Decide q >= f(prec) by escalating outward-rounded precision.  f must be a
// transcendental bound, so the comparison always resolves.
template <class F>
bool certified_rat_geq(const Rat& q, F make_interval, int start_prec) {
  for (int prec = std::max(start_prec, 32); prec <= (1 << 14); prec *= 2) {
    Interval g = make_interval(prec);
    if (g.rat_geq_hi(q)) return true;
    if (g.rat_lt_lo(q)) return false;
  }
  throw Error("interval comparison undecidable at 16384 bits");
}

Interval lemma_guarantee(const Rat& I, int prec) {
  Interval iv = Interval::from_rat(I, prec);
  return iv / log(iv).neg() / Interval::from_long(4, prec);
}

}  // namespace

ThresholdReport threshold_select(const LevelProfile& profile, int precision_bits) {
  if (profile.levels.empty()) throw ValidationError("empty level profile");
  for (std::size_t i = 0; i + 1 < profile.levels.size(); ++i)
    if (!(profile.levels[i].first > profile.levels[i + 1].first))
      throw ValidationError("level values must be strictly decreasing");
  Rat mass = profile.total_mass();
  // Values <= 1 keeps the step function inside [0,1]; the average I =
  // mass/count is then automatically <= 1 even when mass itself exceeds 1
  // (grid discretizations have mass ~ N * I).
  if (profile.levels.front().first > 1)
    throw ValidationError("level value > 1 after normalization");

  Int total = profile.total_count();
  // f is constant on blocks, so x f(x) peaks at each block's right endpoint.
  Int cum = 0;
  Rat best_obj = -1;
  std::size_t best_idx = 0;
  Rat best_x0 = 0;
  std::vector<Rat> x0s;
  for (std::size_t i = 0; i < profile.levels.size(); ++i) {
    cum += profile.levels[i].second;
    Rat x0 = Rat(cum) / Rat(total);
    Rat obj = x0 * profile.levels[i].first;
    if (obj >= best_obj) {  // ties break toward the larger support
      best_obj = obj;
      best_idx = i;
      best_x0 = x0;
    }
  }

  ThresholdReport rep;
  rep.chosen_level_index = best_idx;
  rep.lambda = profile.levels[best_idx].first;
  rep.x0 = best_x0;
  rep.objective = best_obj;
  rep.I = mass / Rat(total);
  rep.precision_bits = precision_bits;

  if (rep.I * 3 <= 1) {
    Interval iv = Interval::from_rat(rep.I, precision_bits);
    Interval alpha = Interval::from_long(1, precision_bits) /
                     (Interval::from_long(4, precision_bits) * log(iv).neg());
    rep.alpha = alpha.hi_double();
    rep.guarantee = lemma_guarantee(rep.I, precision_bits).hi_double();
    bool met = certified_rat_geq(
        rep.objective, [&](int prec) { return lemma_guarantee(rep.I, prec); },
        precision_bits);
    rep.guarantee_met = met ? GuaranteeStatus::Met : GuaranteeStatus::Violated;
  } else {
    rep.guarantee_met = GuaranteeStatus::NotApplicable;
  }
  return rep;
}

namespace {

template <class SizeT>
void check_minorant_pre(const SizeT& size) {
  if (size < 3) throw ValidationError("one_step_minorant needs size(a) >= 3");
}

}  // namespace

std::pair<RingElement, ThresholdReport> one_step_minorant(const RingElement& a) {
  check_minorant_pre(Int(long(a.size())));
  for (const auto& [w, c] : a.coeffs())
    if (c < 0) throw ValidationError("one_step_minorant needs nonnegative coefficients");
  if (!is_hermitean(a)) throw ValidationError("one_step_minorant needs a hermitean element");

  Rat l1 = l1_norm(a);
  std::vector<std::pair<Rat, Int>> raw;
  {
    std::map<Rat, Int> counts;
    for (const auto& [w, c] : a.coeffs()) counts[c / l1] += 1;
    for (auto& [v, n] : counts) raw.emplace_back(v, n);
  }
  ThresholdReport rep = threshold_select(LevelProfile::from_values(std::move(raw)));

  Rat level = rep.lambda * l1;
  RingElement b(a.pres());
  for (const auto& [w, c] : a.coeffs())
    if (c >= level) b.set(w, level);
  return {std::move(b), std::move(rep)};
}

std::pair<RadialElement, ThresholdReport> one_step_minorant(const RadialElement& a) {
  check_minorant_pre(radial_support_size(a));
  for (const Rat& c : a.coef)
    if (c < 0) throw ValidationError("one_step_minorant needs nonnegative coefficients");

  Rat l1 = radial_l1(a);
  std::vector<std::pair<Rat, Int>> raw;
  for (std::size_t l = 0; l < a.coef.size(); ++l)
    if (a.coef[l] != 0) raw.emplace_back(a.coef[l] / l1, sphere_size(a.rank, unsigned(l)));
  ThresholdReport rep = threshold_select(LevelProfile::from_values(std::move(raw)));

  Rat level = rep.lambda * l1;
  RadialElement b{a.rank, {}};
  b.coef.resize(a.coef.size(), Rat(0));
  for (std::size_t l = 0; l < a.coef.size(); ++l)
    if (a.coef[l] >= level && a.coef[l] != 0) b.coef[l] = level;
  b.trim();
  return {std::move(b), std::move(rep)};
}

namespace {

bool is_standard_free_set(const GroupPresentation& p, const GenSet& s) {
  if (p.kind() != GroupKind::Free) return false;
  if (s.words.size() != 2u * p.rank()) return false;
  for (const Word& w : s.words)
    if (w.length() != 1) return false;
  return true;
}

Interval rho_interval(const EstimateReport& rho, int prec) {
  if (rho.value_sq_exact) return sqrt(Interval::from_rat(*rho.value_sq_exact, prec));
  return Interval::from_double(rho.value, prec);
}

// 4k ln|Sigma| rho^k, outward
Interval theorem1_rhs_interval(int k, unsigned sigma_size, const EstimateReport& rho,
                               int prec) {
  Interval lnS = log(Interval::from_long(long(sigma_size), prec));
  return Interval::from_long(4L * k, prec) * lnS *
         pow_ui(rho_interval(rho, prec), (unsigned long)k);
}

bool corollary3_check(const Rat& b_l1, const Int& size_mk, int prec) {
  // b_l1 >= 1/(4 ln size)
  return certified_rat_geq(
      b_l1,
      [&](int p) {
        return Interval::from_long(1, p) /
               (Interval::from_long(4, p) * log(Interval::from_int(size_mk, p)));
      },
      prec);
}

EstimateReport exact_rho_one() {
  EstimateReport r;
  r.value = 1.0;
  r.value_sq_exact = Rat(1);
  r.direction = Direction::Exact;
  r.method = "closed-form";
  return r;
}

}  // namespace

SkCertificate generate_sk(const GroupPresentation& p, const GenSet& sigma, int k,
                          const EstimatorParams& params) {
  if (!(p == sigma.pres)) throw ValidationError("presentation mismatch");
  if (k < 1) throw ValidationError("generate_sk needs k >= 1");
  if (sigma.size() < 3) throw ValidationError("generate_sk needs |sigma| >= 3");
  if (const Word* w = sigma.missing_inverse())
    throw ValidationError("set not symmetric: missing " + word_string(p.invert(*w)));
  if (params.moment_n_max < 2)
    throw ValidationError("need moment_n_max >= 2 for the ratio lower bound");

  bool radial_ok = is_standard_free_set(p, sigma);
  bool radial_mode;
  if (params.engine == "radial") {
    if (!radial_ok)
      throw ValidationError("radial engine requires a free group with its standard set");
    radial_mode = true;
  } else if (params.engine == "dense") {
    radial_mode = false;
  } else if (params.engine == "auto") {
    radial_mode = radial_ok;
  } else {
    throw ValidationError("unknown engine: " + params.engine);
  }

  SkCertificate cert;
  cert.k = k;
  cert.group = p.str();
  cert.sigma = genset_string(sigma);
  cert.sigma_size = unsigned(sigma.size());
  cert.radial_mode = radial_mode;

  const int prec = params.precision_bits;

  if (radial_mode) {
    unsigned r = p.rank();
    RadialElement a = radial_markov_power(r, unsigned(k));
    auto [b, rep] = one_step_minorant(a);
    cert.threshold = rep;
    cert.sk_spheres = radial_support_distances(b);
    for (unsigned l : cert.sk_spheres)
      if (l > unsigned(k) || (l % 2) != (unsigned(k) % 2))
        throw Error("S_k sphere violates parity/length invariant");  // bug trap
    cert.sk_size = radial_support_size(b);
    cert.b_level = b.coef[cert.sk_spheres.front()];
    cert.b_l1 = radial_l1(b);
    cert.size_mk = radial_support_size(a);
    cert.corollary3_ok = corollary3_check(cert.b_l1, cert.size_mk, prec);
    cert.rho_sigma = kesten_exact_free(r);

    RadialElement msk = radial_scale(indicator_radial(r, cert.sk_spheres),
                                     Rat(1) / Rat(cert.sk_size));
    cert.rho_sk_lower =
        best_lower_bound(trace_moments(msk, params.moment_n_max), prec);
  } else {
    MarkovOperator m = markov(sigma);
    RingElement a = power_exact(m.element, unsigned(k), params.guard);
    auto [b, rep] = one_step_minorant(a);
    cert.threshold = rep;
    cert.sk_words = b.support_sorted();
    cert.sk_size = long(cert.sk_words.size());
    cert.b_level = b.at(cert.sk_words.front());
    cert.b_l1 = l1_norm(b);
    cert.size_mk = long(a.size());
    cert.corollary3_ok = corollary3_check(cert.b_l1, cert.size_mk, prec);

    GenSet sk = make_genset(p, cert.sk_words);
    if (!sk.is_symmetric()) throw Error("S_k not symmetric");  // bug trap
    if (radial_ok)
      cert.rho_sigma = kesten_exact_free(p.rank());
    else if (p.kind() == GroupKind::FreeAbelian)
      cert.rho_sigma = exact_rho_one();  // amenable: rho = 1 by Kesten
    else
      cert.rho_sigma = best_lower_bound(
          trace_moments(m.element, params.moment_n_max, params.guard), prec);

    cert.rho_sk_lower = best_lower_bound(
        trace_moments(markov(sk).element, params.moment_n_max, params.guard), prec);
  }

  Interval rhs = theorem1_rhs_interval(k, cert.sigma_size, cert.rho_sigma, prec);
  cert.theorem1_rhs = rhs.hi_double();
  cert.theorem1_rhs_lo = rhs.lo_double();
  cert.rhs_is_upper_bound = cert.rho_sigma.direction != Direction::Lower;

  cert.rho_sk_upper.value = cert.theorem1_rhs;
  cert.rho_sk_upper.direction =
      cert.rhs_is_upper_bound ? Direction::Upper : Direction::Lower;
  cert.rho_sk_upper.method = "theorem1-bound";
  cert.rho_sk_upper.n = k;
  cert.rho_sk_upper.precision_bits = prec;

  cert.consistency_ok = cert.rho_sk_lower.value <= cert.theorem1_rhs;
  return cert;
}

AugmentReport augment_with_sigma(const SkCertificate& cert) {
  AugmentReport rep;
  GroupPresentation p = GroupPresentation::parse(cert.group);
  double rho_sigma_hi = cert.rho_sigma.value;
  double rho_sk_hi = cert.theorem1_rhs;

  Int sigma_minus_sk;
  if (cert.radial_mode) {
    bool has_sphere1 = std::find(cert.sk_spheres.begin(), cert.sk_spheres.end(), 1u) !=
                       cert.sk_spheres.end();
    rep.sigma_subset = has_sphere1;
    sigma_minus_sk = has_sphere1 ? Int(0) : Int(long(cert.sigma_size));
    rep.s_prime_size = cert.sk_size + sigma_minus_sk;
    std::vector<unsigned> spheres = cert.sk_spheres;
    if (!has_sphere1) spheres.push_back(1);
    std::sort(spheres.begin(), spheres.end());
    rep.s_prime = "spheres:";
    for (std::size_t i = 0; i < spheres.size(); ++i) {
      if (i) rep.s_prime += ',';
      rep.s_prime += std::to_string(spheres[i]);
    }
  } else {
    GenSet sigma = parse_genset(p, cert.sigma);
    std::vector<Word> all = cert.sk_words;
    std::size_t in_sk = 0;
    GenSet sk = make_genset(p, cert.sk_words);
    for (const Word& w : sigma.words) {
      all.push_back(w);
      if (sk.contains(w)) ++in_sk;
    }
    GenSet sp = make_genset(p, std::move(all));
    rep.sigma_subset = in_sk == sigma.size();
    sigma_minus_sk = long(sigma.size() - in_sk);
    rep.s_prime_size = long(sp.size());
    rep.s_prime = genset_string(sp);
  }

  double sk_sz = cert.sk_size.get_d();
  double sp_sz = rep.s_prime_size.get_d();
  rep.bound = (sk_sz / sp_sz) * rho_sk_hi + (sigma_minus_sk.get_d() / sp_sz) * rho_sigma_hi;
  rep.simplified_bound =
      rho_sk_hi + double(cert.sigma_size) * rho_sigma_hi * rho_sk_hi * rho_sk_hi;
  return rep;
}

EpsilonReport epsilon_chain(unsigned sigma_size, const EstimateReport& rho_sigma,
                            const std::vector<int>& ks, int precision_bits) {
  if (rho_sigma.direction == Direction::Lower)
    throw ValidationError(
        "epsilon_certificate needs an exact or upper rho(Sigma): a lower bound "
        "cannot certify the exponent");
  const int prec = precision_bits;
  Interval rho = rho_interval(rho_sigma, prec);
  Interval lnS = log(Interval::from_long(long(sigma_size), prec));
  // eps := -ln(rho) / (2 ln |Sigma|)
  Interval eps = log(rho).neg() / (Interval::from_long(2, prec) * lnS);

  EpsilonReport rep;
  rep.epsilon_lo = eps.lo_double();
  rep.epsilon_hi = eps.hi_double();
  rep.epsilon = 0.5 * (rep.epsilon_lo + rep.epsilon_hi);

  std::vector<int> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  for (int k : sorted) {
    Interval lhs = Interval::from_long(4L * k, prec) * lnS * pow_ui(rho, (unsigned long)k);
    // (|Sigma|^k)^{-eps} = exp(-eps k ln|Sigma|)
    Interval rhs = exp((eps * Interval::from_long(k, prec) * lnS).neg());
    EpsilonRow row;
    row.k = k;
    row.lhs_hi = lhs.hi_double();
    row.rhs_lo = rhs.lo_double();
    row.chain_ok = lhs.surely_lt(rhs);
    if (row.chain_ok && !rep.smallest_k) rep.smallest_k = k;
    rep.rows.push_back(row);
  }
  return rep;
}

EpsilonReport epsilon_certificate(const GenSet& sigma, const EstimateReport& rho_sigma,
                                  const std::vector<SkCertificate>& certs,
                                  int precision_bits) {
  std::vector<int> ks;
  for (const auto& c : certs) ks.push_back(c.k);
  return epsilon_chain(unsigned(sigma.size()), rho_sigma, ks, precision_bits);
}

SharpnessRow sharpness_scan(long n, int precision_bits) {
  if (n < 3) throw ValidationError("sharpness_scan needs n >= 3");
  SharpnessRow row;
  row.n = n;
  row.objective = Rat(1, n);  // max_x x min{1, 1/(nx)} = 1/n, attained on [1/n, 1]
  auto I_of = [&](int prec) {
    return (Interval::from_long(1, prec) + log(Interval::from_long(n, prec))) /
           Interval::from_long(n, prec);
  };
  Interval I = I_of(precision_bits);
  row.I = I.hi_double();
  Interval third = Interval::from_rat(Rat(1, 3), precision_bits);
  if (I.surely_leq(third)) {
    row.guarantee_applicable = true;
    auto g_of = [&](int prec) {
      Interval iv = I_of(prec);
      return iv / log(iv).neg() / Interval::from_long(4, prec);
    };
    row.guarantee = g_of(precision_bits).hi_double();
    row.guarantee_met = certified_rat_geq(row.objective, g_of, precision_bits);
  } else if (third.surely_lt(I)) {
    row.guarantee_applicable = false;
  } else {
    throw Error("I vs 1/3 undecidable; raise precision");
  }
  Interval ratio = Interval::from_long(1, precision_bits) /
                   (Interval::from_long(1, precision_bits) +
                    log(Interval::from_long(n, precision_bits)));
  row.ratio = ratio.hi_double();
  return row;
}

double gamma_upper_bound(const Int& set_size, const EstimateReport& rho_upper) {
  if (rho_upper.direction == Direction::Lower)
    throw ValidationError("gamma_upper_bound needs an exact or upper rho estimate");
  if (set_size < 1) throw ValidationError("gamma_upper_bound needs |S| >= 1");
  return 2.0 * std::sqrt(set_size.get_d() * rho_upper.value);
}

std::vector<GammaTrendRow> gamma_trend(unsigned n_min, unsigned n_max) {
  if (n_min < 1 || n_max < n_min) throw ValidationError("bad gamma_trend range");
  std::vector<GammaTrendRow> rows;
  for (unsigned n = n_min; n <= n_max; ++n) {
    GammaTrendRow row;
    row.n_pairs = n;
    row.set_size = 2 * long(n);
    EstimateReport rho = kesten_exact_free(n);
    row.rho = rho.value;
    row.gamma = gamma_upper_bound(row.set_size, rho);
    row.ratio_to_sqrt_size = row.gamma / std::sqrt(row.set_size.get_d());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spectra
