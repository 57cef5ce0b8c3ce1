#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "spectra/pipeline.hpp"

using namespace spectra;
using spectra::testing::random_nonneg_hermitean;

namespace {

const GroupPresentation F2 = GroupPresentation::free_group(2);

// Independent maximizer: scan every block of the step function.
std::pair<Rat, std::size_t> brute_force_objective(const LevelProfile& p) {
  Int total = p.total_count(), cum = 0;
  Rat best = -1;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < p.levels.size(); ++i) {
    cum += p.levels[i].second;
    Rat obj = Rat(cum) / Rat(total) * p.levels[i].first;
    if (obj >= best) {
      best = obj;
      best_idx = i;
    }
  }
  return {best, best_idx};
}

LevelProfile random_profile(SplitMix64& rng) {
  std::vector<std::pair<Rat, Int>> raw;
  std::size_t blocks = 1 + rng.bounded(8);
  for (std::size_t i = 0; i < blocks; ++i) {
    Rat v = spectra::testing::rat(long(1 + rng.bounded(40)), long(41 + rng.bounded(400)));
    raw.emplace_back(v, long(1 + rng.bounded(50)));
  }
  return LevelProfile::from_values(std::move(raw));
}

}  // namespace

TEST_CASE("threshold selection worked example") {
  LevelProfile p = LevelProfile::from_values({{Rat(1, 4), 1}, {Rat(1, 16), 12}});
  ThresholdReport r = threshold_select(p);
  CHECK(r.lambda == Rat(1, 16));
  CHECK(r.x0 == 1);
  CHECK(r.objective == Rat(1, 16));
  CHECK(r.I == Rat(1, 13));
  CHECK(r.guarantee_met == GuaranteeStatus::Met);
  CHECK(r.guarantee == doctest::Approx(0.0075).epsilon(0.01));
}

TEST_CASE("threshold selection single block") {
  ThresholdReport r = threshold_select(LevelProfile::from_values({{Rat(1, 4), 1}}));
  CHECK(r.lambda == Rat(1, 4));
  CHECK(r.objective == Rat(1, 4));
  CHECK(r.guarantee_met == GuaranteeStatus::Met);
  CHECK(r.guarantee < 0.25);
}

TEST_CASE("threshold selection on a discretized min{1, 1/(100x)} grid") {
  const long N = 10000;
  std::vector<std::pair<Rat, Int>> raw;
  for (long j = 1; j <= N; ++j)
    raw.emplace_back(std::min(Rat(1), spectra::testing::rat(N, 100 * j)), 1);
  ThresholdReport r = threshold_select(LevelProfile::from_values(std::move(raw)));
  CHECK(r.objective == Rat(1, 100));
  CHECK(r.I.get_d() == doctest::Approx(0.056052).epsilon(0.01));
  CHECK(r.guarantee == doctest::Approx(0.004863).epsilon(0.01));
  CHECK(r.guarantee_met == GuaranteeStatus::Met);
}

TEST_CASE("threshold selection validation") {
  CHECK_THROWS_AS(threshold_select(LevelProfile{}), ValidationError);
  LevelProfile bad;
  bad.levels = {{Rat(1, 4), 1}, {Rat(1, 2), 1}};  // increasing
  CHECK_THROWS_AS(threshold_select(bad), ValidationError);
  CHECK_THROWS_AS(threshold_select(LevelProfile::from_values({{Rat(3, 2), 1}})),
                  ValidationError);  // value > 1
  CHECK_THROWS_AS(LevelProfile::from_values({{Rat(-1, 2), 1}}), ValidationError);
  CHECK_THROWS_AS(LevelProfile::from_values({{Rat(1, 2), 0}}), ValidationError);
}

TEST_CASE("threshold guarantee and brute-force oracle, 10^3 random profiles") {
  SplitMix64 rng(101);
  int applicable = 0;
  for (int i = 0; i < 1000; ++i) {
    LevelProfile p = random_profile(rng);
    ThresholdReport r = threshold_select(p);
    auto [best, idx] = brute_force_objective(p);
    REQUIRE(r.objective == best);
    REQUIRE(r.chosen_level_index == idx);  // ties resolved to the later block
    if (r.I * 3 <= 1) {
      ++applicable;
      REQUIRE(r.guarantee_met == GuaranteeStatus::Met);
      // exact-side sanity: objective > I/(4 |ln I|) evaluated with doubles too
      double I = r.I.get_d();
      REQUIRE(r.objective.get_d() >= I / (-4.0 * std::log(I)) - 1e-15);
    }
  }
  REQUIRE(applicable >= 500);  // the value ranges keep I below 1/3 most of the time
}

TEST_CASE("one-step minorant examples") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  RingElement m = markov(s).element;
  auto [b1, r1] = one_step_minorant(m);
  CHECK(b1 == m);  // uniform input is already one-step
  CHECK(l1_norm(b1) == 1);

  RingElement m2 = power_exact(m, 2);
  auto [b2, r2] = one_step_minorant(m2);
  CHECK(b2.size() == 13);
  for (const Word& w : b2.support_sorted()) CHECK(b2.at(w) == Rat(1, 16));
  CHECK(l1_norm(b2) == Rat(13, 16));

  RadialElement a = radial_markov_power(2, 2);
  auto [rb, rr] = one_step_minorant(a);
  CHECK(radial_l1(rb) == Rat(13, 16));
  CHECK(rb.at(0) == Rat(1, 16));
  CHECK(rb.at(2) == Rat(1, 16));
}

TEST_CASE("one-step minorant validation") {
  RingElement tiny = RingElement::delta(F2, Word{});
  CHECK_THROWS_AS(one_step_minorant(tiny), ValidationError);  // size < 3
  RingElement neg(F2);
  neg.set(Word{}, -1);
  neg.set(parse_word(F2, "a"), 1);
  neg.set(parse_word(F2, "A"), 1);
  CHECK_THROWS_AS(one_step_minorant(neg), ValidationError);
  RingElement nh(F2);
  nh.set(Word{}, 1);
  nh.set(parse_word(F2, "a"), 1);
  nh.set(parse_word(F2, "b"), 1);
  CHECK_THROWS_AS(one_step_minorant(nh), ValidationError);  // not hermitean
}

TEST_CASE("one-step minorant properties, 10^3 random elements") {
  SplitMix64 rng(202);
  const GroupPresentation zz = GroupPresentation::free_abelian(2);
  for (int i = 0; i < 1000; ++i) {
    const GroupPresentation& p = i % 2 ? F2 : zz;
    RingElement a = random_nonneg_hermitean(rng, p, 3 + rng.bounded(5), 4);
    if (a.size() < 3) continue;
    auto [b, rep] = one_step_minorant(a);
    REQUIRE(leq_coefficientwise(b, a));
    REQUIRE(star(b) == b);
    Rat level = -1;  // one-step: a single nonzero coefficient value
    for (const auto& [w, c] : b.coeffs()) {
      REQUIRE(c >= 0);
      if (level < 0) level = c;
      REQUIRE(c == level);
    }
    // l1 guarantee with an exact rational bound: ln size <= size, so it is
    // implied by b_l1 * 4 * size >= a_l1; check the real inequality in doubles
    double lhs = l1_norm(b).get_d();
    double rhs = l1_norm(a).get_d() / (4.0 * std::log(double(a.size())));
    REQUIRE(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("generate_sk worked example at k = 2") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  for (const char* engine : {"dense", "radial"}) {
    EstimatorParams params;
    params.engine = engine;
    SkCertificate c = generate_sk(F2, s, 2, params);
    CAPTURE(engine);
    CHECK(c.sk_size == 13);
    CHECK(c.b_l1 == Rat(13, 16));
    CHECK(c.size_mk == 13);
    CHECK(c.corollary3_ok);
    CHECK(c.consistency_ok);
    CHECK(c.theorem1_rhs == doctest::Approx(8.0 * std::log(4.0) * 0.75).epsilon(1e-12));
    CHECK(c.rho_sigma.direction == Direction::Exact);
  }
}

TEST_CASE("generate_sk at k = 1 returns sigma itself") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  SkCertificate c = generate_sk(F2, s, 1, {});
  CHECK(c.sk_spheres == std::vector<unsigned>{1});
  CHECK(c.sk_size == 4);
  CHECK(c.b_l1 == 1);
}

TEST_CASE("radial and dense engines produce identical S_k for k <= 6") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  for (int k = 1; k <= 6; ++k) {
    EstimatorParams dense, radial;
    dense.engine = "dense";
    radial.engine = "radial";
    // keep the dense S_k moment powers inside the support guard
    dense.moment_n_max = radial.moment_n_max = 2;
    SkCertificate cd = generate_sk(F2, s, k, dense);
    SkCertificate cr = generate_sk(F2, s, k, radial);
    REQUIRE(cd.sk_size == cr.sk_size);
    REQUIRE(cd.b_l1 == cr.b_l1);
    REQUIRE(cd.size_mk == cr.size_mk);
    // the dense word list is exactly the union of the radial spheres
    RingElement ind(F2);
    for (const Word& w : cd.sk_words) ind.set(w, 1);
    REQUIRE(to_radial(ind) == indicator_radial(2, cr.sk_spheres));
  }
}

TEST_CASE("generate_sk invariants across k and groups") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  for (int k : {3, 10, 25, 50}) {
    SkCertificate c = generate_sk(F2, s, k, {});
    CAPTURE(k);
    REQUIRE(c.corollary3_ok);
    REQUIRE(c.consistency_ok);
    REQUIRE(c.rho_sk_lower.value <= c.theorem1_rhs);
    for (unsigned l : c.sk_spheres) {
      REQUIRE(l <= unsigned(k));
      REQUIRE(l % 2 == unsigned(k) % 2);
    }
  }
  // non-free dense path with an exact amenable rho
  const GroupPresentation zz = GroupPresentation::free_abelian(2);
  GenSet sz = parse_genset(zz, "a,A,b,B");
  SkCertificate cz = generate_sk(zz, sz, 3, {});
  CHECK(cz.corollary3_ok);
  CHECK(cz.consistency_ok);
  CHECK(cz.rhs_is_upper_bound);
  GenSet sk = make_genset(zz, cz.sk_words);
  CHECK(sk.is_symmetric());
  for (const Word& w : cz.sk_words) REQUIRE(w.length() <= 3);
}

TEST_CASE("generate_sk validation") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  CHECK_THROWS_AS(generate_sk(F2, s, 0, {}), ValidationError);
  CHECK_THROWS_AS(generate_sk(F2, parse_genset(F2, "a,A"), 2, {}), ValidationError);
  EstimatorParams guard;
  guard.engine = "dense";
  guard.moment_n_max = 2;
  SkCertificate ok = generate_sk(F2, s, 6, guard);  // inside the dense boundary
  CHECK(ok.corollary3_ok);
  CHECK_THROWS_AS(generate_sk(F2, s, 14, guard), GuardError);
}

TEST_CASE("sigma augmentation") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  SkCertificate c2 = generate_sk(F2, s, 2, {});
  AugmentReport a2 = augment_with_sigma(c2);
  CHECK_FALSE(a2.sigma_subset);  // sigma is odd, S_2 is even
  CHECK(a2.s_prime_size == 17);
  double expect = (13.0 / 17.0) * c2.theorem1_rhs + (4.0 / 17.0) * c2.rho_sigma.value;
  CHECK(a2.bound == doctest::Approx(expect).epsilon(1e-12));
  CHECK(a2.bound >= c2.rho_sk_lower.value * 13.0 / 17.0);

  SkCertificate c1 = generate_sk(F2, s, 1, {});
  AugmentReport a1 = augment_with_sigma(c1);
  CHECK(a1.sigma_subset);  // S_1 = sigma, second term vanishes
  CHECK(a1.s_prime_size == 4);
  CHECK(a1.bound == doctest::Approx(c1.theorem1_rhs).epsilon(1e-12));
}

TEST_CASE("epsilon certificate on the free group") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  EstimateReport rho = kesten_exact_free(2);
  std::vector<int> ks;
  for (int k = 80; k <= 100; ++k) ks.push_back(k);
  EpsilonReport rep = epsilon_chain(4, rho, ks, 192);
  CHECK(rep.epsilon == doctest::Approx(0.051879).epsilon(2e-3));
  REQUIRE(rep.smallest_k.has_value());
  CHECK(*rep.smallest_k == 86);
  for (const auto& row : rep.rows)
    if (row.chain_ok) REQUIRE(row.lhs_hi < row.rhs_lo);

  std::vector<SkCertificate> certs;
  for (int k : {84, 86, 90}) certs.push_back(generate_sk(F2, s, k, {}));
  EpsilonReport rep2 = epsilon_certificate(s, rho, certs, 192);
  CHECK(*rep2.smallest_k == 86);
}

TEST_CASE("epsilon certificate degenerate and refused inputs") {
  EstimateReport amen;
  amen.value = 1.0;
  amen.value_sq_exact = Rat(1);
  amen.direction = Direction::Exact;
  EpsilonReport rep = epsilon_chain(4, amen, {10, 100, 1000}, 128);
  CHECK(rep.epsilon == 0.0);
  CHECK_FALSE(rep.smallest_k.has_value());

  EstimateReport lower;
  lower.value = 0.5;
  lower.direction = Direction::Lower;
  CHECK_THROWS_AS(epsilon_chain(4, lower, {10}, 128), ValidationError);
}

TEST_CASE("sharpness scan") {
  SharpnessRow n100 = sharpness_scan(100);
  CHECK(n100.I == doctest::Approx(0.056052).epsilon(1e-4));
  CHECK(n100.objective == Rat(1, 100));
  CHECK(n100.guarantee == doctest::Approx(0.004863).epsilon(1e-3));
  CHECK(n100.ratio == doctest::Approx(0.17845).epsilon(1e-3));
  CHECK(n100.guarantee_applicable);
  CHECK(n100.guarantee_met);

  SharpnessRow n3 = sharpness_scan(3);
  CHECK_FALSE(n3.guarantee_applicable);  // I = (1+ln 3)/3 > 1/3

  CHECK(sharpness_scan(10000).ratio < sharpness_scan(100).ratio);
  double prev = 2.0;
  for (long n : {10L, 100L, 1000L, 10000L, 100000L, 1000000L}) {
    SharpnessRow row = sharpness_scan(n);
    REQUIRE(row.ratio < prev);
    if (row.guarantee_applicable) REQUIRE(row.guarantee_met);
    prev = row.ratio;
  }
  CHECK_THROWS_AS(sharpness_scan(2), ValidationError);
}

TEST_CASE("gamma bound") {
  EstimateReport rho = kesten_exact_free(2);
  CHECK(gamma_upper_bound(4, rho) == doctest::Approx(3.7224).epsilon(1e-4));
  EstimateReport amen;
  amen.value = 1.0;
  amen.direction = Direction::Exact;
  CHECK(gamma_upper_bound(9, amen) == doctest::Approx(6.0).epsilon(1e-12));  // 2 sqrt(|S|)
  EstimateReport lower;
  lower.value = 0.5;
  lower.direction = Direction::Lower;
  CHECK_THROWS_AS(gamma_upper_bound(4, lower), ValidationError);

  auto rows = gamma_trend(2, 50);
  REQUIRE(rows.size() == 49);
  for (std::size_t i = 1; i < rows.size(); ++i)
    REQUIRE(rows[i].ratio_to_sqrt_size < rows[i - 1].ratio_to_sqrt_size);
}
