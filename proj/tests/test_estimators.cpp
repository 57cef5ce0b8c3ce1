#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "spectra/estimators.hpp"

using namespace spectra;

namespace {

const GroupPresentation F2 = GroupPresentation::free_group(2);
const GroupPresentation Z2 = GroupPresentation::free_abelian(2);
const GroupPresentation C23 = GroupPresentation::free_product_cyclic({2, 3});

}  // namespace

TEST_CASE("trace moments of the F2 standard markov operator") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  MomentSequence dense = trace_moments(markov(s).element, 3);
  REQUIRE(dense.tau.size() == 3);
  CHECK(dense.tau[0] == Rat(1, 4));
  CHECK(dense.tau[1] == Rat(7, 64));
  CHECK(dense.tau[2] == Rat(29, 512));
  MomentSequence rad = trace_moments(radial_markov_power(2, 1), 3);
  CHECK(rad.tau == dense.tau);
  MomentSequence dp = free_markov_moments(2, 3);
  CHECK(dp.tau == dense.tau);
  CHECK(dense.exact);
}

TEST_CASE("trace moments reject non-hermitean input") {
  RingElement a = RingElement::delta(F2, parse_word(F2, "a"));
  CHECK_THROWS_AS(trace_moments(a, 2), ValidationError);
}

TEST_CASE("moment sequences are log-convex and bounded") {
  for (int n_max : {4, 6}) {
    for (MomentSequence m :
         {free_markov_moments(2, n_max), free_markov_moments(3, n_max),
          trace_moments(markov(parse_genset(Z2, "a,A,b,B")).element, n_max),
          trace_moments(markov(parse_genset(C23, "a,b,bb")).element, n_max)}) {
      CAPTURE(m.element);
      for (std::size_t i = 0; i < m.tau.size(); ++i) {
        REQUIRE(m.tau[i] > 0);
        REQUIRE(m.tau[i] <= 1);  // markov operators have l1 norm 1
      }
      for (std::size_t i = 1; i + 1 < m.tau.size(); ++i)
        REQUIRE(m.tau[i] * m.tau[i] <= m.tau[i - 1] * m.tau[i + 1]);
    }
  }
}

TEST_CASE("lower bound families from moments") {
  MomentSequence m = free_markov_moments(2, 3);
  auto reports = radius_lower_bounds(m);
  REQUIRE(reports.size() == 5);  // 3 roots + 2 ratios
  // (7/64)^{1/4} and sqrt(29/56)
  CHECK(reports[1].value == doctest::Approx(0.57508165).epsilon(1e-7));
  CHECK(reports[4].value == doctest::Approx(0.71962291).epsilon(1e-7));
  for (const auto& r : reports) {
    CHECK(r.direction == Direction::Lower);
    CHECK(r.value <= 1.0);
  }
  // roots nondecreasing, ratios nondecreasing and dominating the roots
  MomentSequence big = free_markov_moments(2, 12);
  auto all = radius_lower_bounds(big);
  std::size_t n = big.tau.size();
  for (std::size_t i = 1; i < n; ++i) REQUIRE(all[i].value >= all[i - 1].value);
  for (std::size_t i = n + 1; i < all.size(); ++i)
    REQUIRE(all[i].value >= all[i - 1].value);
  for (std::size_t i = 0; i + 1 < n; ++i) REQUIRE(all[n + i].value >= all[i + 1].value);
  CHECK(best_lower_bound(big).value == all.back().value);
  MomentSequence one = free_markov_moments(2, 1);
  CHECK_THROWS_AS(best_lower_bound(one), ValidationError);
}

TEST_CASE("ball power iteration") {
  GenSet sf = parse_genset(F2, "a,A,b,B");
  GenSet sz = parse_genset(Z2, "a,A,b,B");
  // R = 0: only delta_e survives and m(S) has no identity coefficient
  CHECK(ball_power_iteration(F2, sf, 0, 50, 0).value == 0.0);
  double prev = 0.0;
  for (unsigned R : {2u, 5u, 10u, 20u}) {
    double vf = ball_power_iteration(F2, sf, R, 400, 0).value;
    REQUIRE(vf >= prev);  // larger subspace, larger Rayleigh quotient
    prev = vf;
  }
  CHECK(prev <= std::sqrt(3.0) / 2.0 + 1e-12);
  double vz = ball_power_iteration(Z2, sz, 15, 600, 0).value;
  CHECK(vz > 0.95);
  CHECK(vz <= 1.0);
  // radial fast path and dense BFS agree on the free group
  // non-standard sets take the dense BFS path, where the guard applies
  GenSet sf_sq = symmetrize(F2, {parse_word(F2, "ab"), parse_word(F2, "a")});
  CHECK_NOTHROW(ball_power_iteration(F2, sf_sq, 4, 100, 0));
  CHECK_THROWS_AS(ball_power_iteration(F2, sf_sq, 12, 100, 0, /*guard=*/1000), GuardError);
}

TEST_CASE("exact free-set spectral radii") {
  CHECK(kesten_exact_free(1).value == 1.0);
  CHECK(kesten_exact_free(2).value == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(kesten_exact_free(5).value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(kesten_exact_free(2).direction == Direction::Exact);
  CHECK(*kesten_exact_free(2).value_sq_exact == Rat(3, 4));
  // ratio estimates from the radial engine converge to the value from below
  for (unsigned r : {2u, 5u}) {
    double exact = kesten_exact_free(r).value;
    double best = best_lower_bound(free_markov_moments(r, 40)).value;
    REQUIRE(best <= exact);
    REQUIRE(best > 0.97 * exact);
  }
}

TEST_CASE("tree comparison bounds") {
  TreeBound b4 = tree_comparison_bound(4);
  CHECK(b4.paper_bound == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b4.refined_bound == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(tree_comparison_bound(1).paper_bound == 1.0);
  for (long s : {2L, 3L, 10L, 100L}) {
    TreeBound b = tree_comparison_bound(s);
    REQUIRE(b.refined_bound >= b.paper_bound);
  }
}

TEST_CASE("monte carlo return frequencies match exact moments within 4 sigma") {
  struct Case {
    GroupPresentation p;
    std::string set;
  } cases[] = {{F2, "a,A,b,B"}, {C23, "a,b,bb"}, {Z2, "a,A,b,B"}};
  for (const auto& c : cases) {
    GenSet s = parse_genset(c.p, c.set);
    MomentSequence m = trace_moments(markov(s).element, 3);
    for (int n = 1; n <= 3; ++n) {
      WalkResult w = monte_carlo_return(c.p, s, 2 * n, 40000, 42);
      double exact = m.tau[std::size_t(n - 1)].get_d();
      CAPTURE(c.set);
      CAPTURE(n);
      REQUIRE(std::abs(w.frequency - exact) <= 4.0 * w.stderr_est + 1e-12);
    }
  }
}

TEST_CASE("monte carlo is reproducible and validated") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  WalkResult a = monte_carlo_return(F2, s, 4, 5000, 7);
  WalkResult b = monte_carlo_return(F2, s, 4, 5000, 7);
  CHECK(a.returns == b.returns);
  CHECK(a.frequency == b.frequency);
  WalkResult c = monte_carlo_return(F2, s, 4, 5000, 8);
  CHECK(a.returns != c.returns);  // different stream
  WalkResult one = monte_carlo_return(F2, s, 2, 1, 3);
  CHECK((one.frequency == 0.0 || one.frequency == 1.0));
  CHECK_THROWS_WITH_AS(monte_carlo_return(F2, s, 3, 10, 1), "steps must be even",
                       ValidationError);
}

TEST_CASE("derived seeds decorrelate trial streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}
