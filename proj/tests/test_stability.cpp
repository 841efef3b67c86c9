#include <gtest/gtest.h>

#include "fanokit/filtration.hpp"
#include "fanokit/oracles.hpp"
#include "fanokit/stability.hpp"

using namespace fanokit;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Configuration;
}

// vol(-K) read off from lattice counts at scales r0, 2 r0, ...
Rational counted_volume(const ToricFanoModel& x) {
  const auto n = static_cast<unsigned>(x.dimension());
  std::vector<std::int64_t> counts;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n) + 5; ++k)
    counts.push_back(static_cast<std::int64_t>(oracle::anticanonical_sections(x, k * x.cartier_index()).size()));
  auto lead = oracle::leading_coefficient(counts, n);
  return *lead * Rational(factorial(n)) / pow(Rational(x.cartier_index()), n);
}

ToricFanoModel p1113() { return build_model({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -3}}, "P1113"); }

}  // namespace

TEST(Beta, PointOnProjectiveSpaceVanishes) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto x = projective_space(n);
    auto rep = beta(x, MonomialSubscheme::point(x, 0));
    const Rational np1(static_cast<long>(n + 1));
    // int_0^{n+1} ((n+1)^n - x^n) dx = (n+1)^{n+1} - (n+1)^{n+1}/(n+1)
    Rational integral = pow(np1, n + 1) - pow(np1, n + 1) / np1;
    EXPECT_EQ(integral, Rational(static_cast<long>(n)) * pow(np1, n));
    EXPECT_EQ(rep.volume_integral, integral);
    EXPECT_EQ(rep.lct_value, static_cast<long>(n));
    EXPECT_EQ(rep.anticanonical_volume, pow(np1, n));
    EXPECT_EQ(rep.beta, 0);
    EXPECT_EQ(rep.verdict, Verdict::Consistent);
    EXPECT_FALSE(rep.approximate);
  }
}

TEST(Beta, LineOnPlaneAgainstCountingProfile) {
  auto x = catalog_model("P2");
  auto z = MonomialSubscheme::boundary_divisor(x, 0);
  auto rep = beta(x, z);
  EXPECT_EQ(rep.lct_value, 1);
  // the profile is one polynomial of degree <= 2 on [0, tau]; interpolate
  // counted values and integrate that
  const Rational tau = pseudoeffective_threshold(x, z);
  QVector xs, ys;
  for (long i = 0; i < 3; ++i) {
    Rational t = tau * q(i, 3);
    xs.push_back(t);
    ys.push_back(oracle::oracle_blowup_volume(x, z, t, 3).value);
  }
  auto p = interpolate(xs, ys);
  EXPECT_EQ(p(tau), 0);
  EXPECT_EQ(p(tau / 2), oracle::oracle_blowup_volume(x, z, tau / 2, 2).value);
  auto anti = p.antiderivative();
  EXPECT_EQ(rep.volume_integral, anti(tau) - anti(0));
  EXPECT_EQ(rep.beta, rep.lct_value * 9 - rep.volume_integral);
  EXPECT_EQ(rep.beta, 0);
}

TEST(Beta, Errors) {
  auto x = catalog_model("P2");
  EXPECT_EQ(code_of([&] { beta(x, MonomialSubscheme::unit(x)); }), ErrorCode::EmptyOrFull);
  EXPECT_EQ(code_of([&] { beta(x, MonomialSubscheme::zero(x)); }), ErrorCode::EmptyOrFull);
  auto w = catalog_model("P112");
  for (std::size_t c = 0; c < w.charts().size(); ++c)
    if (!w.charts()[c].smooth) {
      EXPECT_EQ(code_of([&] { beta(w, MonomialSubscheme::point(w, c)); }), ErrorCode::UnsupportedSubscheme);
    }
}

TEST(Beta, InvariantUnderPowers) {
  // lct and the profile both rescale by 1/m
  for (const char* name : {"P2", "dP6", "P1xP1"}) {
    auto x = catalog_model(name);
    auto z = MonomialSubscheme::point(x, 0);
    EXPECT_EQ(beta(x, z.power(2)).beta, beta(x, z).beta) << name;
    EXPECT_EQ(beta(x, z.power(3)).beta, beta(x, z).beta) << name;
  }
}

TEST(Beta, NonNegativeOnKahlerEinsteinCatalog) {
  for (const char* name : {"P1", "P2", "P1xP1", "P1xP2", "dP6"}) {
    auto x = catalog_model(name);
    auto scan = semistability_scan(x, standard_candidates(x));
    EXPECT_EQ(scan.failures, 0u) << name;
    EXPECT_FALSE(scan.obstructed) << name;
    for (const auto& e : scan.entries) {
      ASSERT_TRUE(e.report.has_value()) << name << " " << e.candidate << " " << e.message;
      EXPECT_GE(e.report->beta, 0) << name << " " << e.candidate;
      EXPECT_FALSE(e.report->approximate);
    }
  }
}

TEST(Ding, UnitSequenceIsTrivial) {
  for (const char* name : {"P1", "P2"}) {
    auto x = catalog_model(name);
    for (std::size_t m : {1u, 3u}) {
      IdealSequenceOnXxA1 s(x, std::vector<MonomialSubscheme>(m, MonomialSubscheme::unit(x)));
      auto rep = ding_invariant(x, s, 1);
      for (auto w : rep.w) EXPECT_EQ(w, 0);
      EXPECT_EQ(rep.L_power_top, 0);
      EXPECT_EQ(rep.d, 1);
      EXPECT_EQ(rep.lct_product, 1);
      EXPECT_EQ(rep.ding, 0);
      EXPECT_TRUE(rep.semiample_assumed);
    }
  }
}

TEST(Ding, DeformationToNormalConeOnLine) {
  auto x = catalog_model("P1");
  auto p = MonomialSubscheme::point(x, 0);
  IdealSequenceOnXxA1 s(x, {p, p});  // (x, t^2)
  auto rep = ding_invariant(x, s, 1);
  ASSERT_EQ(rep.w.size(), 10u);
  // hand count: the monomials x^a t^i with a + floor(i/2) < k
  EXPECT_EQ(rep.w[0], -2);
  EXPECT_EQ(rep.w[1], -6);
  for (unsigned k = 1; k <= 10; ++k) {
    EXPECT_EQ(rep.w[k - 1], -static_cast<std::int64_t>(k * (k + 1)));
    EXPECT_EQ(rep.w[k - 1], -oracle::oracle_h0_quotient(x, s, 1, k));
  }
  EXPECT_EQ(rep.L_power_top, -2);
  EXPECT_EQ(rep.d, q(1, 2));
  auto gens = s.chart_ideal(0).generators();
  EXPECT_EQ(rep.lct_product, oracle::brute_force_lct_with_line(gens, 2, Rational(1), 8));
  EXPECT_EQ(rep.ding, q(1, 2));
  EXPECT_GE(rep.ding, 0);
}

TEST(Ding, AgreesWithQuotientOracleOnPlane) {
  auto x = catalog_model("P2");
  auto p = MonomialSubscheme::point(x, 0);
  IdealSequenceOnXxA1 s(x, {p.power(2), p});
  for (unsigned k = 1; k <= 4; ++k)
    EXPECT_EQ(ding_weight(x, s, 1, k), -oracle::oracle_h0_quotient(x, s, 1, k));
}

TEST(Ding, ScaleCovariance) {
  auto x = catalog_model("P1");
  auto p = MonomialSubscheme::point(x, 0);
  for (const auto& s : {IdealSequenceOnXxA1(x, {p, p}), IdealSequenceOnXxA1(x, {p.power(2), p})}) {
    auto base = ding_invariant(x, s, 1);
    auto scaled = ding_invariant(x, s.power(x, 2), 2);
    EXPECT_EQ(scaled.d, base.d);
    EXPECT_EQ(scaled.lct_product, base.lct_product);
    EXPECT_EQ(scaled.ding, base.ding);
  }
}

TEST(Ding, MatchesFiltrationWeightSeries) {
  auto x = catalog_model("P1");
  auto f = ideal_power_filtration(x, MonomialSubscheme::point(x, 0));
  const std::int64_t ep = default_e_plus(f), em = default_e_minus(f);
  for (std::int64_t r = 1; r <= 2; ++r) {
    auto seq = family_ideal_sequence(f, r, ep, em);
    auto rep = ding_invariant(x, seq, r);
    auto series = compute_weight_series(f, r, 10, ep, em);
    for (std::size_t i = 0; i < rep.w.size(); ++i) EXPECT_EQ(rep.w[i], series.records[i].w);
    EXPECT_EQ(rep.d, d_from_a(x, ep - em, a_r_from_series(f, series)));
    EXPECT_EQ(rep.lct_product, family_product_lcts(f, {r}, ep, em).front());
    EXPECT_GE(rep.ding, 0);
  }
}

TEST(Ding, NeedsEnoughTerms) {
  auto x = catalog_model("P1");
  auto p = MonomialSubscheme::point(x, 0);
  IdealSequenceOnXxA1 s(x, {p, p});
  EXPECT_EQ(code_of([&] { ding_invariant(x, s, 1, 2); }), ErrorCode::NoStabilization);
  EXPECT_EQ(code_of([&] { ding_invariant(x, s, 0); }), ErrorCode::Precondition);
}

TEST(VolumeBound, ProjectiveSpacesAreExtremal) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto x = projective_space(n);
    auto rep = verify_volume_bound(x);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_TRUE(rep.equality);
    EXPECT_EQ(rep.volume, counted_volume(x));
    ASSERT_TRUE(rep.seshadri_check.has_value());
    EXPECT_EQ(rep.seshadri_check->values.size(), n + 1);
    EXPECT_TRUE(rep.seshadri_check->all_equal_n_plus_1);
    for (const auto& e : rep.seshadri_check->values) EXPECT_EQ(e, static_cast<long>(n + 1));
  }
}

TEST(VolumeBound, StrictCases) {
  auto a = verify_volume_bound(catalog_model("P1xP1"));
  EXPECT_EQ(a.volume, 8);
  EXPECT_EQ(a.bound, 9);
  EXPECT_TRUE(a.satisfied);
  EXPECT_FALSE(a.equality);
  EXPECT_FALSE(a.seshadri_check.has_value());
  for (const char* name : {"P112", "dP6", "P1xP2"}) {
    auto x = catalog_model(name);
    auto rep = verify_volume_bound(x);
    EXPECT_EQ(rep.volume, counted_volume(x)) << name;
    EXPECT_TRUE(rep.satisfied) << name;
    EXPECT_FALSE(rep.equality) << name;
  }
}

TEST(Scan, PlaneCandidates) {
  auto x = catalog_model("P2");
  auto scan = semistability_scan(x, {MonomialSubscheme::point(x, 0), MonomialSubscheme::boundary_divisor(x, 0)});
  ASSERT_EQ(scan.entries.size(), 2u);
  EXPECT_FALSE(scan.obstructed);
  for (const auto& e : scan.entries) {
    ASSERT_TRUE(e.report.has_value());
    EXPECT_EQ(e.report->verdict, Verdict::Consistent);
  }
  EXPECT_TRUE(semistability_scan(x, {}).entries.empty());
}

TEST(Scan, OrderIsIndependentOfThreads) {
  auto x = catalog_model("dP6");
  auto cands = standard_candidates(x);
  auto one = semistability_scan(x, cands, 1);
  auto many = semistability_scan(x, cands, 5);
  ASSERT_EQ(one.entries.size(), cands.size());
  ASSERT_EQ(many.entries.size(), cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    EXPECT_EQ(one.entries[i].candidate, cands[i].label());
    EXPECT_EQ(many.entries[i].candidate, cands[i].label());
    EXPECT_EQ(one.entries[i].report->beta, many.entries[i].report->beta);
  }
}

TEST(Scan, OversizedTestDoubleCollectsErrors) {
  // P(1,1,1,3) has volume 216/3 = 72 > 64 and a singular point that
  // every boundary divisor but one passes through
  auto x = p1113();
  auto bound = verify_volume_bound(x);
  EXPECT_EQ(bound.volume, 72);
  EXPECT_FALSE(bound.satisfied);
  auto cands = standard_candidates(x);
  auto scan = semistability_scan(x, cands);
  EXPECT_EQ(scan.entries.size(), cands.size());
  EXPECT_GT(scan.failures, 0u);
  for (const auto& e : scan.entries)
    if (e.error) {
      EXPECT_EQ(*e.error, ErrorCode::UnsupportedSubscheme);
      EXPECT_FALSE(e.message.empty());
    }
}
