#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/lct.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/parallel.hpp"
#include "fanokit/piecewise.hpp"
#include "fanokit/toric_model.hpp"
#include "fanokit/volumes.hpp"

namespace fanokit {

enum class Verdict { Consistent, ObstructsSemistability };

inline std::string to_string(Verdict v) {
  return v == Verdict::Consistent ? "CONSISTENT" : "OBSTRUCTS_SEMISTABILITY";
}

struct BetaReport {
  std::string model;
  std::string subscheme;
  Rational lct_value;
  Rational volume_integral;  // int_0^tau of the blowup profile
  Rational anticanonical_volume;
  Rational beta;
  Verdict verdict = Verdict::Consistent;
  bool approximate = false;
};

/// beta(Z) = lct(X; I_Z) vol(-K_X) - int_0^infty vol(sigma^*(-K_X) - xF) dx.
inline BetaReport beta(const ToricFanoModel& x, const MonomialSubscheme& z) {
  auto prof = blowup_volume_profile(x, z);
  auto l = lct_monomial(x, z);
  if (!l) throw Error(ErrorCode::EmptyOrFull, "lct of the unit ideal is unbounded");
  BetaReport out;
  out.model = x.name();
  out.subscheme = z.label();
  out.lct_value = *l;
  out.volume_integral = integrate(prof.profile, Rational(0), prof.tau);
  out.anticanonical_volume = anticanonical_volume(x);
  out.beta = out.lct_value * out.anticanonical_volume - out.volume_integral;
  out.verdict = out.beta < 0 ? Verdict::ObstructsSemistability : Verdict::Consistent;
  out.approximate = prof.approximate;
  return out;
}

struct DingReport {
  std::string model;
  std::int64_t r = 1;
  std::int64_t r0 = 1;
  std::size_t M = 0;
  std::vector<std::int64_t> w;  // w(1), ..., w(k_max)
  std::size_t stable_from = 0;
  Rational L_power_top;  // (L-bar^{n+1}) = (n+1)! * leading coefficient of w
  Rational d;
  Rational lct_product;
  Rational ding;
  // relative semiampleness of the induced line bundle is assumed, not checked
  bool semiample_assumed = true;
};

/// w(k) = -dim H^0(L^k) / H^0(L^k * ideal^k) on X x A^1 with L = -r r0 K,
/// counted from the t-graded pieces of the k-th power.
inline std::int64_t ding_weight(const ToricFanoModel& x, const IdealSequenceOnXxA1& s, std::int64_t r, unsigned k) {
  const std::int64_t scale = static_cast<std::int64_t>(k) * r * x.cartier_index();
  const auto h0 = static_cast<std::int64_t>(lattice_points(x.polytope(), scale).size());
  const auto graded = s.graded_power(x, k);
  std::int64_t w = 0;
  for (std::size_t i = 0; i + 1 < graded.size(); ++i)
    w -= h0 - static_cast<std::int64_t>(sections_in(x, graded[i], scale).size());
  return w;
}

inline DingReport ding_invariant(const ToricFanoModel& x, const IdealSequenceOnXxA1& s, std::int64_t r,
                                 unsigned k_max = 10) {
  if (r < 1) throw Error(ErrorCode::Precondition, "r must be positive");
  const auto n = static_cast<unsigned>(x.dimension());
  DingReport out;
  out.model = x.name();
  out.r = r;
  out.r0 = x.cartier_index();
  out.M = s.M();
  std::vector<Integer> values;
  for (unsigned k = 1; k <= k_max; ++k) {
    out.w.push_back(ding_weight(x, s, r, k));
    values.emplace_back(static_cast<long>(out.w.back()));
  }
  auto fit = fit_eventual_polynomial(values, n + 1);
  out.stable_from = fit.stable_from;
  out.L_power_top = fit.leading_coefficient * Rational(factorial(n + 1));
  const Rational rr0(r * out.r0);
  out.d = 1 + out.L_power_top / (Rational(static_cast<long>(n + 1)) * pow(rr0, n + 1) * anticanonical_volume(x));
  out.lct_product = lct_on_product_with_line(x, s, 1 / rr0);
  out.ding = out.lct_product - out.d;
  return out;
}

struct SeshadriCheck {
  std::vector<std::size_t> charts;
  std::vector<Rational> values;
  bool all_equal_n_plus_1 = true;
};

struct VolumeBoundReport {
  std::string model;
  std::size_t n = 0;
  Rational bound;
  Rational volume;
  bool satisfied = false;
  bool equality = false;
  std::optional<SeshadriCheck> seshadri_check;
};

/// vol(-K_X) <= (n+1)^n, with the Seshadri constants at the fixed points
/// in the equality case.
inline VolumeBoundReport verify_volume_bound(const ToricFanoModel& x) {
  VolumeBoundReport out;
  out.model = x.name();
  out.n = x.dimension();
  const auto n = static_cast<unsigned>(out.n);
  out.bound = pow(Rational(static_cast<long>(n + 1)), n);
  out.volume = anticanonical_volume(x);
  out.satisfied = out.volume <= out.bound;
  out.equality = out.volume == out.bound;
  if (out.equality && x.all_charts_smooth()) {
    SeshadriCheck check;
    for (std::size_t c = 0; c < x.charts().size(); ++c) {
      // on a curve the constant is still the end of the V - x^n stretch
      Rational eps = n >= 2 ? seshadri_constant(x, c)
                            : seshadri_from_profile(blowup_volume_profile(x, MonomialSubscheme::point(x, c)).profile,
                                                    out.volume, n);
      check.charts.push_back(c);
      check.values.push_back(eps);
      if (eps != Rational(static_cast<long>(n + 1))) check.all_equal_n_plus_1 = false;
    }
    out.seshadri_check = std::move(check);
  }
  return out;
}

/// Torus-fixed smooth points, every boundary divisor, and I_p^2 at each
/// smooth fixed point.
inline std::vector<MonomialSubscheme> standard_candidates(const ToricFanoModel& x) {
  std::vector<MonomialSubscheme> out;
  for (std::size_t c = 0; c < x.charts().size(); ++c)
    if (x.charts()[c].smooth) out.push_back(MonomialSubscheme::point(x, c));
  for (std::size_t r = 0; r < x.rays().size(); ++r) out.push_back(MonomialSubscheme::boundary_divisor(x, r));
  for (std::size_t c = 0; c < x.charts().size(); ++c)
    if (x.charts()[c].smooth) out.push_back(MonomialSubscheme::point(x, c).power(2));
  return out;
}

struct ScanEntry {
  std::string candidate;
  std::optional<BetaReport> report;
  std::optional<ErrorCode> error;
  std::string message;
};

struct ScanReport {
  std::string model;
  std::vector<ScanEntry> entries;  // input order
  bool obstructed = false;         // some beta < 0: X is not Ding semistable
  std::size_t failures = 0;
};

inline ScanReport semistability_scan(const ToricFanoModel& x, const std::vector<MonomialSubscheme>& candidates,
                                     unsigned threads = thread_count()) {
  ScanReport out;
  out.model = x.name();
  out.entries = parallel_map(
      candidates,
      [&](const MonomialSubscheme& z) {
        ScanEntry e;
        e.candidate = z.label();
        try {
          e.report = beta(x, z);
        } catch (const Error& err) {
          e.error = err.code();
          e.message = err.what();
        }
        return e;
      },
      threads);
  for (const auto& e : out.entries) {
    if (e.error) ++out.failures;
    if (e.report && e.report->verdict == Verdict::ObstructsSemistability) out.obstructed = true;
  }
  return out;
}

}  // namespace fanokit
