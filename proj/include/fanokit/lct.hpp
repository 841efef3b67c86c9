#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/toric_model.hpp"

namespace fanokit {

/// lct of a monomial ideal on affine space: min over Newton facets <w,a> >= c
/// with c > 0 of (sum w)/c. nullopt stands for +infinity (unit ideal).
inline std::optional<Rational> lct_chart(const ChartIdeal& ideal) {
  if (ideal.is_zero()) throw Error(ErrorCode::ZeroIdeal, "lct of the zero ideal");
  NewtonPolyhedron newt(ideal);
  std::optional<Rational> best;
  for (const auto& f : newt.facets()) {
    if (f.offset <= 0) continue;
    std::int64_t s = 0;
    for (auto w : f.normal) s += w;
    Rational v = make_rational(s, f.offset);
    if (!best || v < *best) best = v;
  }
  return best;
}

/// lct(X; I_Z), minimized over the charts where Z is nontrivial.
inline std::optional<Rational> lct_monomial(const ToricFanoModel& x, const MonomialSubscheme& z) {
  z.validate(x);
  if (!z.is_nonzero()) throw Error(ErrorCode::ZeroIdeal, "lct of the zero ideal");
  std::optional<Rational> best;
  for (auto c : z.support_charts()) {
    if (!x.charts()[c].smooth)
      throw Error(ErrorCode::NotSmoothChart, "chart " + std::to_string(c) + " is not smooth");
    auto v = lct_chart(z.chart(c));
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

/// Largest c2 such that (A^{n+1}, ideal^{c1} (t)^{c2}) is sub log canonical,
/// t the last coordinate: min over Newton facets with w_t > 0 of
/// (sum w - c1 c)/w_t. Facets with w_t = 0 never bind because t^M is a
/// generator.
inline Rational lct_chart_with_line(const ChartIdeal& ideal, const Rational& c1) {
  NewtonPolyhedron newt(ideal);
  const std::size_t t = ideal.nvars() - 1;
  std::optional<Rational> best;
  for (const auto& f : newt.facets()) {
    if (f.normal[t] <= 0) continue;
    std::int64_t s = 0;
    for (auto w : f.normal) s += w;
    Rational v = (Rational(static_cast<long>(s)) - c1 * Rational(static_cast<long>(f.offset))) /
                 Rational(static_cast<long>(f.normal[t]));
    if (!best || v < *best) best = v;
  }
  return *best;  // e_t is always a facet normal
}

inline Rational lct_on_product_with_line(const ToricFanoModel& x, const IdealSequenceOnXxA1& s, const Rational& c1) {
  if (c1 <= 0) throw Error(ErrorCode::Precondition, "c1 must be positive");
  std::optional<Rational> best;
  for (std::size_t c = 0; c < x.charts().size(); ++c) {
    bool trivial = std::all_of(s.ideals().begin(), s.ideals().end(),
                               [&](const MonomialSubscheme& z) { return z.chart(c).is_unit(); });
    // a unit chart contributes lct((t)) = 1, smooth or not
    Rational v = 1;
    if (!trivial) {
      if (!x.charts()[c].smooth)
        throw Error(ErrorCode::NotSmoothChart, "chart " + std::to_string(c) + " is not smooth");
      v = lct_chart_with_line(s.chart_ideal(c), c1);
    }
    if (!best || v < *best) best = v;
  }
  return *best;
}

/// Values lct(X, a_r^{c/r}) = lct(a_r) r / c along a graded family.
struct GradedFamilyEstimate {
  std::vector<std::int64_t> r_list;
  std::vector<std::optional<Rational>> values;  // nullopt: unbounded (unit ideal)
  bool non_decreasing = true;
  std::optional<Rational> supremum;
  bool unbounded = false;
};

inline GradedFamilyEstimate graded_family_lct_estimate(
    const ToricFanoModel& x, const std::vector<std::pair<std::int64_t, MonomialSubscheme>>& family, const Rational& c) {
  if (c <= 0) throw Error(ErrorCode::Precondition, "c must be positive");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i; j < family.size(); ++j) {
      std::int64_t sum = family[i].first + family[j].first;
      for (const auto& [r, a] : family)
        if (r == sum && !a.contains(family[i].second * family[j].second))
          throw Error(ErrorCode::FamilyNotGraded, "a_" + std::to_string(family[i].first) + " * a_" +
                                                      std::to_string(family[j].first) + " is not contained in a_" +
                                                      std::to_string(sum));
    }
  GradedFamilyEstimate out;
  for (const auto& [r, a] : family) {
    out.r_list.push_back(r);
    auto l = lct_monomial(x, a);
    if (!l) {
      out.values.push_back(std::nullopt);
      out.unbounded = true;
      continue;
    }
    out.values.push_back(*l * Rational(static_cast<long>(r)) / c);
  }
  std::optional<Rational> prev;
  for (const auto& v : out.values) {
    if (!v) continue;
    if (prev && *v < *prev) out.non_decreasing = false;
    prev = v;
    if (!out.supremum || *v > *out.supremum) out.supremum = v;
  }
  return out;
}

}  // namespace fanokit
