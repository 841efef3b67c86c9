#pragma once

// Filtrations of the section ring of L = -r0 K_X by torus-invariant
// subspaces. Every filtration here is monomial: F^x V_r is spanned by the
// lattice points u of r r0 P with phi_r(u) >= x for an integer-valued
// weight phi_r, so all jumps sit at integers.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/lct.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/piecewise.hpp"
#include "fanokit/polytope.hpp"
#include "fanokit/toric_model.hpp"
#include "fanokit/volumes.hpp"

namespace fanokit {

/// One affine piece of an explicit weight: <slope, u> + level * r + offset.
/// Multiplicativity needs offset <= 0.
struct WeightTerm {
  QVector slope;
  Rational level;
  Rational offset;
};

enum class FiltrationKind { IdealPower, Explicit, Saturated };

inline std::string to_string(FiltrationKind k) {
  switch (k) {
    case FiltrationKind::IdealPower: return "IDEAL_POWER";
    case FiltrationKind::Explicit: return "EXPLICIT";
    case FiltrationKind::Saturated: return "SATURATED";
  }
  return "?";
}

class Filtration {
 public:
  /// F^x V_r = H^0(L^r * I_Z^ceil(x)) for x >= 0 and V_r for x < 0.
  static Filtration ideal_power(const ToricFanoModel& x, const MonomialSubscheme& z) {
    auto prof = blowup_volume_profile(x, z);
    Filtration f(x, FiltrationKind::IdealPower, "ideal-power(" + z.label() + ")");
    f.subscheme_ = z;
    f.tau_ = prof.tau;
    f.profile_ = prof.profile;
    f.e_min_ = 0;
    f.e_max_ = Rational(x.cartier_index()) * prof.tau;
    return f;
  }

  /// phi_r(u) = floor(min_i <slope_i, u> + level_i r + offset_i).
  static Filtration explicit_terms(const ToricFanoModel& x, std::vector<WeightTerm> terms,
                                   std::string label = "explicit") {
    if (terms.empty()) throw Error(ErrorCode::InvalidInput, "explicit filtration needs at least one term");
    for (const auto& t : terms) {
      if (t.slope.size() != x.dimension()) throw Error(ErrorCode::InvalidInput, "weight slope has wrong dimension");
      if (t.offset > 0) throw Error(ErrorCode::InvalidInput, "weight offsets must be <= 0 for multiplicativity");
    }
    Filtration f(x, FiltrationKind::Explicit, std::move(label));
    f.terms_ = std::move(terms);
    f.compute_explicit_bounds();
    return f;
  }

  /// F^x V_r = V_r for x <= 0 and 0 for x > 0.
  static Filtration trivial(const ToricFanoModel& x) {
    return explicit_terms(x, {{QVector(x.dimension(), Rational(0)), Rational(0), Rational(0)}}, "trivial");
  }

  /// phi_r + r * s.
  Filtration shifted(std::int64_t s) const {
    Filtration f = *this;
    f.shift_ += s;
    f.e_min_ += s;
    f.e_max_ += s;
    f.label_ = label_ + (s >= 0 ? "+" : "") + std::to_string(s);
    return f;
  }

  /// The saturation: phi-bar_r(u) = max { j : u in H^0(L^r * I_(r,j)) }.
  Filtration saturated() const {
    Filtration f(model_, FiltrationKind::Saturated, "saturation(" + label_ + ")");
    f.base_ = std::make_shared<const Filtration>(*this);
    f.e_min_ = e_min_;
    f.e_max_ = e_max_;
    return f;
  }

  const ToricFanoModel& model() const { return model_; }
  FiltrationKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const std::optional<MonomialSubscheme>& subscheme() const { return subscheme_; }
  const std::vector<WeightTerm>& terms() const { return terms_; }
  std::int64_t shift() const { return shift_; }
  const Filtration* base() const { return base_.get(); }
  /// Blowup profile and tau of Z (ideal-power filtrations only).
  const PiecewisePolynomial& profile() const { return profile_; }
  const Rational& tau() const { return tau_; }
  /// Shift accumulated along the saturation chain.
  std::int64_t total_shift() const { return shift_ + (base_ ? base_->total_shift() : 0); }
  /// Lower and upper bounds for the jumping numbers divided by r.
  const Rational& e_min_est() const { return e_min_; }
  const Rational& e_max_est() const { return e_max_; }

  /// The innermost non-saturated filtration.
  const Filtration& root() const { return base_ ? base_->root() : *this; }

  /// Is vol(F V^x) known in closed form? True for ideal powers, constant
  /// explicit weights and their saturations.
  bool has_exact_volume() const {
    const Filtration& f = root();
    if (f.kind_ == FiltrationKind::IdealPower) return true;
    return std::all_of(f.terms_.begin(), f.terms_.end(), [](const WeightTerm& t) {
      return std::all_of(t.slope.begin(), t.slope.end(), [](const Rational& a) { return a == 0; });
    });
  }

  std::int64_t scale(std::int64_t r) const { return r * model_.cartier_index(); }

  /// V_r as lattice points of r r0 P, lexicographic.
  std::vector<IntVector> sections(std::int64_t r) const {
    check_level(r);
    return lattice_points(model_.polytope(), scale(r));
  }

  /// phi_r on sections(r), in the same order.
  std::vector<std::int64_t> weights(std::int64_t r) const { return weights_on(r, sections(r)); }

  std::vector<std::int64_t> weights_on(std::int64_t r, const std::vector<IntVector>& pts) const {
    check_level(r);
    std::vector<std::int64_t> out;
    switch (kind_) {
      case FiltrationKind::IdealPower: out = ideal_power_weights(r, pts); break;
      case FiltrationKind::Explicit: out = explicit_weights(r, pts); break;
      case FiltrationKind::Saturated: out = saturated_weights(r, pts); break;
    }
    for (auto& w : out) w += r * shift_;
    return out;
  }

  /// F^x V_r.
  std::vector<IntVector> level(std::int64_t r, const Rational& x) const {
    auto pts = sections(r);
    auto w = weights_on(r, pts);
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (Rational(w[i]) >= x) out.push_back(pts[i]);
    return out;
  }

  /// I_(r,x): per chart, the monomials of F^x V_r in the vertex
  /// trivialization. The zero ideal when F^x V_r = 0.
  MonomialSubscheme base_ideal(std::int64_t r, const Rational& x) const {
    return ideal_of(model_, level(r, x), scale(r), "I(" + std::to_string(r) + "," + fanokit::to_string(x) + ")");
  }

  static MonomialSubscheme ideal_of(const ToricFanoModel& x, const std::vector<IntVector>& pts, std::int64_t s,
                                    std::string label) {
    std::vector<ChartIdeal> charts;
    for (std::size_t c = 0; c < x.charts().size(); ++c) {
      std::vector<Monomial> gens;
      for (const auto& u : pts) gens.push_back(x.local_exponents(c, u, s));
      charts.emplace_back(x.charts()[c].ray_indices.size(), std::move(gens));
    }
    return MonomialSubscheme(std::move(charts), std::move(label));
  }

 private:
  Filtration(const ToricFanoModel& x, FiltrationKind kind, std::string label)
      : model_(x), kind_(kind), label_(std::move(label)) {}

  static void check_level(std::int64_t r) {
    if (r < 1) throw Error(ErrorCode::Precondition, "filtration level r must be positive");
  }

  std::vector<std::int64_t> ideal_power_weights(std::int64_t r, const std::vector<IntVector>& pts) const {
    const auto support = subscheme_->support_charts();
    // ord never exceeds r r0 tau, so one more power is a safe ceiling
    const std::int64_t cap = to_int64(floor_of(Rational(scale(r)) * tau_)) + 1;
    std::vector<std::vector<ChartIdeal>> powers(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      const auto& ideal = subscheme_->chart(support[i]);
      powers[i].push_back(ChartIdeal::unit(ideal.nvars()));
    }
    std::vector<std::int64_t> out;
    out.reserve(pts.size());
    for (const auto& u : pts) {
      std::int64_t m = 0;
      while (m < cap) {
        bool in = true;
        for (std::size_t i = 0; i < support.size() && in; ++i) {
          auto& pw = powers[i];
          while (static_cast<std::int64_t>(pw.size()) <= m + 1) pw.push_back(pw.back() * subscheme_->chart(support[i]));
          in = pw[static_cast<std::size_t>(m + 1)].contains(model_.local_exponents(support[i], u, scale(r)));
        }
        if (!in) break;
        ++m;
      }
      out.push_back(m);
    }
    return out;
  }

  std::vector<std::int64_t> explicit_weights(std::int64_t r, const std::vector<IntVector>& pts) const {
    std::vector<std::int64_t> out;
    out.reserve(pts.size());
    for (const auto& u : pts) {
      std::optional<Rational> best;
      for (const auto& t : terms_) {
        Rational v = dot(u, t.slope) + t.level * Rational(r) + t.offset;
        if (!best || v < *best) best = v;
      }
      out.push_back(to_int64(floor_of(*best)));
    }
    return out;
  }

  std::vector<std::int64_t> saturated_weights(std::int64_t r, const std::vector<IntVector>& pts) const {
    const auto all = base_->sections(r);
    const auto w = base_->weights_on(r, all);
    const std::int64_t lo = *std::min_element(w.begin(), w.end());
    const std::int64_t hi = *std::max_element(w.begin(), w.end());
    std::vector<std::int64_t> out(pts.size(), lo);
    for (std::int64_t j = lo + 1; j <= hi; ++j) {
      std::vector<IntVector> lvl;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (w[i] >= j) lvl.push_back(all[i]);
      auto ideal = ideal_of(model_, lvl, scale(r), "");
      bool any = false;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (out[i] == j - 1 && ideal.contains_section(model_, pts[i], scale(r))) {
          out[i] = j;
          any = true;
        }
      if (!any) break;
    }
    return out;
  }

  // g(v) = min_i <slope_i, v> + level_i on r0 P: the minimum sits at a
  // vertex; the maximum is the top of {(v, t) : t <= g(v)}.
  void compute_explicit_bounds() {
    const std::size_t n = model_.dimension();
    const Rational r0(model_.cartier_index());
    auto g = [&](const QVector& v) {
      std::optional<Rational> best;
      for (const auto& t : terms_) {
        Rational s = dot(v, t.slope) + t.level;
        if (!best || s < *best) best = s;
      }
      return *best;
    };
    std::optional<Rational> lo;
    for (const auto& v : model_.polytope().vertices()) {
      QVector sv = v;
      for (auto& c : sv) c *= r0;
      Rational val = g(sv);
      if (!lo || val < *lo) lo = val;
    }
    e_min_ = *lo;
    std::vector<Halfspace> hs;
    for (const auto& h : model_.polytope().inequalities()) {
      IntVector nrm = h.normal;
      nrm.push_back(0);
      hs.push_back({nrm, h.offset * r0});
    }
    for (const auto& t : terms_) {
      Integer den = 1;
      for (const auto& a : t.slope) den = lcm(den, Integer(a.get_den()));
      IntVector nrm;
      for (const auto& a : t.slope) nrm.push_back(to_int64(Integer(a * Rational(den))));
      nrm.push_back(-to_int64(den));
      hs.push_back({nrm, -t.level * Rational(den)});
    }
    IntVector floor_normal(n + 1, 0);
    floor_normal[n] = 1;
    hs.push_back({floor_normal, e_min_ - 1});
    auto lifted = RationalPolytope::from_inequalities(n + 1, std::move(hs));
    Rational hi = e_min_;
    for (const auto& v : lifted.vertices()) hi = std::max(hi, v[n]);
    e_max_ = hi;
  }

  ToricFanoModel model_;
  FiltrationKind kind_;
  std::string label_;
  std::optional<MonomialSubscheme> subscheme_;
  Rational tau_;
  PiecewisePolynomial profile_;
  std::vector<WeightTerm> terms_;
  std::shared_ptr<const Filtration> base_;
  std::int64_t shift_ = 0;
  Rational e_min_;
  Rational e_max_;

};

inline Filtration ideal_power_filtration(const ToricFanoModel& x, const MonomialSubscheme& z) {
  return Filtration::ideal_power(x, z);
}

/// I_(r,x) and the saturated space F-bar^x V_r = H^0(L^r * I_(r,x)).
struct Saturation {
  MonomialSubscheme ideal;
  std::vector<IntVector> sections;
};

inline Saturation saturate(const Filtration& f, std::int64_t r, const Rational& x) {
  auto ideal = f.base_ideal(r, x);
  auto secs = sections_in(f.model(), ideal, f.scale(r));
  return {std::move(ideal), std::move(secs)};
}

/// Default integer window e_- < e_min, e_+ > e_max.
inline std::int64_t default_e_plus(const Filtration& f) { return to_int64(ceil_of(f.e_max_est())) + 1; }
inline std::int64_t default_e_minus(const Filtration& f) { return to_int64(ceil_of(f.e_min_est())) - 1; }

inline constexpr std::int64_t kDefaultRCap = 64;

/// Smallest r1 with F^{r e_-} V_r = V_r and I_(r, r e_-) = O_X for every
/// r in [r1, 2 r1].
inline std::int64_t find_r1(const Filtration& f, std::int64_t e_minus, std::int64_t r_cap = kDefaultRCap) {
  if (Rational(e_minus) >= f.e_min_est())
    throw Error(ErrorCode::Precondition, "e_- must lie below e_min = " + to_string(f.e_min_est()));
  auto good = [&](std::int64_t r) {
    auto pts = f.sections(r);
    auto w = f.weights_on(r, pts);
    for (auto v : w)
      if (v < r * e_minus) return false;
    return f.base_ideal(r, Rational(r * e_minus)).is_unit();
  };
  std::map<std::int64_t, bool> seen;
  for (std::int64_t r1 = 1; r1 <= r_cap; ++r1) {
    bool ok = true;
    for (std::int64_t r = r1; r <= 2 * r1 && ok; ++r) {
      auto it = seen.find(r);
      if (it == seen.end()) it = seen.emplace(r, good(r)).first;
      ok = it->second;
    }
    if (ok) return r1;
  }
  throw Error(ErrorCode::R1NotFound, "no r1 <= " + std::to_string(r_cap));
}

/// The ideal sequence I_(r, r e_+) ⊆ ... ⊆ I_(r, r e_- + 1) on X x A^1,
/// M = r (e_+ - e_-).
inline IdealSequenceOnXxA1 family_ideal_sequence(const Filtration& f, std::int64_t r, std::int64_t e_plus,
                                                 std::int64_t e_minus) {
  if (e_plus <= e_minus) throw Error(ErrorCode::Precondition, "need e_+ > e_-");
  std::vector<MonomialSubscheme> ideals;
  const std::int64_t m = r * (e_plus - e_minus);
  for (std::int64_t i = 0; i < m; ++i) ideals.push_back(f.base_ideal(r, Rational(r * e_plus - i)));
  return IdealSequenceOnXxA1(f.model(), std::move(ideals));
}

struct WeightRecord {
  std::int64_t k = 0;
  std::int64_t h0 = 0;              // h^0(L^{kr})
  std::vector<std::int64_t> dims;  // h^0(L^{kr} J_(k;r,j)), j = k r e_- + 1 .. k r e_+
  std::int64_t v = 0;
  std::int64_t w = 0;
};

struct WeightSeries {
  std::int64_t r = 0;
  std::int64_t e_plus = 0;
  std::int64_t e_minus = 0;
  std::vector<WeightRecord> records;
};

inline constexpr std::size_t kDefaultCompositionCap = 20000000;

/// v_r(k) and w_r(k) for k = 1..k_max. J_(k;r,.) is built one factor at a
/// time: J_(k;r,j) = sum_i J_(k-1;r,j-i) I_(r,i), which is the sum over all
/// compositions of j with k parts.
inline WeightSeries compute_weight_series(const Filtration& f, std::int64_t r, unsigned k_max, std::int64_t e_plus,
                                          std::int64_t e_minus,
                                          std::size_t composition_cap = kDefaultCompositionCap) {
  if (e_plus <= e_minus) throw Error(ErrorCode::Precondition, "need e_+ > e_-");
  const auto& x = f.model();
  const std::int64_t e = e_plus - e_minus;
  std::vector<MonomialSubscheme> base;
  for (std::int64_t j = r * e_minus; j <= r * e_plus; ++j) base.push_back(f.base_ideal(r, Rational(j)));
  if (!base.front().is_unit())
    throw Error(ErrorCode::Precondition, "I_(r, r e_-) is not O_X; r is below r1");
  WeightSeries out{r, e_plus, e_minus, {}};
  std::vector<MonomialSubscheme> cur = base;
  std::size_t compositions = 0;
  for (unsigned k = 1; k <= k_max; ++k) {
    if (k > 1) {
      compositions += cur.size() * base.size();
      if (compositions > composition_cap)
        throw Error(ErrorCode::CombinatorialBlowup, "composition count exceeds " + std::to_string(composition_cap));
      std::vector<MonomialSubscheme> next(cur.size() + base.size() - 1, MonomialSubscheme::zero(x));
      for (std::size_t a = 0; a < cur.size(); ++a) {
        if (cur[a].is_zero()) continue;
        for (std::size_t b = 0; b < base.size(); ++b) {
          if (base[b].is_zero() || next[a + b].is_unit()) continue;
          next[a + b] = next[a + b] + cur[a] * base[b];
        }
      }
      cur = std::move(next);
    }
    const std::int64_t s = f.scale(static_cast<std::int64_t>(k) * r);
    const auto pts = lattice_points(x.polytope(), s);
    WeightRecord rec;
    rec.k = k;
    rec.h0 = static_cast<std::int64_t>(pts.size());
    // cur[i] is J_(k; r, k r e_- + i); skip the lower end
    for (std::size_t i = 1; i < cur.size(); ++i) {
      std::int64_t d = 0;
      if (cur[i].is_unit()) {
        d = rec.h0;
      } else if (!cur[i].is_zero()) {
        for (const auto& u : pts)
          if (cur[i].contains_section(x, u, s)) ++d;
      }
      rec.dims.push_back(d);
      rec.v += d;
    }
    rec.w = -static_cast<std::int64_t>(k) * r * e * rec.h0 + rec.v;
    out.records.push_back(std::move(rec));
  }
  return out;
}

/// A_r = lim v_r(k) n! / (k r r0)^{n+1}, from the eventual polynomial.
inline Rational a_r_from_series(const Filtration& f, const WeightSeries& s) {
  const auto n = static_cast<unsigned>(f.model().dimension());
  std::vector<Integer> v;
  for (const auto& rec : s.records) v.emplace_back(static_cast<long>(rec.v));
  auto fit = fit_eventual_polynomial(v, n + 1);
  return fit.leading_coefficient * Rational(factorial(n)) / pow(Rational(f.scale(s.r)), n + 1);
}

/// int_{e_-}^{e_+} vol(F-bar V^x) dx when it is known exactly.
inline std::optional<Rational> exact_filtration_integral(const Filtration& f, std::int64_t e_plus,
                                                         std::int64_t e_minus) {
  const Filtration& root = f.root();
  if (!f.has_exact_volume()) return std::nullopt;
  const auto& x = f.model();
  const auto n = static_cast<unsigned>(x.dimension());
  const Rational r0(x.cartier_index());
  const Rational full = pow(r0, n) * anticanonical_volume(x);
  const Rational s(f.total_shift());
  if (root.kind() == FiltrationKind::IdealPower) {
    // the ideal-power filtration is saturated; vol(F V^x) = r0^n vol(x / r0)
    // for x >= 0 and r0^n V below, all translated by the shift
    Rational lo = Rational(e_minus) - s, hi = Rational(e_plus) - s;
    Rational total = 0;
    if (lo < 0) total += full * (std::min(hi, Rational(0)) - lo);
    if (hi > 0) {
      Rational a = std::max(lo, Rational(0)) / r0, b = hi / r0;
      total += pow(r0, n + 1) * integrate(root.profile(), a, b, Extension::Constant);
    }
    return total;
  }
  // constant weights: the jump sits at g = min level
  Rational g = root.terms().front().level;
  for (const auto& t : root.terms()) g = std::min(g, t.level);
  g += s;
  Rational top = std::clamp(g, Rational(e_minus), Rational(e_plus));
  return full * (top - Rational(e_minus));
}

struct FiltrationVolume {
  Rational value;
  bool approximate = false;
};

/// vol(F V^x) = lim dim F^{rx} V_r / (r^n / n!).
inline FiltrationVolume filtration_volume(const Filtration& f, const Rational& at, unsigned samples = 0) {
  const auto& x = f.model();
  const auto n = static_cast<unsigned>(x.dimension());
  const Rational r0(x.cartier_index());
  const Rational full = pow(r0, n) * anticanonical_volume(x);
  const Filtration& root = f.root();
  const Rational s(f.total_shift());
  if (root.kind() == FiltrationKind::IdealPower) {
    Rational y = at - s;
    if (y < 0) return {full, false};
    return {pow(r0, n) * root.profile().evaluate_extended(y / r0), false};
  }
  if (f.has_exact_volume()) {
    Rational g = root.terms().front().level;
    for (const auto& t : root.terms()) g = std::min(g, t.level);
    g += s;
    if (at < g) return {full, false};
    if (at > g) return {Rational(0), false};
  }
  // Ehrhart fit over r = m D with D clearing every denominator in sight
  Integer d = at.get_den();
  for (const auto& t : root.terms()) {
    d = lcm(d, Integer(t.level.get_den()));
    d = lcm(d, Integer(t.offset.get_den()));
    for (const auto& a : t.slope) d = lcm(d, Integer(a.get_den()));
  }
  if (samples == 0) samples = n + 5;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::int64_t step = to_int64(d) << attempt;
    std::vector<Integer> counts;
    for (unsigned m = 1; m <= samples; ++m) {
      std::int64_t r = step * m;
      counts.emplace_back(static_cast<long>(f.level(r, at * Rational(r)).size()));
    }
    try {
      auto fit = fit_eventual_polynomial(counts, n);
      return {fit.leading_coefficient * Rational(factorial(n)) / pow(Rational(step), n), true};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoStabilization) throw;
    }
  }
  throw Error(ErrorCode::NoStabilization, "filtration dimensions did not settle into a polynomial");
}

struct ArSample {
  std::int64_t r = 0;
  Rational a;
  Rational d;
};

struct DInftyReport {
  std::int64_t e_plus = 0;
  std::int64_t e_minus = 0;
  std::int64_t r1 = 0;
  std::vector<ArSample> samples;
  Rational a_limit;
  std::optional<Rational> integral;  // int vol(F-bar V^x) when exact
  Rational d_infty;
  bool approximate = false;
};

/// d_r = 1 - e / r0 + A_r / V.
inline Rational d_from_a(const ToricFanoModel& x, std::int64_t e, const Rational& a) {
  return 1 - Rational(e) / Rational(x.cartier_index()) + a / anticanonical_volume(x);
}

inline DInftyReport compute_d_infty(const Filtration& f, std::int64_t e_plus, std::int64_t e_minus,
                                   const std::vector<std::int64_t>& r_list, unsigned k_max = 10,
                                   std::int64_t r_cap = kDefaultRCap,
                                   std::size_t composition_cap = kDefaultCompositionCap) {
  if (Rational(e_plus) <= f.e_max_est())
    throw Error(ErrorCode::Precondition, "e_+ must exceed e_max = " + to_string(f.e_max_est()));
  if (Rational(e_minus) >= f.e_min_est())
    throw Error(ErrorCode::Precondition, "e_- must lie below e_min = " + to_string(f.e_min_est()));
  const auto& x = f.model();
  const auto n = static_cast<unsigned>(x.dimension());
  const std::int64_t e = e_plus - e_minus;
  DInftyReport out;
  out.e_plus = e_plus;
  out.e_minus = e_minus;
  out.r1 = find_r1(f, e_minus, r_cap);
  for (auto r : r_list) {
    if (r < out.r1)
      throw Error(ErrorCode::Precondition, "r = " + std::to_string(r) + " is below r1 = " + std::to_string(out.r1));
    auto series = compute_weight_series(f, r, k_max, e_plus, e_minus, composition_cap);
    Rational a = a_r_from_series(f, series);
    out.samples.push_back({r, a, d_from_a(x, e, a)});
  }
  out.integral = exact_filtration_integral(f, e_plus, e_minus);
  if (out.integral) {
    out.a_limit = *out.integral / pow(Rational(x.cartier_index()), n + 1);
  } else {
    if (out.samples.empty()) throw Error(ErrorCode::Precondition, "no exact integral and no r samples");
    out.a_limit = out.samples.back().a;
    out.approximate = true;
  }
  out.d_infty = d_from_a(x, e, out.a_limit);
  return out;
}

/// Per-k check of Claim-type inclusions G^{j+k-1} W ⊆ H^0(L^{kr} J) ⊆
/// F-bar^j V_{kr}, summed over j, plus the limit bound r0^{n+1} A_r <= int.
struct SandwichRow {
  std::int64_t k = 0;
  std::int64_t lower = 0;
  std::int64_t v = 0;
  std::int64_t upper = 0;
};

struct SandwichReport {
  std::int64_t r = 0;
  std::vector<SandwichRow> rows;
  bool finite_k_holds = true;
  std::optional<bool> limit_upper_holds;
};

inline SandwichReport check_sandwich(const Filtration& f, const WeightSeries& series) {
  const auto& x = f.model();
  const std::int64_t r = series.r;
  const Filtration sat = f.saturated();
  const auto base_pts = sat.sections(r);
  const auto base_w = sat.weights_on(r, base_pts);
  SandwichReport out;
  out.r = r;
  // psi(u) = best total saturated weight of u as a sum of k points of V_r
  std::map<IntVector, std::int64_t> psi;
  for (std::size_t i = 0; i < base_pts.size(); ++i) psi[base_pts[i]] = base_w[i];
  for (const auto& rec : series.records) {
    const std::int64_t k = rec.k;
    if (k > 1) {
      std::map<IntVector, std::int64_t> next;
      for (const auto& [u, val] : psi)
        for (std::size_t i = 0; i < base_pts.size(); ++i) {
          IntVector s = u;
          for (std::size_t d = 0; d < s.size(); ++d) s[d] += base_pts[i][d];
          std::int64_t cand = val + base_w[i];
          auto [it, fresh] = next.emplace(std::move(s), cand);
          if (!fresh && it->second < cand) it->second = cand;
        }
      psi = std::move(next);
    }
    const auto top_pts = sat.sections(k * r);
    const auto top_w = sat.weights_on(k * r, top_pts);
    SandwichRow row{k, 0, rec.v, 0};
    for (std::int64_t j = k * r * series.e_minus + 1; j <= k * r * series.e_plus; ++j) {
      for (const auto& [u, val] : psi)
        if (val >= j + k - 1) ++row.lower;
      for (auto w : top_w)
        if (w >= j) ++row.upper;
    }
    if (!(row.lower <= row.v && row.v <= row.upper)) out.finite_k_holds = false;
    out.rows.push_back(row);
  }
  if (auto integral = exact_filtration_integral(f, series.e_plus, series.e_minus)) {
    const auto n = static_cast<unsigned>(x.dimension());
    try {
      Rational a = a_r_from_series(f, series);
      out.limit_upper_holds = pow(Rational(x.cartier_index()), n + 1) * a <= *integral;
    } catch (const Error& e) {
      // too few k to read off A_r; only the finite rows are checked
      if (e.code() != ErrorCode::NoStabilization) throw;
    }
  }
  return out;
}

/// lct(X x A^1, I_r^{1/(r r0)}; (t)) along r_list for the family attached to f.
inline std::vector<Rational> family_product_lcts(const Filtration& f, const std::vector<std::int64_t>& r_list,
                                                 std::int64_t e_plus, std::int64_t e_minus) {
  std::vector<Rational> out;
  for (auto r : r_list) {
    auto seq = family_ideal_sequence(f, r, e_plus, e_minus);
    out.push_back(lct_on_product_with_line(f.model(), seq, Rational(1) / Rational(f.scale(r))));
  }
  return out;
}

}  // namespace fanokit
