#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/piecewise.hpp"
#include "fanokit/slicing.hpp"
#include "fanokit/toric_model.hpp"

namespace fanokit {

/// x -> vol(sigma^*(-K_X) - xF) on the blowup of X along Z.
struct BlowupVolumeProfile {
  std::string model;
  std::string subscheme;
  PiecewisePolynomial profile;  // pieces on [0, tau]; tails V (left) and 0 (right)
  Rational tau;
  std::optional<Rational> epsilon;
  bool approximate = false;
  std::string method;  // "vertex-slice" or "newton-region"
};

namespace detail {

inline void check_blowup_center(const ToricFanoModel& x, const MonomialSubscheme& z) {
  z.validate(x);
  if (!z.is_nonzero() || !z.is_proper())
    throw Error(ErrorCode::EmptyOrFull, "center must be a nonzero proper ideal sheaf");
  for (auto c : z.support_charts())
    if (!x.charts()[c].smooth)
      throw Error(ErrorCode::UnsupportedSubscheme, "subscheme meets the non-smooth chart " + std::to_string(c));
}

// Is chart `c` of z exactly the maximal ideal, with every other chart unit?
inline std::optional<std::size_t> as_reduced_point(const MonomialSubscheme& z) {
  auto support = z.support_charts();
  if (support.size() != 1) return std::nullopt;
  const auto& ideal = z.chart(support.front());
  if (!(ideal == ChartIdeal::maximal(ideal.nvars()))) return std::nullopt;
  return support.front();
}

}  // namespace detail

/// Region of P where every chart's exponent vector lies in x * Newt(I_chart),
/// as a parametric polytope in x. Its normalized volume is the blowup volume
/// at x: the volume of H^0(kL * I^{ceil(kx)}) only sees the integral closure
/// of the powers, which is cut out by the Newton polyhedron.
inline ParametricPolytope blowup_region(const ToricFanoModel& x, const MonomialSubscheme& z) {
  const std::size_t n = x.dimension();
  std::vector<ParametricHalfspace> cons;
  for (const auto& h : x.polytope().inequalities()) cons.push_back({h.normal, h.offset, Rational(0)});
  for (auto c : z.support_charts()) {
    const auto& chart = x.charts()[c];
    NewtonPolyhedron newt(z.chart(c));
    for (const auto& f : newt.facets()) {
      if (f.offset <= 0) continue;
      // sum_j w_j (<u, rho_j> + 1) >= x * offset
      IntVector normal(n, 0);
      std::int64_t wsum = 0;
      for (std::size_t j = 0; j < chart.ray_indices.size(); ++j) {
        const auto& rho = x.rays()[chart.ray_indices[j]];
        for (std::size_t d = 0; d < n; ++d) normal[d] += f.normal[j] * rho[d];
        wsum += f.normal[j];
      }
      cons.push_back({normal, Rational(-wsum), Rational(f.offset)});
    }
  }
  return ParametricPolytope(n, std::move(cons));
}

inline BlowupVolumeProfile blowup_volume_profile(const ToricFanoModel& x, const MonomialSubscheme& z) {
  detail::check_blowup_center(x, z);
  BlowupVolumeProfile out;
  out.model = x.name();
  out.subscheme = z.label();
  if (auto c = detail::as_reduced_point(z)) {
    const auto& chart = x.charts()[*c];
    AffineFunctional lam{IntVector(x.dimension(), 0), Rational(static_cast<long>(chart.ray_indices.size()))};
    for (auto r : chart.ray_indices)
      for (std::size_t d = 0; d < x.dimension(); ++d) lam.coefficients[d] += x.rays()[r][d];
    out.profile = simplify(sliced_volume_function(x.polytope(), lam));
    out.method = "vertex-slice";
  } else {
    out.profile = blowup_region(x, z).volume_function(Rational(0));
    out.method = "newton-region";
  }
  out.tau = out.profile.upper();
  return out;
}

/// Largest x such that the profile equals V - y^n on all of [0, x].
inline Rational seshadri_from_profile(const PiecewisePolynomial& profile, const Rational& volume, unsigned n) {
  const Polynomial target = Polynomial::constant_minus_power(volume, n);
  Rational end = profile.lower();
  for (std::size_t i = 0; i < profile.pieces().size(); ++i) {
    if (!(profile.pieces()[i] == target)) break;
    end = profile.breakpoints()[i + 1];
  }
  return end;
}

/// Seshadri constant of -K_X at the torus-fixed point of chart `chart_id`.
inline Rational seshadri_constant(const ToricFanoModel& x, std::size_t chart_id) {
  if (x.dimension() < 2) throw Error(ErrorCode::DimensionTooSmall, "Seshadri constants need n >= 2");
  if (!x.chart(chart_id).smooth)
    throw Error(ErrorCode::NotSmoothPoint, "fixed point of chart " + std::to_string(chart_id) + " is singular");
  auto prof = blowup_volume_profile(x, MonomialSubscheme::point(x, chart_id));
  return seshadri_from_profile(prof.profile, anticanonical_volume(x), static_cast<unsigned>(x.dimension()));
}

inline Rational pseudoeffective_threshold(const ToricFanoModel& x, const MonomialSubscheme& z) {
  return blowup_volume_profile(x, z).tau;
}

}  // namespace fanokit
