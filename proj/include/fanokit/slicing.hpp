#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "fanokit/linalg.hpp"
#include "fanokit/piecewise.hpp"
#include "fanokit/polytope.hpp"

namespace fanokit {

/// u -> <coefficients, u> + constant
struct AffineFunctional {
  IntVector coefficients;
  Rational constant = 0;

  Rational operator()(const QVector& u) const { return dot(coefficients, u) + constant; }
};

namespace detail {

// Fits the degree <= n polynomial of `f` on [lo, hi] from n+1 equally
// spaced samples and checks one more sample strictly inside.
template <class F>
Polynomial fit_piece(const F& f, const Rational& lo, const Rational& hi, unsigned n) {
  QVector xs, ys;
  for (unsigned i = 0; i <= n; ++i) {
    Rational x = lo + (hi - lo) * make_rational(i, n == 0 ? 1 : n);
    if (n == 0) x = lo;
    xs.push_back(x);
    ys.push_back(f(x));
  }
  Polynomial p = interpolate(xs, ys);
  Rational probe = lo + (hi - lo) * make_rational(1, 2 * static_cast<std::int64_t>(n) + 3);
  if (p(probe) != f(probe))
    throw std::logic_error("volume is not polynomial on [" + to_string(lo) + ", " + to_string(hi) + "]");
  return p;
}

}  // namespace detail

/// x -> n! vol(P ∩ {lam >= x}). Breakpoints are the distinct values of lam
/// at the vertices of P; the left tail (x below the range) is n! vol(P)
/// and the right tail is 0.
inline PiecewisePolynomial sliced_volume_function(const RationalPolytope& p, const AffineFunctional& lam) {
  if (linalg::gcd_of(lam.coefficients) == 0) throw Error(ErrorCode::Precondition, "functional must be nonzero");
  if (!p.is_full_dimensional()) throw Error(ErrorCode::DegeneratePolytope, "slicing needs a full-dimensional polytope");
  std::set<Rational> values;
  for (const auto& v : p.vertices()) values.insert(lam(v));
  QVector bp(values.begin(), values.end());
  const unsigned n = static_cast<unsigned>(p.dimension());
  auto f = [&](const Rational& x) {
    return normalized_volume(p.intersected(Halfspace{lam.coefficients, x - lam.constant}));
  };
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) pieces.push_back(detail::fit_piece(f, bp[i], bp[i + 1], n));
  Rational full = normalized_volume(p);
  return PiecewisePolynomial(std::move(bp), std::move(pieces), static_cast<int>(n), full, Rational(0));
}

/// <normal, u> >= offset + slope * x
struct ParametricHalfspace {
  IntVector normal;
  Rational offset;
  Rational slope;

  Halfspace at(const Rational& x) const { return {normal, offset + slope * x}; }
};

/// The family Q(x) = {u : all constraints hold at x}. Volumes of such a
/// family are piecewise polynomial in x; the pieces change only where some
/// vertex of Q(x) (an affine function of x) crosses another constraint.
class ParametricPolytope {
 public:
  ParametricPolytope(std::size_t dim, std::vector<ParametricHalfspace> constraints)
      : dim_(dim), constraints_(std::move(constraints)) {}

  RationalPolytope at(const Rational& x) const {
    std::vector<Halfspace> hs;
    hs.reserve(constraints_.size());
    for (const auto& c : constraints_) hs.push_back(c.at(x));
    return RationalPolytope::from_inequalities(dim_, std::move(hs));
  }

  Rational normalized_volume_at(const Rational& x) const { return normalized_volume(at(x)); }

  /// All x > `after` where some candidate vertex (n constraints tight)
  /// meets an additional constraint.
  std::vector<Rational> critical_values(const Rational& after) const {
    std::set<Rational> out;
    linalg::for_each_combination(constraints_.size(), dim_, [&](const std::vector<std::size_t>& idx) {
      linalg::QMatrix a;
      QVector b0, b1;
      for (auto i : idx) {
        a.push_back(to_rational(constraints_[i].normal));
        b0.push_back(constraints_[i].offset);
        b1.push_back(constraints_[i].slope);
      }
      auto u0 = linalg::solve(a, b0);
      if (!u0) return;
      auto u1 = *linalg::solve(a, b1);
      for (std::size_t j = 0; j < constraints_.size(); ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        const auto& c = constraints_[j];
        Rational constant = dot(c.normal, *u0) - c.offset;
        Rational rate = dot(c.normal, u1) - c.slope;
        if (rate == 0) continue;
        Rational root = -constant / rate;
        if (root > after) out.insert(root);
      }
    });
    return {out.begin(), out.end()};
  }

  /// Exact x -> n! vol(Q(x)) for x >= start, up to the point past which it
  /// vanishes identically. Requires Q(x) to become empty for large x.
  PiecewisePolynomial volume_function(const Rational& start) const {
    auto crit = critical_values(start);
    QVector bp{start};
    bp.insert(bp.end(), crit.begin(), crit.end());
    const unsigned n = static_cast<unsigned>(dim_);
    auto f = [&](const Rational& x) { return normalized_volume_at(x); };
    Rational beyond = bp.back() + 1;
    if (f(beyond) != 0) throw Error(ErrorCode::Precondition, "parametric polytope does not vanish for large x");
    std::vector<Polynomial> pieces;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) pieces.push_back(detail::fit_piece(f, bp[i], bp[i + 1], n));
    while (!pieces.empty() && pieces.back().is_zero()) {
      pieces.pop_back();
      bp.pop_back();
    }
    if (pieces.empty()) throw Error(ErrorCode::Precondition, "parametric polytope is empty from the start");
    Rational left = f(start);
    PiecewisePolynomial raw(std::move(bp), std::move(pieces), static_cast<int>(n), left, Rational(0));
    return simplify(raw);
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<ParametricHalfspace>& constraints() const { return constraints_; }

 private:
  std::size_t dim_;
  std::vector<ParametricHalfspace> constraints_;
};

}  // namespace fanokit
