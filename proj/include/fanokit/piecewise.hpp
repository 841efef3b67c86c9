#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/rational.hpp"

namespace fanokit {

/// Dense univariate polynomial over Q, coefficients lowest degree first,
/// with no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(QVector coefficients) : coeffs_(std::move(coefficients)) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial(QVector{c}); }

  /// c - x^n
  static Polynomial constant_minus_power(const Rational& c, unsigned n) {
    QVector co(n + 1, Rational(0));
    co[0] += c;
    co[n] -= 1;
    return Polynomial(std::move(co));
  }

  const QVector& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial antiderivative() const {
    QVector co(coeffs_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) co[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    return Polynomial(std::move(co));
  }

  Polynomial operator+(const Polynomial& o) const {
    QVector co(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) co[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) co[i] += o.coeffs_[i];
    return Polynomial(std::move(co));
  }

  Polynomial operator*(const Rational& s) const {
    QVector co = coeffs_;
    for (auto& c : co) c *= s;
    return Polynomial(std::move(co));
  }

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + fanokit::to_string(coeffs_[i]) + ")";
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  QVector coeffs_;
};

/// Newton-form interpolation through (xs[i], ys[i]), returned in the
/// monomial basis. The xs must be distinct.
inline Polynomial interpolate(const QVector& xs, const QVector& ys) {
  const std::size_t m = xs.size();
  QVector dd = ys;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  // Horner on the Newton form: p = dd[m-1]; p = p*(x - xs[i]) + dd[i].
  QVector acc{dd[m - 1]};
  for (std::size_t step = m - 1; step-- > 0;) {
    QVector next(acc.size() + 1, Rational(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= acc[i] * xs[step];
    }
    next[0] += dd[step];
    acc = std::move(next);
  }
  return Polynomial(std::move(acc));
}

enum class Extension {
  None,      // integration bounds must lie inside the breakpoint span
  Constant,  // use the stored left/right tail constants outside the span
};

/// Continuous piecewise-polynomial function on [x_0, x_m]. Interval i is
/// [x_i, x_{i+1}); evaluation at an interior breakpoint uses the piece on
/// its right, and the final breakpoint uses the last piece.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;

  PiecewisePolynomial(QVector breakpoints, std::vector<Polynomial> pieces, int degree_bound,
                      std::optional<Rational> left_tail = std::nullopt,
                      std::optional<Rational> right_tail = std::nullopt)
      : breakpoints_(std::move(breakpoints)),
        pieces_(std::move(pieces)),
        degree_bound_(degree_bound),
        left_tail_(std::move(left_tail)),
        right_tail_(std::move(right_tail)) {
    if (breakpoints_.size() < 2 || pieces_.size() + 1 != breakpoints_.size())
      throw Error(ErrorCode::InvalidInput, "piece count must be breakpoint count - 1");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (!(breakpoints_[i] < breakpoints_[i + 1]))
        throw Error(ErrorCode::InvalidInput, "breakpoints must be strictly increasing");
    for (const auto& p : pieces_)
      if (p.degree() > degree_bound_) throw Error(ErrorCode::InvalidInput, "piece exceeds degree bound");
    for (std::size_t i = 1; i < pieces_.size(); ++i)
      if (pieces_[i - 1](breakpoints_[i]) != pieces_[i](breakpoints_[i]))
        throw Error(ErrorCode::InvalidInput, "pieces disagree at breakpoint " + fanokit::to_string(breakpoints_[i]));
    if (left_tail_ && *left_tail_ != pieces_.front()(breakpoints_.front()))
      throw Error(ErrorCode::InvalidInput, "left tail breaks continuity");
    if (right_tail_ && *right_tail_ != pieces_.back()(breakpoints_.back()))
      throw Error(ErrorCode::InvalidInput, "right tail breaks continuity");
  }

  const QVector& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  int degree_bound() const { return degree_bound_; }
  const Rational& lower() const { return breakpoints_.front(); }
  const Rational& upper() const { return breakpoints_.back(); }
  const std::optional<Rational>& left_tail() const { return left_tail_; }
  const std::optional<Rational>& right_tail() const { return right_tail_; }

  std::size_t piece_index(const Rational& x) const {
    if (x < lower() || x > upper())
      throw Error(ErrorCode::OutOfDomain, fanokit::to_string(x) + " outside [" + fanokit::to_string(lower()) + ", " +
                                              fanokit::to_string(upper()) + "]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, pieces_.size() - 1);
  }

  Rational operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

  /// Like operator() but falls back to the tail constants outside the span.
  Rational evaluate_extended(const Rational& x) const {
    if (x < lower()) {
      if (!left_tail_) throw Error(ErrorCode::OutOfDomain, "no left extension");
      return *left_tail_;
    }
    if (x > upper()) {
      if (!right_tail_) throw Error(ErrorCode::OutOfDomain, "no right extension");
      return *right_tail_;
    }
    return (*this)(x);
  }

  bool operator==(const PiecewisePolynomial& o) const {
    return breakpoints_ == o.breakpoints_ && pieces_ == o.pieces_;
  }

 private:
  QVector breakpoints_;
  std::vector<Polynomial> pieces_;
  int degree_bound_ = 0;
  std::optional<Rational> left_tail_;
  std::optional<Rational> right_tail_;
};

/// Exact integral of `pp` over [a, b].
inline Rational integrate(const PiecewisePolynomial& pp, const Rational& a, const Rational& b,
                          Extension ext = Extension::None) {
  if (b < a) throw Error(ErrorCode::Precondition, "integrate requires a <= b");
  Rational total = 0;
  Rational lo = a, hi = b;
  if (a < pp.lower() || b > pp.upper()) {
    if (ext == Extension::None)
      throw Error(ErrorCode::OutOfDomain, "integration bounds exceed the breakpoint span");
    if (a < pp.lower()) {
      if (!pp.left_tail()) throw Error(ErrorCode::OutOfDomain, "no left extension");
      Rational stop = std::min(b, pp.lower());
      total += *pp.left_tail() * (stop - a);
      lo = stop;
    }
    if (b > pp.upper()) {
      if (!pp.right_tail()) throw Error(ErrorCode::OutOfDomain, "no right extension");
      Rational start = std::max(a, pp.upper());
      total += *pp.right_tail() * (b - start);
      hi = start;
    }
    if (lo >= hi) return total;
  }
  const auto& bp = pp.breakpoints();
  for (std::size_t i = 0; i < pp.pieces().size(); ++i) {
    Rational s = std::max(lo, bp[i]);
    Rational e = std::min(hi, bp[i + 1]);
    if (s >= e) continue;
    Polynomial anti = pp.pieces()[i].antiderivative();
    total += anti(e) - anti(s);
  }
  return total;
}

/// Merges adjacent intervals carrying the same polynomial.
inline PiecewisePolynomial simplify(const PiecewisePolynomial& pp) {
  QVector bp{pp.breakpoints().front()};
  std::vector<Polynomial> pieces{pp.pieces().front()};
  for (std::size_t i = 1; i < pp.pieces().size(); ++i) {
    if (pp.pieces()[i] == pieces.back()) continue;
    bp.push_back(pp.breakpoints()[i]);
    pieces.push_back(pp.pieces()[i]);
  }
  bp.push_back(pp.breakpoints().back());
  return PiecewisePolynomial(std::move(bp), std::move(pieces), pp.degree_bound(), pp.left_tail(), pp.right_tail());
}

/// Result of recognising the tail of an integer sequence as a polynomial.
struct EventualPolynomial {
  Polynomial polynomial;        // in the sequence index
  Rational leading_coefficient; // coefficient of index^degree
  std::size_t stable_from = 0;  // first index of the fitted window
};

/// Treats values[i] as f(first_index + i) and checks that the (degree+1)-st
/// finite differences vanish on `windows` consecutive windows at the end of
/// the sequence. On success the degree-`degree` polynomial through the last
/// degree+1 values is returned; otherwise NoStabilization.
inline EventualPolynomial fit_eventual_polynomial(const std::vector<Integer>& values, unsigned degree,
                                                  std::int64_t first_index = 1, unsigned windows = 3) {
  const std::size_t need = degree + 1 + windows;
  if (values.size() < need)
    throw Error(ErrorCode::NoStabilization, "need " + std::to_string(need) + " values to certify a degree-" +
                                                std::to_string(degree) + " tail, have " +
                                                std::to_string(values.size()));
  std::vector<Integer> diff = values;
  for (unsigned d = 0; d <= degree; ++d) {
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  for (std::size_t w = 0; w < windows; ++w)
    if (diff[diff.size() - 1 - w] != 0)
      throw Error(ErrorCode::NoStabilization, "finite difference of order " + std::to_string(degree + 1) +
                                                  " is nonzero near the end of the sequence");
  std::size_t start = values.size() - (degree + 1);
  // Walk back while the vanishing persists to report where the tail begins.
  std::size_t stable = diff.size() - windows;
  while (stable > 0 && diff[stable - 1] == 0) --stable;
  QVector xs, ys;
  for (std::size_t i = start; i < values.size(); ++i) {
    xs.emplace_back(Integer(static_cast<long>(first_index + static_cast<std::int64_t>(i))));
    ys.emplace_back(values[i]);
  }
  Polynomial p = interpolate(xs, ys);
  Rational lead = p.degree() == static_cast<int>(degree) ? p.coefficients().back() : Rational(0);
  return {std::move(p), lead, static_cast<std::size_t>(first_index) + stable};
}

}  // namespace fanokit
