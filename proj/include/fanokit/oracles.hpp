#pragma once

// Brute-force reference computations. They deliberately avoid the Newton
// polyhedron, ChartIdeal arithmetic, and polytope vertex code used by the
// main path, so agreement is evidence rather than tautology.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/rational.hpp"
#include "fanokit/toric_model.hpp"

namespace fanokit::oracle {

enum class Method { LatticeCount, ValuationEnum, HandFormula };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::LatticeCount: return "LATTICE_COUNT";
    case Method::ValuationEnum: return "VALUATION_ENUM";
    case Method::HandFormula: return "HAND_FORMULA";
  }
  return "?";
}

struct OracleResult {
  std::string quantity;
  Method method;
  Rational value;
  std::map<std::string, std::string> parameters;
};

/// Lattice points u with <u, rho> >= -scale for all rays, scanned over the
/// box [-B, B]^n with B derived from the rays alone (never from vertices).
inline std::vector<IntVector> anticanonical_sections(const ToricFanoModel& x, std::int64_t scale,
                                                     std::size_t cap = 2000000) {
  const std::size_t n = x.dimension();
  // |u_i| <= scale * (sum of |rho| entries) is a safe, crude box for Fano
  // polytopes whose rays span positively.
  std::int64_t bound = 0;
  for (const auto& r : x.rays())
    for (auto c : r) bound += c < 0 ? -c : c;
  bound *= scale;
  std::vector<IntVector> out;
  IntVector u(n, -bound);
  std::size_t visited = 0;
  while (true) {
    if (++visited > cap * 50) throw Error(ErrorCode::SizeCap, "oracle enumeration box too large");
    bool inside = true;
    for (const auto& r : x.rays()) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += r[i] * u[i];
      if (s < -scale) {
        inside = false;
        break;
      }
    }
    if (inside) {
      out.push_back(u);
      if (out.size() > cap) throw Error(ErrorCode::SizeCap, "oracle section count exceeds cap");
    }
    std::size_t i = 0;
    while (i < n && u[i] == bound) u[i++] = -bound;
    if (i == n) break;
    ++u[i];
  }
  return out;
}

/// Is `a` a sum of k generators plus a non-negative vector?
class PowerMembership {
 public:
  explicit PowerMembership(std::vector<IntVector> gens) : gens_(std::move(gens)) {}

  bool contains(const IntVector& a, unsigned k) {
    if (k == 0) return true;
    auto key = std::make_pair(a, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (const auto& g : gens_) {
      bool fits = true;
      IntVector rest(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        rest[i] = a[i] - g[i];
        if (rest[i] < 0) fits = false;
      }
      if (fits && contains(rest, k - 1)) {
        ok = true;
        break;
      }
    }
    memo_[key] = ok;
    return ok;
  }

 private:
  std::vector<IntVector> gens_;
  std::map<std::pair<IntVector, unsigned>, bool> memo_;
};

inline IntVector chart_exponents(const ToricFanoModel& x, std::size_t chart, const IntVector& u, std::int64_t scale) {
  IntVector a;
  for (auto r : x.charts()[chart].ray_indices) {
    std::int64_t s = scale;
    for (std::size_t i = 0; i < u.size(); ++i) s += x.rays()[r][i] * u[i];
    a.push_back(s);
  }
  return a;
}

/// dim H^0(X x A^1, L^k) / H^0(L^k * ideal^k) with L = -r r0 K, counted
/// monomial by monomial: a pair (u, t^i) is a coset representative unless
/// its exponent vector lies in the k-th power of the chart ideal on every
/// chart. Only t-degrees below kM can fail.
inline std::int64_t oracle_h0_quotient(const ToricFanoModel& x, const IdealSequenceOnXxA1& s, std::int64_t r,
                                       unsigned k, std::size_t cap = 200000) {
  if (k == 0) return 0;
  const std::int64_t scale = static_cast<std::int64_t>(k) * r * x.cartier_index();
  const auto sections = anticanonical_sections(x, scale, cap);
  const std::size_t m = s.M();
  const std::size_t n = x.dimension();
  std::vector<PowerMembership> members;
  for (std::size_t c = 0; c < x.charts().size(); ++c) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& g : s.ideals()[i].chart(c).generators()) {
        IntVector e = g;
        e.push_back(static_cast<std::int64_t>(i));
        gens.push_back(e);
      }
    IntVector tm(n + 1, 0);
    tm[n] = static_cast<std::int64_t>(m);
    gens.push_back(tm);
    members.emplace_back(std::move(gens));
  }
  std::int64_t count = 0;
  for (const auto& u : sections)
    for (std::size_t i = 0; i < k * m; ++i) {
      bool in = true;
      for (std::size_t c = 0; c < x.charts().size() && in; ++c) {
        IntVector a = chart_exponents(x, c, u, scale);
        a.push_back(static_cast<std::int64_t>(i));
        in = members[c].contains(a, k);
      }
      if (!in) ++count;
      if (static_cast<std::size_t>(count) > cap * 64) throw Error(ErrorCode::SizeCap, "quotient too large");
    }
  return count;
}

/// dim H^0(X, -k r0 K_X * I_Z^m), counted directly.
inline std::int64_t oracle_h0_ideal_power(const ToricFanoModel& x, const MonomialSubscheme& z, std::int64_t k,
                                          unsigned m) {
  const std::int64_t scale = k * x.cartier_index();
  std::vector<PowerMembership> members;
  for (const auto& ci : z.charts()) members.emplace_back(ci.generators());
  std::int64_t count = 0;
  for (const auto& u : anticanonical_sections(x, scale)) {
    bool in = true;
    for (std::size_t c = 0; c < x.charts().size() && in; ++c)
      in = members[c].contains(chart_exponents(x, c, u, scale), m);
    if (in) ++count;
  }
  return count;
}

/// Leading coefficient of m -> f(m) (degree `degree`) from exact finite
/// differences of samples m = 1..values.size(); nullopt when the
/// (degree+1)-th differences do not vanish on the last three windows.
inline std::optional<Rational> leading_coefficient(const std::vector<std::int64_t>& values, unsigned degree) {
  std::vector<Integer> d;
  for (auto v : values) d.emplace_back(static_cast<long>(v));
  if (d.size() < degree + 4) return std::nullopt;
  std::vector<std::vector<Integer>> levels{d};
  for (unsigned l = 0; l <= degree; ++l) {
    std::vector<Integer> next;
    const auto& prev = levels.back();
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.emplace_back(prev[i + 1] - prev[i]);
    levels.push_back(next);
  }
  const auto& top = levels.back();
  for (std::size_t w = 0; w < 3; ++w)
    if (top[top.size() - 1 - w] != 0) return std::nullopt;
  // the degree-th difference of a degree-d polynomial is d! * leading
  return Rational(levels[degree].back()) / Rational(factorial(degree));
}

/// vol(sigma^*(-K) - xF) from counts of H^0(-k r0 K * I^{k r0 x}) for
/// k = step, 2 step, ..., where step * r0 * x must be an integer.
inline OracleResult oracle_blowup_volume(const ToricFanoModel& x, const MonomialSubscheme& z, const Rational& at,
                                         std::int64_t step, unsigned samples = 6) {
  const std::size_t n = x.dimension();
  const std::int64_t r0 = x.cartier_index();
  Rational per = at * Rational(static_cast<long>(step * r0));
  if (!is_integer(per) || per < 0) throw Error(ErrorCode::Precondition, "step * r0 * x must be a non-negative integer");
  const auto m_unit = static_cast<unsigned>(to_int64(per.get_num()));
  std::vector<std::int64_t> counts;
  for (unsigned i = 1; i <= samples; ++i)
    counts.push_back(oracle_h0_ideal_power(x, z, static_cast<std::int64_t>(i) * step, i * m_unit));
  auto lead = leading_coefficient(counts, static_cast<unsigned>(n));
  if (!lead) throw Error(ErrorCode::NoStabilization, "oracle counts are not polynomial in the sampled range");
  // counts ~ lead * i^n and vol = lim count / ((i step r0)^n / n!) times r0^n
  Rational value = *lead * Rational(factorial(static_cast<unsigned>(n))) /
                   pow(Rational(static_cast<long>(step)), static_cast<unsigned>(n));
  return {"blowup_volume", Method::LatticeCount, value,
          {{"model", x.name()}, {"subscheme", z.label()}, {"x", fanokit::to_string(at)}, {"step", std::to_string(step)}}};
}

/// min over integer w in [0, bound]^n, w != 0, of (sum w)/min_g <w, g>; a
/// box containing every primitive facet normal of the Newton polyhedron.
inline std::optional<Rational> brute_force_lct(const std::vector<IntVector>& gens, std::size_t nvars,
                                               std::int64_t bound) {
  std::optional<Rational> best;
  IntVector w(nvars, 0);
  while (true) {
    std::size_t i = 0;
    while (i < nvars && w[i] == bound) w[i++] = 0;
    if (i == nvars) break;
    ++w[i];
    std::int64_t val = -1;
    for (const auto& g : gens) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < nvars; ++j) s += w[j] * g[j];
      if (val < 0 || s < val) val = s;
    }
    if (val <= 0) continue;
    std::int64_t sum = 0;
    for (auto c : w) sum += c;
    Rational v = make_rational(sum, val);
    if (!best || v < *best) best = v;
  }
  return best;
}

/// Same enumeration for min over w with w_t >= 1 of (sum w - c1 val)/w_t.
inline Rational brute_force_lct_with_line(const std::vector<IntVector>& gens, std::size_t nvars, const Rational& c1,
                                          std::int64_t bound) {
  std::optional<Rational> best;
  IntVector w(nvars, 0);
  const std::size_t t = nvars - 1;
  while (true) {
    std::size_t i = 0;
    while (i < nvars && w[i] == bound) w[i++] = 0;
    if (i == nvars) break;
    ++w[i];
    if (w[t] == 0) continue;
    std::int64_t val = -1;
    for (const auto& g : gens) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < nvars; ++j) s += w[j] * g[j];
      if (val < 0 || s < val) val = s;
    }
    std::int64_t sum = 0;
    for (auto c : w) sum += c;
    Rational v = (Rational(static_cast<long>(sum)) - c1 * Rational(static_cast<long>(val))) /
                 Rational(static_cast<long>(w[t]));
    if (!best || v < *best) best = v;
  }
  return *best;
}

/// Hadamard-type bound on the entries of primitive facet normals of a
/// Newton polyhedron whose generators have entries <= max_exponent.
inline std::int64_t facet_normal_bound(std::size_t nvars, std::int64_t max_exponent) {
  if (nvars <= 1) return 1;
  double b = std::pow(std::sqrt(static_cast<double>(nvars - 1)) * static_cast<double>(max_exponent),
                      static_cast<double>(nvars - 1));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(b - 1e-9)));
}

}  // namespace fanokit::oracle
