#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/linalg.hpp"
#include "fanokit/rational.hpp"
#include "fanokit/toric_model.hpp"

namespace fanokit {

using Monomial = IntVector;

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Monomial ideal of k[x_1..x_m] stored by its minimal generators (sorted).
/// No generators means the zero ideal.
class ChartIdeal {
 public:
  ChartIdeal() = default;
  ChartIdeal(std::size_t nvars, std::vector<Monomial> generators) : nvars_(nvars), gens_(std::move(generators)) {
    for (const auto& g : gens_) {
      if (g.size() != nvars_) throw Error(ErrorCode::InvalidInput, "generator has wrong number of exponents");
      for (auto e : g)
        if (e < 0) throw Error(ErrorCode::InvalidInput, "negative exponent in monomial generator");
    }
    minimize();
  }

  static ChartIdeal unit(std::size_t nvars) { return ChartIdeal(nvars, {Monomial(nvars, 0)}); }
  static ChartIdeal zero(std::size_t nvars) { return ChartIdeal(nvars, {}); }
  /// (x_1, ..., x_m)
  static ChartIdeal maximal(std::size_t nvars) {
    std::vector<Monomial> g;
    for (std::size_t i = 0; i < nvars; ++i) {
      Monomial m(nvars, 0);
      m[i] = 1;
      g.push_back(m);
    }
    return ChartIdeal(nvars, std::move(g));
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return !gens_.empty() && gens_.front() == Monomial(nvars_, 0); }

  bool contains(const Monomial& a) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return divides(g, a); });
  }
  bool contains(const ChartIdeal& j) const {
    return std::all_of(j.gens_.begin(), j.gens_.end(), [&](const Monomial& g) { return contains(g); });
  }

  ChartIdeal operator+(const ChartIdeal& o) const {
    auto g = gens_;
    g.insert(g.end(), o.gens_.begin(), o.gens_.end());
    return ChartIdeal(nvars_, std::move(g));
  }

  ChartIdeal operator*(const ChartIdeal& o) const {
    std::vector<Monomial> g;
    g.reserve(gens_.size() * o.gens_.size());
    for (const auto& a : gens_)
      for (const auto& b : o.gens_) {
        Monomial s(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) s[i] = a[i] + b[i];
        g.push_back(std::move(s));
      }
    return ChartIdeal(nvars_, std::move(g));
  }

  ChartIdeal power(unsigned k) const {
    ChartIdeal out = unit(nvars_);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Image under x_i -> 1 for i outside `keep` (localization to a face).
  ChartIdeal project(const std::vector<std::size_t>& keep) const {
    std::vector<Monomial> g;
    for (const auto& a : gens_) {
      Monomial m;
      for (auto i : keep) m.push_back(a[i]);
      g.push_back(std::move(m));
    }
    return ChartIdeal(keep.size(), std::move(g));
  }

  bool operator==(const ChartIdeal& o) const { return nvars_ == o.nvars_ && gens_ == o.gens_; }

 private:
  void minimize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    // Sorting by total degree first lets each generator be tested only
    // against the already-kept ones.
    std::vector<Monomial> byDeg = gens_;
    std::stable_sort(byDeg.begin(), byDeg.end(), [](const Monomial& a, const Monomial& b) {
      std::int64_t sa = 0, sb = 0;
      for (auto e : a) sa += e;
      for (auto e : b) sb += e;
      return sa < sb;
    });
    std::vector<Monomial> kept;
    for (const auto& m : byDeg)
      if (std::none_of(kept.begin(), kept.end(), [&](const Monomial& k) { return divides(k, m); })) kept.push_back(m);
    std::sort(kept.begin(), kept.end());
    gens_ = std::move(kept);
  }

  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

/// Torus-invariant ideal sheaf given chart by chart. Chart i uses the
/// coordinates of chart i of the model it was built for.
class MonomialSubscheme {
 public:
  MonomialSubscheme() = default;
  explicit MonomialSubscheme(std::vector<ChartIdeal> charts, std::string label = "")
      : charts_(std::move(charts)), label_(std::move(label)) {}

  static MonomialSubscheme unit(const ToricFanoModel& x) {
    std::vector<ChartIdeal> c;
    for (const auto& ch : x.charts()) c.push_back(ChartIdeal::unit(ch.ray_indices.size()));
    return MonomialSubscheme(std::move(c), "unit");
  }
  static MonomialSubscheme zero(const ToricFanoModel& x) {
    std::vector<ChartIdeal> c;
    for (const auto& ch : x.charts()) c.push_back(ChartIdeal::zero(ch.ray_indices.size()));
    return MonomialSubscheme(std::move(c), "zero");
  }

  /// Chart ideals listed explicitly; charts not mentioned get the unit ideal.
  static MonomialSubscheme from_charts(const ToricFanoModel& x, const std::map<std::size_t, std::vector<Monomial>>& given,
                                       std::string label = "") {
    auto z = unit(x);
    z.label_ = std::move(label);
    for (const auto& [id, gens] : given) {
      const auto& ch = x.chart(id);
      z.charts_[id] = ChartIdeal(ch.ray_indices.size(), gens);
    }
    z.validate(x);
    return z;
  }

  /// Reduced torus-fixed point of chart `id`.
  static MonomialSubscheme point(const ToricFanoModel& x, std::size_t id) {
    const auto& ch = x.chart(id);
    return from_charts(x, {{id, ChartIdeal::maximal(ch.ray_indices.size()).generators()}},
                       "point@" + std::to_string(id));
  }

  /// Reduced boundary divisor D_ray.
  static MonomialSubscheme boundary_divisor(const ToricFanoModel& x, std::size_t ray) {
    if (ray >= x.rays().size()) throw Error(ErrorCode::InvalidInput, "no ray " + std::to_string(ray));
    auto z = unit(x);
    z.label_ = "divisor@" + std::to_string(ray);
    for (std::size_t i = 0; i < x.charts().size(); ++i) {
      const auto& idx = x.charts()[i].ray_indices;
      auto it = std::find(idx.begin(), idx.end(), ray);
      if (it == idx.end()) continue;
      Monomial m(idx.size(), 0);
      m[static_cast<std::size_t>(it - idx.begin())] = 1;
      z.charts_[i] = ChartIdeal(idx.size(), {m});
    }
    z.validate(x);
    return z;
  }

  const std::vector<ChartIdeal>& charts() const { return charts_; }
  const ChartIdeal& chart(std::size_t i) const { return charts_.at(i); }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  bool is_proper() const {
    return std::any_of(charts_.begin(), charts_.end(), [](const ChartIdeal& c) { return !c.is_unit(); });
  }
  bool is_nonzero() const {
    return std::none_of(charts_.begin(), charts_.end(), [](const ChartIdeal& c) { return c.is_zero(); });
  }
  bool is_zero() const {
    return std::all_of(charts_.begin(), charts_.end(), [](const ChartIdeal& c) { return c.is_zero(); });
  }
  bool is_unit() const { return !is_proper(); }

  /// Charts whose ideal is proper (the charts Z meets at its fixed point).
  std::vector<std::size_t> support_charts() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (!charts_[i].is_unit()) out.push_back(i);
    return out;
  }

  MonomialSubscheme operator*(const MonomialSubscheme& o) const { return combine(o, true); }
  MonomialSubscheme operator+(const MonomialSubscheme& o) const { return combine(o, false); }
  MonomialSubscheme power(unsigned m) const {
    std::vector<ChartIdeal> c;
    for (const auto& ci : charts_) c.push_back(ci.power(m));
    return MonomialSubscheme(std::move(c), m == 1 ? label_ : label_ + "^" + std::to_string(m));
  }

  bool contains(const MonomialSubscheme& o) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (!charts_[i].contains(o.charts_[i])) return false;
    return true;
  }
  bool operator==(const MonomialSubscheme& o) const { return charts_ == o.charts_; }

  /// Is the section u of O(-s K) (a lattice point of sP) in L^s * I?
  bool contains_section(const ToricFanoModel& x, const IntVector& u, std::int64_t scale) const {
    for (std::size_t i = 0; i < charts_.size(); ++i) {
      if (charts_[i].is_unit()) continue;
      if (!charts_[i].contains(x.local_exponents(i, u, scale))) return false;
    }
    return true;
  }

  /// Structural checks: one ideal per chart with the chart's number of
  /// variables, and agreement of the ideals on every pairwise overlap.
  void validate(const ToricFanoModel& x) const {
    if (charts_.size() != x.charts().size())
      throw Error(ErrorCode::InvalidInput, "subscheme has " + std::to_string(charts_.size()) + " charts, model has " +
                                               std::to_string(x.charts().size()));
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (charts_[i].nvars() != x.charts()[i].ray_indices.size())
        throw Error(ErrorCode::InvalidInput, "chart " + std::to_string(i) + " ideal has the wrong number of variables");
    for (std::size_t i = 0; i < charts_.size(); ++i)
      for (std::size_t j = i + 1; j < charts_.size(); ++j) {
        const auto& ri = x.charts()[i].ray_indices;
        const auto& rj = x.charts()[j].ray_indices;
        std::vector<std::size_t> ki, kj;
        for (std::size_t a = 0; a < ri.size(); ++a) {
          auto it = std::find(rj.begin(), rj.end(), ri[a]);
          if (it == rj.end()) continue;
          ki.push_back(a);
          kj.push_back(static_cast<std::size_t>(it - rj.begin()));
        }
        if (!(charts_[i].project(ki) == charts_[j].project(kj)))
          throw Error(ErrorCode::InvalidInput, "chart ideals " + std::to_string(i) + " and " + std::to_string(j) +
                                                   " disagree on their overlap");
      }
  }

 private:
  MonomialSubscheme combine(const MonomialSubscheme& o, bool product) const {
    if (charts_.size() != o.charts_.size()) throw Error(ErrorCode::InvalidInput, "subschemes on different models");
    std::vector<ChartIdeal> c;
    for (std::size_t i = 0; i < charts_.size(); ++i)
      c.push_back(product ? charts_[i] * o.charts_[i] : charts_[i] + o.charts_[i]);
    return MonomialSubscheme(std::move(c));
  }

  std::vector<ChartIdeal> charts_;
  std::string label_;
};

/// Lattice points of sP that lie in L^s * I.
inline std::vector<IntVector> sections_in(const ToricFanoModel& x, const MonomialSubscheme& z, std::int64_t scale) {
  std::vector<IntVector> out;
  if (z.is_zero()) return out;
  for (auto& u : lattice_points(x.polytope(), scale))
    if (z.contains_section(x, u, scale)) out.push_back(std::move(u));
  return out;
}

/// Facet of a Newton polyhedron: <normal, a> >= offset for all a in it.
struct NewtonFacet {
  IntVector normal;
  std::int64_t offset;
  bool operator==(const NewtonFacet&) const = default;
  bool operator<(const NewtonFacet& o) const {
    return normal != o.normal ? normal < o.normal : offset < o.offset;
  }
};

/// conv(generators) + R^n_{>=0}.
class NewtonPolyhedron {
 public:
  explicit NewtonPolyhedron(const ChartIdeal& ideal) : ideal_(ideal) {
    if (ideal.is_zero()) throw Error(ErrorCode::ZeroIdeal, "Newton polyhedron of the zero ideal");
    compute_facets();
  }

  const ChartIdeal& ideal() const { return ideal_; }
  const std::vector<Monomial>& generators() const { return ideal_.generators(); }
  const std::vector<NewtonFacet>& facets() const { return facets_; }

  /// min over generators of <w, g> (the monomial valuation of the ideal)
  std::int64_t valuation(const IntVector& w) const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& g : generators()) best = std::min(best, dot(w, g));
    return best;
  }

  /// Vertices of the polyhedron: generators not in the convex hull of the
  /// others plus the orthant (each lies on n facets with independent normals).
  std::vector<Monomial> vertices() const {
    std::vector<Monomial> out;
    const std::size_t n = ideal_.nvars();
    for (const auto& g : generators()) {
      linalg::QMatrix tight;
      for (const auto& f : facets_)
        if (dot(f.normal, g) == f.offset) tight.push_back(to_rational(f.normal));
      if (linalg::rank(tight) == n) out.push_back(g);
    }
    return out;
  }

 private:
  void compute_facets() {
    const std::size_t n = ideal_.nvars();
    const auto& gens = generators();
    // candidate spanning sets: n elements of generators ∪ {e_1..e_n}, at
    // least one generator; the first generator is the base point
    const std::size_t m = gens.size();
    std::vector<NewtonFacet> found;
    linalg::for_each_combination(m + n, n, [&](const std::vector<std::size_t>& idx) {
      if (idx.front() >= m) return;
      const auto& base = gens[idx.front()];
      linalg::QMatrix rows;
      for (std::size_t k = 1; k < idx.size(); ++k) {
        QVector r(n);
        if (idx[k] < m) {
          for (std::size_t c = 0; c < n; ++c) r[c] = gens[idx[k]][c] - base[c];
        } else {
          for (std::size_t c = 0; c < n; ++c) r[c] = 0;
          r[idx[k] - m] = 1;
        }
        rows.push_back(std::move(r));
      }
      auto kernel = rows.empty() ? linalg::QMatrix{QVector(n, Rational(1))} : linalg::nullspace(rows, n);
      if (n == 1) kernel = {QVector{Rational(1)}};
      if (kernel.size() != 1) return;
      IntVector w = linalg::primitive_integer(kernel[0]);
      bool pos = false, neg = false;
      for (auto c : w) {
        if (c > 0) pos = true;
        if (c < 0) neg = true;
      }
      if (pos && neg) return;
      if (neg)
        for (auto& c : w) c = -c;
      std::int64_t off = dot(w, base);
      for (const auto& g : gens)
        if (dot(w, g) < off) return;
      NewtonFacet f{w, off};
      if (std::find(found.begin(), found.end(), f) == found.end()) found.push_back(f);
    });
    std::sort(found.begin(), found.end());
    facets_ = std::move(found);
  }

  ChartIdeal ideal_;
  std::vector<NewtonFacet> facets_;
};

/// I_M ⊆ ... ⊆ I_1 on X, encoding the ideal
/// I_M + I_{M-1} t + ... + I_1 t^{M-1} + (t^M) of X x A^1.
class IdealSequenceOnXxA1 {
 public:
  /// `ideals[0]` is I_M, `ideals[M-1]` is I_1.
  IdealSequenceOnXxA1(const ToricFanoModel& x, std::vector<MonomialSubscheme> ideals) : ideals_(std::move(ideals)) {
    if (ideals_.empty()) throw Error(ErrorCode::InvalidInput, "ideal sequence must have M >= 1");
    for (const auto& i : ideals_) i.validate(x);
    for (std::size_t k = 0; k + 1 < ideals_.size(); ++k)
      if (!ideals_[k + 1].contains(ideals_[k]))
        throw Error(ErrorCode::InvalidInput, "ideal sequence is not increasing: I_" + std::to_string(M() - k) +
                                                 " is not contained in I_" + std::to_string(M() - k - 1));
  }

  std::size_t M() const { return ideals_.size(); }
  /// Coefficient of t^i (0 <= i), with the unit ideal from i = M on.
  const MonomialSubscheme& coefficient(std::size_t i, const MonomialSubscheme& unit) const {
    return i < ideals_.size() ? ideals_[i] : unit;
  }
  const std::vector<MonomialSubscheme>& ideals() const { return ideals_; }

  /// Chart ideal of the (n+1)-variable ideal; t is the last coordinate.
  ChartIdeal chart_ideal(std::size_t chart) const {
    const std::size_t n = ideals_.front().chart(chart).nvars();
    std::vector<Monomial> gens;
    for (std::size_t i = 0; i <= ideals_.size(); ++i) {
      if (i == ideals_.size()) {
        Monomial m(n + 1, 0);
        m[n] = static_cast<std::int64_t>(i);
        gens.push_back(m);
        break;
      }
      for (const auto& g : ideals_[i].chart(chart).generators()) {
        Monomial m = g;
        m.push_back(static_cast<std::int64_t>(i));
        gens.push_back(std::move(m));
      }
    }
    return ChartIdeal(n + 1, std::move(gens));
  }

  /// The sequence describing the k-th power of the ideal (M' = kM).
  IdealSequenceOnXxA1 power(const ToricFanoModel& x, unsigned k) const {
    auto coeffs = graded_power(x, k);
    coeffs.resize(M() * k);
    return IdealSequenceOnXxA1(x, std::move(coeffs));
  }

  /// Coefficients J[0..kM] of t^i in the k-th power; J[kM] is the unit.
  std::vector<MonomialSubscheme> graded_power(const ToricFanoModel& x, unsigned k) const {
    const auto unit = MonomialSubscheme::unit(x);
    const std::size_t m = M();
    std::vector<MonomialSubscheme> base;
    for (std::size_t i = 0; i <= m; ++i) base.push_back(coefficient(i, unit));
    std::vector<MonomialSubscheme> cur{unit};  // k = 0
    for (unsigned step = 0; step < k; ++step) {
      const std::size_t len = cur.size() + m;
      std::vector<MonomialSubscheme> next(len, MonomialSubscheme::zero(x));
      for (std::size_t a = 0; a < cur.size(); ++a)
        for (std::size_t b = 0; b <= m; ++b) next[a + b] = next[a + b] + cur[a] * base[b];
      cur = std::move(next);
    }
    return cur;
  }

 private:
  std::vector<MonomialSubscheme> ideals_;
};

}  // namespace fanokit
