#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/linalg.hpp"
#include "fanokit/polytope.hpp"
#include "fanokit/rational.hpp"

namespace fanokit {

/// Affine chart around the torus-fixed point of a vertex of the
/// anticanonical polytope. Local coordinates x_1..x_n correspond to the rays
/// tight at the vertex (in increasing ray order); the exponent of x_j in the
/// local function of the section u of O(-sK) is <u, ray_j> + s.
struct Chart {
  QVector vertex;
  std::vector<std::size_t> ray_indices;
  std::vector<IntVector> basis;  // primitive edge directions of P at the vertex
  bool smooth = false;
};

class ToricFanoModel {
 public:
  ToricFanoModel(std::string name, std::vector<IntVector> rays, RationalPolytope polytope, Integer cartier_index,
                 std::vector<Chart> charts)
      : name_(std::move(name)),
        rays_(std::move(rays)),
        polytope_(std::move(polytope)),
        cartier_index_(std::move(cartier_index)),
        charts_(std::move(charts)) {}

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return polytope_.dimension(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  const RationalPolytope& polytope() const { return polytope_; }
  /// Smallest r0 with r0 * P a lattice polytope, i.e. -r0 K Cartier.
  std::int64_t cartier_index() const { return to_int64(cartier_index_); }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& chart(std::size_t id) const {
    if (id >= charts_.size()) throw Error(ErrorCode::InvalidInput, "no chart " + std::to_string(id));
    return charts_[id];
  }
  bool all_charts_smooth() const {
    return std::all_of(charts_.begin(), charts_.end(), [](const Chart& c) { return c.smooth; });
  }

  std::optional<std::size_t> chart_at_vertex(const QVector& v) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (charts_[i].vertex == v) return i;
    return std::nullopt;
  }

  /// Exponents of the lattice point u of sP in the chart's coordinates.
  IntVector local_exponents(std::size_t chart_id, const IntVector& u, std::int64_t scale) const {
    const auto& c = charts_[chart_id];
    IntVector a;
    a.reserve(c.ray_indices.size());
    for (auto r : c.ray_indices) a.push_back(dot(rays_[r], u) + scale);
    return a;
  }

 private:
  std::string name_;
  std::vector<IntVector> rays_;
  RationalPolytope polytope_;
  Integer cartier_index_;
  std::vector<Chart> charts_;
};

namespace detail {

inline std::vector<IntVector> edge_directions(const RationalPolytope& p, const QVector& v) {
  const std::size_t n = p.dimension();
  auto tight_v = p.tight_at(v);
  std::vector<IntVector> out;
  for (const auto& w : p.vertices()) {
    if (w == v) continue;
    linalg::QMatrix common;
    for (auto i : tight_v)
      if (is_tight(p.inequalities()[i], w)) common.push_back(to_rational(p.inequalities()[i].normal));
    if (linalg::rank(common) + 1 != n) continue;
    // w adjacent to v only if no other vertex lies strictly between them on
    // the same edge; the shared-tight-rank test already guarantees the
    // segment is an edge, and collinear vertices share the direction.
    QVector d(n);
    for (std::size_t c = 0; c < n; ++c) d[c] = w[c] - v[c];
    auto prim = linalg::primitive_integer(d);
    if (std::find(out.begin(), out.end(), prim) == out.end()) out.push_back(prim);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Builds the model of the toric variety whose fan is the normal fan of
/// P = {u : <u, v_i> >= -1}. Every ray must define a facet of P (otherwise
/// -K is not ample for that fan), P must be bounded and full-dimensional.
inline ToricFanoModel build_model(const std::vector<IntVector>& rays, std::string name = "custom") {
  RationalPolytope p;
  try {
    p = polytope_from_rays(rays);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnboundedPolytope || e.code() == ErrorCode::DegeneratePolytope)
      throw Error(ErrorCode::NotFano, e.what());
    throw;
  }
  const std::size_t n = p.dimension();
  auto facets = p.facet_indices();
  if (facets.size() != rays.size())
    throw Error(ErrorCode::NotFano, "some ray does not define a facet of the anticanonical polytope");

  Integer r0 = 1;
  for (const auto& v : p.vertices())
    for (const auto& x : v) r0 = lcm(r0, x.get_den());

  std::vector<Chart> charts;
  for (const auto& v : p.vertices()) {
    Chart c;
    c.vertex = v;
    c.ray_indices = p.tight_at(v);
    linalg::QMatrix ray_matrix;
    for (auto r : c.ray_indices) ray_matrix.push_back(to_rational(rays[r]));
    if (c.ray_indices.size() == n) {
      Rational det = linalg::determinant(ray_matrix);
      c.smooth = abs(det) == 1;
      // Edge j is dual to ray j: <e_j, ray_i> = 0 for i != j, > 0 for i = j.
      for (std::size_t j = 0; j < n; ++j) {
        QVector unit(n, Rational(0));
        unit[j] = 1;
        auto e = linalg::solve(ray_matrix, unit);
        c.basis.push_back(linalg::primitive_integer(*e));
      }
    } else {
      c.smooth = false;
      c.basis = detail::edge_directions(p, v);
    }
    charts.push_back(std::move(c));
  }
  return ToricFanoModel(std::move(name), rays, std::move(p), r0, std::move(charts));
}

/// ((-K_X)^n) = n! vol(P).
inline Rational anticanonical_volume(const ToricFanoModel& x) { return normalized_volume(x.polytope()); }

/// h^0(X, -k r0 K_X) as a lattice-point count.
inline std::size_t section_count(const ToricFanoModel& x, std::int64_t k) {
  if (k <= 0) throw Error(ErrorCode::Precondition, "k must be positive");
  return lattice_points(x.polytope(), k * x.cartier_index()).size();
}

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<IntVector> rays;
  bool kahler_einstein;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"P1", "projective line", {{1}, {-1}}, true},
      {"P2", "projective plane", {{1, 0}, {0, 1}, {-1, -1}}, true},
      {"P1xP1", "product of two projective lines", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, true},
      {"dP6", "plane blown up in three torus-fixed points",
       {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}, true},
      {"P3", "projective 3-space", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, true},
      {"P1xP2", "projective line times projective plane",
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}}, true},
      {"P112", "weighted projective plane P(1,1,2)", {{1, 0}, {0, 1}, {-1, -2}}, false},
  };
  return entries;
}

inline ToricFanoModel catalog_model(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return build_model(e.rays, e.name);
  throw Error(ErrorCode::InvalidInput, "unknown catalog model '" + name + "'");
}

/// P^n with rays e_1..e_n, -(e_1+..+e_n).
inline ToricFanoModel projective_space(std::size_t n) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(n, -1));
  return build_model(rays, "P" + std::to_string(n));
}

}  // namespace fanokit
