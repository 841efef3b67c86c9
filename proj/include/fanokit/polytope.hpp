#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "fanokit/errors.hpp"
#include "fanokit/linalg.hpp"
#include "fanokit/rational.hpp"

namespace fanokit {

/// <normal, u> >= offset
struct Halfspace {
  IntVector normal;
  Rational offset;

  bool operator==(const Halfspace&) const = default;
};

inline bool satisfies(const Halfspace& h, const QVector& u) { return dot(h.normal, u) >= h.offset; }
inline bool is_tight(const Halfspace& h, const QVector& u) { return dot(h.normal, u) == h.offset; }

namespace detail {

// A nonzero d with <a_i, d> >= 0 for all i exists iff the polyhedron
// (when nonempty) is unbounded.
inline bool has_recession_direction(std::size_t dim, const std::vector<Halfspace>& hs) {
  linalg::QMatrix a;
  a.reserve(hs.size());
  for (const auto& h : hs) a.push_back(to_rational(h.normal));
  if (linalg::rank(a) < dim) return true;
  bool found = false;
  linalg::for_each_combination(hs.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    linalg::QMatrix sub;
    for (auto i : idx) sub.push_back(a[i]);
    auto kernel = linalg::nullspace(sub, dim);
    if (kernel.size() != 1) return;
    for (int sign : {1, -1}) {
      QVector d = kernel[0];
      if (sign < 0)
        for (auto& x : d) x = -x;
      bool ok = true;
      for (const auto& row : a)
        if (dot(row, d) < 0) {
          ok = false;
          break;
        }
      if (ok) {
        found = true;
        return;
      }
    }
  });
  return found;
}

inline std::vector<QVector> enumerate_vertices(std::size_t dim, const std::vector<Halfspace>& hs) {
  std::set<QVector> found;
  linalg::for_each_combination(hs.size(), dim, [&](const std::vector<std::size_t>& idx) {
    linalg::QMatrix a;
    QVector b;
    for (auto i : idx) {
      a.push_back(to_rational(hs[i].normal));
      b.push_back(hs[i].offset);
    }
    auto x = linalg::solve(a, b);
    if (!x) return;
    for (const auto& h : hs)
      if (!satisfies(h, *x)) return;
    found.insert(std::move(*x));
  });
  return {found.begin(), found.end()};
}

}  // namespace detail

/// Exact convex polytope in Q^n carrying both a vertex list (sorted
/// lexicographically, pairwise distinct) and an inequality list. An empty
/// polytope has no vertices; lower-dimensional polytopes are allowed as
/// intermediate results (slices) and simply have zero volume.
class RationalPolytope {
 public:
  RationalPolytope() = default;

  /// Intersection of half-spaces. Throws UnboundedPolytope when the
  /// intersection is nonempty and unbounded.
  static RationalPolytope from_inequalities(std::size_t dim, std::vector<Halfspace> hs) {
    std::vector<Halfspace> unique;
    for (auto& h : hs) {
      if (linalg::gcd_of(h.normal) == 0) {
        if (h.offset > 0) return empty(dim);
        continue;
      }
      if (std::find(unique.begin(), unique.end(), h) == unique.end()) unique.push_back(std::move(h));
    }
    RationalPolytope p;
    p.dim_ = dim;
    p.inequalities_ = std::move(unique);
    p.vertices_ = detail::enumerate_vertices(dim, p.inequalities_);
    // Without vertices this is either empty or contains a line; both are
    // rejected along with genuinely unbounded regions.
    if (detail::has_recession_direction(dim, p.inequalities_))
      throw Error(ErrorCode::UnboundedPolytope, "half-space intersection is unbounded");
    return p;
  }

  /// Convex hull of `points` (which may include non-extreme points).
  /// Throws DegeneratePolytope unless the hull is full-dimensional.
  static RationalPolytope from_vertices(std::size_t dim, std::vector<QVector> points) {
    for (const auto& pt : points)
      if (pt.size() != dim) throw Error(ErrorCode::InvalidInput, "vertex has wrong dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < dim + 1 || linalg::affine_dimension(points) != dim)
      throw Error(ErrorCode::DegeneratePolytope, "vertex hull is not full-dimensional");
    std::vector<Halfspace> facets;
    linalg::for_each_combination(points.size(), dim, [&](const std::vector<std::size_t>& idx) {
      linalg::QMatrix diffs;
      for (std::size_t i = 1; i < idx.size(); ++i) {
        QVector d(dim);
        for (std::size_t c = 0; c < dim; ++c) d[c] = points[idx[i]][c] - points[idx[0]][c];
        diffs.push_back(std::move(d));
      }
      auto kernel = diffs.empty() ? linalg::QMatrix{} : linalg::nullspace(diffs, dim);
      if (dim == 1) kernel = {QVector{Rational(1)}};
      if (kernel.size() != 1) return;
      IntVector normal = linalg::primitive_integer(kernel[0]);
      Rational offset = dot(normal, points[idx[0]]);
      bool has_pos = false, has_neg = false;
      for (const auto& pt : points) {
        Rational s = dot(normal, pt) - offset;
        if (s > 0) has_pos = true;
        if (s < 0) has_neg = true;
      }
      if (has_pos && has_neg) return;
      if (has_neg) {
        for (auto& x : normal) x = -x;
        offset = -offset;
      }
      Halfspace h{normal, offset};
      if (std::find(facets.begin(), facets.end(), h) == facets.end()) facets.push_back(std::move(h));
    });
    return from_inequalities(dim, std::move(facets));
  }

  static RationalPolytope empty(std::size_t dim) {
    RationalPolytope p;
    p.dim_ = dim;
    return p;
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& inequalities() const { return inequalities_; }
  bool is_empty() const { return vertices_.empty(); }
  bool is_full_dimensional() const {
    return !vertices_.empty() && linalg::affine_dimension(vertices_) == dim_;
  }

  bool contains(const QVector& u) const {
    if (is_empty()) return false;
    return std::all_of(inequalities_.begin(), inequalities_.end(), [&](const Halfspace& h) { return satisfies(h, u); });
  }

  /// Indices of inequalities tight at vertex `v`.
  std::vector<std::size_t> tight_at(const QVector& v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < inequalities_.size(); ++i)
      if (is_tight(inequalities_[i], v)) out.push_back(i);
    return out;
  }

  /// Inequalities that define facets (affine dim n-1 tight sets), one per facet.
  std::vector<std::size_t> facet_indices() const {
    std::vector<std::size_t> out;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < inequalities_.size(); ++i) {
      std::vector<std::size_t> tight;
      std::vector<QVector> pts;
      for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (is_tight(inequalities_[i], vertices_[v])) {
          tight.push_back(v);
          pts.push_back(vertices_[v]);
        }
      if (pts.size() < dim_ || linalg::affine_dimension(pts) + 1 != dim_) continue;
      if (seen.insert(tight).second) out.push_back(i);
    }
    return out;
  }

  RationalPolytope scaled(const Rational& factor) const {
    std::vector<Halfspace> hs = inequalities_;
    for (auto& h : hs) h.offset *= factor;
    RationalPolytope p;
    p.dim_ = dim_;
    p.inequalities_ = std::move(hs);
    p.vertices_ = vertices_;
    for (auto& v : p.vertices_)
      for (auto& x : v) x *= factor;
    if (factor < 0) std::sort(p.vertices_.begin(), p.vertices_.end());
    return p;
  }

  RationalPolytope intersected(const Halfspace& h) const {
    auto hs = inequalities_;
    hs.push_back(h);
    return from_inequalities(dim_, std::move(hs));
  }

 private:
  std::size_t dim_ = 0;
  std::vector<QVector> vertices_;
  std::vector<Halfspace> inequalities_;
};

/// P = {u : <u, v_i> >= -1} for primitive rays v_i: the moment polytope of
/// the anticanonical divisor of the toric variety with these rays.
inline RationalPolytope polytope_from_rays(const std::vector<IntVector>& rays) {
  if (rays.empty()) throw Error(ErrorCode::InvalidInput, "no rays");
  const std::size_t dim = rays.front().size();
  std::vector<Halfspace> hs;
  for (const auto& r : rays) {
    if (r.size() != dim) throw Error(ErrorCode::InvalidInput, "rays have mixed dimensions");
    if (linalg::gcd_of(r) != 1) throw Error(ErrorCode::InvalidInput, "ray is not a primitive nonzero vector");
    hs.push_back({r, Rational(-1)});
  }
  auto p = RationalPolytope::from_inequalities(dim, std::move(hs));
  if (!p.is_full_dimensional()) throw Error(ErrorCode::DegeneratePolytope, "anticanonical polytope is not full-dimensional");
  return p;
}

/// {u in Z^n : u in rP} in lexicographic order, by bounding-box scan.
inline std::vector<IntVector> lattice_points(const RationalPolytope& p, std::int64_t scale = 1) {
  std::vector<IntVector> out;
  if (p.is_empty()) return out;
  const std::size_t n = p.dimension();
  IntVector lo(n), hi(n);
  for (std::size_t c = 0; c < n; ++c) {
    Rational mn = p.vertices().front()[c], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = to_int64(ceil_of(mn * Rational(scale)));
    hi[c] = to_int64(floor_of(mx * Rational(scale)));
    if (lo[c] > hi[c]) return out;
  }
  std::vector<std::pair<IntVector, std::int64_t>> cuts;
  for (const auto& h : p.inequalities()) cuts.emplace_back(h.normal, to_int64(ceil_of(h.offset * Rational(scale))));
  IntVector u = lo;
  while (true) {
    bool inside = true;
    for (const auto& [normal, bound] : cuts)
      if (dot(normal, u) < bound) {
        inside = false;
        break;
      }
    if (inside) out.push_back(u);
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (u[c] < hi[c]) {
        ++u[c];
        for (std::size_t d = c + 1; d < n; ++d) u[d] = lo[d];
        break;
      }
      if (c == 0) return out;
    }
    if (n == 0) return out;
  }
}

namespace detail {

using Face = std::vector<std::size_t>;  // sorted vertex indices

inline std::vector<QVector> face_points(const RationalPolytope& p, const Face& f) {
  std::vector<QVector> pts;
  pts.reserve(f.size());
  for (auto i : f) pts.push_back(p.vertices()[i]);
  return pts;
}

// Pulling triangulation: cone from the lexicographically smallest vertex
// of each face over the facets of that face not containing it. Vertices are
// stored sorted, so the smallest index is the lexicographically smallest.
inline void pull_triangulate(const RationalPolytope& p, const std::vector<Face>& tight_sets, const Face& face,
                             std::size_t dim, std::vector<std::size_t>& apexes,
                             std::vector<std::vector<std::size_t>>& out) {
  const std::size_t apex = face.front();
  if (dim == 0) {
    auto simplex = apexes;
    simplex.push_back(apex);
    out.push_back(std::move(simplex));
    return;
  }
  std::set<Face> facets;
  for (const auto& tight : tight_sets) {
    Face sub;
    std::set_intersection(face.begin(), face.end(), tight.begin(), tight.end(), std::back_inserter(sub));
    if (sub.empty() || sub.size() == face.size()) continue;
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    if (linalg::affine_dimension(face_points(p, sub)) + 1 != dim) continue;
    facets.insert(std::move(sub));
  }
  apexes.push_back(apex);
  for (const auto& f : facets) pull_triangulate(p, tight_sets, f, dim - 1, apexes, out);
  apexes.pop_back();
}

}  // namespace detail

/// Maximal simplices (as vertex-index lists) of the lexicographic pulling
/// triangulation; empty unless P is full-dimensional.
inline std::vector<std::vector<std::size_t>> pulling_triangulation(const RationalPolytope& p) {
  std::vector<std::vector<std::size_t>> out;
  if (!p.is_full_dimensional()) return out;
  std::vector<detail::Face> tight_sets;
  for (const auto& h : p.inequalities()) {
    detail::Face f;
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
      if (is_tight(h, p.vertices()[v])) f.push_back(v);
    tight_sets.push_back(std::move(f));
  }
  detail::Face all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::size_t> apexes;
  detail::pull_triangulate(p, tight_sets, all, p.dimension(), apexes, out);
  return out;
}

inline Rational euclidean_volume(const RationalPolytope& p) {
  const std::size_t n = p.dimension();
  Rational total = 0;
  for (const auto& simplex : pulling_triangulation(p)) {
    linalg::QMatrix m;
    const auto& base = p.vertices()[simplex[0]];
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      QVector row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = p.vertices()[simplex[i]][c] - base[c];
      m.push_back(std::move(row));
    }
    total += abs(linalg::determinant(std::move(m)));
  }
  return total / Rational(factorial(static_cast<unsigned>(n)));
}

/// n! * vol(P): the normalized volume, which is the degree of the
/// corresponding divisor.
inline Rational normalized_volume(const RationalPolytope& p) {
  return euclidean_volume(p) * Rational(factorial(static_cast<unsigned>(p.dimension())));
}

}  // namespace fanokit
