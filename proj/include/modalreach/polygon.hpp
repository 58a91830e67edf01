#ifndef MODALREACH_POLYGON_HPP_
#define MODALREACH_POLYGON_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modalreach/zonotope.hpp"

namespace modalreach {

namespace detail {

inline double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline double point_segment_distance(const Eigen::Vector2d& p,
                                     const Eigen::Vector2d& a,
                                     const Eigen::Vector2d& b) {
  const Eigen::Vector2d e = b - a;
  const double len2 = e.squaredNorm();
  if (len2 == 0.0) {
    return (p - a).norm();
  }
  const double t = std::clamp((p - a).dot(e) / len2, 0.0, 1.0);
  return (p - (a + t * e)).norm();
}

}  // namespace detail

/**
 * @brief Convex polygon, vertices in counterclockwise order.
 *
 * One vertex denotes a point, two a segment. Construction checks the
 * counterclockwise convexity invariant up to a scale-relative tolerance.
 */
class Polygon2D {
 public:
  Polygon2D() = default;

  explicit Polygon2D(std::vector<Eigen::Vector2d> vertices)
      : vertices_(std::move(vertices)) {
    double scale = 0.0;
    for (const auto& v : vertices_) {
      if (!v.allFinite()) {
        throw std::invalid_argument("Polygon2D: vertices must be finite.");
      }
      scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
    }
    const std::size_t n = vertices_.size();
    if (n < 3) {
      return;
    }
    const double tol = 1e-9 * std::max(1.0, scale * scale);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d e1 = vertices_[(i + 1) % n] - vertices_[i];
      const Eigen::Vector2d e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
      if (detail::cross2(e1, e2) < -tol) {
        throw std::invalid_argument(
            "Polygon2D: vertices must be convex counterclockwise.");
      }
    }
  }

  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Half-plane test against every edge; tol is a distance in the plane.
  bool contains(const Eigen::Vector2d& p, double tol = 1e-9) const {
    const std::size_t n = vertices_.size();
    if (n == 0) {
      return false;
    }
    if (n == 1) {
      return (p - vertices_[0]).norm() <= tol;
    }
    if (n == 2) {
      return detail::point_segment_distance(p, vertices_[0], vertices_[1]) <= tol;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d& a = vertices_[i];
      const Eigen::Vector2d& b = vertices_[(i + 1) % n];
      const Eigen::Vector2d e = b - a;
      const double len = e.norm();
      if (len == 0.0) {
        continue;
      }
      if (detail::cross2(e, p - a) < -tol * len) {
        return false;
      }
    }
    return true;
  }

  /// Distance from p to the polygon boundary (not to the filled set).
  double boundary_distance(const Eigen::Vector2d& p) const {
    const std::size_t n = vertices_.size();
    if (n == 0) {
      return std::numeric_limits<double>::infinity();
    }
    if (n == 1) {
      return (p - vertices_[0]).norm();
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      best = std::min(best, detail::point_segment_distance(
                                p, vertices_[i], vertices_[(i + 1) % n]));
    }
    return best;
  }

 private:
  std::vector<Eigen::Vector2d> vertices_;
};

/// Shoelace area; zero for points and segments.
inline double polygon_area(const Polygon2D& poly) {
  const auto& v = poly.vertices();
  if (v.size() < 3) {
    return 0.0;
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

/**
 * @brief Exact boundary polygon of a planar zonotope.
 *
 * Zero generators are stripped and collinear ones merged by summation, so
 * the polygon has at most two vertices per remaining generator. The
 * boundary is walked from the lowest vertex, adding generator edges in
 * angular order and mirroring through the center.
 */
inline Polygon2D to_polygon(const Zonotope& z) {
  if (z.dim() != 2) {
    throw std::invalid_argument("to_polygon: zonotope must be planar.");
  }
  const Eigen::Vector2d c = z.center();

  // canonicalize into the upper halfplane and sort by angle
  std::vector<std::pair<double, Eigen::Vector2d>> gens;
  gens.reserve(static_cast<std::size_t>(z.num_generators()));
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    Eigen::Vector2d g = z.generators().col(j);
    if (g.x() == 0.0 && g.y() == 0.0) {
      continue;
    }
    if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) {
      g = -g;
    }
    gens.emplace_back(std::atan2(g.y(), g.x()), g);
  }
  std::stable_sort(gens.begin(), gens.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Eigen::Vector2d> merged;
  double last_angle = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [angle, g] : gens) {
    if (!merged.empty() && angle - last_angle <= 1e-12) {
      merged.back() += g;
    } else {
      merged.push_back(g);
      last_angle = angle;
    }
  }

  if (merged.empty()) {
    return Polygon2D({c});
  }
  if (merged.size() == 1) {
    return Polygon2D({c - merged[0], c + merged[0]});
  }

  Eigen::Vector2d v = c;
  for (const auto& g : merged) {
    v -= g;
  }
  std::vector<Eigen::Vector2d> verts;
  verts.reserve(2 * merged.size());
  for (const auto& g : merged) {
    verts.push_back(v);
    v += 2.0 * g;
  }
  for (const auto& g : merged) {
    verts.push_back(v);
    v -= 2.0 * g;
  }
  return Polygon2D(std::move(verts));
}

}  // namespace modalreach

#endif  // MODALREACH_POLYGON_HPP_
