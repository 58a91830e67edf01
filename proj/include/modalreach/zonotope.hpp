#ifndef MODALREACH_ZONOTOPE_HPP_
#define MODALREACH_ZONOTOPE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modalreach {

/**
 * @brief Centrally symmetric convex set {c + G*beta : ||beta||_inf <= 1}.
 *
 * The center has dimension m and the generator matrix holds one generator
 * per column. Zero generator columns denote the singleton {c}. Instances
 * are immutable after construction; all set operations return new values.
 */
class Zonotope {
 public:
  Zonotope() = default;

  explicit Zonotope(Eigen::VectorXd center)
      : center_(std::move(center)), generators_(center_.size(), 0) {
    check_finite();
  }

  Zonotope(Eigen::VectorXd center, Eigen::MatrixXd generators)
      : center_(std::move(center)), generators_(std::move(generators)) {
    if (generators_.rows() != center_.size()) {
      throw std::invalid_argument(
          "Zonotope: generator rows must match center dimension.");
    }
    check_finite();
  }

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& generators() const { return generators_; }

  Eigen::Index dim() const { return center_.size(); }
  Eigen::Index num_generators() const { return generators_.cols(); }
  bool is_singleton() const { return generators_.cols() == 0; }

  /// Generators per dimension; reduction bounds this at the cost of growth.
  double order() const {
    return dim() == 0 ? 0.0
                      : static_cast<double>(num_generators()) /
                            static_cast<double>(dim());
  }

 private:
  void check_finite() const {
    if (!center_.allFinite() || !generators_.allFinite()) {
      throw std::invalid_argument("Zonotope: entries must be finite.");
    }
  }

  Eigen::VectorXd center_;
  Eigen::MatrixXd generators_{0, 0};
};

/// Axis-aligned box given by componentwise bounds, lower <= upper.
struct IntervalBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
    if (x.size() != lower.size()) {
      throw std::invalid_argument("IntervalBox: dimension mismatch.");
    }
    return ((x.array() >= lower.array() - tol) &&
            (x.array() <= upper.array() + tol))
        .all();
  }
};

/// Image {L*z : z in Z}; exact for zonotopes.
inline Zonotope linear_map(const Eigen::MatrixXd& map, const Zonotope& z) {
  if (map.cols() != z.dim()) {
    throw std::invalid_argument("linear_map: dimension mismatch.");
  }
  return Zonotope(map * z.center(), map * z.generators());
}

/// Elementwise set sum {z1 + z2}; generator columns are concatenated.
inline Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("minkowski_sum: dimension mismatch.");
  }
  Eigen::MatrixXd gens(a.dim(), a.num_generators() + b.num_generators());
  gens.leftCols(a.num_generators()) = a.generators();
  gens.rightCols(b.num_generators()) = b.generators();
  return Zonotope(a.center() + b.center(), std::move(gens));
}

/// Stacked product {[z1; z2]}; generators form a block diagonal.
inline Zonotope cartesian_product(const Zonotope& a, const Zonotope& b) {
  Eigen::VectorXd center(a.dim() + b.dim());
  center.head(a.dim()) = a.center();
  center.tail(b.dim()) = b.center();
  Eigen::MatrixXd gens = Eigen::MatrixXd::Zero(
      a.dim() + b.dim(), a.num_generators() + b.num_generators());
  gens.topLeftCorner(a.dim(), a.num_generators()) = a.generators();
  gens.bottomRightCorner(b.dim(), b.num_generators()) = b.generators();
  return Zonotope(std::move(center), std::move(gens));
}

/// Tightest axis-aligned box containing the zonotope.
inline IntervalBox interval_hull(const Zonotope& z) {
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(z.dim());
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    radius += z.generators().col(j).cwiseAbs();
  }
  return IntervalBox{z.center() - radius, z.center() + radius};
}

/**
 * @brief Bound the order of a zonotope, never shrinking it.
 *
 * Keeps the generators with the largest l1-minus-linf score and replaces
 * the rest by their axis-aligned box, so the result always contains the
 * input. At max_order = 1 the result is the interval hull (bit-exact: the
 * box radius is accumulated over dropped columns in original order, the
 * same order interval_hull uses).
 */
inline Zonotope reduce_order(const Zonotope& z, double max_order) {
  if (max_order < 1.0) {
    throw std::invalid_argument("reduce_order: max_order must be >= 1.");
  }
  const Eigen::Index m = z.dim();
  const Eigen::Index g = z.num_generators();
  if (m == 0 || static_cast<double>(g) <= max_order * static_cast<double>(m)) {
    return z;
  }
  const Eigen::Index keep =
      static_cast<Eigen::Index>(std::floor(max_order * static_cast<double>(m))) - m;

  Eigen::VectorXd score(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    score(j) = z.generators().col(j).lpNorm<1>() -
               z.generators().col(j).lpNorm<Eigen::Infinity>();
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(g));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return score(a) > score(b);
  });
  std::vector<Eigen::Index> kept(idx.begin(), idx.begin() + keep);
  std::vector<Eigen::Index> dropped(idx.begin() + keep, idx.end());
  std::sort(kept.begin(), kept.end());
  std::sort(dropped.begin(), dropped.end());

  Eigen::MatrixXd gens(m, keep + m);
  for (Eigen::Index j = 0; j < keep; ++j) {
    gens.col(j) = z.generators().col(kept[static_cast<std::size_t>(j)]);
  }
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(m);
  for (Eigen::Index j : dropped) {
    radius += z.generators().col(j).cwiseAbs();
  }
  gens.rightCols(m) = radius.asDiagonal();
  return Zonotope(z.center(), std::move(gens));
}

/// Uniform double in [-1, 1] from a 64-bit generator.
template <class URBG>
double uniform_pm1(URBG& rng) {
  static_assert(URBG::max() >= (std::uint64_t{1} << 53),
                "uniform_pm1 needs a 64-bit engine");
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

/// Draw a member, uniform over the factor hypercube.
template <class URBG>
Eigen::VectorXd sample(const Zonotope& z, URBG& rng) {
  Eigen::VectorXd x = z.center();
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    x += uniform_pm1(rng) * z.generators().col(j);
  }
  return x;
}

}  // namespace modalreach

#endif  // MODALREACH_ZONOTOPE_HPP_
