#ifndef MODALREACH_MATRIX_ZONOTOPE_HPP_
#define MODALREACH_MATRIX_ZONOTOPE_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

#include "modalreach/zonotope.hpp"

namespace modalreach {

/**
 * @brief Set of matrices {C + sum_i beta_i * G_i : ||beta||_inf <= 1}.
 *
 * All generator matrices share the center's shape. With no generators the
 * set is the singleton {C}.
 */
class MatrixZonotope {
 public:
  MatrixZonotope() = default;

  explicit MatrixZonotope(Eigen::MatrixXd center) : center_(std::move(center)) {
    check_entries();
  }

  MatrixZonotope(Eigen::MatrixXd center, std::vector<Eigen::MatrixXd> generators)
      : center_(std::move(center)), generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (g.rows() != center_.rows() || g.cols() != center_.cols()) {
        throw std::invalid_argument(
            "MatrixZonotope: generator shape must match center shape.");
      }
    }
    check_entries();
  }

  const Eigen::MatrixXd& center() const { return center_; }
  const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }

  Eigen::Index rows() const { return center_.rows(); }
  Eigen::Index cols() const { return center_.cols(); }
  Eigen::Index num_generators() const {
    return static_cast<Eigen::Index>(generators_.size());
  }
  bool is_singleton() const { return generators_.empty(); }

 private:
  void check_entries() const {
    if (!center_.allFinite()) {
      throw std::invalid_argument("MatrixZonotope: entries must be finite.");
    }
    for (const auto& g : generators_) {
      if (!g.allFinite()) {
        throw std::invalid_argument("MatrixZonotope: entries must be finite.");
      }
    }
  }

  Eigen::MatrixXd center_{0, 0};
  std::vector<Eigen::MatrixXd> generators_;
};

/// Right multiplication {M * P : M in set}; exact.
inline MatrixZonotope mz_linear_map_right(const MatrixZonotope& m,
                                          const Eigen::MatrixXd& p) {
  if (p.rows() != m.cols()) {
    throw std::invalid_argument("mz_linear_map_right: dimension mismatch.");
  }
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(m.generators().size());
  for (const auto& g : m.generators()) {
    gens.push_back(g * p);
  }
  return MatrixZonotope(m.center() * p, std::move(gens));
}

/// Offset by a fixed matrix: {C0 + sign * M : M in set}, sign in {+1, -1}.
inline MatrixZonotope mz_shift(const Eigen::MatrixXd& offset,
                               const MatrixZonotope& m, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("mz_shift: sign must be +1 or -1.");
  }
  if (offset.rows() != m.rows() || offset.cols() != m.cols()) {
    throw std::invalid_argument("mz_shift: shape mismatch.");
  }
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(m.generators().size());
  for (const auto& g : m.generators()) {
    gens.push_back(sign == 1 ? g : Eigen::MatrixXd(-g));
  }
  return MatrixZonotope(offset + sign * m.center(), std::move(gens));
}

/**
 * @brief Over-approximate {M * z : M in set, z in Z} by a zonotope.
 *
 * The result collects the cross terms center*G_Z, G_i*c_Z and G_i*G_Z as
 * independent generators. It contains the exact product set but is not
 * tight: factors shared between M and z are decoupled.
 */
inline Zonotope mz_times_zonotope(const MatrixZonotope& m, const Zonotope& z) {
  if (m.cols() != z.dim()) {
    throw std::invalid_argument("mz_times_zonotope: dimension mismatch.");
  }
  const Eigen::Index gz = z.num_generators();
  const Eigen::Index gm = m.num_generators();
  Eigen::MatrixXd gens(m.rows(), gz + gm * (1 + gz));
  gens.leftCols(gz) = m.center() * z.generators();
  Eigen::Index col = gz;
  for (const auto& gi : m.generators()) {
    gens.col(col++) = gi * z.center();
    gens.middleCols(col, gz) = gi * z.generators();
    col += gz;
  }
  return Zonotope(m.center() * z.center(), std::move(gens));
}

}  // namespace modalreach

#endif  // MODALREACH_MATRIX_ZONOTOPE_HPP_
