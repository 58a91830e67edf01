#ifndef MODALREACH_MODEL_SET_HPP_
#define MODALREACH_MODEL_SET_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalreach/matrix_zonotope.hpp"
#include "modalreach/trajectory.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach {

/// Process noise bound: the disturbance added at every step lies in `noise`.
struct NoiseSpec {
  Zonotope noise;
};

/// Thrown when the recorded data does not excite every state/input
/// direction, so no unique least-squares model explains it.
class RankDeficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative singular value cutoff used for rank decisions.
inline constexpr double kRankTol = 1e-10;

/**
 * @brief Matrix zonotope of one-step models consistent with recorded data.
 *
 * Every member maps a stacked state/input column to a successor state; the
 * set accounts for all disturbance sequences allowed by the noise bound.
 */
struct ModelSet {
  MatrixZonotope models;
  Eigen::Index state_dim = 0;
  Eigen::Index input_dim = 0;
};

/**
 * @brief Noise bound lifted to a whole data matrix of T columns.
 *
 * The center repeats the noise center in every column. Each (generator,
 * column) pair yields one matrix generator carrying that generator in that
 * single column, so members are exactly the matrices whose columns all lie
 * in the per-step noise set independently.
 */
inline MatrixZonotope build_noise_matrix_zonotope(const NoiseSpec& spec,
                                                  Eigen::Index columns) {
  if (columns < 1) {
    throw std::invalid_argument(
        "build_noise_matrix_zonotope: column count must be positive.");
  }
  const Eigen::Index m = spec.noise.dim();
  Eigen::MatrixXd center = spec.noise.center().replicate(1, columns);
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(
      static_cast<std::size_t>(spec.noise.num_generators() * columns));
  for (Eigen::Index i = 0; i < spec.noise.num_generators(); ++i) {
    for (Eigen::Index j = 0; j < columns; ++j) {
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, columns);
      g.col(j) = spec.noise.generators().col(i);
      gens.push_back(std::move(g));
    }
  }
  return MatrixZonotope(std::move(center), std::move(gens));
}

namespace detail {

// Moore-Penrose inverse via SVD; singular values below rank_tol * sigma_max
// are treated as zero and reported through rank_out.
inline Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a, double rank_tol,
                                     Eigen::Index* rank_out) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) {
      inv(i) = 1.0 / sv(i);
      ++rank;
    }
  }
  if (rank_out != nullptr) {
    *rank_out = rank;
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace detail

/**
 * @brief All one-step linear models consistent with the data and noise bound.
 *
 * Subtracts every admissible disturbance matrix from the successor
 * snapshots and right-multiplies by the pseudoinverse of the stacked
 * state/input matrix. Requires that matrix to have full row rank;
 * otherwise the data underdetermines the model and RankDeficientData is
 * thrown.
 */
inline ModelSet compute_model_set(const DataMatrices& data,
                                  const NoiseSpec& spec) {
  const Eigen::Index m = data.x_minus.rows();
  const Eigen::Index nu = data.u_minus.rows();
  const Eigen::Index t = data.cols();
  if (data.x_plus.rows() != m || data.x_plus.cols() != t ||
      data.u_minus.cols() != t) {
    throw std::invalid_argument("compute_model_set: inconsistent data shapes.");
  }
  if (spec.noise.dim() != m) {
    throw std::invalid_argument(
        "compute_model_set: noise dimension must match the state.");
  }
  if (t < m + nu) {
    throw RankDeficientData(
        "compute_model_set: fewer data columns (" + std::to_string(t) +
        ") than model unknowns (" + std::to_string(m + nu) + ").");
  }

  Eigen::MatrixXd stacked(m + nu, t);
  stacked.topRows(m) = data.x_minus;
  stacked.bottomRows(nu) = data.u_minus;

  Eigen::Index rank = 0;
  const Eigen::MatrixXd pinv = detail::pseudoinverse(stacked, kRankTol, &rank);
  if (rank < m + nu) {
    throw RankDeficientData(
        "compute_model_set: stacked data matrix has rank " +
        std::to_string(rank) + ", need " + std::to_string(m + nu) + ".");
  }

  const MatrixZonotope noise_mz = build_noise_matrix_zonotope(spec, t);
  const MatrixZonotope shifted = mz_shift(data.x_plus, noise_mz, -1);
  return ModelSet{mz_linear_map_right(shifted, pinv), m, nu};
}

}  // namespace modalreach

#endif  // MODALREACH_MODEL_SET_HPP_
