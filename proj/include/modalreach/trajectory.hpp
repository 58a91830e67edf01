#ifndef MODALREACH_TRAJECTORY_HPP_
#define MODALREACH_TRAJECTORY_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace modalreach {

/// One recorded state/input trace: T+1 states and the T inputs between them.
struct StateInputTrajectory {
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> inputs;
  double sample_period = 0.1;
};

/**
 * @brief Column-stacked snapshots of recorded trajectories.
 *
 * Column t of x_minus/u_minus holds a state/input pair and the same column
 * of x_plus the state one step later. Trajectories are concatenated in
 * order; each contributes its length minus one columns.
 */
struct DataMatrices {
  Eigen::MatrixXd x_plus;
  Eigen::MatrixXd x_minus;
  Eigen::MatrixXd u_minus;

  Eigen::Index cols() const { return x_plus.cols(); }
};

inline DataMatrices build_data_matrices(
    const std::vector<StateInputTrajectory>& trajectories) {
  if (trajectories.empty()) {
    throw std::invalid_argument("build_data_matrices: no trajectories.");
  }
  const Eigen::Index m = trajectories.front().states.empty()
                             ? 0
                             : trajectories.front().states.front().size();
  const Eigen::Index nu = trajectories.front().inputs.empty()
                              ? 0
                              : trajectories.front().inputs.front().size();
  if (m == 0 || nu == 0) {
    throw std::invalid_argument("build_data_matrices: empty trajectory.");
  }

  Eigen::Index total = 0;
  for (const auto& traj : trajectories) {
    if (traj.states.size() < 2 || traj.inputs.size() + 1 != traj.states.size()) {
      throw std::invalid_argument(
          "build_data_matrices: need one more state than inputs.");
    }
    for (const auto& x : traj.states) {
      if (x.size() != m || !x.allFinite()) {
        throw std::invalid_argument("build_data_matrices: bad state entry.");
      }
    }
    for (const auto& u : traj.inputs) {
      if (u.size() != nu || !u.allFinite()) {
        throw std::invalid_argument("build_data_matrices: bad input entry.");
      }
    }
    total += static_cast<Eigen::Index>(traj.inputs.size());
  }

  DataMatrices data;
  data.x_plus.resize(m, total);
  data.x_minus.resize(m, total);
  data.u_minus.resize(nu, total);
  Eigen::Index col = 0;
  for (const auto& traj : trajectories) {
    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k, ++col) {
      data.x_minus.col(col) = traj.states[k];
      data.x_plus.col(col) = traj.states[k + 1];
      data.u_minus.col(col) = traj.inputs[k];
    }
  }
  return data;
}

}  // namespace modalreach

#endif  // MODALREACH_TRAJECTORY_HPP_
