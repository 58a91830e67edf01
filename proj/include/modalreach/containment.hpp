#ifndef MODALREACH_CONTAINMENT_HPP_
#define MODALREACH_CONTAINMENT_HPP_

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>

#include "modalreach/detail/simplex.hpp"
#include "modalreach/matrix_zonotope.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach {

/// Slack applied to the factor box and accepted on the equality residual.
inline constexpr double kContainmentTol = 1e-9;

namespace detail {

// min ||G*beta - d||_inf over ||beta||_inf <= 1 + slack, as a linear
// program: beta = p - q with p, q >= 0, box rows p + q + w = 1 + slack,
// residual rows +-(G*(p - q)) - r <= +-d with slacks u, v, objective r.
inline double factor_box_residual(const Eigen::MatrixXd& gens,
                                  const Eigen::VectorXd& d, double slack) {
  const Eigen::Index m = gens.rows();
  const Eigen::Index g = gens.cols();
  const Eigen::Index n = 3 * g + 2 * m + 1;
  const Eigen::Index rows = g + 2 * m;
  const Eigen::Index r_col = 3 * g + 2 * m;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n);
  Eigen::VectorXd b(rows);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n);
  cost(r_col) = 1.0;

  for (Eigen::Index j = 0; j < g; ++j) {
    a(j, j) = 1.0;          // p_j
    a(j, g + j) = 1.0;      // q_j
    a(j, 2 * g + j) = 1.0;  // w_j
    b(j) = 1.0 + slack;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index up = g + i;
    const Eigen::Index lo = g + m + i;
    a.block(up, 0, 1, g) = gens.row(i);
    a.block(up, g, 1, g) = -gens.row(i);
    a(up, r_col) = -1.0;
    a(up, 3 * g + i) = 1.0;  // u_i
    b(up) = d(i);
    a.block(lo, 0, 1, g) = -gens.row(i);
    a.block(lo, g, 1, g) = gens.row(i);
    a(lo, r_col) = -1.0;
    a(lo, 3 * g + m + i) = 1.0;  // v_i
    b(lo) = -d(i);
  }

  const LpResult lp = solve_lp(std::move(a), std::move(b), cost);
  if (!lp.feasible) {
    return std::numeric_limits<double>::infinity();
  }
  // recompute from the factors so rounding inside the solver cannot
  // understate the residual
  const Eigen::VectorXd beta = lp.x.segment(0, g) - lp.x.segment(g, g);
  return (gens * beta - d).lpNorm<Eigen::Infinity>();
}

}  // namespace detail

/// Smallest equality residual over the slack-enlarged factor box.
inline double containment_residual(const Zonotope& z, const Eigen::VectorXd& x,
                                   double slack = kContainmentTol) {
  if (x.size() != z.dim()) {
    throw std::invalid_argument("containment_residual: dimension mismatch.");
  }
  return detail::factor_box_residual(z.generators(), x - z.center(), slack);
}

/// Membership test via linear feasibility with tolerance on both the
/// equality residual and the factor box.
inline bool contains_point(const Zonotope& z, const Eigen::VectorXd& x,
                           double tol = kContainmentTol) {
  return containment_residual(z, x, tol) <= tol;
}

/// Matrix variant of containment_residual; works on the vectorized set.
inline double mz_containment_residual(const MatrixZonotope& m,
                                      const Eigen::MatrixXd& x,
                                      double slack = kContainmentTol) {
  if (x.rows() != m.rows() || x.cols() != m.cols()) {
    throw std::invalid_argument("mz_containment_residual: shape mismatch.");
  }
  const Eigen::Index len = m.rows() * m.cols();
  Eigen::MatrixXd gens(len, m.num_generators());
  for (Eigen::Index i = 0; i < m.num_generators(); ++i) {
    const auto& gi = m.generators()[static_cast<std::size_t>(i)];
    gens.col(i) = Eigen::Map<const Eigen::VectorXd>(gi.data(), len);
  }
  const Eigen::VectorXd d =
      Eigen::Map<const Eigen::VectorXd>(x.data(), len) -
      Eigen::Map<const Eigen::VectorXd>(m.center().data(), len);
  return detail::factor_box_residual(gens, d, slack);
}

inline bool mz_contains_matrix(const MatrixZonotope& m, const Eigen::MatrixXd& x,
                               double tol = kContainmentTol) {
  return mz_containment_residual(m, x, tol) <= tol;
}

}  // namespace modalreach

#endif  // MODALREACH_CONTAINMENT_HPP_
