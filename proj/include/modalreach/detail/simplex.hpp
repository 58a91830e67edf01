#ifndef MODALREACH_DETAIL_SIMPLEX_HPP_
#define MODALREACH_DETAIL_SIMPLEX_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace modalreach::detail {

struct LpResult {
  bool feasible = false;
  double objective = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd x;
};

/**
 * @brief Dense two-phase primal simplex for min c'x s.t. Ax = b, x >= 0.
 *
 * Sized for the small feasibility programs built by the containment
 * queries (a few hundred rows and columns). Dantzig pricing, switching to
 * Bland's rule after a degenerate stall; throws if the iteration cap is
 * hit or the problem is unbounded.
 */
inline LpResult solve_lp(Eigen::MatrixXd a, Eigen::VectorXd b,
                         const Eigen::VectorXd& cost) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || cost.size() != n) {
    throw std::invalid_argument("solve_lp: inconsistent sizes.");
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) *= -1.0;
    }
  }

  // tableau: structural columns, one artificial per row, rhs
  const Eigen::Index width = n + m + 1;
  Eigen::MatrixXd tab(m, width);
  tab.leftCols(n) = a;
  tab.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
  tab.col(n + m) = b;

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    basis[static_cast<std::size_t>(i)] = n + i;
  }

  constexpr double kReducedCostTol = 1e-10;
  constexpr double kPivotTol = 1e-10;
  constexpr double kRatioTieTol = 1e-12;

  Eigen::RowVectorXd cost_row(width);  // reduced costs; last entry = -objective

  auto pivot = [&](Eigen::Index row, Eigen::Index col) {
    tab.row(row) /= tab(row, col);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != row && tab(i, col) != 0.0) {
        tab.row(i) -= tab(i, col) * tab.row(row);
      }
    }
    cost_row -= cost_row(col) * tab.row(row);
    basis[static_cast<std::size_t>(row)] = col;
  };

  // one simplex phase; only structural columns may enter
  auto run_phase = [&]() {
    bool bland = false;
    int stall = 0;
    double last_obj = -cost_row(width - 1);
    const long max_iter = 1000 + 200L * static_cast<long>(m + n);
    for (long iter = 0; iter < max_iter; ++iter) {
      Eigen::Index enter = -1;
      if (bland) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (cost_row(j) < -kReducedCostTol) {
            enter = j;
            break;
          }
        }
      } else {
        double best = -kReducedCostTol;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (cost_row(j) < best) {
            best = cost_row(j);
            enter = j;
          }
        }
      }
      if (enter < 0) {
        return;
      }

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double piv = tab(i, enter);
        if (piv <= kPivotTol) {
          continue;
        }
        const double ratio = tab(i, width - 1) / piv;
        if (leave < 0 || ratio < best_ratio - kRatioTieTol) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + kRatioTieTol &&
                   basis[static_cast<std::size_t>(i)] <
                       basis[static_cast<std::size_t>(leave)]) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave < 0) {
        throw std::runtime_error("solve_lp: unbounded objective.");
      }
      pivot(leave, enter);

      const double obj = -cost_row(width - 1);
      if (obj > last_obj - 1e-13) {
        if (++stall > 100) {
          bland = true;
        }
      } else {
        stall = 0;
      }
      last_obj = obj;
    }
    throw std::runtime_error("solve_lp: iteration limit exceeded.");
  };

  // phase 1: minimize the artificial sum
  cost_row.setZero();
  for (Eigen::Index j = 0; j < n; ++j) {
    cost_row(j) = -tab.col(j).sum();
  }
  cost_row(width - 1) = -b.sum();
  run_phase();

  const double infeas = -cost_row(width - 1);
  if (infeas > 1e-7 * std::max(1.0, b.lpNorm<Eigen::Infinity>())) {
    return {};
  }

  // drive leftover artificials out of the basis; rows where no structural
  // pivot exists are numerically redundant and stay inert
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) {
      continue;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab(i, j)) > kPivotTol) {
        pivot(i, j);
        break;
      }
    }
  }

  // phase 2: the real objective, priced against the current basis
  cost_row.setZero();
  cost_row.head(n) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bi = basis[static_cast<std::size_t>(i)];
    if (bi < n && cost(bi) != 0.0) {
      cost_row -= cost(bi) * tab.row(i);
    }
  }
  run_phase();

  LpResult result;
  result.feasible = true;
  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bi = basis[static_cast<std::size_t>(i)];
    if (bi < n) {
      result.x(bi) = std::max(0.0, tab(i, width - 1));
    }
  }
  result.objective = cost.dot(result.x);
  return result;
}

}  // namespace modalreach::detail

#endif  // MODALREACH_DETAIL_SIMPLEX_HPP_
