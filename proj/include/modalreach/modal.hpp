#ifndef MODALREACH_MODAL_HPP_
#define MODALREACH_MODAL_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalreach/chunk.hpp"
#include "modalreach/containment.hpp"
#include "modalreach/polygon.hpp"
#include "modalreach/reach.hpp"

namespace modalreach {

/**
 * @brief Prediction request for one pedestrian.
 *
 * position_set is the measured position with its uncertainty, heading the
 * current direction estimate, heading_limit the half-width of the heading
 * window used for chunk selection, and horizon the number of steps to
 * predict.
 */
struct PedestrianQuery {
  Zonotope position_set;
  double heading = 0.0;
  double heading_limit = std::numbers::pi / 6.0;
  int horizon = 10;
};

inline void validate_query(const PedestrianQuery& q) {
  if (q.position_set.dim() != 2) {
    throw std::invalid_argument("PedestrianQuery: position set must be planar.");
  }
  if (!(q.heading_limit >= 0.0 && q.heading_limit <= std::numbers::pi)) {
    throw std::invalid_argument(
        "PedestrianQuery: heading_limit must lie in [0, pi].");
  }
  if (q.horizon < 1) {
    throw std::invalid_argument("PedestrianQuery: horizon must be positive.");
  }
  if (!std::isfinite(q.heading)) {
    throw std::invalid_argument("PedestrianQuery: heading must be finite.");
  }
}

/// Thrown when an estimate is requested for an empty chunk selection.
class EmptySelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One chunk passes for a mode when its label matches, its start lies in
/// the query position set, and its initial heading is within the heading
/// window (half-open on the negative side).
inline bool selection_match(const TrajectoryChunk& chunk, const ModeLabel& mode,
                            const PedestrianQuery& q) {
  if (chunk.label.id != mode.id) {
    return false;
  }
  if (!contains_point(q.position_set, Eigen::VectorXd(chunk.points.front()))) {
    return false;
  }
  const double offset = wrap_angle(chunk.headings.front() - q.heading);
  return offset > -q.heading_limit && offset <= q.heading_limit;
}

inline std::vector<TrajectoryChunk> select_chunks(
    const std::vector<TrajectoryChunk>& chunks, const ModeLabel& mode,
    const PedestrianQuery& q) {
  validate_query(q);
  std::vector<TrajectoryChunk> kept;
  for (const auto& chunk : chunks) {
    if (selection_match(chunk, mode, q)) {
      kept.push_back(chunk);
    }
  }
  return kept;
}

/**
 * @brief Input set observed at one step across the kept chunks.
 *
 * Center is the mean of the k-th inputs, generators a diagonal of the
 * componentwise maximum absolute deviation, so every observed input is a
 * member.
 */
inline Zonotope estimate_input_zonotope(const std::vector<TrajectoryChunk>& kept,
                                        std::size_t step) {
  if (kept.empty()) {
    throw EmptySelectionError(
        "estimate_input_zonotope: no chunks selected for this mode.");
  }
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& chunk : kept) {
    if (step >= chunk.inputs.size()) {
      throw std::out_of_range(
          "estimate_input_zonotope: step beyond chunk inputs.");
    }
    mean += chunk.inputs[step];
  }
  mean /= static_cast<double>(kept.size());
  Eigen::Vector2d dev = Eigen::Vector2d::Zero();
  for (const auto& chunk : kept) {
    dev = dev.cwiseMax((chunk.inputs[step] - mean).cwiseAbs());
  }
  return Zonotope(Eigen::VectorXd(mean), Eigen::MatrixXd(dev.asDiagonal()));
}

/// Data matrices over a set of chunks, concatenated in order.
inline DataMatrices data_matrices_from_chunks(
    const std::vector<TrajectoryChunk>& chunks) {
  std::vector<StateInputTrajectory> trajs;
  trajs.reserve(chunks.size());
  for (const auto& chunk : chunks) {
    StateInputTrajectory traj;
    traj.states.reserve(chunk.points.size());
    traj.inputs.reserve(chunk.inputs.size());
    for (const auto& p : chunk.points) {
      traj.states.emplace_back(Eigen::VectorXd(p));
    }
    for (const auto& u : chunk.inputs) {
      traj.inputs.emplace_back(Eigen::VectorXd(u));
    }
    trajs.push_back(std::move(traj));
  }
  return build_data_matrices(trajs);
}

enum class ModeRunStatus { kOk, kEmptySelection, kRankDeficient };

inline const char* to_string(ModeRunStatus status) {
  switch (status) {
    case ModeRunStatus::kOk:
      return "ok";
    case ModeRunStatus::kEmptySelection:
      return "empty_selection";
    case ModeRunStatus::kRankDeficient:
      return "rank_deficient";
  }
  return "unknown";
}

/**
 * @brief Reachable sets predicted for one mode, or the reason there are none.
 *
 * On success `sets` holds horizon+1 entries (the query position set first)
 * and `inputs` one estimated input set per step. step_ms records the wall
 * time spent propagating each step.
 */
struct ModeReachResult {
  ModeLabel mode;
  ModeRunStatus status = ModeRunStatus::kOk;
  std::string message;
  std::size_t kept_chunks = 0;
  std::vector<Zonotope> sets;
  std::vector<Zonotope> inputs;
  std::vector<double> step_ms;
};

/// Results for every requested mode, ordered by mode id.
struct ModalReachResult {
  std::vector<ModeReachResult> modes;
};

namespace detail {

inline ModeReachResult reach_from_chunks(const std::vector<TrajectoryChunk>& kept,
                                         const ModeLabel& mode,
                                         const PedestrianQuery& q,
                                         const NoiseSpec& spec,
                                         double max_order) {
  ModeReachResult result;
  result.mode = mode;
  result.kept_chunks = kept.size();
  if (kept.empty()) {
    result.status = ModeRunStatus::kEmptySelection;
    result.message = "no recorded chunk matches the query for this mode";
    return result;
  }
  for (const auto& chunk : kept) {
    if (static_cast<std::size_t>(q.horizon) > chunk.inputs.size()) {
      throw std::invalid_argument(
          "modal_reach: horizon exceeds the chunk input length.");
    }
  }

  ModelSet model;
  try {
    model = compute_model_set(data_matrices_from_chunks(kept), spec);
  } catch (const RankDeficientData& err) {
    result.status = ModeRunStatus::kRankDeficient;
    result.message = err.what();
    return result;
  }

  result.sets.push_back(q.position_set);
  Zonotope current = q.position_set;
  for (int k = 0; k < q.horizon; ++k) {
    const Zonotope input =
        estimate_input_zonotope(kept, static_cast<std::size_t>(k));
    result.inputs.push_back(input);
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::Index predicted =
        predicted_step_generators(model, current, input, spec);
    if (predicted > kGeneratorLimit) {
      throw std::runtime_error(
          "modal_reach: step " + std::to_string(k) + " would create " +
          std::to_string(predicted) + " generators (limit " +
          std::to_string(kGeneratorLimit) +
          "); reduce the data size or lower max_order.");
    }
    current = reduce_order(reach_step(model, current, input, spec), max_order);
    const auto t1 = std::chrono::steady_clock::now();
    result.sets.push_back(current);
    result.step_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return result;
}

}  // namespace detail

/**
 * @brief Mode-conditioned reachable set prediction.
 *
 * For each mode, selects the matching chunks, identifies a model set from
 * them alone, estimates per-step input sets and propagates the query
 * position set over the horizon. Modes with no matching chunks or with
 * rank-deficient data are reported through their status rather than
 * dropped.
 */
inline ModalReachResult modal_reach(const std::vector<TrajectoryChunk>& chunks,
                                    const std::vector<ModeLabel>& modes,
                                    const PedestrianQuery& q,
                                    const NoiseSpec& spec,
                                    double max_order = 20.0) {
  validate_query(q);
  if (modes.empty()) {
    throw std::invalid_argument("modal_reach: no modes given.");
  }
  ModalReachResult result;
  result.modes.reserve(modes.size());
  for (const auto& mode : modes) {
    result.modes.push_back(detail::reach_from_chunks(
        select_chunks(chunks, mode, q), mode, q, spec, max_order));
  }
  std::stable_sort(result.modes.begin(), result.modes.end(),
                   [](const ModeReachResult& a, const ModeReachResult& b) {
                     return a.mode.id < b.mode.id;
                   });
  return result;
}

/**
 * @brief Modal prediction next to a selection-free pooled baseline.
 *
 * The pooled run keeps every chunk regardless of label, start or heading
 * and otherwise uses the same pipeline. Ratios are modal area over pooled
 * area per step; NaN where the pooled area is zero.
 */
struct PooledComparison {
  ModalReachResult modal;
  ModeReachResult pooled;
  std::vector<double> pooled_area;

  struct ModeAreas {
    ModeLabel mode;
    std::vector<double> area;
    std::vector<double> ratio;
  };
  std::vector<ModeAreas> modes;
};

inline PooledComparison compare_modal_vs_pooled(
    const std::vector<TrajectoryChunk>& chunks,
    const std::vector<ModeLabel>& modes, const PedestrianQuery& q,
    const NoiseSpec& spec, double max_order = 20.0) {
  PooledComparison cmp;
  cmp.modal = modal_reach(chunks, modes, q, spec, max_order);
  cmp.pooled =
      detail::reach_from_chunks(chunks, ModeLabel{0, "pooled"}, q, spec,
                                max_order);
  if (cmp.pooled.status == ModeRunStatus::kOk) {
    cmp.pooled_area.reserve(cmp.pooled.sets.size());
    for (const auto& set : cmp.pooled.sets) {
      cmp.pooled_area.push_back(polygon_area(to_polygon(set)));
    }
  }
  for (const auto& mode_result : cmp.modal.modes) {
    PooledComparison::ModeAreas areas;
    areas.mode = mode_result.mode;
    if (mode_result.status == ModeRunStatus::kOk) {
      for (std::size_t k = 0; k < mode_result.sets.size(); ++k) {
        const double area = polygon_area(to_polygon(mode_result.sets[k]));
        areas.area.push_back(area);
        if (k < cmp.pooled_area.size() && cmp.pooled_area[k] > 0.0) {
          areas.ratio.push_back(area / cmp.pooled_area[k]);
        } else {
          areas.ratio.push_back(std::numeric_limits<double>::quiet_NaN());
        }
      }
    }
    cmp.modes.push_back(std::move(areas));
  }
  return cmp;
}

}  // namespace modalreach

#endif  // MODALREACH_MODAL_HPP_
