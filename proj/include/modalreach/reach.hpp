#ifndef MODALREACH_REACH_HPP_
#define MODALREACH_REACH_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "modalreach/model_set.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach {

/// Hard cap on the generator count a single propagation step may produce.
inline constexpr Eigen::Index kGeneratorLimit = 100000;

namespace detail {

inline Eigen::Index predicted_step_generators(const ModelSet& model,
                                              const Zonotope& state_set,
                                              const Zonotope& input_set,
                                              const NoiseSpec& spec) {
  const Eigen::Index gz = state_set.num_generators() + input_set.num_generators();
  return gz + model.models.num_generators() * (1 + gz) +
         spec.noise.num_generators();
}

}  // namespace detail

/**
 * @brief One-step reachable set over every model in the set.
 *
 * Stacks the state and input sets, pushes the product through the model
 * set and adds the process noise. Sound for any true model in the set and
 * any disturbance within the bound.
 */
inline Zonotope reach_step(const ModelSet& model, const Zonotope& state_set,
                           const Zonotope& input_set, const NoiseSpec& spec) {
  if (state_set.dim() != model.state_dim) {
    throw std::invalid_argument("reach_step: state dimension mismatch.");
  }
  if (input_set.dim() != model.input_dim) {
    throw std::invalid_argument("reach_step: input dimension mismatch.");
  }
  if (spec.noise.dim() != model.state_dim) {
    throw std::invalid_argument("reach_step: noise dimension mismatch.");
  }
  return minkowski_sum(
      mz_times_zonotope(model.models, cartesian_product(state_set, input_set)),
      spec.noise);
}

/**
 * @brief Iterated reachable sets for one input set per step.
 *
 * Each step is reduced to max_order before the next; the returned list
 * holds the post-step sets only, one per input. Aborts before a step whose
 * raw generator count would exceed kGeneratorLimit.
 */
inline std::vector<Zonotope> reach_horizon(const ModelSet& model,
                                           const Zonotope& initial_set,
                                           const std::vector<Zonotope>& input_sets,
                                           const NoiseSpec& spec,
                                           double max_order = 20.0) {
  if (input_sets.empty()) {
    throw std::invalid_argument("reach_horizon: need at least one input set.");
  }
  std::vector<Zonotope> out;
  out.reserve(input_sets.size());
  Zonotope current = initial_set;
  for (std::size_t k = 0; k < input_sets.size(); ++k) {
    const Eigen::Index predicted =
        detail::predicted_step_generators(model, current, input_sets[k], spec);
    if (predicted > kGeneratorLimit) {
      throw std::runtime_error(
          "reach_horizon: step " + std::to_string(k) + " would create " +
          std::to_string(predicted) + " generators (limit " +
          std::to_string(kGeneratorLimit) +
          "); reduce the data size or lower max_order.");
    }
    current = reduce_order(reach_step(model, current, input_sets[k], spec),
                           max_order);
    out.push_back(current);
  }
  return out;
}

}  // namespace modalreach

#endif  // MODALREACH_REACH_HPP_
