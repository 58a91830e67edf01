#ifndef MODALREACH_IO_SYNTHETIC_HPP_
#define MODALREACH_IO_SYNTHETIC_HPP_

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "modalreach/detail/format.hpp"
#include "modalreach/io/atomic_write.hpp"
#include "modalreach/io/config.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach::io {

struct SyntheticOutput {
  std::filesystem::path data_path;
  std::filesystem::path sidecar_path;
};

/// Sidecar path convention: the data file with '.truth.json' appended to
/// its stem ('corpus.csv' -> 'corpus.truth.json').
inline std::filesystem::path sidecar_path_for(std::filesystem::path data_path) {
  data_path.replace_extension(".truth.json");
  return data_path;
}

/**
 * @brief Deterministic crosswalk corpus: noisy single-integrator walkers.
 *
 * Crossing trajectories start near synthetic.crossing_start and move along
 * the crossing axis; walking trajectories start near synthetic.walking_start
 * and move perpendicular to it, alternating direction. Dynamics are
 * x(k+1) = x(k) + dt * u(k) + w(k) with per-step jitter on the inputs and
 * noise drawn uniformly inside the configured bound. The sidecar records
 * the true model and every noise draw for later evaluation.
 */
inline SyntheticOutput generate_synthetic(const RunConfig& cfg,
                                          std::uint64_t seed,
                                          const std::filesystem::path& data_path) {
  std::mt19937_64 rng(seed);
  const double dt = cfg.sample_period;
  const SyntheticSpec& syn = cfg.synthetic;

  const Eigen::Vector2d axis_dir =
      cfg.geometry.crossing_axis == 1 ? Eigen::Vector2d(0.0, 1.0)
                                      : Eigen::Vector2d(1.0, 0.0);
  const Eigen::Vector2d perp_dir =
      cfg.geometry.crossing_axis == 1 ? Eigen::Vector2d(1.0, 0.0)
                                      : Eigen::Vector2d(0.0, 1.0);

  std::string csv = "trajectory_id,t,x,y\n";
  nlohmann::json noise_log = nlohmann::json::array();

  auto simulate = [&](const std::string& id, Eigen::Vector2d start,
                      const Eigen::Vector2d& base_velocity) {
    Eigen::Vector2d x = start;
    for (int k = 0; k <= syn.steps; ++k) {
      csv += id + "," + std::to_string(k) + "," +
             modalreach::detail::fmt_shortest(x.x()) + "," +
             modalreach::detail::fmt_shortest(x.y()) + "\n";
      if (k == syn.steps) {
        break;
      }
      Eigen::Vector2d u = base_velocity;
      u.x() += syn.input_jitter * uniform_pm1(rng);
      u.y() += syn.input_jitter * uniform_pm1(rng);
      const Eigen::Vector2d w = sample(cfg.noise.noise, rng);
      noise_log.push_back({{"traj", id}, {"t", k}, {"w", {w.x(), w.y()}}});
      x = x + dt * u + w;
    }
  };

  auto spread = [&](const Eigen::Vector2d& base) {
    Eigen::Vector2d s = base;
    s.x() += syn.start_spread * uniform_pm1(rng);
    s.y() += syn.start_spread * uniform_pm1(rng);
    return s;
  };

  char id_buf[32];
  for (int i = 0; i < syn.crossing_count; ++i) {
    std::snprintf(id_buf, sizeof id_buf, "crossing-%03d", i);
    simulate(id_buf, spread(syn.crossing_start), syn.speed * axis_dir);
  }
  for (int i = 0; i < syn.walking_count; ++i) {
    std::snprintf(id_buf, sizeof id_buf, "walk-%03d", i);
    const double dir = i % 2 == 0 ? 1.0 : -1.0;
    simulate(id_buf, spread(syn.walking_start), dir * syn.speed * perp_dir);
  }

  nlohmann::json sidecar;
  sidecar["A"] = {{1.0, 0.0}, {0.0, 1.0}};
  sidecar["B"] = {{dt, 0.0}, {0.0, dt}};
  sidecar["noise"] = std::move(noise_log);

  SyntheticOutput out;
  out.data_path = data_path;
  out.sidecar_path = sidecar_path_for(data_path);
  write_text_atomic(out.data_path, csv);
  write_text_atomic(out.sidecar_path, sidecar.dump(2) + "\n");
  return out;
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_SYNTHETIC_HPP_
