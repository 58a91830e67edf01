#ifndef MODALREACH_IO_PIPELINE_HPP_
#define MODALREACH_IO_PIPELINE_HPP_

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalreach/io/atomic_write.hpp"
#include "modalreach/io/config.hpp"
#include "modalreach/io/csv.hpp"
#include "modalreach/io/results.hpp"
#include "modalreach/modal.hpp"

namespace modalreach::io {

/// 0 when at least one mode produced sets, 2 when every mode had an empty
/// selection, 3 when selections existed but all failed on data rank.
inline int exit_code_for(const ModalReachResult& result) {
  bool any_ok = false;
  bool all_empty = true;
  for (const auto& mode : result.modes) {
    any_ok = any_ok || mode.status == ModeRunStatus::kOk;
    all_empty = all_empty && mode.status == ModeRunStatus::kEmptySelection;
  }
  if (any_ok) {
    return 0;
  }
  return all_empty ? 2 : 3;
}

struct PipelineRun {
  std::vector<StateInputTrajectory> trajectories;
  std::vector<TrajectoryChunk> chunks;
  PedestrianQuery query;
};

inline PipelineRun prepare_run(const RunConfig& cfg,
                               const std::filesystem::path& data_path) {
  PipelineRun run;
  run.trajectories = load_trajectories(data_path, cfg.sample_period);
  run.chunks = chunk_trajectories(
      run.trajectories, cfg.chunk_size, [&](const TrajectoryChunk& chunk) {
        return default_crossing_oracle(chunk, cfg.geometry);
      });
  run.query = make_query(cfg);
  return run;
}

struct PredictOptions {
  bool svg = false;
  bool compare_pooled = false;
  std::optional<std::uint64_t> seed_override;
};

struct PredictOutcome {
  ModalReachResult result;
  nlohmann::json document;
  int exit_code = 0;
  std::vector<std::filesystem::path> svg_paths;
};

namespace detail {

inline std::string sanitize_name(const std::string& name) {
  std::string out;
  for (const char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  }
  return out;
}

}  // namespace detail

/**
 * @brief Full prediction pipeline: load, chunk, predict per mode, write JSON.
 *
 * Writes one SVG per successful mode next to the JSON when requested. The
 * pooled comparison reruns the pipeline with selection disabled and embeds
 * per-step area ratios.
 */
inline PredictOutcome run_predict(const RunConfig& cfg,
                                  const std::filesystem::path& data_path,
                                  const std::filesystem::path& out_path,
                                  const PredictOptions& opts = {}) {
  const PipelineRun run = prepare_run(cfg, data_path);
  const std::vector<ModeLabel> modes = default_mode_set();
  const std::uint64_t seed = opts.seed_override.value_or(cfg.seed);

  PredictOutcome outcome;
  if (opts.compare_pooled) {
    const PooledComparison cmp = compare_modal_vs_pooled(
        run.chunks, modes, run.query, cfg.noise, cfg.max_order);
    outcome.result = cmp.modal;
    outcome.document = predict_document(cfg.config_hash, seed, cmp.modal);
    attach_comparison(outcome.document, cmp);
  } else {
    outcome.result =
        modal_reach(run.chunks, modes, run.query, cfg.noise, cfg.max_order);
    outcome.document = predict_document(cfg.config_hash, seed, outcome.result);
  }
  outcome.exit_code = exit_code_for(outcome.result);
  write_text_atomic(out_path, outcome.document.dump(2) + "\n");

  if (opts.svg) {
    for (const auto& mode : outcome.result.modes) {
      if (mode.status != ModeRunStatus::kOk) {
        continue;
      }
      std::filesystem::path svg_path = out_path;
      svg_path.replace_extension();
      svg_path += "." + detail::sanitize_name(mode.mode.name) + ".svg";
      write_mode_svg(svg_path, mode);
      outcome.svg_paths.push_back(std::move(svg_path));
    }
  }
  return outcome;
}

/// Ground truth recorded by the synthetic generator.
struct SidecarTruth {
  Eigen::Matrix2d a;
  Eigen::Matrix2d b;
  std::vector<Eigen::Vector2d> noise;
};

inline SidecarTruth load_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open sidecar '" + path.string() + "'.");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error("sidecar '" + path.string() + "': " + err.what());
  }
  SidecarTruth truth;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      truth.a(i, j) = doc.at("A").at(i).at(j).get<double>();
      truth.b(i, j) = doc.at("B").at(i).at(j).get<double>();
    }
  }
  for (const auto& entry : doc.at("noise")) {
    truth.noise.emplace_back(entry.at("w").at(0).get<double>(),
                             entry.at("w").at(1).get<double>());
  }
  if (truth.noise.empty()) {
    throw std::runtime_error("sidecar '" + path.string() +
                             "': no noise samples recorded.");
  }
  return truth;
}

struct EvaluateOutcome {
  ModalReachResult result;
  nlohmann::json document;
  int exit_code = 0;
};

namespace detail {

template <class URBG>
std::size_t uniform_index(URBG& rng, std::size_t n) {
  return static_cast<std::size_t>((static_cast<double>(rng() >> 11) * 0x1.0p-53) *
                                  static_cast<double>(n));
}

}  // namespace detail

/**
 * @brief Monte Carlo check of the prediction against recorded ground truth.
 *
 * Replays rollouts of the true model: starts drawn from the query position
 * set, inputs from the per-step estimated input sets, disturbances
 * resampled from the sidecar noise log. Reports per-step containment
 * rates, per-step areas, modal-vs-pooled area ratios and step runtimes.
 */
inline EvaluateOutcome evaluate(const RunConfig& cfg,
                                const std::filesystem::path& data_path,
                                const std::filesystem::path& sidecar_path,
                                const std::filesystem::path& out_path) {
  const PipelineRun run = prepare_run(cfg, data_path);
  const std::vector<ModeLabel> modes = default_mode_set();
  const SidecarTruth truth = load_sidecar(sidecar_path);

  const PooledComparison cmp = compare_modal_vs_pooled(
      run.chunks, modes, run.query, cfg.noise, cfg.max_order);

  EvaluateOutcome outcome;
  outcome.result = cmp.modal;
  outcome.exit_code = exit_code_for(cmp.modal);

  nlohmann::json doc;
  doc["meta"] = {{"config_hash", cfg.config_hash},
                 {"seed", cfg.seed},
                 {"rollouts", cfg.evaluate.rollouts}};

  std::mt19937_64 rng(cfg.seed);
  nlohmann::json modes_json = nlohmann::json::array();
  for (const auto& mode : cmp.modal.modes) {
    nlohmann::json mj;
    mj["id"] = mode.mode.id;
    mj["name"] = mode.mode.name;
    mj["status"] = to_string(mode.status);
    mj["kept_chunks"] = mode.kept_chunks;
    if (!mode.message.empty()) {
      mj["message"] = mode.message;
    }

    const auto areas_it = std::find_if(
        cmp.modes.begin(), cmp.modes.end(),
        [&](const PooledComparison::ModeAreas& m) { return m.mode.id == mode.mode.id; });
    nlohmann::json areas = nlohmann::json::array();
    nlohmann::json ratios = nlohmann::json::array();
    if (areas_it != cmp.modes.end()) {
      for (std::size_t k = 0; k < areas_it->area.size(); ++k) {
        areas.push_back({{"k", k}, {"area", areas_it->area[k]}});
        ratios.push_back({{"k", k}, {"ratio", areas_it->ratio[k]}});
      }
    }
    mj["areas"] = std::move(areas);
    mj["area_ratio"] = std::move(ratios);
    mj["step_ms"] = mode.step_ms;

    if (mode.status == ModeRunStatus::kOk) {
      std::vector<Polygon2D> polys;
      polys.reserve(mode.sets.size());
      for (const auto& set : mode.sets) {
        polys.push_back(to_polygon(set));
      }
      const int horizon = static_cast<int>(mode.sets.size()) - 1;
      std::vector<long> step_hits(static_cast<std::size_t>(horizon), 0);
      long full_hits = 0;
      for (int r = 0; r < cfg.evaluate.rollouts; ++r) {
        Eigen::Vector2d x = sample(run.query.position_set, rng);
        bool all_inside = true;
        for (int k = 0; k < horizon; ++k) {
          const Eigen::Vector2d u = sample(mode.inputs[static_cast<std::size_t>(k)], rng);
          const Eigen::Vector2d w =
              truth.noise[detail::uniform_index(rng, truth.noise.size())];
          x = truth.a * x + truth.b * u + w;
          if (polys[static_cast<std::size_t>(k) + 1].contains(x, 1e-9)) {
            ++step_hits[static_cast<std::size_t>(k)];
          } else {
            all_inside = false;
          }
        }
        if (all_inside) {
          ++full_hits;
        }
      }
      nlohmann::json per_step = nlohmann::json::array();
      for (std::size_t k = 0; k < step_hits.size(); ++k) {
        per_step.push_back(
            {{"k", k + 1},
             {"rate", static_cast<double>(step_hits[k]) /
                          static_cast<double>(cfg.evaluate.rollouts)}});
      }
      mj["containment"] = {
          {"rollouts", cfg.evaluate.rollouts},
          {"per_step", std::move(per_step)},
          {"overall", static_cast<double>(full_hits) /
                          static_cast<double>(cfg.evaluate.rollouts)}};
    }
    modes_json.push_back(std::move(mj));
  }
  doc["modes"] = std::move(modes_json);

  nlohmann::json pooled;
  pooled["status"] = to_string(cmp.pooled.status);
  pooled["kept_chunks"] = cmp.pooled.kept_chunks;
  nlohmann::json pooled_areas = nlohmann::json::array();
  for (std::size_t k = 0; k < cmp.pooled_area.size(); ++k) {
    pooled_areas.push_back({{"k", k}, {"area", cmp.pooled_area[k]}});
  }
  pooled["areas"] = std::move(pooled_areas);
  doc["pooled"] = std::move(pooled);

  outcome.document = doc;
  write_text_atomic(out_path, doc.dump(2) + "\n");
  return outcome;
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_PIPELINE_HPP_
