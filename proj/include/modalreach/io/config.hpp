#ifndef MODALREACH_IO_CONFIG_HPP_
#define MODALREACH_IO_CONFIG_HPP_

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalreach/chunk.hpp"
#include "modalreach/modal.hpp"
#include "modalreach/model_set.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the synthetic crosswalk generator.
struct SyntheticSpec {
  int crossing_count = 12;
  int walking_count = 12;
  int steps = 40;
  double speed = 1.3;
  double input_jitter = 0.15;
  double start_spread = 0.2;
  Eigen::Vector2d crossing_start{2.0, 0.3};
  Eigen::Vector2d walking_start{-1.0, 0.3};
};

struct EvaluateSpec {
  int rollouts = 10000;
};

/// Everything a CLI run needs, with defaults for absent keys.
struct RunConfig {
  std::size_t chunk_size = 20;
  int horizon = 10;
  double heading_limit = std::numbers::pi / 6.0;
  double max_order = 20.0;
  double sample_period = 0.1;
  std::uint64_t seed = 0;
  NoiseSpec noise;
  CrossingGeometry geometry;
  Zonotope query_position;
  double query_heading = std::numbers::pi / 2.0;
  SyntheticSpec synthetic;
  EvaluateSpec evaluate;
  std::string config_hash;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

inline Eigen::Vector2d parse_vec2(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() != 2) {
    throw ConfigError("config: '" + key + "' must be a list of two numbers.");
  }
  return {node[0].as<double>(), node[1].as<double>()};
}

inline Zonotope parse_zonotope(const YAML::Node& node, const std::string& key) {
  if (!node.IsMap() || !node["center"]) {
    throw ConfigError("config: '" + key + "' needs a 'center'.");
  }
  const Eigen::Vector2d c = parse_vec2(node["center"], key + ".center");
  Eigen::MatrixXd gens(2, 0);
  if (node["generators"]) {
    const YAML::Node& list = node["generators"];
    if (!list.IsSequence()) {
      throw ConfigError("config: '" + key +
                        ".generators' must be a list of columns.");
    }
    gens.resize(2, static_cast<Eigen::Index>(list.size()));
    for (std::size_t j = 0; j < list.size(); ++j) {
      gens.col(static_cast<Eigen::Index>(j)) =
          parse_vec2(list[j], key + ".generators");
    }
  }
  return Zonotope(Eigen::VectorXd(c), std::move(gens));
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  if (root.IsNull()) {
    root = YAML::Node(YAML::NodeType::Map);
  }
  if (!root.IsMap()) {
    throw ConfigError("config: top level must be a mapping.");
  }

  RunConfig cfg;
  cfg.config_hash = detail::fnv1a_hex(text);
  try {
    if (root["chunk_size"]) cfg.chunk_size = root["chunk_size"].as<std::size_t>();
    if (root["horizon"]) cfg.horizon = root["horizon"].as<int>();
    if (root["kappa"]) cfg.heading_limit = root["kappa"].as<double>();
    if (root["max_order"]) cfg.max_order = root["max_order"].as<double>();
    if (root["dt"]) cfg.sample_period = root["dt"].as<double>();
    if (root["seed"]) cfg.seed = root["seed"].as<std::uint64_t>();

    if (root["noise"]) {
      cfg.noise.noise = detail::parse_zonotope(root["noise"], "noise");
    } else {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
      cfg.noise.noise =
          Zonotope(c, Eigen::MatrixXd(0.005 * Eigen::Matrix2d::Identity()));
    }

    if (root["modes"]) {
      const YAML::Node& modes = root["modes"];
      if (modes["region"]) {
        const YAML::Node& region = modes["region"];
        const Eigen::Vector2d xr = detail::parse_vec2(region["x"], "modes.region.x");
        const Eigen::Vector2d yr = detail::parse_vec2(region["y"], "modes.region.y");
        cfg.geometry.lower = {xr(0), yr(0)};
        cfg.geometry.upper = {xr(1), yr(1)};
      }
      if (modes["crossing_axis"]) {
        const std::string axis = modes["crossing_axis"].as<std::string>();
        if (axis == "x") {
          cfg.geometry.crossing_axis = 0;
        } else if (axis == "y") {
          cfg.geometry.crossing_axis = 1;
        } else {
          throw ConfigError("config: modes.crossing_axis must be 'x' or 'y'.");
        }
      }
    } else {
      cfg.geometry.lower = {0.0, 0.0};
      cfg.geometry.upper = {4.0, 6.0};
      cfg.geometry.crossing_axis = 1;
    }

    if (root["query"]) {
      const YAML::Node& query = root["query"];
      if (query["position"]) {
        cfg.query_position = detail::parse_zonotope(query["position"], "query.position");
      }
      if (query["heading"]) {
        cfg.query_heading = query["heading"].as<double>();
      }
    }
    if (cfg.query_position.dim() == 0) {
      Eigen::VectorXd c(2);
      c << 2.0, 0.3;
      cfg.query_position =
          Zonotope(c, Eigen::MatrixXd(0.25 * Eigen::Matrix2d::Identity()));
    }

    if (root["synthetic"]) {
      const YAML::Node& syn = root["synthetic"];
      if (syn["crossing_count"]) cfg.synthetic.crossing_count = syn["crossing_count"].as<int>();
      if (syn["walking_count"]) cfg.synthetic.walking_count = syn["walking_count"].as<int>();
      if (syn["steps"]) cfg.synthetic.steps = syn["steps"].as<int>();
      if (syn["speed"]) cfg.synthetic.speed = syn["speed"].as<double>();
      if (syn["input_jitter"]) cfg.synthetic.input_jitter = syn["input_jitter"].as<double>();
      if (syn["start_spread"]) cfg.synthetic.start_spread = syn["start_spread"].as<double>();
      if (syn["crossing_start"]) cfg.synthetic.crossing_start = detail::parse_vec2(syn["crossing_start"], "synthetic.crossing_start");
      if (syn["walking_start"]) cfg.synthetic.walking_start = detail::parse_vec2(syn["walking_start"], "synthetic.walking_start");
    }
    if (root["evaluate"]) {
      const YAML::Node& ev = root["evaluate"];
      if (ev["rollouts"]) cfg.evaluate.rollouts = ev["rollouts"].as<int>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const YAML::Exception& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }

  // validation
  if (cfg.chunk_size < 2) {
    throw ConfigError("config: chunk_size must be at least 2.");
  }
  if (cfg.horizon < 1) {
    throw ConfigError("config: horizon must be positive.");
  }
  if (static_cast<std::size_t>(cfg.horizon) > cfg.chunk_size - 1) {
    throw ConfigError("config: horizon must be at most chunk_size - 1.");
  }
  if (!(cfg.heading_limit >= 0.0 && cfg.heading_limit <= std::numbers::pi)) {
    throw ConfigError("config: kappa must lie in [0, pi].");
  }
  if (!(cfg.max_order >= 1.0)) {
    throw ConfigError("config: max_order must be at least 1.");
  }
  if (!(cfg.sample_period > 0.0)) {
    throw ConfigError("config: dt must be positive.");
  }
  if (cfg.noise.noise.dim() != 2) {
    throw ConfigError("config: noise must be planar.");
  }
  if (cfg.query_position.dim() != 2) {
    throw ConfigError("config: query position must be planar.");
  }
  if ((cfg.geometry.lower.array() > cfg.geometry.upper.array()).any()) {
    throw ConfigError("config: modes.region bounds must be ordered.");
  }
  if (cfg.synthetic.crossing_count < 0 || cfg.synthetic.walking_count < 0) {
    throw ConfigError("config: synthetic counts must be nonnegative.");
  }
  if (cfg.synthetic.steps < 1) {
    throw ConfigError("config: synthetic.steps must be positive.");
  }
  if (cfg.evaluate.rollouts < 1) {
    throw ConfigError("config: evaluate.rollouts must be positive.");
  }
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config '" + path.string() + "'.");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

inline PedestrianQuery make_query(const RunConfig& cfg) {
  PedestrianQuery q;
  q.position_set = cfg.query_position;
  q.heading = cfg.query_heading;
  q.heading_limit = cfg.heading_limit;
  q.horizon = cfg.horizon;
  return q;
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_CONFIG_HPP_
