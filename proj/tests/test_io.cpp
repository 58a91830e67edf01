#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "helpers.hpp"
#include "modalreach/io/atomic_write.hpp"
#include "modalreach/io/config.hpp"
#include "modalreach/io/csv.hpp"
#include "modalreach/io/pipeline.hpp"
#include "modalreach/io/synthetic.hpp"
#include "modalreach/modal.hpp"

namespace fs = std::filesystem;
using modalreach::io::ConfigError;
using modalreach::io::CsvError;
using modalreach::io::generate_synthetic;
using modalreach::io::load_run_config;
using modalreach::io::load_trajectories;
using modalreach::io::parse_run_config;
using modalreach::io::RunConfig;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kHeader = "trajectory_id,t,x,y\n";

fs::path write_csv(const fs::path& dir, const std::string& body,
                   const std::string& name = "data.csv") {
  const fs::path path = dir / name;
  testhelp::spit(path, std::string(kHeader) + body);
  return path;
}

/// Minimal generator-plus-evaluation configuration used by the pipeline
/// cases; keeps the corpus small so the whole suite stays fast.
std::string small_config(double noise = 0.003, double jitter = 0.1,
                         double kappa = kPi / 6) {
  std::string text = R"(
dt: 0.1
chunk_size: 10
horizon: 5
max_order: 20
seed: 7
kappa: )" + std::to_string(kappa) + R"(
noise:
  center: [0, 0]
  generators:
    - [)" + std::to_string(noise) + R"(, 0]
    - [0, )" + std::to_string(noise) + R"(]
modes:
  region:
    x: [0, 4]
    y: [0, 6]
  crossing_axis: y
query:
  position:
    center: [2.0, 0.3]
    generators:
      - [0.25, 0]
      - [0, 0.25]
  heading: 1.5707963267948966
synthetic:
  crossing_count: 6
  walking_count: 6
  steps: 20
  speed: 1.3
  input_jitter: )" + std::to_string(jitter) + R"(
  start_spread: 0.15
  crossing_start: [2.0, 0.3]
  walking_start: [-1.0, 0.3]
evaluate:
  rollouts: 1500
)";
  return text;
}

}  // namespace

TEST_CASE("csv loading derives inputs by finite differences") {
  const auto dir = testhelp::scratch_dir("csv-basic");
  const auto path = write_csv(dir,
                              "p1,0,0,0\n"
                              "p1,1,0.1,0\n"
                              "p1,2,0.3,-0.2\n");
  const auto trajs = load_trajectories(path, 0.1);
  REQUIRE(trajs.size() == 1);
  REQUIRE(trajs[0].states.size() == 3);
  REQUIRE(trajs[0].inputs.size() == 2);
  CHECK(trajs[0].states[1](0) == 0.1);
  CHECK(trajs[0].inputs[0](0) == 1.0);
  CHECK(trajs[0].inputs[0](1) == 0.0);
  CHECK(trajs[0].inputs[1](0) == Catch::Approx(2.0).margin(1e-12));
  CHECK(trajs[0].inputs[1](1) == Catch::Approx(-2.0).margin(1e-12));
  CHECK(trajs[0].sample_period == 0.1);
}

TEST_CASE("csv rows may arrive out of order and interleaved") {
  const auto dir = testhelp::scratch_dir("csv-order");
  const auto path = write_csv(dir,
                              "b,1,1,1\n"
                              "a,0,0,0\n"
                              "b,0,9,9\n"
                              "a,1,2,0\n");
  const auto trajs = load_trajectories(path, 1.0);
  REQUIRE(trajs.size() == 2);
  // groups keep first-appearance order
  CHECK(trajs[0].states[0](0) == 9.0);  // b at t=0
  CHECK(trajs[1].states[0](0) == 0.0);  // a at t=0
  CHECK(trajs[1].inputs[0](0) == 2.0);
}

TEST_CASE("csv rejects malformed files with line numbers") {
  const auto dir = testhelp::scratch_dir("csv-bad");

  CHECK_THROWS_AS(load_trajectories(dir / "absent.csv", 0.1), CsvError);

  testhelp::spit(dir / "header.csv", "id,t,x,y\np,0,0,0\n");
  CHECK_THROWS_MATCHES(load_trajectories(dir / "header.csv", 0.1), CsvError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("header")));

  CHECK_THROWS_MATCHES(
      load_trajectories(write_csv(dir, "p,0,0\n", "fields.csv"), 0.1), CsvError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("line 2")));

  CHECK_THROWS_MATCHES(
      load_trajectories(write_csv(dir, "p,0,zero,0\np,1,1,1\n", "value.csv"),
                        0.1),
      CsvError,
      Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("x")));

  CHECK_THROWS_MATCHES(
      load_trajectories(
          write_csv(dir, "p,0,0,0\np,0,1,1\n", "duplicate.csv"), 0.1),
      CsvError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("duplicate")));

  CHECK_THROWS_MATCHES(
      load_trajectories(write_csv(dir, "p,0,0,0\np,2,1,1\n", "gap.csv"), 0.1),
      CsvError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("without gaps")));

  CHECK_THROWS_MATCHES(
      load_trajectories(write_csv(dir, "p,0,0,0\n", "single.csv"), 0.1),
      CsvError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("two samples")));

  CHECK_THROWS_MATCHES(
      load_trajectories(write_csv(dir, ",0,0,0\n", "noid.csv"), 0.1), CsvError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("empty trajectory id")));

  CHECK_THROWS_AS(
      load_trajectories(write_csv(dir, "p,0,0,0\np,1,1,1\n", "dt.csv"), 0.0),
      CsvError);
}

TEST_CASE("csv accepts windows line endings") {
  const auto dir = testhelp::scratch_dir("csv-crlf");
  const fs::path path = dir / "crlf.csv";
  testhelp::spit(path, "trajectory_id,t,x,y\r\np,0,0,0\r\np,1,1,0\r\n");
  const auto trajs = load_trajectories(path, 1.0);
  REQUIRE(trajs.size() == 1);
  CHECK(trajs[0].states[1](0) == 1.0);
}

TEST_CASE("an empty config yields the documented defaults") {
  const RunConfig cfg = parse_run_config("");
  CHECK(cfg.chunk_size == 20);
  CHECK(cfg.horizon == 10);
  CHECK(cfg.heading_limit == Catch::Approx(kPi / 6));
  CHECK(cfg.max_order == 20.0);
  CHECK(cfg.sample_period == 0.1);
  CHECK(cfg.seed == 0);
  CHECK(cfg.noise.noise.dim() == 2);
  CHECK(cfg.noise.noise.generators()(0, 0) == 0.005);
  CHECK(cfg.geometry.upper == Eigen::Vector2d(4, 6));
  CHECK(cfg.geometry.crossing_axis == 1);
  CHECK(cfg.query_position.center()(0) == 2.0);
  CHECK(cfg.query_heading == Catch::Approx(kPi / 2));
  CHECK(cfg.synthetic.crossing_count == 12);
  CHECK(cfg.evaluate.rollouts == 10000);
  CHECK(cfg.config_hash.size() == 16);
}

TEST_CASE("config keys override the defaults") {
  const RunConfig cfg = parse_run_config(small_config());
  CHECK(cfg.chunk_size == 10);
  CHECK(cfg.horizon == 5);
  CHECK(cfg.seed == 7);
  CHECK(cfg.sample_period == 0.1);
  CHECK(cfg.noise.noise.num_generators() == 2);
  CHECK(cfg.noise.noise.generators()(1, 1) == Catch::Approx(0.003));
  CHECK(cfg.synthetic.crossing_count == 6);
  CHECK(cfg.synthetic.steps == 20);
  CHECK(cfg.evaluate.rollouts == 1500);
  CHECK(cfg.geometry.lower == Eigen::Vector2d(0, 0));

  const modalreach::PedestrianQuery q = modalreach::io::make_query(cfg);
  CHECK(q.horizon == 5);
  CHECK(q.heading == Catch::Approx(kPi / 2));
  CHECK(q.position_set.center()(1) == 0.3);
}

TEST_CASE("config validation rejects out-of-range values") {
  CHECK_THROWS_AS(parse_run_config("kappa: 4.0"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("kappa: -0.1"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("chunk_size: 1"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("horizon: 0"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("chunk_size: 10\nhorizon: 10"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("max_order: 0.5"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("dt: 0"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("modes: {crossing_axis: z}"), ConfigError);
  CHECK_THROWS_AS(
      parse_run_config("modes: {region: {x: [4, 0], y: [0, 6]}}"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("evaluate: {rollouts: 0}"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("synthetic: {steps: 0}"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("- just\n- a\n- list"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("horizon: wat"), ConfigError);
}

TEST_CASE("the config hash keys on the exact bytes") {
  CHECK(parse_run_config("horizon: 5\nchunk_size: 9").config_hash ==
        parse_run_config("horizon: 5\nchunk_size: 9").config_hash);
  CHECK(parse_run_config("horizon: 5\nchunk_size: 9").config_hash !=
        parse_run_config("horizon: 5\nchunk_size: 9\n").config_hash);

  const auto dir = testhelp::scratch_dir("config-load");
  testhelp::spit(dir / "c.yaml", "horizon: 5\nchunk_size: 9");
  CHECK(load_run_config(dir / "c.yaml").config_hash ==
        parse_run_config("horizon: 5\nchunk_size: 9").config_hash);
  CHECK_THROWS_AS(load_run_config(dir / "absent.yaml"), ConfigError);
}

TEST_CASE("atomic writes land complete or not at all") {
  const auto dir = testhelp::scratch_dir("atomic");
  modalreach::io::write_text_atomic(dir / "out.txt", "payload");
  CHECK(testhelp::slurp(dir / "out.txt") == "payload");
  CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
  CHECK_THROWS_AS(
      modalreach::io::write_text_atomic(dir / "missing" / "out.txt", "x"),
      std::runtime_error);
}

TEST_CASE("the synthetic generator is byte-for-byte deterministic") {
  const auto dir = testhelp::scratch_dir("synthetic-det");
  const RunConfig cfg = parse_run_config(small_config());

  const auto first = generate_synthetic(cfg, 42, dir / "a.csv");
  const auto second = generate_synthetic(cfg, 42, dir / "b.csv");
  CHECK(testhelp::slurp(first.data_path) == testhelp::slurp(second.data_path));
  CHECK(testhelp::slurp(first.sidecar_path) ==
        testhelp::slurp(second.sidecar_path));

  const auto other = generate_synthetic(cfg, 43, dir / "c.csv");
  CHECK(testhelp::slurp(first.data_path) != testhelp::slurp(other.data_path));

  CHECK(modalreach::io::sidecar_path_for("foo/bar.csv") ==
        fs::path("foo/bar.truth.json"));
}

TEST_CASE("the sidecar records the true model and in-bound noise draws") {
  const auto dir = testhelp::scratch_dir("synthetic-sidecar");
  const RunConfig cfg = parse_run_config(small_config());
  const auto out = generate_synthetic(cfg, 11, dir / "data.csv");

  const auto truth = modalreach::io::load_sidecar(out.sidecar_path);
  CHECK(truth.a == Eigen::Matrix2d::Identity());
  CHECK(truth.b == Eigen::Matrix2d(0.1 * Eigen::Matrix2d::Identity()));
  CHECK(truth.noise.size() == 12u * 20u);
  for (const auto& w : truth.noise) {
    CHECK(std::abs(w.x()) <= 0.003);
    CHECK(std::abs(w.y()) <= 0.003);
  }

  const auto trajs = load_trajectories(out.data_path, cfg.sample_period);
  REQUIRE(trajs.size() == 12);
  for (const auto& traj : trajs) {
    CHECK(traj.states.size() == 21);
  }
}

TEST_CASE("a noise-free jitter-free corpus reloads exactly") {
  const auto dir = testhelp::scratch_dir("synthetic-exact");
  RunConfig cfg = parse_run_config(R"(
dt: 0.1
chunk_size: 5
horizon: 3
noise:
  center: [0, 0]
synthetic:
  crossing_count: 1
  walking_count: 2
  steps: 6
  speed: 1.3
  input_jitter: 0
  start_spread: 0
  crossing_start: [2.0, 0.3]
  walking_start: [-1.0, 0.3]
)");
  const auto out = generate_synthetic(cfg, 5, dir / "data.csv");
  const auto trajs = load_trajectories(out.data_path, cfg.sample_period);
  REQUIRE(trajs.size() == 3);

  Eigen::Vector2d x(2.0, 0.3);
  for (int k = 0; k <= 6; ++k) {
    CHECK(trajs[0].states[static_cast<std::size_t>(k)] == Eigen::VectorXd(x));
    x = x + 0.1 * Eigen::Vector2d(0.0, 1.3) + Eigen::Vector2d(0.0, 0.0);
  }

  // walking trajectories alternate direction
  CHECK(trajs[1].states[1](0) > trajs[1].states[0](0));
  CHECK(trajs[2].states[1](0) < trajs[2].states[0](0));
}

TEST_CASE("the prediction pipeline writes the documented schema") {
  const auto dir = testhelp::scratch_dir("predict");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");

  const auto outcome =
      modalreach::io::run_predict(cfg, data.data_path, dir / "out.json");
  CHECK(outcome.exit_code == 0);
  REQUIRE(fs::exists(dir / "out.json"));

  const auto doc = nlohmann::json::parse(testhelp::slurp(dir / "out.json"));
  CHECK(doc.at("meta").at("config_hash") == cfg.config_hash);
  CHECK(doc.at("meta").at("seed") == 7);
  REQUIRE(doc.at("modes").size() == 3);
  CHECK(doc["modes"][0]["id"] == 1);
  CHECK(doc["modes"][1]["id"] == 2);
  CHECK(doc["modes"][2]["id"] == 3);

  const auto& crossing = doc["modes"][0];
  CHECK(crossing.at("name") == "crossing");
  CHECK(crossing.at("status") == "ok");
  CHECK(crossing.at("kept_chunks").get<int>() >= 3);
  REQUIRE(crossing.at("steps").size() == 6);
  const auto& step0 = crossing["steps"][0];
  CHECK(step0.at("k") == 0);
  CHECK(step0.at("center").size() == 2);
  CHECK(step0.at("polygon").size() >= 3);
  CHECK(step0.at("area").get<double>() == Catch::Approx(0.25));
  CHECK(crossing["steps"][5]["area"].get<double>() > 0.25);
  REQUIRE(crossing.at("inputs").size() == 5);
  CHECK(crossing["inputs"][0].at("mu").size() == 2);
  CHECK(crossing["inputs"][0].at("sigma")[1].get<double>() > 0.0);

  // walkers start far from the query point
  CHECK(doc["modes"][1]["status"] == "empty_selection");
  CHECK(doc["modes"][1]["steps"].empty());
  CHECK(doc["modes"][2]["status"] == "empty_selection");
}

TEST_CASE("a vanishing heading window empties every selection") {
  const auto dir = testhelp::scratch_dir("predict-empty");
  const RunConfig cfg = parse_run_config(small_config(0.003, 0.1, 1e-9));
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");
  const auto outcome =
      modalreach::io::run_predict(cfg, data.data_path, dir / "out.json");
  CHECK(outcome.exit_code == 2);
  for (const auto& mode : outcome.result.modes) {
    CHECK(mode.status == modalreach::ModeRunStatus::kEmptySelection);
  }
}

TEST_CASE("the pooled comparison embeds areas and ratios") {
  const auto dir = testhelp::scratch_dir("predict-pooled");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");

  modalreach::io::PredictOptions opts;
  opts.compare_pooled = true;
  const auto outcome = modalreach::io::run_predict(cfg, data.data_path,
                                                   dir / "out.json", opts);
  const auto& doc = outcome.document;
  REQUIRE(doc.contains("pooled"));
  CHECK(doc["pooled"]["status"] == "ok");
  CHECK(doc["pooled"]["kept_chunks"].get<int>() == 24);
  REQUIRE(doc["pooled"]["areas"].size() == 6);

  const auto& ratios = doc["modes"][0].at("area_ratio");
  REQUIRE(ratios.size() == 6);
  CHECK(ratios[0]["ratio"].get<double>() == 1.0);
  CHECK(ratios[5]["ratio"].get<double>() < 1.0);
}

TEST_CASE("svg rendering produces one drawing per successful mode") {
  const auto dir = testhelp::scratch_dir("predict-svg");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");

  modalreach::io::PredictOptions opts;
  opts.svg = true;
  const auto outcome = modalreach::io::run_predict(cfg, data.data_path,
                                                   dir / "out.json", opts);
  REQUIRE(outcome.svg_paths.size() == 1);
  CHECK(outcome.svg_paths[0].filename() == "out.crossing.svg");
  const std::string svg = testhelp::slurp(outcome.svg_paths[0]);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polygon") != std::string::npos);
}

TEST_CASE("a seed override lands in the result metadata") {
  const auto dir = testhelp::scratch_dir("predict-seed");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");
  modalreach::io::PredictOptions opts;
  opts.seed_override = 99;
  const auto outcome = modalreach::io::run_predict(cfg, data.data_path,
                                                   dir / "out.json", opts);
  CHECK(outcome.document["meta"]["seed"] == 99);
}

TEST_CASE("evaluation confirms containment when the noise bound is honest") {
  const auto dir = testhelp::scratch_dir("evaluate-sound");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");

  const auto outcome = modalreach::io::evaluate(
      cfg, data.data_path, data.sidecar_path, dir / "metrics.json");
  CHECK(outcome.exit_code == 0);

  const auto doc = nlohmann::json::parse(testhelp::slurp(dir / "metrics.json"));
  CHECK(doc.at("meta").at("rollouts") == 1500);
  const auto& crossing = doc.at("modes").at(0);
  REQUIRE(crossing.at("status") == "ok");
  const auto& containment = crossing.at("containment");
  CHECK(containment.at("overall").get<double>() == 1.0);
  for (const auto& step : containment.at("per_step")) {
    CHECK(step.at("rate").get<double>() == 1.0);
  }
  REQUIRE(crossing.at("areas").size() == 6);
  REQUIRE(crossing.at("area_ratio").size() == 6);
  CHECK(crossing.at("step_ms").size() == 5);
  CHECK(doc.at("pooled").at("areas").size() == 6);
}

TEST_CASE("evaluation exposes an understated noise bound") {
  const auto dir = testhelp::scratch_dir("evaluate-lying");
  const RunConfig honest = parse_run_config(small_config(0.008, 0.1));
  const auto data = generate_synthetic(honest, 3, dir / "data.csv");

  // same corpus, but the model is told the noise is almost nonexistent
  const RunConfig lying = parse_run_config(small_config(0.00001, 0.1));
  const auto outcome = modalreach::io::evaluate(
      lying, data.data_path, data.sidecar_path, dir / "metrics.json");

  const auto& crossing = outcome.document.at("modes").at(0);
  REQUIRE(crossing.at("status") == "ok");
  CHECK(crossing.at("containment").at("overall").get<double>() < 1.0);
}

TEST_CASE("evaluation demands a usable sidecar") {
  const auto dir = testhelp::scratch_dir("evaluate-sidecar");
  const RunConfig cfg = parse_run_config(small_config());
  const auto data = generate_synthetic(cfg, cfg.seed, dir / "data.csv");

  CHECK_THROWS_AS(modalreach::io::evaluate(cfg, data.data_path,
                                           dir / "absent.truth.json",
                                           dir / "metrics.json"),
                  std::runtime_error);

  testhelp::spit(dir / "empty.truth.json",
                 R"({"A": [[1,0],[0,1]], "B": [[0.1,0],[0,0.1]], "noise": []})");
  CHECK_THROWS_MATCHES(
      modalreach::io::evaluate(cfg, data.data_path, dir / "empty.truth.json",
                               dir / "metrics.json"),
      std::runtime_error,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("no noise samples")));
}

TEST_CASE("exit codes distinguish empty selections from rank failures") {
  using modalreach::ModalReachResult;
  using modalreach::ModeReachResult;
  using modalreach::ModeRunStatus;

  const auto with = [](std::vector<ModeRunStatus> statuses) {
    ModalReachResult result;
    for (const auto s : statuses) {
      ModeReachResult mode;
      mode.status = s;
      result.modes.push_back(mode);
    }
    return modalreach::io::exit_code_for(result);
  };

  CHECK(with({ModeRunStatus::kOk, ModeRunStatus::kEmptySelection}) == 0);
  CHECK(with({ModeRunStatus::kEmptySelection, ModeRunStatus::kEmptySelection}) == 2);
  CHECK(with({ModeRunStatus::kEmptySelection, ModeRunStatus::kRankDeficient}) == 3);
  CHECK(with({ModeRunStatus::kRankDeficient}) == 3);
}
