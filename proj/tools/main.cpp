// modalreach command line: predict reachable sets for recorded pedestrian
// data, generate a synthetic corpus, or evaluate predictions against the
// recorded ground truth.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "modalreach/io/config.hpp"
#include "modalreach/io/csv.hpp"
#include "modalreach/io/pipeline.hpp"
#include "modalreach/io/synthetic.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string data;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int run(int argc, char** argv) {
  CLI::App app{"Modal data-driven reachable set prediction for pedestrians"};
  app.require_subcommand(1);

  CommonArgs args;
  bool svg = false;
  bool compare_pooled = false;
  std::string sidecar;

  CLI::App* predict = app.add_subcommand(
      "predict", "Predict per-mode reachable sets from a trajectory CSV");
  predict->add_option("--config", args.config, "YAML run configuration")->required();
  predict->add_option("--data", args.data, "trajectory CSV")->required();
  predict->add_option("--out", args.out, "output JSON path")->required();
  predict->add_flag("--svg", svg, "write one SVG per successful mode");
  predict->add_flag("--compare-pooled", compare_pooled,
                    "also run a selection-free pooled baseline");
  predict->add_option("--seed", args.seed, "override the config seed");

  CLI::App* generate = app.add_subcommand(
      "generate", "Write a synthetic crosswalk corpus plus ground-truth sidecar");
  generate->add_option("--config", args.config, "YAML run configuration")->required();
  generate->add_option("--out", args.out, "output CSV path")->required();
  generate->add_option("--seed", args.seed, "override the config seed");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Check predictions against a recorded ground-truth sidecar");
  evaluate->add_option("--config", args.config, "YAML run configuration")->required();
  evaluate->add_option("--data", args.data, "trajectory CSV")->required();
  evaluate->add_option("--out", args.out, "output metrics JSON path")->required();
  evaluate->add_option("--sidecar", sidecar,
                       "ground-truth sidecar (default: data with .truth.json)");
  evaluate->add_option("--seed", args.seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 1;
  }

  modalreach::io::RunConfig cfg = modalreach::io::load_run_config(args.config);
  if (args.seed) {
    cfg.seed = *args.seed;
  }

  if (predict->parsed()) {
    modalreach::io::PredictOptions opts;
    opts.svg = svg;
    opts.compare_pooled = compare_pooled;
    opts.seed_override = args.seed;
    const auto outcome = modalreach::io::run_predict(cfg, args.data, args.out, opts);
    for (const auto& mode : outcome.result.modes) {
      std::cerr << "mode " << mode.mode.name << ": "
                << modalreach::to_string(mode.status) << " ("
                << mode.kept_chunks << " chunks)\n";
    }
    return outcome.exit_code;
  }
  if (generate->parsed()) {
    const auto out = modalreach::io::generate_synthetic(cfg, cfg.seed, args.out);
    std::cerr << "wrote " << out.data_path.string() << " and "
              << out.sidecar_path.string() << "\n";
    return 0;
  }
  const std::filesystem::path sidecar_path =
      sidecar.empty() ? modalreach::io::sidecar_path_for(args.data)
                      : std::filesystem::path(sidecar);
  const auto outcome =
      modalreach::io::evaluate(cfg, args.data, sidecar_path, args.out);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const modalreach::io::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const modalreach::io::CsvError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const modalreach::RankDeficientData& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
