#ifndef MODALREACH_IO_RESULTS_HPP_
#define MODALREACH_IO_RESULTS_HPP_

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "modalreach/detail/format.hpp"
#include "modalreach/io/atomic_write.hpp"
#include "modalreach/modal.hpp"
#include "modalreach/polygon.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach::io {

namespace detail {

inline nlohmann::json vec2_json(const Eigen::Vector2d& v) {
  return nlohmann::json::array({v.x(), v.y()});
}

inline nlohmann::json step_json(int k, const Zonotope& set) {
  nlohmann::json j;
  j["k"] = k;
  j["center"] = {set.center()(0), set.center()(1)};
  nlohmann::json gens = nlohmann::json::array();
  for (Eigen::Index col = 0; col < set.num_generators(); ++col) {
    gens.push_back({set.generators()(0, col), set.generators()(1, col)});
  }
  j["generators"] = std::move(gens);
  const Polygon2D poly = to_polygon(set);
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : poly.vertices()) {
    verts.push_back(vec2_json(v));
  }
  j["polygon"] = std::move(verts);
  j["area"] = polygon_area(poly);
  return j;
}

}  // namespace detail

inline nlohmann::json mode_result_json(const ModeReachResult& mode) {
  nlohmann::json j;
  j["id"] = mode.mode.id;
  j["name"] = mode.mode.name;
  j["kept_chunks"] = mode.kept_chunks;
  j["status"] = to_string(mode.status);
  if (!mode.message.empty()) {
    j["message"] = mode.message;
  }
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t k = 0; k < mode.sets.size(); ++k) {
    steps.push_back(detail::step_json(static_cast<int>(k), mode.sets[k]));
  }
  j["steps"] = std::move(steps);
  nlohmann::json inputs = nlohmann::json::array();
  for (std::size_t k = 0; k < mode.inputs.size(); ++k) {
    const Zonotope& u = mode.inputs[k];
    nlohmann::json entry;
    entry["k"] = k;
    entry["mu"] = {u.center()(0), u.center()(1)};
    Eigen::Vector2d sigma = Eigen::Vector2d::Zero();
    for (Eigen::Index col = 0; col < u.num_generators(); ++col) {
      sigma += u.generators().col(col).cwiseAbs();
    }
    entry["sigma"] = {sigma.x(), sigma.y()};
    inputs.push_back(std::move(entry));
  }
  j["inputs"] = std::move(inputs);
  return j;
}

inline nlohmann::json predict_document(const std::string& config_hash,
                                       std::uint64_t seed,
                                       const ModalReachResult& result) {
  nlohmann::json doc;
  doc["meta"] = {{"config_hash", config_hash}, {"seed", seed}};
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& mode : result.modes) {
    modes.push_back(mode_result_json(mode));
  }
  doc["modes"] = std::move(modes);
  return doc;
}

/// Merge pooled-baseline areas and per-mode area ratios into a document
/// produced by predict_document.
inline void attach_comparison(nlohmann::json& doc, const PooledComparison& cmp) {
  nlohmann::json pooled;
  pooled["kept_chunks"] = cmp.pooled.kept_chunks;
  pooled["status"] = to_string(cmp.pooled.status);
  nlohmann::json areas = nlohmann::json::array();
  for (std::size_t k = 0; k < cmp.pooled_area.size(); ++k) {
    areas.push_back({{"k", k}, {"area", cmp.pooled_area[k]}});
  }
  pooled["areas"] = std::move(areas);
  doc["pooled"] = std::move(pooled);

  for (auto& mode_json : doc["modes"]) {
    const int id = mode_json["id"].get<int>();
    const auto it = std::find_if(
        cmp.modes.begin(), cmp.modes.end(),
        [&](const PooledComparison::ModeAreas& m) { return m.mode.id == id; });
    if (it == cmp.modes.end()) {
      continue;
    }
    nlohmann::json ratios = nlohmann::json::array();
    for (std::size_t k = 0; k < it->ratio.size(); ++k) {
      ratios.push_back({{"k", k}, {"ratio", it->ratio[k]}});
    }
    mode_json["area_ratio"] = std::move(ratios);
  }
}

/**
 * @brief Plot the predicted sets of one mode as layered polygons.
 *
 * Self-contained SVG: white canvas, step polygons shaded early-to-late,
 * the query position set outlined in black.
 */
inline std::string render_mode_svg(const ModeReachResult& mode) {
  const double width = 640.0;
  const double height = 640.0;
  const double margin = 40.0;

  Eigen::Vector2d lo(1e300, 1e300);
  Eigen::Vector2d hi(-1e300, -1e300);
  std::vector<Polygon2D> polys;
  polys.reserve(mode.sets.size());
  for (const auto& set : mode.sets) {
    polys.push_back(to_polygon(set));
    for (const auto& v : polys.back().vertices()) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  }
  Eigen::Vector2d span = hi - lo;
  if (!(span.x() > 0.0)) span.x() = 1.0;
  if (!(span.y() > 0.0)) span.y() = 1.0;
  const double scale = std::min((width - 2 * margin) / span.x(),
                                (height - 2 * margin) / span.y());
  auto map_pt = [&](const Eigen::Vector2d& p) {
    const double sx = margin + (p.x() - lo.x()) * scale;
    const double sy = height - margin - (p.y() - lo.y()) * scale;
    return std::make_pair(sx, sy);
  };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
      "viewBox=\"0 0 640 640\">\n"
      "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  svg += "<text x=\"16\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">mode " +
         mode.mode.name + " (" + std::to_string(mode.sets.size()) +
         " sets)</text>\n";

  const std::size_t n = polys.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
    const int r = static_cast<int>(37 + t * (220 - 37));
    const int g = static_cast<int>(99 + t * (38 - 99));
    const int b = static_cast<int>(235 + t * (38 - 235));
    const std::string color =
        "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
    std::string points;
    for (const auto& v : polys[k].vertices()) {
      const auto [sx, sy] = map_pt(v);
      points += modalreach::detail::fmt_shortest(sx) + "," +
                modalreach::detail::fmt_shortest(sy) + " ";
    }
    if (polys[k].vertices().size() >= 3) {
      svg += "<polygon points=\"" + points + "\" fill=\"" + color +
             "\" fill-opacity=\"0.12\" stroke=\"" + color +
             "\" stroke-width=\"1.2\"/>\n";
    } else {
      svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"2\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

inline void write_mode_svg(const std::filesystem::path& path,
                           const ModeReachResult& mode) {
  write_text_atomic(path, render_mode_svg(mode));
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_RESULTS_HPP_
