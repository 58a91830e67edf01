#ifndef MODALREACH_IO_CSV_HPP_
#define MODALREACH_IO_CSV_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modalreach/trajectory.hpp"

namespace modalreach::io {

/// One CSV row: a planar position sample of a named trajectory.
struct TrajectoryRecord {
  std::string trajectory_id;
  long t = 0;
  double x = 0.0;
  double y = 0.0;
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_double(std::string_view field, std::size_t line,
                           const char* what) {
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw CsvError("csv line " + std::to_string(line) + ": bad " + what +
                   " value '" + std::string(field) + "'.");
  }
  return value;
}

inline long parse_long(std::string_view field, std::size_t line,
                       const char* what) {
  long value = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw CsvError("csv line " + std::to_string(line) + ": bad " + what +
                   " value '" + std::string(field) + "'.");
  }
  return value;
}

}  // namespace detail

inline std::vector<TrajectoryRecord> read_trajectory_records(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "'.");
  }
  std::string line;
  std::size_t line_no = 0;
  std::vector<TrajectoryRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line_no == 1) {
      if (line != "trajectory_id,t,x,y") {
        throw CsvError("csv line 1: expected header 'trajectory_id,t,x,y'.");
      }
      continue;
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const std::size_t comma = rest.find(',');
      if (comma == std::string_view::npos) {
        fields.push_back(rest);
        break;
      }
      fields.push_back(rest.substr(0, comma));
      rest = rest.substr(comma + 1);
    }
    if (fields.size() != 4) {
      throw CsvError("csv line " + std::to_string(line_no) + ": expected 4 fields, got " +
                     std::to_string(fields.size()) + ".");
    }
    if (fields[0].empty()) {
      throw CsvError("csv line " + std::to_string(line_no) + ": empty trajectory id.");
    }
    TrajectoryRecord rec;
    rec.trajectory_id = std::string(fields[0]);
    rec.t = detail::parse_long(fields[1], line_no, "t");
    rec.x = detail::parse_double(fields[2], line_no, "x");
    rec.y = detail::parse_double(fields[3], line_no, "y");
    records.push_back(std::move(rec));
  }
  return records;
}

/**
 * @brief Load position logs and derive inputs by finite differences.
 *
 * Rows are grouped by trajectory id (ordered by first appearance) and
 * sorted by t, which must run 0..T without gaps or duplicates. The input
 * at step k is the velocity (x(k+1) - x(k)) / sample_period.
 */
inline std::vector<StateInputTrajectory> load_trajectories(
    const std::filesystem::path& path, double sample_period) {
  if (!(sample_period > 0.0)) {
    throw CsvError("load_trajectories: sample period must be positive.");
  }
  const std::vector<TrajectoryRecord> records = read_trajectory_records(path);

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<TrajectoryRecord>> groups;
  for (const auto& rec : records) {
    auto [it, inserted] = groups.try_emplace(rec.trajectory_id);
    if (inserted) {
      order.push_back(rec.trajectory_id);
    }
    it->second.push_back(rec);
  }

  std::vector<StateInputTrajectory> trajectories;
  trajectories.reserve(order.size());
  for (const auto& id : order) {
    auto& rows = groups[id];
    std::sort(rows.begin(), rows.end(),
              [](const TrajectoryRecord& a, const TrajectoryRecord& b) {
                return a.t < b.t;
              });
    if (rows.size() < 2) {
      throw CsvError("trajectory '" + id + "': need at least two samples.");
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].t != static_cast<long>(k)) {
        if (k > 0 && rows[k].t == rows[k - 1].t) {
          throw CsvError("trajectory '" + id + "': duplicate sample t=" +
                         std::to_string(rows[k].t) + ".");
        }
        throw CsvError("trajectory '" + id +
                       "': samples must run 0..T without gaps (got t=" +
                       std::to_string(rows[k].t) + " at index " +
                       std::to_string(k) + ").");
      }
    }
    StateInputTrajectory traj;
    traj.sample_period = sample_period;
    traj.states.reserve(rows.size());
    for (const auto& row : rows) {
      Eigen::VectorXd x(2);
      x << row.x, row.y;
      traj.states.push_back(std::move(x));
    }
    traj.inputs.reserve(rows.size() - 1);
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
      traj.inputs.push_back((traj.states[k + 1] - traj.states[k]) /
                            sample_period);
    }
    trajectories.push_back(std::move(traj));
  }
  return trajectories;
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_CSV_HPP_
