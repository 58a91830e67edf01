#ifndef MODALREACH_TESTS_HELPERS_HPP_
#define MODALREACH_TESTS_HELPERS_HPP_

#include <Eigen/Dense>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modalreach/matrix_zonotope.hpp"
#include "modalreach/trajectory.hpp"
#include "modalreach/zonotope.hpp"

namespace testhelp {

inline double unif(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n,
                                     double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = scale * modalreach::uniform_pm1(rng);
  }
  return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                     Eigen::Index cols, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    m.col(j) = random_vector(rng, rows, scale);
  }
  return m;
}

inline modalreach::Zonotope random_zonotope(std::mt19937_64& rng,
                                            Eigen::Index dim, Eigen::Index gens,
                                            double scale = 1.0) {
  return modalreach::Zonotope(random_vector(rng, dim, scale),
                              random_matrix(rng, dim, gens, scale));
}

inline modalreach::MatrixZonotope random_matrix_zonotope(
    std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
    Eigen::Index gens, double scale = 1.0) {
  std::vector<Eigen::MatrixXd> gs;
  gs.reserve(static_cast<std::size_t>(gens));
  for (Eigen::Index i = 0; i < gens; ++i) {
    gs.push_back(random_matrix(rng, rows, cols, scale));
  }
  return modalreach::MatrixZonotope(random_matrix(rng, rows, cols, scale),
                                    std::move(gs));
}

/// Member of a matrix zonotope with uniform factors.
inline Eigen::MatrixXd sample_matrix(const modalreach::MatrixZonotope& m,
                                     std::mt19937_64& rng) {
  Eigen::MatrixXd x = m.center();
  for (const auto& g : m.generators()) {
    x += modalreach::uniform_pm1(rng) * g;
  }
  return x;
}

/// Simulate x(k+1) = A x(k) + B u(k) + w(k) with w drawn inside the bound.
inline modalreach::StateInputTrajectory simulate(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
    const Eigen::VectorXd& x0, const std::vector<Eigen::VectorXd>& inputs,
    const modalreach::Zonotope& noise, std::mt19937_64& rng) {
  modalreach::StateInputTrajectory traj;
  traj.states.push_back(x0);
  for (const auto& u : inputs) {
    const Eigen::VectorXd w = modalreach::sample(noise, rng);
    traj.states.push_back(a * traj.states.back() + b * u + w);
    traj.inputs.push_back(u);
  }
  return traj;
}

/// Fresh scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("modalreach-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace testhelp

#endif  // MODALREACH_TESTS_HELPERS_HPP_
