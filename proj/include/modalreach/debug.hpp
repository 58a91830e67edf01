#ifndef MODALREACH_DEBUG_HPP_
#define MODALREACH_DEBUG_HPP_

#include <string>

#include "modalreach/detail/format.hpp"
#include "modalreach/zonotope.hpp"

namespace modalreach {

/// Stable textual rendering for golden-file tests: center then generators,
/// column by column, 17 significant digits.
inline std::string to_debug_string(const Zonotope& z) {
  std::string out = "zonotope dim=" + std::to_string(z.dim()) +
                    " gens=" + std::to_string(z.num_generators()) + "\n";
  out += "center:";
  for (Eigen::Index i = 0; i < z.dim(); ++i) {
    out += " " + detail::fmt17(z.center()(i));
  }
  out += "\n";
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    out += "g" + std::to_string(j) + ":";
    for (Eigen::Index i = 0; i < z.dim(); ++i) {
      out += " " + detail::fmt17(z.generators()(i, j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace modalreach

#endif  // MODALREACH_DEBUG_HPP_
