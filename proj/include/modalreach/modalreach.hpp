#ifndef MODALREACH_MODALREACH_HPP_
#define MODALREACH_MODALREACH_HPP_

#include "modalreach/chunk.hpp"
#include "modalreach/containment.hpp"
#include "modalreach/matrix_zonotope.hpp"
#include "modalreach/modal.hpp"
#include "modalreach/model_set.hpp"
#include "modalreach/polygon.hpp"
#include "modalreach/reach.hpp"
#include "modalreach/trajectory.hpp"
#include "modalreach/zonotope.hpp"

#endif  // MODALREACH_MODALREACH_HPP_
