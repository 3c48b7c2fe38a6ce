#pragma once

#include "stochdil/matrix.hpp"

namespace stochdil::models {

/// General two-state stochastic matrix [[1-b, a], [b, 1-a]]; a and b share a mode.
Matrix two_state(const Scalar& a, const Scalar& b);

/// Conditional action on the states (rh, rc, lh, lc) of a molecule: "right and
/// hot" and "left and cold" stay put, "right and cold" and "left and hot"
/// switch sides with probability 1/2.
Matrix maxwell_demon(Mode mode = Mode::Exact);

}  // namespace stochdil::models
