#pragma once

#include <cmath>

namespace utm {

/// Spatial layout of the interface problem: two half-lines glued at x=0, or
/// two finite intervals (-L,0) and (0,L) with outer boundaries at -L and L.
struct Geometry {
  enum class Kind { HalfLine, FiniteInterval };

  Kind kind = Kind::HalfLine;
  double L = 0.0; // outer boundary distance (finite case only)
  double T = 1.0; // time horizon

  bool finite() const { return kind == Kind::FiniteInterval; }
};

} // namespace utm
