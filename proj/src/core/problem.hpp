#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "core/geometry.hpp"
#include "core/profile.hpp"

namespace utm {

/// Complete statement of one interface problem: geometry, the mass of each
/// region, the four initial profiles and (finite case) the four outer
/// boundary data profiles.
///
/// Indexing convention throughout: component c in {1,2} (right/left mover),
/// region r in {1,2} (x<0 / x>0), stored at [c-1][r-1].
struct InterfaceProblem {
  Geometry geometry;
  double mass1 = 0.0;
  double mass2 = 0.0;
  std::array<std::array<Profile, 2>, 2> initial;  // [component-1][region-1]
  std::array<std::array<Profile, 2>, 2> boundary; // [component-1][region-1], finite only

  double mass(int region) const { return region == 1 ? mass1 : mass2; }

  const Profile& initial_profile(int component, int region) const {
    return initial[static_cast<std::size_t>(component - 1)][static_cast<std::size_t>(region - 1)];
  }

  /// Outer-boundary datum alpha_c^{(r)}: region 1 prescribes data at x=-L,
  /// region 2 at x=+L; only the inflow components (c=1 at -L, c=2 at +L)
  /// drive the solution.
  const Profile& boundary_profile(int component, int region) const {
    return boundary[static_cast<std::size_t>(component - 1)][static_cast<std::size_t>(region - 1)];
  }

  /// Radius beyond which all initial data vanish (used for half-line domain
  /// truncation).
  double support_radius() const {
    double r = 0.0;
    for (const auto& row : initial) {
      for (const auto& p : row) {
        r = std::max(r, p.support_radius());
      }
    }
    return r;
  }

  bool massless() const { return mass1 == 0.0 && mass2 == 0.0; }
};

/// Point at which a solution is requested. x = 0 is shared by both regions;
/// `region` selects which representation evaluates it there.
struct QueryPoint {
  double x = 0.0;
  double t = 0.0;
  int region = 1;
};

} // namespace utm
