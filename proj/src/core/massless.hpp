#pragma once

#include <complex>

#include "core/problem.hpp"

namespace utm {

/// Exact massless solution by transport along characteristics.
///
/// With both masses zero the components decouple: component 1 is a pure
/// right-mover (value carried along x - t = const) and component 2 a pure
/// left-mover (x + t = const). Interface continuity makes x = 0 transparent,
/// and on a finite interval the inflow components are prescribed at the outer
/// edges, so each characteristic meets at most one boundary and the case
/// split below is closed form. Corner ties (a characteristic grazing x = 0 or
/// an outer edge) resolve to the branch whose inequality is non-strict, i.e.
/// component 1 reads region-2 data at x - t = 0 and the left-edge datum at
/// x - t = -L, mirrored for component 2.
///
/// Requires a massless problem; rejects t outside [0, T] and query points
/// outside the region's spatial domain.
std::complex<double> eval_massless(const InterfaceProblem& problem, int component,
                                   const QueryPoint& q);

} // namespace utm
