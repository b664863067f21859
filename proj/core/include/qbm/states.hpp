#pragma once

#include "qbm/density_matrix.hpp"
#include "qbm/grid.hpp"

namespace qbm {

/// Initial-state rejection threshold: boundary-band mass relative to the trace.
inline constexpr double kInitialBoundaryTolerance = 1e-8;

/// Pure two-packet state psi(x) psi*(x') with
/// psi(x) = N [exp(-(x-L0)^2 / 4 sigma^2) + exp(-(x+L0)^2 / 4 sigma^2)],
/// N fixed on the grid so that the discrete trace is exactly one.
DensityMatrix make_superposition_state(const SuperpositionParams& p, const Grid1D& g);

/// Pure state of one Gaussian centred at `center`, unit discrete trace.
DensityMatrix make_single_packet_state(double center, const SuperpositionParams& p,
                                       const Grid1D& g);

/// Weight w such that
///   superposition = w * (single(+L0) + single(-L0)) + interference part
/// holds exactly on the grid. Equals 1 / (2 + 2 * overlap).
double superposition_weight(const SuperpositionParams& p, const Grid1D& g);

}  // namespace qbm
