#pragma once

namespace qbm {

/// Largest |z| accepted by bessel_j0.
inline constexpr double kBesselJ0MaxArgument = 50.0;
/// Below this |z| the ascending series is used, above it the Hankel expansion.
inline constexpr double kBesselJ0SeriesLimit = 12.0;

/// Bessel function of the first kind, order zero, absolute error below 1e-10
/// on |z| <= 50. Throws std::domain_error beyond that range.
double bessel_j0(double z);

}  // namespace qbm
