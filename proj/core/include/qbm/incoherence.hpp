#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbm/grid.hpp"
#include "qbm/observables.hpp"

namespace qbm {

/// First zero of J0.
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

/// Time-constant dephasing with fringe attenuation J0(|C|).
struct IncoherenceParams {
  double C = 1.0;
  std::string species_label;

  double attenuation() const;  // J0(|C|)
  std::vector<std::string> warnings() const;
};

/// nu_C(t) = J0(|C|) / (rho11 + rho22), one value per time. rho11 and rho22
/// are the single-packet densities at eval_point. Throws ConfigError when the
/// three series have different lengths.
VisibilitySeries visibility_incoherence(const IncoherenceParams& params,
                                        std::span<const double> rho11_at_point,
                                        std::span<const double> rho22_at_point,
                                        std::span<const double> times, double eval_point);

/// Pattern with Gamma replaced by the constant J0(|C|).
double incoherent_pattern(const SuperpositionParams& p, const IncoherenceParams& params, double x,
                          double y, double t);

}  // namespace qbm
