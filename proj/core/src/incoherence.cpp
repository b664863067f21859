#include "qbm/incoherence.hpp"

#include <cmath>
#include <sstream>

#include "qbm/analytic.hpp"
#include "qbm/bessel.hpp"
#include "qbm/errors.hpp"

namespace qbm {

double IncoherenceParams::attenuation() const { return bessel_j0(std::abs(C)); }

std::vector<std::string> IncoherenceParams::warnings() const {
  std::vector<std::string> w;
  if (std::abs(C) >= kBesselJ0FirstZero) {
    std::ostringstream os;
    os << "incoherence: |C| = " << std::abs(C)
       << " is past the first zero of J0; attenuation is no longer positive";
    w.push_back(os.str());
  }
  return w;
}

VisibilitySeries visibility_incoherence(const IncoherenceParams& params,
                                        std::span<const double> rho11_at_point,
                                        std::span<const double> rho22_at_point,
                                        std::span<const double> times, double eval_point) {
  if (rho11_at_point.size() != times.size() || rho22_at_point.size() != times.size()) {
    throw ConfigError("visibility_incoherence: series are not aligned in time");
  }
  const double j0 = params.attenuation();
  VisibilitySeries out;
  out.eval_point = eval_point;
  out.definition = VisibilityDefinition::incoherence;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double den = rho11_at_point[k] + rho22_at_point[k];
    out.times.push_back(times[k]);
    out.numerator.push_back(j0);
    out.denominator.push_back(den);
    out.nu.push_back(den > 0.0 ? j0 / den : 0.0);
  }
  return out;
}

double incoherent_pattern(const SuperpositionParams& p, const IncoherenceParams& params, double x,
                          double y, double t) {
  return analytic::attenuated_pattern(p, params.attenuation(), x, y, t);
}

}  // namespace qbm
