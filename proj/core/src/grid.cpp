#include "qbm/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm {

Grid1D Grid1D::symmetric(double half_extent, std::size_t n_points) {
  return Grid1D{-half_extent, half_extent, n_points};
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = at(i);
  return out;
}

void Grid1D::validate() const {
  std::vector<std::string> v;
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max)) {
    std::ostringstream os;
    os << "grid: x_min (" << x_min << ") must be below x_max (" << x_max << ")";
    v.push_back(os.str());
  }
  if (n_points < 16) {
    v.push_back("grid: n_points must be at least 16, got " + std::to_string(n_points));
  }
  if (!v.empty()) throw ConfigError(v.front(), v);
}

double SuperpositionParams::de_broglie_wavelength() const {
  return 2.0 * std::numbers::pi / k_y;
}

void SuperpositionParams::validate() const {
  std::vector<std::string> v;
  auto positive = [&v](double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
      std::ostringstream os;
      os << "superposition: " << name << " must be strictly positive, got " << value;
      v.push_back(os.str());
    }
  };
  // L0 = 0 is the degenerate single-packet case and is allowed.
  if (!(std::isfinite(L0) && L0 >= 0.0)) {
    v.push_back("superposition: L0 must be non-negative");
  }
  positive(sigma_x0, "sigma_x0");
  positive(sigma_y0, "sigma_y0");
  positive(k_y, "k_y");
  positive(mass, "mass");
  if (!v.empty()) throw ConfigError(v.front(), v);
}

std::vector<std::string> SuperpositionParams::warnings() const {
  std::vector<std::string> w;
  if (L0 > 0.0 && L0 / sigma_x0 < 1.0) {
    w.push_back("superposition: L0/sigma_x0 < 1, packets are not well separated");
  }
  // "much smaller" taken as one tenth.
  if (de_broglie_wavelength() > 0.1 * sigma_y0) {
    std::ostringstream os;
    os << "superposition: lambda_dB = " << de_broglie_wavelength()
       << " is not small against sigma_y0 = " << sigma_y0 << " (momentum not sharp)";
    w.push_back(os.str());
  }
  return w;
}

}  // namespace qbm
