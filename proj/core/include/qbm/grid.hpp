#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qbm {

/// Uniform 1-D grid of n_points nodes spanning [x_min, x_max] inclusive.
struct Grid1D {
  double x_min = -20.0;
  double x_max = 20.0;
  std::size_t n_points = 512;

  static Grid1D symmetric(double half_extent, std::size_t n_points);

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double extent() const { return x_max - x_min; }
  double at(std::size_t i) const { return x_min + static_cast<double>(i) * spacing(); }
  std::vector<double> nodes() const;

  /// Throws ConfigError unless x_min < x_max and n_points >= 16.
  void validate() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Parameters of the two-slit initial state and of the free y-packet.
/// Units follow hbar = 1.
struct SuperpositionParams {
  double L0 = 2.0;        // half-separation of the slit centres
  double sigma_x0 = 0.5;  // width of each x-packet
  double sigma_y0 = 10.0;
  double k_y = 20.0;
  double mass = 1.0;

  double de_broglie_wavelength() const;

  /// Throws ConfigError when any field is not strictly positive.
  void validate() const;

  /// Soft conditions: well separated packets, sharp y-momentum.
  std::vector<std::string> warnings() const;
};

}  // namespace qbm
