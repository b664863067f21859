#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qbm/grid.hpp"

namespace qbm {

using cplx = std::complex<double>;

/// rho(x_i, x'_j) sampled on a square grid. Row index i is x, column index j
/// is x'. Storage carries a two-cell zero halo on every side so that
/// finite-difference stencils of up to fourth order can read past the edge;
/// the halo is the clamp-to-zero boundary condition and is never written.
class DensityMatrix {
 public:
  static constexpr std::size_t kHalo = 2;

  DensityMatrix() = default;
  explicit DensityMatrix(const Grid1D& grid, double time = 0.0);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return grid_.n_points; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }

  /// Row i restricted to the interior columns.
  std::span<cplx> row(std::size_t i) { return {&data_[index(i, 0)], size()}; }
  std::span<const cplx> row(std::size_t i) const { return {&data_[index(i, 0)], size()}; }

  // Raw padded access for stencil kernels.
  std::size_t stride() const { return stride_; }
  cplx* interior_origin() { return &data_[index(0, 0)]; }
  const cplx* interior_origin() const { return &data_[index(0, 0)]; }
  /// Whole padded buffer, halo included.
  std::span<cplx> raw() { return data_; }
  std::span<const cplx> raw() const { return data_; }

  /// Sum_i Re rho(i,i) * h.
  double trace() const;
  /// max_ij |rho(i,j) - conj(rho(j,i))|.
  double hermiticity_defect() const;
  /// Sum_ij |rho(i,j)|^2 h^2.
  double purity() const;
  /// max_ij |rho(i,j) - rho(n-1-i, n-1-j)|; zero for mirror-symmetric states.
  double mirror_defect() const;
  /// Re rho(i,i) for every node.
  std::vector<double> diagonal() const;

  /// rho <- (rho + rho^dagger) / 2. Returns the defect removed.
  double hermitize();

  void scale(double factor);
  /// this += factor * other; grids must match.
  void add_scaled(const DensityMatrix& other, double factor);
  void fill_zero();

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return (i + kHalo) * stride_ + (j + kHalo);
  }

  Grid1D grid_{};
  double time_ = 0.0;
  std::size_t stride_ = 0;
  std::vector<cplx> data_;
};

/// Number of nodes on each side of the grid treated as the boundary band.
std::size_t boundary_band_width(const Grid1D& grid);

/// Probability mass (times h) on the diagonal inside the boundary band.
double boundary_mass(std::span<const double> diagonal, const Grid1D& grid);
double boundary_mass(const DensityMatrix& rho);

/// Linear interpolation of a nodal series at position x; zero outside the grid.
double interpolate(std::span<const double> values, const Grid1D& grid, double x);

}  // namespace qbm
