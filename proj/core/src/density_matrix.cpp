#include "qbm/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qbm/errors.hpp"

namespace qbm {

DensityMatrix::DensityMatrix(const Grid1D& grid, double time)
    : grid_(grid), time_(time), stride_(grid.n_points + 2 * kHalo) {
  grid_.validate();
  data_.assign(stride_ * stride_, cplx{0.0, 0.0});
}

double DensityMatrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) sum += (*this)(i, i).real();
  return sum * grid_.spacing();
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      worst = std::max(worst, std::norm((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return std::sqrt(worst);
}

double DensityMatrix::purity() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (const cplx& v : row(i)) sum += std::norm(v);
  }
  const double h = grid_.spacing();
  return sum * h * h;
}

double DensityMatrix::mirror_defect() const {
  double worst = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(n - 1 - i, n - 1 - j)));
    }
  }
  return worst;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < size(); ++i) d[i] = (*this)(i, i).real();
  return d;
}

double DensityMatrix::hermitize() {
  double removed = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx& d = (*this)(i, i);
    removed = std::max(removed, 4.0 * d.imag() * d.imag());
    d = cplx{d.real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx& upper = (*this)(i, j);
      cplx& lower = (*this)(j, i);
      removed = std::max(removed, std::norm(upper - std::conj(lower)));
      const cplx avg = 0.5 * (upper + std::conj(lower));
      upper = avg;
      lower = std::conj(avg);
    }
  }
  return std::sqrt(removed);
}

void DensityMatrix::scale(double factor) {
  for (cplx& v : data_) v *= factor;
}

void DensityMatrix::add_scaled(const DensityMatrix& other, double factor) {
  if (!(other.grid_ == grid_)) throw ConfigError("density matrix: grid mismatch in add_scaled");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
}

void DensityMatrix::fill_zero() { std::fill(data_.begin(), data_.end(), cplx{0.0, 0.0}); }

std::size_t boundary_band_width(const Grid1D& grid) {
  return std::max<std::size_t>(2, grid.n_points / 32);
}

double boundary_mass(std::span<const double> diagonal, const Grid1D& grid) {
  const std::size_t n = diagonal.size();
  const std::size_t band = std::min(boundary_band_width(grid), n / 2);
  double sum = 0.0;
  for (std::size_t k = 0; k < band; ++k) {
    sum += std::abs(diagonal[k]) + std::abs(diagonal[n - 1 - k]);
  }
  return sum * grid.spacing();
}

double boundary_mass(const DensityMatrix& rho) {
  const auto d = rho.diagonal();
  return boundary_mass(d, rho.grid());
}

double interpolate(std::span<const double> values, const Grid1D& grid, double x) {
  const double h = grid.spacing();
  const double u = (x - grid.x_min) / h;
  if (u < 0.0 || u > static_cast<double>(grid.n_points - 1)) return 0.0;
  auto i = static_cast<std::size_t>(std::floor(u));
  if (i >= grid.n_points - 1) return values[grid.n_points - 1];
  const double frac = u - static_cast<double>(i);
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

}  // namespace qbm
