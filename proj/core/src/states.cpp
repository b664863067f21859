#include "qbm/states.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {
namespace {

std::vector<double> gaussian(double center, double sigma, const Grid1D& g) {
  std::vector<double> out(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double u = g.at(i) - center;
    out[i] = std::exp(-u * u / (4.0 * sigma * sigma));
  }
  return out;
}

void normalize(std::vector<double>& psi, double h) {
  double norm = 0.0;
  for (double v : psi) norm += v * v;
  norm = std::sqrt(norm * h);
  for (double& v : psi) v /= norm;
}

DensityMatrix outer(const std::vector<double>& psi, const Grid1D& g) {
  DensityMatrix rho(g);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    auto r = rho.row(i);
    for (std::size_t j = 0; j < g.n_points; ++j) r[j] = psi[i] * psi[j];
  }
  return rho;
}

void check_coverage(const DensityMatrix& rho) {
  const double mass = boundary_mass(rho);
  if (mass > kInitialBoundaryTolerance * rho.trace()) {
    std::ostringstream os;
    os << "initial state: boundary mass " << mass << " exceeds " << kInitialBoundaryTolerance
       << " of the trace; enlarge the grid";
    throw ConfigError(os.str());
  }
}

}  // namespace

DensityMatrix make_superposition_state(const SuperpositionParams& p, const Grid1D& g) {
  p.validate();
  g.validate();
  const double h = g.spacing();
  auto left = gaussian(-p.L0, p.sigma_x0, g);
  auto right = gaussian(p.L0, p.sigma_x0, g);
  normalize(left, h);
  normalize(right, h);
  std::vector<double> psi(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) psi[i] = left[i] + right[i];
  normalize(psi, h);
  auto rho = outer(psi, g);
  check_coverage(rho);
  return rho;
}

DensityMatrix make_single_packet_state(double center, const SuperpositionParams& p,
                                       const Grid1D& g) {
  p.validate();
  g.validate();
  auto psi = gaussian(center, p.sigma_x0, g);
  normalize(psi, g.spacing());
  auto rho = outer(psi, g);
  check_coverage(rho);
  return rho;
}

double superposition_weight(const SuperpositionParams& p, const Grid1D& g) {
  const double h = g.spacing();
  auto left = gaussian(-p.L0, p.sigma_x0, g);
  auto right = gaussian(p.L0, p.sigma_x0, g);
  normalize(left, h);
  normalize(right, h);
  double norm = 0.0;
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double s = left[i] + right[i];
    norm += s * s;
  }
  return 1.0 / (norm * h);
}

}  // namespace qbm
