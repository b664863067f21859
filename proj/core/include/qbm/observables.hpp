#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbm/coefficients.hpp"
#include "qbm/density_matrix.hpp"
#include "qbm/dynamics.hpp"
#include "qbm/grid.hpp"

namespace qbm {

/// P(x_i) = Re rho(x_i, x_i).
std::vector<double> probability_density(const DensityMatrix& rho);

struct WignerGrid {
  Grid1D x_grid;
  Grid1D p_grid;
  std::vector<double> values;  // row-major, index [i * p_grid.n_points + k]
  double time = 0.0;
  double imaginary_residue = 0.0;  // max |Im W| / max |W|

  double operator()(std::size_t i, std::size_t k) const { return values[i * p_grid.n_points + k]; }
  double max_value() const;
  double normalization() const;         // sum W h_x h_p
  std::vector<double> x_marginal() const;  // sum_k W h_p
};

/// Momentum grid dual to the anti-diagonal sampling used by wigner_transform:
/// n_points nodes, spacing 2 pi / (n_points ds), range [-pi/ds, pi/ds) with
/// ds = 2 h. On this grid the x-marginal reproduces the diagonal exactly.
Grid1D default_momentum_grid(const Grid1D& x_grid);

/// W(x,p) = (1/2pi) int ds e^{ips} rho(x + s/2, x - s/2), hbar = 1.
/// s is sampled at multiples of 2h so that x +- s/2 fall on grid nodes (values
/// beyond the grid are zero). p_grid must satisfy |p| <= pi / (2h).
WignerGrid wigner_transform(const DensityMatrix& rho, const Grid1D& p_grid);
WignerGrid wigner_transform(const DensityMatrix& rho);

struct Negativity {
  double min_value;
  double negative_volume;  // sum over W < 0 of |W| h_x h_p
};
Negativity wigner_negativity(const WignerGrid& w);

enum class VisibilityDefinition { dynamical, incoherence };

struct VisibilitySeries {
  std::vector<double> times;
  std::vector<double> nu;
  std::vector<double> numerator;    // |rho_int(x,x,t)| or J0(|C|)
  std::vector<double> denominator;  // rho11 + rho22 at eval_point
  double eval_point = 0.0;
  VisibilityDefinition definition = VisibilityDefinition::dynamical;
};

/// nu(t) = |rho_full - rho11 - rho22| / (rho11 + rho22) at eval_point, where
/// rho11, rho22 are single-packet records scaled by `single_weight`.
/// Throws ConfigError when the three records disagree on grid or times.
VisibilitySeries visibility_from_runs(const EvolutionRecord& full, const EvolutionRecord& single1,
                                      const EvolutionRecord& single2, double single_weight,
                                      double eval_point);

/// Runs the two single-packet evolutions under the same bath and settings as
/// `full` and decomposes the superposition at eval_point.
VisibilitySeries visibility_dynamical(const EvolutionRecord& full, const SuperpositionParams& p,
                                      const BathModel& bath, const IntegratorConfig& cfg,
                                      double eval_point = 0.0);

/// Spatially integrated ratio  int |rho_int| dx / int (rho11 + rho22) dx per
/// snapshot. Reported next to the pointwise series as a diagnostic.
std::vector<double> integrated_visibility(const EvolutionRecord& full,
                                          const EvolutionRecord& single1,
                                          const EvolutionRecord& single2, double single_weight);

/// Contrast (Pmax - Pmin) / (Pmax + Pmin) between the maximum nearest `center`
/// and the first minimum to its right. Returns 0 when no minimum exists.
double fringe_visibility(std::span<const double> x, std::span<const double> pattern,
                         double center = 0.0);

}  // namespace qbm
