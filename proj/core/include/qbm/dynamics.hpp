#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbm/coefficients.hpp"
#include "qbm/density_matrix.hpp"

namespace qbm {

/// Mid-run abort thresholds.
inline constexpr double kTraceDriftLimit = 1e-3;
inline constexpr double kBoundaryMassLimit = 1e-4;

/// Method-of-lines RK4 settings. dt <= 0 selects
/// stability_margin * stability_limit, rounded so that t_final is hit exactly.
struct IntegratorConfig {
  double dt = 0.0;
  int spatial_order = 4;  // 2 or 4, central differences
  double stability_margin = 0.5;
  GammaConvention convention = GammaConvention::master_equation;
  bool kinetic_term = true;    // false is the M -> infinity limit
  bool anomalous_term = true;  // false drops the f(t) term
};

struct EvolutionOptions {
  double t_final = 1.0;
  std::size_t snapshot_stride = 0;       // steps between recorded diagonals; 0 = about 100 over the run
  std::size_t full_snapshot_stride = 0;  // steps between stored full matrices; 0 = first and last only
};

struct DiagnosticSample {
  double time;
  double trace;
  double hermiticity_defect;  // after re-symmetrisation
  double asymmetry_removed;   // defect the projection removed this step
  double boundary_mass;
};

struct EvolutionRecord {
  std::vector<double> times;                   // snapshot times, first is t = 0
  std::vector<std::vector<double>> diagonals;  // Re rho(x,x) at each snapshot time
  std::vector<DensityMatrix> snapshots;        // full matrices (strided)
  std::vector<DiagnosticSample> diagnostics;   // one per step plus the initial state
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t snapshot_stride = 1;
  bool completed = true;
  std::string abort_reason;

  const Grid1D& grid() const { return snapshots.front().grid(); }
  const DensityMatrix& final_state() const { return snapshots.back(); }
  double max_trace_error() const;
  double max_hermiticity_defect() const;
};

/// Thrown when a diagnostic threshold trips mid-run; carries the partial record.
class EvolutionAborted : public std::runtime_error {
 public:
  EvolutionAborted(const std::string& what, EvolutionRecord partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const EvolutionRecord& partial() const noexcept { return partial_; }

 private:
  EvolutionRecord partial_;
};

/// d rho / dt of the master equation (hbar = 1):
///   i/(2M) (d_xx - d_x'x') rho - kappa D (x-x')^2 rho
///   - gamma (x-x') (d_x - d_x') rho + 2 f (x-x') (d_x + d_x') rho,
/// kappa = diffusion_weight(cfg.convention). Writes into `out`.
void rhs(const DensityMatrix& rho, const BathModel& bath, double mass,
         const IntegratorConfig& cfg, double t, DensityMatrix& out);
DensityMatrix rhs(const DensityMatrix& rho, const BathModel& bath, double mass,
                  const IntegratorConfig& cfg, double t);

/// Conservative explicit RK4 step bound
///   dt_max = 2.5 / (K/(M h^2) + kappa D L^2 + 2|gamma| + (|2f-gamma| + |2f+gamma|) L c1 / h)
/// with L the grid extent, K = 4 (second order) or 16/3 (fourth order), and
/// c1 = 1 or 1.3722 the peak first-derivative symbol. 2.5 is the radius of the
/// left half-disc inside the RK4 stability region. Coefficients are sampled
/// over [0, horizon].
double stability_limit(const Grid1D& g, double mass, const BathModel& bath,
                       const IntegratorConfig& cfg = {}, double horizon = 0.0);

/// Step actually used by evolve(); throws ConfigError when an explicit dt
/// exceeds stability_margin * stability_limit.
double resolve_time_step(const Grid1D& g, double mass, const BathModel& bath,
                         const IntegratorConfig& cfg, double t_final);

/// Classical RK4 in time with per-step Hermitian projection and diagnostics.
/// Throws ConfigError before running on an unstable dt, EvolutionAborted on
/// trace drift above kTraceDriftLimit or boundary mass above kBoundaryMassLimit.
EvolutionRecord evolve(DensityMatrix rho0, const BathModel& bath, double mass,
                       const IntegratorConfig& cfg, const EvolutionOptions& opts);

}  // namespace qbm
