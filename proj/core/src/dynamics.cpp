#include "qbm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm {
namespace {

struct StencilCoefficients {
  double kinetic;    // 1 / (2M), zero when the kinetic term is off
  double diffusion;  // kappa * D
  double drift_x;    // multiplies (x-x') d_x
  double drift_xp;   // multiplies (x-x') d_x'
};

// lap_x - lap_x' and first derivatives, clamp-to-zero halo.
template <int Order>
struct Stencil;

template <>
struct Stencil<2> {
  static constexpr double a1 = 1.0, a2 = 0.0;
  static constexpr double b1 = 0.5, b2 = 0.0;
  static constexpr double kinetic_radius = 4.0;
  static constexpr double derivative_radius = 1.0;
};

template <>
struct Stencil<4> {
  static constexpr double a1 = 4.0 / 3.0, a2 = -1.0 / 12.0;
  static constexpr double b1 = 2.0 / 3.0, b2 = -1.0 / 12.0;
  static constexpr double kinetic_radius = 16.0 / 3.0;
  static constexpr double derivative_radius = 1.3722;
};

inline cplx times_i(cplx z) { return {-z.imag(), z.real()}; }

// Evaluates the right-hand side at every interior node and hands each value
// to sink(offset, value), offset measured from the interior origin.
template <int Order, bool Kinetic, bool Drift, class Sink>
void apply(const DensityMatrix& rho, const StencilCoefficients& k, Sink& sink) {
  using St = Stencil<Order>;
  const std::size_t n = rho.size();
  const auto S = static_cast<std::ptrdiff_t>(rho.stride());
  const double h = rho.grid().spacing();
  const double x0 = rho.grid().x_min;
  const double a1 = St::a1 * k.kinetic / (h * h);
  const double a2 = St::a2 * k.kinetic / (h * h);
  const double b1 = St::b1 / h;
  const double b2 = St::b2 / h;

  const cplx* base = rho.interior_origin();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<std::ptrdiff_t>(i) * S;
    const cplx* r = base + row;
    const double xi = x0 + static_cast<double>(i) * h;
    for (std::size_t jj = 0; jj < n; ++jj) {
      const auto j = static_cast<std::ptrdiff_t>(jj);
      const double s = xi - (x0 + static_cast<double>(jj) * h);
      cplx acc = (-k.diffusion * s * s) * r[j];
      if constexpr (Kinetic) {
        cplx lap = a1 * ((r[j + S] + r[j - S]) - (r[j + 1] + r[j - 1]));
        if constexpr (Order == 4) {
          lap += a2 * ((r[j + 2 * S] + r[j - 2 * S]) - (r[j + 2] + r[j - 2]));
        }
        acc += times_i(lap);
      }
      if constexpr (Drift) {
        cplx dx = b1 * (r[j + S] - r[j - S]);
        cplx dxp = b1 * (r[j + 1] - r[j - 1]);
        if constexpr (Order == 4) {
          dx += b2 * (r[j + 2 * S] - r[j - 2 * S]);
          dxp += b2 * (r[j + 2] - r[j - 2]);
        }
        acc += s * (k.drift_x * dx + k.drift_xp * dxp);
      }
      sink(row + j, acc);
    }
  }
}

template <int Order, class Sink>
void dispatch(const DensityMatrix& rho, const StencilCoefficients& k, bool kinetic, bool drift,
              Sink& sink) {
  if (kinetic && drift) apply<Order, true, true>(rho, k, sink);
  else if (kinetic) apply<Order, true, false>(rho, k, sink);
  else if (drift) apply<Order, false, true>(rho, k, sink);
  else apply<Order, false, false>(rho, k, sink);
}

StencilCoefficients coefficients_at(const BathModel& bath, double mass,
                                    const IntegratorConfig& cfg, double t) {
  const auto c = bath.at(t);
  const double f = cfg.anomalous_term ? c.anomalous : 0.0;
  StencilCoefficients k{};
  k.kinetic = cfg.kinetic_term ? 1.0 / (2.0 * mass) : 0.0;
  k.diffusion = diffusion_weight(cfg.convention) * c.diffusion;
  k.drift_x = -c.gamma + 2.0 * f;
  k.drift_xp = c.gamma + 2.0 * f;
  return k;
}

template <class Sink>
void evaluate(const DensityMatrix& rho, const BathModel& bath, double mass,
              const IntegratorConfig& cfg, double t, Sink& sink) {
  const StencilCoefficients k = coefficients_at(bath, mass, cfg, t);
  const bool drift = k.drift_x != 0.0 || k.drift_xp != 0.0;
  if (cfg.spatial_order == 4) dispatch<4>(rho, k, cfg.kinetic_term, drift, sink);
  else dispatch<2>(rho, k, cfg.kinetic_term, drift, sink);
}

void check_order(int order) {
  if (order != 2 && order != 4) {
    throw ConfigError("integrator: spatial_order must be 2 or 4, got " + std::to_string(order));
  }
}

// One RK4 stage for k = f(input): acc = y + wa * k on the first stage,
// acc += wa * k afterwards, and next = y + wn * k unless this is the last.
template <bool First, bool Last>
void rk4_stage(const DensityMatrix& input, const BathModel& bath, double mass,
               const IntegratorConfig& cfg, double t, const DensityMatrix& y, DensityMatrix& acc,
               double wa, DensityMatrix* next, double wn) {
  const cplx* __restrict yb = y.interior_origin();
  cplx* __restrict ab = acc.interior_origin();
  cplx* __restrict nb = Last ? nullptr : next->interior_origin();
  auto sink = [=](std::ptrdiff_t o, cplx k) {
    if constexpr (First) ab[o] = yb[o] + wa * k;
    else ab[o] += wa * k;
    if constexpr (!Last) nb[o] = yb[o] + wn * k;
  };
  evaluate(input, bath, mass, cfg, t, sink);
}

}  // namespace

double EvolutionRecord::max_trace_error() const {
  double worst = 0.0;
  for (const auto& d : diagnostics) worst = std::max(worst, std::abs(d.trace - 1.0));
  return worst;
}

double EvolutionRecord::max_hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& d : diagnostics) worst = std::max(worst, d.hermiticity_defect);
  return worst;
}

void rhs(const DensityMatrix& rho, const BathModel& bath, double mass,
         const IntegratorConfig& cfg, double t, DensityMatrix& out) {
  check_order(cfg.spatial_order);
  if (!(out.grid() == rho.grid())) out = DensityMatrix(rho.grid(), t);
  cplx* ob = out.interior_origin();
  auto sink = [ob](std::ptrdiff_t o, cplx v) { ob[o] = v; };
  evaluate(rho, bath, mass, cfg, t, sink);
  out.set_time(t);
}

DensityMatrix rhs(const DensityMatrix& rho, const BathModel& bath, double mass,
                  const IntegratorConfig& cfg, double t) {
  DensityMatrix out(rho.grid(), t);
  rhs(rho, bath, mass, cfg, t, out);
  return out;
}

double stability_limit(const Grid1D& g, double mass, const BathModel& bath,
                       const IntegratorConfig& cfg, double horizon) {
  g.validate();
  check_order(cfg.spatial_order);
  const double h = g.spacing();
  const double L = g.extent();
  const double kinetic_radius = cfg.spatial_order == 4 ? Stencil<4>::kinetic_radius
                                                       : Stencil<2>::kinetic_radius;
  const double c1 = cfg.spatial_order == 4 ? Stencil<4>::derivative_radius
                                           : Stencil<2>::derivative_radius;
  const double kappa = diffusion_weight(cfg.convention);

  double worst = 0.0;
  const int samples = (bath.time_constant || horizon <= 0.0) ? 1 : 65;
  for (int s = 0; s < samples; ++s) {
    const double t = samples == 1 ? 0.0 : horizon * s / (samples - 1);
    const auto c = bath.at(t);
    const double f = cfg.anomalous_term ? c.anomalous : 0.0;
    double rate = kappa * std::abs(c.diffusion) * L * L + 2.0 * std::abs(c.gamma);
    rate += (std::abs(2.0 * f - c.gamma) + std::abs(2.0 * f + c.gamma)) * L * c1 / h;
    worst = std::max(worst, rate);
  }
  if (cfg.kinetic_term) worst += kinetic_radius / (mass * h * h);
  if (worst <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.5 / worst;
}

double resolve_time_step(const Grid1D& g, double mass, const BathModel& bath,
                         const IntegratorConfig& cfg, double t_final) {
  if (!(t_final > 0.0)) throw ConfigError("integrator: t_final must be positive");
  if (!(cfg.stability_margin > 0.0 && cfg.stability_margin <= 1.0)) {
    throw ConfigError("integrator: stability_margin must lie in (0, 1]");
  }
  const double bound = cfg.stability_margin * stability_limit(g, mass, bath, cfg, t_final);
  if (cfg.dt > 0.0) {
    if (cfg.dt > bound) {
      std::ostringstream os;
      os << "stability: dt = " << cfg.dt << " exceeds stability_margin * stability_limit = "
         << bound;
      throw ConfigError(os.str());
    }
    return cfg.dt;
  }
  if (!std::isfinite(bound)) return t_final;
  const double steps = std::ceil(t_final / bound);
  return t_final / steps;
}

EvolutionRecord evolve(DensityMatrix rho0, const BathModel& bath, double mass,
                       const IntegratorConfig& cfg, const EvolutionOptions& opts) {
  check_order(cfg.spatial_order);
  if (!(mass > 0.0)) throw ConfigError("integrator: mass must be positive");
  const Grid1D grid = rho0.grid();
  const double dt = resolve_time_step(grid, mass, bath, cfg, opts.t_final);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(opts.t_final / dt)));

  EvolutionRecord rec;
  rec.dt = dt;
  rec.steps = steps;
  rec.snapshot_stride = opts.snapshot_stride > 0
                            ? opts.snapshot_stride
                            : std::max<std::size_t>(1, (steps + 99) / 100);
  const std::size_t full_stride = opts.full_snapshot_stride;

  DensityMatrix y = std::move(rho0);
  y.set_time(0.0);
  y.hermitize();

  auto record_diagnostics = [&](double t, double removed) {
    const auto diag = y.diagonal();
    rec.diagnostics.push_back(
        {t, y.trace(), y.hermiticity_defect(), removed, boundary_mass(diag, grid)});
  };
  auto record_snapshot = [&](double t) {
    rec.times.push_back(t);
    rec.diagonals.push_back(y.diagonal());
  };

  record_diagnostics(0.0, 0.0);
  record_snapshot(0.0);
  rec.snapshots.push_back(y);

  DensityMatrix acc(grid), stage_a(grid), stage_b(grid);
  for (std::size_t step = 1; step <= steps; ++step) {
    const double t0 = static_cast<double>(step - 1) * dt;
    const double t1 = static_cast<double>(step) * dt;
    const double th = t0 + 0.5 * dt;

    rk4_stage<true, false>(y, bath, mass, cfg, t0, y, acc, dt / 6.0, &stage_a, 0.5 * dt);
    rk4_stage<false, false>(stage_a, bath, mass, cfg, th, y, acc, dt / 3.0, &stage_b, 0.5 * dt);
    rk4_stage<false, false>(stage_b, bath, mass, cfg, th, y, acc, dt / 3.0, &stage_a, dt);
    rk4_stage<false, true>(stage_a, bath, mass, cfg, t1, y, acc, dt / 6.0, nullptr, 0.0);

    std::swap(y, acc);
    y.set_time(t1);
    const double removed = y.hermitize();
    record_diagnostics(t1, removed);

    const bool last = step == steps;
    if (step % rec.snapshot_stride == 0 || last) record_snapshot(t1);
    if (last || (full_stride > 0 && step % full_stride == 0)) rec.snapshots.push_back(y);

    const auto& d = rec.diagnostics.back();
    std::string reason;
    if (!std::isfinite(d.trace) || std::abs(d.trace - 1.0) > kTraceDriftLimit) {
      std::ostringstream os;
      os << "trace drift " << std::abs(d.trace - 1.0) << " exceeds " << kTraceDriftLimit
         << " at t = " << t1;
      reason = os.str();
    } else if (d.boundary_mass > kBoundaryMassLimit) {
      std::ostringstream os;
      os << "boundary mass " << d.boundary_mass << " exceeds " << kBoundaryMassLimit
         << " at t = " << t1;
      reason = os.str();
    }
    if (!reason.empty()) {
      if (!last) rec.snapshots.push_back(y);
      if (rec.times.back() != t1) record_snapshot(t1);
      rec.completed = false;
      rec.abort_reason = reason;
      throw EvolutionAborted("evolution aborted: " + reason, std::move(rec));
    }
  }
  return rec;
}

}  // namespace qbm
