#include "qbm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qbm/errors.hpp"
#include "qbm/states.hpp"

namespace qbm {

std::vector<double> probability_density(const DensityMatrix& rho) { return rho.diagonal(); }

double WignerGrid::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

double WignerGrid::normalization() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * x_grid.spacing() * p_grid.spacing();
}

std::vector<double> WignerGrid::x_marginal() const {
  const std::size_t np = p_grid.n_points;
  std::vector<double> out(x_grid.n_points, 0.0);
  for (std::size_t i = 0; i < x_grid.n_points; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < np; ++k) sum += values[i * np + k];
    out[i] = sum * p_grid.spacing();
  }
  return out;
}

Grid1D default_momentum_grid(const Grid1D& x_grid) {
  const double ds = 2.0 * x_grid.spacing();
  const std::size_t n = x_grid.n_points;
  const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n) * ds);
  const double p_max = std::numbers::pi / ds;
  return Grid1D{-p_max, -p_max + static_cast<double>(n - 1) * dp, n};
}

WignerGrid wigner_transform(const DensityMatrix& rho, const Grid1D& p_grid) {
  p_grid.validate();
  const Grid1D& xg = rho.grid();
  const std::size_t n = xg.n_points;
  const double h = xg.spacing();
  const double ds = 2.0 * h;
  const double nyquist = std::numbers::pi / ds;
  const double slack = 1e-9 * nyquist;
  if (std::abs(p_grid.x_min) > nyquist + slack || std::abs(p_grid.x_max) > nyquist + slack) {
    std::ostringstream os;
    os << "wigner: momentum range [" << p_grid.x_min << ", " << p_grid.x_max
       << "] exceeds the sampling Nyquist bound " << nyquist;
    throw ConfigError(os.str());
  }

  const std::size_t np = p_grid.n_points;
  WignerGrid w{xg, p_grid, std::vector<double>(n * np, 0.0), rho.time(), 0.0};
  const std::size_t m_max = n / 2;

  // e^{i p_k m ds}
  std::vector<double> cos_tab(np * (m_max + 1)), sin_tab(np * (m_max + 1));
  for (std::size_t k = 0; k < np; ++k) {
    const double p = p_grid.at(k);
    for (std::size_t m = 0; m <= m_max; ++m) {
      const double phase = p * static_cast<double>(m) * ds;
      cos_tab[k * (m_max + 1) + m] = std::cos(phase);
      sin_tab[k * (m_max + 1) + m] = std::sin(phase);
    }
  }

  const double prefactor = ds / (2.0 * std::numbers::pi);
  double worst_imag = 0.0;
  double worst_abs = 0.0;
  std::vector<cplx> plus(m_max + 1), minus(m_max + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t reach = std::min({i, n - 1 - i, m_max});
    for (std::size_t m = 0; m <= reach; ++m) {
      plus[m] = rho(i + m, i - m);   // s = +2mh
      minus[m] = rho(i - m, i + m);  // s = -2mh
    }
    for (std::size_t k = 0; k < np; ++k) {
      const double* c = &cos_tab[k * (m_max + 1)];
      const double* s = &sin_tab[k * (m_max + 1)];
      cplx acc = plus[0];
      for (std::size_t m = 1; m <= reach; ++m) {
        const cplx e{c[m], s[m]};
        acc += e * plus[m] + std::conj(e) * minus[m];
      }
      acc *= prefactor;
      w.values[i * np + k] = acc.real();
      worst_imag = std::max(worst_imag, std::abs(acc.imag()));
      worst_abs = std::max(worst_abs, std::abs(acc.real()));
    }
  }
  w.imaginary_residue = worst_abs > 0.0 ? worst_imag / worst_abs : 0.0;
  return w;
}

WignerGrid wigner_transform(const DensityMatrix& rho) {
  return wigner_transform(rho, default_momentum_grid(rho.grid()));
}

Negativity wigner_negativity(const WignerGrid& w) {
  Negativity out{0.0, 0.0};
  out.min_value = w.values.empty() ? 0.0 : *std::min_element(w.values.begin(), w.values.end());
  for (double v : w.values) {
    if (v < 0.0) out.negative_volume -= v;
  }
  out.negative_volume *= w.x_grid.spacing() * w.p_grid.spacing();
  return out;
}

namespace {

void check_aligned(const EvolutionRecord& a, const EvolutionRecord& b, const char* name) {
  std::vector<std::string> v;
  if (!(a.grid() == b.grid())) v.push_back(std::string("visibility: grid mismatch with ") + name);
  if (a.times.size() != b.times.size()) {
    v.push_back(std::string("visibility: snapshot count mismatch with ") + name);
  } else {
    for (std::size_t k = 0; k < a.times.size(); ++k) {
      if (std::abs(a.times[k] - b.times[k]) > 1e-12 * std::max(1.0, a.times[k])) {
        v.push_back(std::string("visibility: snapshot times differ from ") + name);
        break;
      }
    }
  }
  if (!v.empty()) throw ConfigError(v.front(), v);
}

}  // namespace

VisibilitySeries visibility_from_runs(const EvolutionRecord& full, const EvolutionRecord& single1,
                                      const EvolutionRecord& single2, double single_weight,
                                      double eval_point) {
  check_aligned(full, single1, "first single-packet run");
  check_aligned(full, single2, "second single-packet run");
  const Grid1D& g = full.grid();
  VisibilitySeries out;
  out.eval_point = eval_point;
  out.definition = VisibilityDefinition::dynamical;
  for (std::size_t k = 0; k < full.times.size(); ++k) {
    const double total = interpolate(full.diagonals[k], g, eval_point);
    const double r11 = single_weight * interpolate(single1.diagonals[k], g, eval_point);
    const double r22 = single_weight * interpolate(single2.diagonals[k], g, eval_point);
    const double numerator = std::abs(total - r11 - r22);
    const double denominator = r11 + r22;
    out.times.push_back(full.times[k]);
    out.numerator.push_back(numerator);
    out.denominator.push_back(denominator);
    out.nu.push_back(denominator > 0.0 ? numerator / denominator : 0.0);
  }
  return out;
}

VisibilitySeries visibility_dynamical(const EvolutionRecord& full, const SuperpositionParams& p,
                                      const BathModel& bath, const IntegratorConfig& cfg,
                                      double eval_point) {
  const Grid1D& g = full.grid();
  IntegratorConfig same = cfg;
  same.dt = full.dt;
  EvolutionOptions opts;
  opts.t_final = full.dt * static_cast<double>(full.steps);
  opts.snapshot_stride = full.snapshot_stride;
  const auto r1 = evolve(make_single_packet_state(p.L0, p, g), bath, p.mass, same, opts);
  const auto r2 = evolve(make_single_packet_state(-p.L0, p, g), bath, p.mass, same, opts);
  return visibility_from_runs(full, r1, r2, superposition_weight(p, g), eval_point);
}

std::vector<double> integrated_visibility(const EvolutionRecord& full,
                                          const EvolutionRecord& single1,
                                          const EvolutionRecord& single2, double single_weight) {
  check_aligned(full, single1, "first single-packet run");
  check_aligned(full, single2, "second single-packet run");
  std::vector<double> out;
  for (std::size_t k = 0; k < full.times.size(); ++k) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < full.diagonals[k].size(); ++i) {
      const double r = single_weight * (single1.diagonals[k][i] + single2.diagonals[k][i]);
      num += std::abs(full.diagonals[k][i] - r);
      den += r;
    }
    out.push_back(den > 0.0 ? num / den : 0.0);
  }
  return out;
}

double fringe_visibility(std::span<const double> x, std::span<const double> pattern,
                         double center) {
  const std::size_t n = x.size();
  if (n < 3 || pattern.size() != n) return 0.0;
  // Walk uphill from the node closest to `center` to the local maximum.
  std::size_t i = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(x[k] - center) < std::abs(x[i] - center)) i = k;
  }
  while (i + 1 < n && pattern[i + 1] > pattern[i]) ++i;
  while (i > 0 && pattern[i - 1] > pattern[i]) --i;
  const double p_max = pattern[i];
  std::size_t j = i;
  while (j + 1 < n && pattern[j + 1] <= pattern[j]) ++j;
  if (j == i || j + 1 == n) return 0.0;
  const double p_min = pattern[j];
  return (p_max - p_min) / (p_max + p_min);
}

}  // namespace qbm
