#include "qbm_cli/cli.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbm/errors.hpp"
#include "qbm/simulation.hpp"

namespace qbm::cli {
namespace {

struct Overrides {
  std::string preset = "fig1";
  std::optional<std::string> out;
  std::optional<std::size_t> grid_points;
  std::optional<double> grid_extent;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::size_t> snapshot_stride;
  std::optional<std::string> gamma_convention;
  std::optional<double> eval_point;
  bool validate_only = false;

  std::optional<double> L0, sigma_x0, sigma_y0, k_y, mass;
  std::optional<std::string> bath;
  std::optional<double> gamma0, kbt, lambda;
  std::vector<double> coupling_c;
  std::optional<double> stability_margin;
  std::optional<int> spatial_order;
  std::optional<bool> anomalous_term, kinetic_term, wigner, visibility;
  std::optional<std::size_t> wigner_stride;
  std::optional<double> screen_time;
};

template <class T, class U>
void apply(const std::optional<T>& v, U& target) {
  if (v) target = static_cast<U>(*v);
}

SimulationConfig resolve(const Overrides& o) {
  const auto preset = parse_preset(o.preset);
  if (!preset) throw ConfigError("preset: unknown value '" + o.preset + "'");
  SimulationConfig c = preset_config(*preset);

  auto& s = c.superposition;
  apply(o.L0, s.L0);
  apply(o.sigma_x0, s.sigma_x0);
  apply(o.sigma_y0, s.sigma_y0);
  apply(o.k_y, s.k_y);
  apply(o.mass, s.mass);
  if (o.bath) {
    const auto b = parse_bath_kind(*o.bath);
    if (!b) throw ConfigError("bath: unknown value '" + *o.bath + "'");
    c.bath = *b;
  }
  apply(o.gamma0, c.gamma0);
  apply(o.kbt, c.kbt);
  apply(o.lambda, c.lambda);
  if (!o.coupling_c.empty()) c.coupling_c = o.coupling_c;
  apply(o.grid_extent, c.grid_extent);
  apply(o.grid_points, c.grid_points);
  apply(o.dt, c.integrator.dt);
  apply(o.stability_margin, c.integrator.stability_margin);
  apply(o.spatial_order, c.integrator.spatial_order);
  apply(o.anomalous_term, c.integrator.anomalous_term);
  apply(o.kinetic_term, c.integrator.kinetic_term);
  apply(o.t_final, c.t_final);
  apply(o.snapshot_stride, c.snapshot_stride);
  if (o.gamma_convention) {
    const auto g = parse_gamma_convention(*o.gamma_convention);
    if (!g) throw ConfigError("gamma-convention: unknown value '" + *o.gamma_convention + "'");
    c.gamma_convention = *g;
  }
  apply(o.eval_point, c.eval_point);
  apply(o.wigner, c.wigner);
  apply(o.wigner_stride, c.wigner_stride);
  apply(o.visibility, c.visibility);
  apply(o.screen_time, c.screen_time);
  if (o.out) c.out_dir = *o.out;
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-slit decoherence simulator for quantum Brownian motion", "qbm_slit"};
  Overrides o;

  app.set_config("--config", "", "Flat key = value file; keys are the long flag names");
  app.add_option("--preset", o.preset, "fig1 | fig2a | fig2b | fig3 | custom")->capture_default_str();
  app.add_option("--out", o.out, "Output directory (default: out)");
  app.add_option("--grid-points", o.grid_points, "Lattice points per axis");
  app.add_option("--grid-extent", o.grid_extent, "Grid spans [-extent, extent]");
  app.add_option("--dt", o.dt, "Time step; 0 picks it from the stability bound");
  app.add_option("--t-final", o.t_final, "Final time");
  app.add_option("--snapshot-stride", o.snapshot_stride, "Steps between snapshots; 0 = automatic");
  app.add_option("--gamma-convention", o.gamma_convention, "master-eq | paper-text");
  app.add_option("--eval-point", o.eval_point, "Screen coordinate of the visibility measurement");
  app.add_flag("--validate-only", o.validate_only, "Report violations and exit without running");

  app.add_option("--L0", o.L0, "Half separation of the two packets");
  app.add_option("--sigma-x0", o.sigma_x0, "Initial packet width along x");
  app.add_option("--sigma-y0", o.sigma_y0, "Initial packet width along y");
  app.add_option("--ky", o.k_y, "Mean momentum along y");
  app.add_option("--mass", o.mass, "Particle mass");
  app.add_option("--bath", o.bath, "closed | ohmic | scattering | incoherence");
  app.add_option("--gamma0", o.gamma0, "Ohmic damping rate");
  app.add_option("--kbt", o.kbt, "Bath temperature k_B T");
  app.add_option("--lambda", o.lambda, "Scattering localisation rate");
  app.add_option("--coupling-c", o.coupling_c, "Incoherence coupling constants")->delimiter(',');
  app.add_option("--stability-margin", o.stability_margin, "Fraction of the stability bound used");
  app.add_option("--spatial-order", o.spatial_order, "Finite-difference order: 2 or 4");
  app.add_option("--anomalous-term", o.anomalous_term, "Keep the f term (true/false)");
  app.add_option("--kinetic-term", o.kinetic_term, "Keep the kinetic term (true/false)");
  app.add_option("--wigner", o.wigner, "Write the Wigner function (true/false)");
  app.add_option("--wigner-stride", o.wigner_stride, "Thinning of the Wigner CSV");
  app.add_option("--visibility", o.visibility, "Run the visibility decomposition (true/false)");
  app.add_option("--screen-time", o.screen_time, "Time of the analytic screen patterns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"status", "usage-error"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }

  SimulationConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const ConfigError& e) {
    err << report_json(ValidationReport{e.violations(), {}}) << '\n';
    return 2;
  }

  if (o.validate_only) {
    const auto report = validate(cfg);
    out << report_json(report) << '\n';
    return report.ok() ? 0 : 2;
  }
  const auto outcome = run(cfg, err);
  for (const auto& f : outcome.files) out << f.string() << '\n';
  return outcome.exit_code;
}

}  // namespace qbm::cli
