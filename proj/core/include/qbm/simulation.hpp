#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbm/coefficients.hpp"
#include "qbm/dynamics.hpp"
#include "qbm/grid.hpp"
#include "qbm/output.hpp"

namespace qbm {

enum class Preset { fig1, fig2a, fig2b, fig3, custom };
enum class BathKind { closed, ohmic, scattering, incoherence };

std::string_view to_string(Preset p);
std::string_view to_string(BathKind b);
std::optional<Preset> parse_preset(std::string_view text);
std::optional<BathKind> parse_bath_kind(std::string_view text);

struct SimulationConfig {
  Preset preset = Preset::custom;
  SuperpositionParams superposition{};

  BathKind bath = BathKind::ohmic;
  double gamma0 = 0.001;
  double kbt = 300.0;
  double lambda = 0.15;
  std::vector<double> coupling_c{1.0};  // incoherence runs, one series per value

  double grid_extent = 20.0;  // grid is [-extent, extent]
  std::size_t grid_points = 512;
  IntegratorConfig integrator{};  // its convention is taken from gamma_convention
  double t_final = 2.0;
  std::size_t snapshot_stride = 0;
  GammaConvention gamma_convention = GammaConvention::paper_text;
  double eval_point = 0.0;

  bool wigner = true;       // write W(x,p) at t = 0 and t = t_final
  std::size_t wigner_stride = 2;  // output thinning of the Wigner CSV in both axes
  bool visibility = false;  // run the single-packet decomposition
  double screen_time = 2.0; // time of the analytic screen patterns (fig3)

  std::filesystem::path out_dir = "out";

  Grid1D grid() const { return Grid1D::symmetric(grid_extent, grid_points); }
  BathModel bath_model() const;  // closed for incoherence runs
  IntegratorConfig integrator_config() const;
};

/// Fully populated configuration for a named preset.
SimulationConfig preset_config(Preset p);

/// Fit inputs of the fullerene pattern preset (fig3): they are not published
/// values, they are chosen so that the closed-system fringe spacing is of
/// order one on the default grid.
SimulationConfig fig3_fit_inputs();

/// Resolved configuration as ordered key/value pairs; keys equal the
/// command-line flag names without the leading dashes.
KeyValues resolved_entries(const SimulationConfig& cfg);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

/// Checks every invariant without running anything.
ValidationReport validate(const SimulationConfig& cfg);

struct RunOutcome {
  int exit_code = 0;  // 0 success, 2 invalid configuration, 3 aborted mid-run
  std::vector<std::filesystem::path> files;
  std::string summary_json;
};

/// Validates, runs every evolution the preset needs, writes CSV files and
/// summary.json into cfg.out_dir. Errors go to `err` as one JSON line.
RunOutcome run(const SimulationConfig& cfg, std::ostream& err);

/// Validation report as a JSON document.
std::string report_json(const ValidationReport& report);

}  // namespace qbm
