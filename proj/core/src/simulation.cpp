#include "qbm/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qbm/analytic.hpp"
#include "qbm/bessel.hpp"
#include "qbm/errors.hpp"
#include "qbm/incoherence.hpp"
#include "qbm/observables.hpp"
#include "qbm/states.hpp"

namespace qbm {

using nlohmann::ordered_json;

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::fig1: return "fig1";
    case Preset::fig2a: return "fig2a";
    case Preset::fig2b: return "fig2b";
    case Preset::fig3: return "fig3";
    case Preset::custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(BathKind b) {
  switch (b) {
    case BathKind::closed: return "closed";
    case BathKind::ohmic: return "ohmic";
    case BathKind::scattering: return "scattering";
    case BathKind::incoherence: return "incoherence";
  }
  return "closed";
}

std::optional<Preset> parse_preset(std::string_view text) {
  for (Preset p : {Preset::fig1, Preset::fig2a, Preset::fig2b, Preset::fig3, Preset::custom}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::optional<BathKind> parse_bath_kind(std::string_view text) {
  for (BathKind b : {BathKind::closed, BathKind::ohmic, BathKind::scattering, BathKind::incoherence}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

BathModel SimulationConfig::bath_model() const {
  switch (bath) {
    case BathKind::ohmic: return ohmic_high_temperature(gamma0, superposition.mass, kbt);
    case BathKind::scattering: return scattering_model(lambda);
    case BathKind::closed:
    case BathKind::incoherence: return closed_system();
  }
  return closed_system();
}

IntegratorConfig SimulationConfig::integrator_config() const {
  IntegratorConfig c = integrator;
  c.convention = gamma_convention;
  return c;
}

SimulationConfig fig3_fit_inputs() {
  SimulationConfig c;
  c.preset = Preset::fig3;
  c.superposition = SuperpositionParams{2.0, 0.5, 10.0, 20.0, 1.0};
  c.bath = BathKind::ohmic;
  c.coupling_c = {1.0};
  c.screen_time = 2.0;
  c.wigner = false;
  c.visibility = false;
  return c;
}

SimulationConfig preset_config(Preset p) {
  SimulationConfig c;
  c.preset = p;
  c.superposition = SuperpositionParams{2.0, 0.5, 10.0, 20.0, 1.0};
  c.bath = BathKind::ohmic;
  c.gamma0 = 0.001;
  c.kbt = 300.0;
  c.grid_extent = 20.0;
  c.grid_points = 512;
  c.t_final = 2.0;
  c.integrator.stability_margin = 0.5;
  c.gamma_convention = GammaConvention::paper_text;
  switch (p) {
    case Preset::fig1:
      c.wigner = true;
      c.visibility = false;
      break;
    case Preset::fig2a:
      c.wigner = false;
      c.visibility = true;
      break;
    case Preset::fig2b:
      c.bath = BathKind::incoherence;
      c.coupling_c = {0.1, 1.0, 2.0};
      c.wigner = false;
      break;
    case Preset::fig3:
      return fig3_fit_inputs();
    case Preset::custom:
      break;
  }
  return c;
}

namespace {

std::string num(double v) { return format_number(v); }

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + num(values[k]);
  return out;
}

}  // namespace

KeyValues resolved_entries(const SimulationConfig& c) {
  const auto& s = c.superposition;
  KeyValues kv{
      {"preset", std::string(to_string(c.preset))},
      {"L0", num(s.L0)},
      {"sigma-x0", num(s.sigma_x0)},
      {"sigma-y0", num(s.sigma_y0)},
      {"ky", num(s.k_y)},
      {"mass", num(s.mass)},
      {"bath", std::string(to_string(c.bath))},
      {"gamma0", num(c.gamma0)},
      {"kbt", num(c.kbt)},
      {"lambda", num(c.lambda)},
      {"coupling-c", join(c.coupling_c)},
      {"grid-extent", num(c.grid_extent)},
      {"grid-points", std::to_string(c.grid_points)},
      {"dt", num(c.integrator.dt)},
      {"stability-margin", num(c.integrator.stability_margin)},
      {"spatial-order", std::to_string(c.integrator.spatial_order)},
      {"anomalous-term", c.integrator.anomalous_term ? "true" : "false"},
      {"kinetic-term", c.integrator.kinetic_term ? "true" : "false"},
      {"t-final", num(c.t_final)},
      {"snapshot-stride", std::to_string(c.snapshot_stride)},
      {"gamma-convention", std::string(to_string(c.gamma_convention))},
      {"eval-point", num(c.eval_point)},
      {"wigner", c.wigner ? "true" : "false"},
      {"wigner-stride", std::to_string(c.wigner_stride)},
      {"visibility", c.visibility ? "true" : "false"},
      {"screen-time", num(c.screen_time)},
  };
  return kv;
}

ValidationReport validate(const SimulationConfig& c) {
  ValidationReport r;
  auto absorb = [&r](auto&& check) {
    try {
      check();
    } catch (const ConfigError& e) {
      r.violations.insert(r.violations.end(), e.violations().begin(), e.violations().end());
    }
  };

  absorb([&] { c.superposition.validate(); });
  const auto sw = c.superposition.warnings();
  r.warnings.insert(r.warnings.end(), sw.begin(), sw.end());

  const Grid1D g = c.grid();
  bool grid_ok = true;
  absorb([&] {
    try {
      g.validate();
    } catch (const ConfigError&) {
      grid_ok = false;
      throw;
    }
  });
  if (!(c.t_final > 0.0)) r.violations.push_back("t-final: must be positive");
  if (c.integrator.spatial_order != 2 && c.integrator.spatial_order != 4) {
    r.violations.push_back("spatial-order: must be 2 or 4");
  }
  if (!(c.integrator.stability_margin > 0.0 && c.integrator.stability_margin <= 1.0)) {
    r.violations.push_back("stability-margin: must lie in (0, 1]");
  }
  if (c.wigner_stride == 0) r.violations.push_back("wigner-stride: must be at least 1");

  std::optional<BathModel> bath;
  absorb([&] { bath = c.bath_model(); });
  if (c.bath == BathKind::incoherence || c.preset == Preset::fig3) {
    if (c.coupling_c.empty()) r.violations.push_back("coupling-c: at least one value is required");
    for (double C : c.coupling_c) {
      if (!(std::abs(C) <= kBesselJ0MaxArgument)) {
        r.violations.push_back("coupling-c: |C| beyond the supported range 50");
        continue;
      }
      const auto w = IncoherenceParams{C, ""}.warnings();
      r.warnings.insert(r.warnings.end(), w.begin(), w.end());
    }
  }
  if (c.preset == Preset::fig3 && !(c.screen_time > 0.0)) {
    r.violations.push_back("screen-time: must be positive");
  }

  if (grid_ok && r.violations.empty()) {
    const double needed = c.superposition.L0 + 6.0 * c.superposition.sigma_x0;
    if (g.x_min > -needed || g.x_max < needed) {
      std::ostringstream os;
      os << "grid coverage: extent must cover +-(L0 + 6 sigma_x0) = +-" << needed;
      r.violations.push_back(os.str());
    }
    try {
      (void)make_superposition_state(c.superposition, g);
    } catch (const ConfigError& e) {
      r.violations.push_back("boundary-mass: " + std::string(e.what()));
    }
    if (c.eval_point < g.x_min || c.eval_point > g.x_max) {
      r.violations.push_back("eval-point: outside the grid");
    }
    if (bath && c.t_final > 0.0 && c.integrator.dt > 0.0) {
      try {
        (void)resolve_time_step(g, c.superposition.mass, *bath, c.integrator_config(), c.t_final);
      } catch (const ConfigError& e) {
        r.violations.push_back(e.what());
      }
    }
  }
  return r;
}

std::string report_json(const ValidationReport& report) {
  ordered_json j;
  j["status"] = report.ok() ? "valid" : "invalid-config";
  j["violations"] = report.violations;
  j["warnings"] = report.warnings;
  return j.dump();
}

namespace {

struct RunContext {
  const SimulationConfig& cfg;
  KeyValues header;
  RunOutcome outcome;
  ordered_json summary;

  std::filesystem::path file(const std::string& name) {
    auto p = cfg.out_dir / name;
    outcome.files.push_back(p);
    return p;
  }
};

ordered_json diagnostics_summary(const EvolutionRecord& rec) {
  ordered_json j;
  j["steps"] = rec.steps;
  j["dt"] = rec.dt;
  j["completed"] = rec.completed;
  if (!rec.completed) j["abort_reason"] = rec.abort_reason;
  j["final_trace"] = rec.diagnostics.back().trace;
  j["max_trace_error"] = rec.max_trace_error();
  j["max_hermiticity_defect"] = rec.max_hermiticity_defect();
  double worst_boundary = 0.0;
  for (const auto& d : rec.diagnostics) worst_boundary = std::max(worst_boundary, d.boundary_mass);
  j["max_boundary_mass"] = worst_boundary;
  return j;
}

void write_pattern(RunContext& ctx, const EvolutionRecord& rec, const std::string& name) {
  CsvWriter csv(ctx.file(name), "pattern evolution P(x,t) = Re rho(x,x,t)", ctx.header,
                {"t", "x", "P"});
  const Grid1D& g = rec.grid();
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    for (std::size_t i = 0; i < g.n_points; ++i) csv.row({rec.times[k], g.at(i), rec.diagonals[k][i]});
  }
}

void write_diagnostics(RunContext& ctx, const EvolutionRecord& rec, const std::string& name) {
  CsvWriter csv(ctx.file(name), "per-step integrator diagnostics", ctx.header,
                {"t", "trace", "hermiticity_defect", "asymmetry_removed", "boundary_mass"});
  for (const auto& d : rec.diagnostics) {
    csv.row({d.time, d.trace, d.hermiticity_defect, d.asymmetry_removed, d.boundary_mass});
  }
}

ordered_json write_wigner(RunContext& ctx, const DensityMatrix& rho, const std::string& name) {
  const auto w = wigner_transform(rho);
  const auto neg = wigner_negativity(w);
  const auto marginal = w.x_marginal();
  const auto diag = rho.diagonal();
  double marginal_error = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    marginal_error = std::max(marginal_error, std::abs(marginal[i] - diag[i]));
  }
  {
    CsvWriter csv(ctx.file(name), "Wigner function W(x,p) at t = " + format_number(rho.time()),
                  ctx.header, {"p", "x", "W"});
    const std::size_t stride = ctx.cfg.wigner_stride;
    for (std::size_t k = 0; k < w.p_grid.n_points; k += stride) {
      for (std::size_t i = 0; i < w.x_grid.n_points; i += stride) {
        csv.row({w.p_grid.at(k), w.x_grid.at(i), w(i, k)});
      }
    }
  }
  ordered_json j;
  j["time"] = rho.time();
  j["min"] = neg.min_value;
  j["max"] = w.max_value();
  j["min_over_max"] = neg.min_value / w.max_value();
  j["negative_volume"] = neg.negative_volume;
  j["normalization"] = w.normalization();
  j["max_marginal_error"] = marginal_error;
  j["imaginary_residue"] = w.imaginary_residue;
  return j;
}

double value_near(const std::vector<double>& times, const std::vector<double>& values, double t) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
  }
  return values[best];
}

const std::vector<double> kReportTimes{0.0, 0.25, 0.5, 1.0, 1.5, 2.0};

ordered_json sampled(const std::vector<double>& times, const std::vector<double>& values,
                     double t_final) {
  ordered_json j = ordered_json::array();
  for (double t : kReportTimes) {
    if (t > t_final + 1e-12) continue;
    j.push_back({{"t", t}, {"value", value_near(times, values, t)}});
  }
  return j;
}

// Returns false when the main evolution aborted.
bool run_evolution(RunContext& ctx) {
  const auto& c = ctx.cfg;
  const Grid1D g = c.grid();
  const BathModel bath = c.bath_model();
  const IntegratorConfig icfg = c.integrator_config();
  EvolutionOptions opts;
  opts.t_final = c.t_final;
  opts.snapshot_stride = c.snapshot_stride;

  EvolutionRecord rec;
  bool completed = true;
  try {
    rec = evolve(make_superposition_state(c.superposition, g), bath, c.superposition.mass, icfg,
                 opts);
  } catch (const EvolutionAborted& e) {
    rec = e.partial();
    completed = false;
    ctx.header.emplace_back("status", "aborted: " + rec.abort_reason);
  }
  if (completed) ctx.header.emplace_back("status", "complete");

  write_pattern(ctx, rec, "pattern_evolution.csv");
  write_diagnostics(ctx, rec, "diagnostics.csv");
  ctx.summary["bath"] = bath.description;
  ctx.summary["evolution"] = diagnostics_summary(rec);
  if (bath.time_constant && bath.diffusion(0.0) > 0.0) {
    ctx.summary["decoherence_time"] =
        analytic::decoherence_time(bath, c.superposition.L0, c.gamma_convention);
    ctx.summary["decoherence_time_dx"] = "L0";
  }
  if (!completed) return false;

  if (c.wigner) {
    ctx.summary["wigner_initial"] = write_wigner(ctx, rec.snapshots.front(), "wigner_initial.csv");
    ctx.summary["wigner_final"] = write_wigner(ctx, rec.final_state(), "wigner_final.csv");
  }

  if (c.visibility) {
    IntegratorConfig same = icfg;
    same.dt = rec.dt;
    EvolutionOptions sopts = opts;
    sopts.snapshot_stride = rec.snapshot_stride;
    const auto& p = c.superposition;
    EvolutionRecord r1, r2;
    try {
      r1 = evolve(make_single_packet_state(p.L0, p, g), bath, p.mass, same, sopts);
      r2 = evolve(make_single_packet_state(-p.L0, p, g), bath, p.mass, same, sopts);
    } catch (const EvolutionAborted& e) {
      ctx.summary["visibility_error"] = e.what();
      return false;
    }
    const double w = superposition_weight(p, g);
    const auto series = visibility_from_runs(rec, r1, r2, w, c.eval_point);
    const auto integrated = integrated_visibility(rec, r1, r2, w);
    {
      CsvWriter csv(ctx.file("visibility.csv"),
                    "fringe visibility nu(t) = |rho_int| / (rho11 + rho22) at eval-point",
                    ctx.header,
                    {"t", "nu", "rho_int_abs", "rho11_plus_rho22", "nu_integrated", "gamma_factor"});
      for (std::size_t k = 0; k < series.times.size(); ++k) {
        const double t = series.times[k];
        csv.row({t, series.nu[k], series.numerator[k], series.denominator[k], integrated[k],
                 analytic::gamma_factor(bath, 2.0 * p.L0, t, c.gamma_convention)});
      }
    }
    const auto peak = std::max_element(series.nu.begin(), series.nu.end()) - series.nu.begin();
    const auto ipeak =
        std::max_element(integrated.begin(), integrated.end()) - integrated.begin();
    ordered_json v;
    v["eval_point"] = c.eval_point;
    v["nu"] = sampled(series.times, series.nu, c.t_final);
    v["nu_peak_time"] = series.times[static_cast<std::size_t>(peak)];
    v["nu_peak"] = series.nu[static_cast<std::size_t>(peak)];
    v["nu_integrated"] = sampled(series.times, integrated, c.t_final);
    v["nu_integrated_peak_time"] = series.times[static_cast<std::size_t>(ipeak)];
    v["single_runs_max_trace_error"] = std::max(r1.max_trace_error(), r2.max_trace_error());
    ctx.summary["visibility"] = v;
  }
  return true;
}

bool run_incoherence(RunContext& ctx) {
  const auto& c = ctx.cfg;
  const auto& p = c.superposition;
  const Grid1D g = c.grid();
  IntegratorConfig icfg = c.integrator_config();
  EvolutionOptions opts;
  opts.t_final = c.t_final;
  opts.snapshot_stride = c.snapshot_stride;
  EvolutionRecord r1, r2;
  try {
    r1 = evolve(make_single_packet_state(p.L0, p, g), closed_system(), p.mass, icfg, opts);
    r2 = evolve(make_single_packet_state(-p.L0, p, g), closed_system(), p.mass, icfg, opts);
  } catch (const EvolutionAborted& e) {
    ctx.header.emplace_back("status", std::string("aborted: ") + e.what());
    ctx.summary["error"] = e.what();
    return false;
  }
  ctx.header.emplace_back("status", "complete");
  const double w = superposition_weight(p, g);
  std::vector<double> rho11, rho22;
  for (std::size_t k = 0; k < r1.times.size(); ++k) {
    rho11.push_back(w * interpolate(r1.diagonals[k], g, c.eval_point));
    rho22.push_back(w * interpolate(r2.diagonals[k], g, c.eval_point));
  }

  CsvWriter csv(ctx.file("visibility_incoherence.csv"),
                "incoherence visibility nu_C(t) = J0(|C|) / (rho11 + rho22) at eval-point",
                ctx.header, {"C", "t", "nu_C", "j0", "rho11_plus_rho22"});
  ordered_json series = ordered_json::array();
  for (double C : c.coupling_c) {
    std::string species = "custom";
    if (c.preset == Preset::fig2b) species = C == 0.1 ? "neutron" : "C70";
    const IncoherenceParams params{C, species};
    const auto v = visibility_incoherence(params, rho11, rho22, r1.times, c.eval_point);
    for (std::size_t k = 0; k < v.times.size(); ++k) {
      csv.row({C, v.times[k], v.nu[k], v.numerator[k], v.denominator[k]});
    }
    series.push_back({{"C", C},
                      {"species", params.species_label},
                      {"j0", params.attenuation()},
                      {"nu_C", sampled(v.times, v.nu, c.t_final)}});
  }
  ordered_json s;
  s["eval_point"] = c.eval_point;
  s["series"] = series;
  s["single_runs_max_trace_error"] = std::max(r1.max_trace_error(), r2.max_trace_error());
  s["single_runs_max_hermiticity_defect"] =
      std::max(r1.max_hermiticity_defect(), r2.max_hermiticity_defect());
  ctx.summary["incoherence"] = s;
  return true;
}

void run_screen_patterns(RunContext& ctx) {
  const auto& c = ctx.cfg;
  const auto& p = c.superposition;
  const Grid1D g = c.grid();
  const double t = c.screen_time;
  const double y = analytic::chi_center(p, t);
  const BathModel bath = c.bath_model();
  const IncoherenceParams inc{c.coupling_c.front(), "C70"};
  ctx.header.emplace_back("status", "complete");

  std::vector<double> xs, iso, deco, incoh;
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double x = g.at(i);
    xs.push_back(x);
    iso.push_back(analytic::attenuated_pattern(p, 1.0, x, y, t));
    deco.push_back(analytic::decohered_pattern(p, bath, x, y, t, c.gamma_convention));
    incoh.push_back(incoherent_pattern(p, inc, x, y, t));
  }
  {
    CsvWriter csv(ctx.file("pattern_fig3.csv"),
                  "screen patterns at t = screen-time, y = k_y t / M", ctx.header,
                  {"x", "isolated", "decohered", "incoherent"});
    for (std::size_t i = 0; i < xs.size(); ++i) csv.row({xs[i], iso[i], deco[i], incoh[i]});
  }
  ordered_json s;
  s["screen_time"] = t;
  s["screen_y"] = y;
  s["C"] = inc.C;
  s["j0"] = inc.attenuation();
  s["visibility_isolated"] = fringe_visibility(xs, iso);
  s["visibility_decohered"] = fringe_visibility(xs, deco);
  s["visibility_incoherent"] = fringe_visibility(xs, incoh);
  s["fit_inputs"] = {{"L0", p.L0}, {"sigma_x0", p.sigma_x0}, {"sigma_y0", p.sigma_y0},
                     {"k_y", p.k_y}, {"mass", p.mass}};
  ctx.summary["screen"] = s;
}

}  // namespace

RunOutcome run(const SimulationConfig& cfg, std::ostream& err) {
  const auto report = validate(cfg);
  if (!report.ok()) {
    err << report_json(report) << '\n';
    return RunOutcome{2, {}, {}};
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    err << ordered_json{{"status", "io-error"}, {"message", ec.message()}}.dump() << '\n';
    return RunOutcome{2, {}, {}};
  }

  RunContext ctx{cfg, resolved_entries(cfg), {}, {}};
  ctx.summary["preset"] = to_string(cfg.preset);
  ctx.summary["gamma_convention"] = to_string(cfg.gamma_convention);
  ctx.summary["warnings"] = report.warnings;

  bool ok = true;
  try {
    if (cfg.preset == Preset::fig3) {
      run_screen_patterns(ctx);
    } else if (cfg.bath == BathKind::incoherence) {
      ok = run_incoherence(ctx);
    } else {
      ok = run_evolution(ctx);
    }
  } catch (const ConfigError& e) {
    err << report_json(ValidationReport{e.violations(), {}}) << '\n';
    return RunOutcome{2, ctx.outcome.files, {}};
  }

  ordered_json full;
  full["status"] = ok ? "complete" : "aborted";
  full["config"] = ordered_json::object();
  for (const auto& [k, v] : resolved_entries(cfg)) full["config"][k] = v;
  full.update(ctx.summary);
  ctx.outcome.summary_json = full.dump(2);
  {
    std::ofstream out(ctx.file("summary.json"));
    out << ctx.outcome.summary_json << '\n';
  }
  if (!ok) {
    err << ordered_json{{"status", "aborted"}, {"summary", (cfg.out_dir / "summary.json").string()}}.dump()
        << '\n';
    ctx.outcome.exit_code = 3;
  }
  return ctx.outcome;
}

}  // namespace qbm
