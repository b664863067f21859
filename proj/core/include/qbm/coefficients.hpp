#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace qbm {

using CoefficientFn = std::function<double(double)>;

/// How the diffusion coefficient D enters the decoherence exponent.
///
///   master_equation : rho_t contains -(D/4)(x-x')^2 rho, Gamma = exp(-dx^2 int D / 4)
///   paper_text      : rho_t contains -D (x-x')^2 rho,    Gamma = exp(-dx^2 int D)
///
/// The two readings differ by a factor of four; both are supported and every
/// output records which one was used.
enum class GammaConvention { master_equation, paper_text };

/// Multiplier kappa of D * (x-x')^2 for the given convention (1/4 or 1).
double diffusion_weight(GammaConvention conv);

std::string_view to_string(GammaConvention conv);
std::optional<GammaConvention> parse_gamma_convention(std::string_view text);

/// Time-dependent coefficients of the master equation (hbar = 1).
struct BathModel {
  CoefficientFn gamma;      // dissipation rate
  CoefficientFn diffusion;  // D(t) >= 0
  CoefficientFn anomalous;  // f(t)
  std::string description;
  bool time_constant = true;

  struct Sample {
    double gamma;
    double diffusion;
    double anomalous;
  };
  Sample at(double t) const { return {gamma(t), diffusion(t), anomalous(t)}; }

  bool is_closed() const;  // all three coefficients vanish at t = 0
};

/// Constant coefficients (gamma, D, f).
BathModel constant_bath(double gamma, double diffusion, double anomalous,
                        std::string description);

/// No environment.
BathModel closed_system();

/// Ohmic bath at high temperature: gamma = gamma0, D = 2 M gamma0 kT, f = 1/kT.
/// gamma0 = 0 gives an uncoupled bath and zeroes f as well.
BathModel ohmic_high_temperature(double gamma0, double mass, double kbt);

/// Collision model -Lambda [x,[x,rho]] expressed as (0, 4 Lambda, 0). The
/// mapping reproduces -Lambda (x-x')^2 rho under master_equation weighting.
BathModel scattering_model(double lambda);

}  // namespace qbm
