#include "qbm/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm {

double diffusion_weight(GammaConvention conv) {
  return conv == GammaConvention::master_equation ? 0.25 : 1.0;
}

std::string_view to_string(GammaConvention conv) {
  return conv == GammaConvention::master_equation ? "master-eq" : "paper-text";
}

std::optional<GammaConvention> parse_gamma_convention(std::string_view text) {
  if (text == "master-eq") return GammaConvention::master_equation;
  if (text == "paper-text") return GammaConvention::paper_text;
  return std::nullopt;
}

bool BathModel::is_closed() const {
  const auto s = at(0.0);
  return s.gamma == 0.0 && s.diffusion == 0.0 && s.anomalous == 0.0;
}

BathModel constant_bath(double gamma, double diffusion, double anomalous,
                        std::string description) {
  if (!(diffusion >= 0.0)) throw ConfigError("bath: diffusion coefficient must be non-negative");
  BathModel b;
  b.gamma = [gamma](double) { return gamma; };
  b.diffusion = [diffusion](double) { return diffusion; };
  b.anomalous = [anomalous](double) { return anomalous; };
  b.description = std::move(description);
  b.time_constant = true;
  return b;
}

BathModel closed_system() { return constant_bath(0.0, 0.0, 0.0, "closed"); }

BathModel ohmic_high_temperature(double gamma0, double mass, double kbt) {
  std::vector<std::string> v;
  if (!(gamma0 >= 0.0)) v.push_back("ohmic bath: gamma0 must be non-negative");
  if (!(mass > 0.0)) v.push_back("ohmic bath: mass must be positive");
  if (!(kbt > 0.0)) v.push_back("ohmic bath: kBT must be positive");
  if (!v.empty()) throw ConfigError(v.front(), v);

  const double diffusion = 2.0 * mass * gamma0 * kbt;
  const double anomalous = gamma0 == 0.0 ? 0.0 : 1.0 / kbt;
  std::ostringstream os;
  os << "ohmic-high-T(gamma0=" << gamma0 << ",M=" << mass << ",kBT=" << kbt << ")";
  return constant_bath(gamma0, diffusion, anomalous, os.str());
}

BathModel scattering_model(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("scattering model: Lambda must be non-negative");
  std::ostringstream os;
  os << "scattering(Lambda=" << lambda << ")";
  return constant_bath(0.0, 4.0 * lambda, 0.0, os.str());
}

}  // namespace qbm
