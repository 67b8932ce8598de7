#include "dnls/config.hpp"

#include <cmath>
#include <string>

#include "dnls/error.hpp"

namespace dnls {

void NonlinearityConfig::validate() const {
  if (k_power < 0) throw ParameterError("k_power must be >= 0");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
}

void SolverConfig::validate() const {
  nonlinearity.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    throw ParameterError("t_final must be positive");
  if (dt > t_final) throw ParameterError("dt must not exceed t_final");
  const double n = t_final / dt;
  if (std::abs(n - std::round(n)) > 1e-9 * n)
    throw ParameterError("t_final must be a multiple of dt");
  if (pad_factor != 2 && pad_factor != 4)
    throw ParameterError("pad_factor must be 2 or 4");
  if (record_every == 0) throw ParameterError("record_every must be >= 1");
}

std::size_t SolverConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

const char* to_string(Integrator i) {
  return i == Integrator::EtdRk4 ? "ETD-RK4" : "IF-RK4";
}

const char* to_string(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

}  // namespace dnls
