#pragma once

#include <cstddef>
#include <optional>

#include "dnls/field.hpp"

namespace dnls {

// Right-hand side selection for (G2) or its gauged form.
struct NonlinearityConfig {
  double lambda = 0.0;
  int k_power = 1;  // exponent k in lambda |u|^{2k} u
  bool gauged = false;

  void validate() const;
};

enum class Integrator { EtdRk4, IfRk4 };
enum class Direction { Forward, Backward };

struct SolverConfig {
  Domain domain = Domain::torus(256);
  NonlinearityConfig nonlinearity{};
  double dt = 1e-4;
  double t_final = 0.1;
  Integrator integrator = Integrator::EtdRk4;
  std::size_t pad_factor = 4;  // 2 or 4; raised automatically for high powers
  Direction direction = Direction::Forward;
  std::size_t record_every = 1;  // keep every k-th step in the trajectory

  void validate() const;
  std::size_t steps() const;
};

const char* to_string(Integrator i);
const char* to_string(Direction d);

}  // namespace dnls
