#pragma once

// The experiment scenarios. Planning reads and validates the parameters
// (SchemaError on any violation) and returns the action that does the work.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dnls/cli/report.hpp"
#include "dnls/cli/schema.hpp"
#include "dnls/estimates.hpp"

namespace dnls::cli {

const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

using Action = std::function<void(Recorder&)>;

// `p` is the "parameters" object of the configuration.
Action plan_scenario(const std::string& scenario, Params& p, std::uint64_t seed);

struct FlowmapSpec {
  double radius = 0.5;                            // data drawn with ||u0||_{B^{1/2}} < radius
  std::vector<double> epsilons{1e-2, 1e-3, 1e-4};  // perturbation sizes, all > 0
  std::size_t ensemble = 10;
  std::size_t n_points = 64;
  int band = 4;
  double dt = 1e-3;
  double t_final = 0.1;  // <= 1
  double lambda = 0.0;
  int k_power = 1;
  bool gauged_comparison = true;
  std::uint64_t seed = 1;
};

// L(eps) = sup_t ||u - v||_{B^{1/2}} / ||u0 - v0||_{B^{1/2}} for v0 = u0 + eps phi
// on the torus. Passes when, for every draw, max L <= 2 median L over the
// eps list, and (with the gauged comparison) the gauged-flow constants agree
// within a factor 4. ParameterError on an invalid spec; solver errors propagate.
ProbeReport flowmap_experiment(const FlowmapSpec& spec);

}  // namespace dnls::cli
