#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"

namespace momentvar::flow {

using algebra::AlgebraTensor;

struct FlowConfig {
  double step0 = 0.0;  // 0 picks 0.1 / F(start)
  double shrink = 0.5;
  double grad_tol = 1e-9;
  std::size_t max_iters = 200000;
  std::size_t record_every = 100;
  double armijo = 1e-4;
  std::size_t max_backtracks = 60;
  double max_step_ratio = 1e6;  // cap on step / step0

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct OrbitInvariants {
  std::size_t der = 0;
  std::size_t radical = 0;  // 0 for non-associative input
  std::size_t annihilator = 0;
  std::size_t center = 0;
  bool associative = true;

  bool operator==(const OrbitInvariants&) const = default;
  std::string str() const;
};

struct FlowTrace {
  std::vector<AlgebraTensor> iterates;  // every record_every-th accepted iterate, plus the last
  std::vector<double> f_values;         // F after each accepted step, starting with F(start)
  AlgebraTensor final;
  bool converged = false;
  bool stalled = false;  // no acceptable step after max_backtracks
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  OrbitInvariants start_invariants;
  OrbitInvariants final_invariants;
};

// Projective gradient of F at mu / ||mu||: 8 M.mu - 4 F mu.
AlgebraTensor projective_gradient(const AlgebraTensor& mu);

// Descends F on the unit sphere along the orbit of mu. Iterates are
// g . mu / ||g . mu|| with g <- exp(-8 h A) g, where A is M at the current
// point with its component along C I + g Der(mu) g^-1 removed; h comes from
// Armijo backtracking. Throws std::invalid_argument on the zero tensor.
FlowTrace flow_to_critical(const AlgebraTensor& mu, const FlowConfig& cfg = {});

// (dim Der, dim N, dim ann, dim C) at rank tolerance tol.
OrbitInvariants orbit_invariants(const AlgebraTensor& mu, double tol = 1e-5);

// True when the limit left the starting orbit, witnessed by a change of
// invariants. Throws std::invalid_argument on an unconverged trace.
bool detect_degeneration(const FlowTrace& trace);

nlohmann::json invariants_to_json(const OrbitInvariants& inv);
// At most max_samples F-values are written, evenly spaced, last one included.
nlohmann::json trace_to_json(const FlowTrace& trace, std::size_t max_samples = 200);

}  // namespace momentvar::flow
