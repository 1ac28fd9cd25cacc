#pragma once

#include <cstdint>
#include <vector>

#include "quboasm/optimize.hpp"
#include "quboasm/pauli.hpp"
#include "quboasm/statevector.hpp"

namespace quboasm {

// Ansatz circuit whose rotation angles are linear in the parameter vector
// (gamma_1..gamma_p, beta_1..beta_p). Fixed gates have param < 0.
struct ParametricCircuit {
  struct Slot {
    Gate gate;
    int param = -1;     // index into the parameter vector
    double scale = 1.0; // bound angle = scale * params[param]
  };

  int num_qubits = 0;
  int layers = 0;
  std::vector<Slot> slots;

  GateList bind(std::span<const double> params) const;
};

// Layered ansatz: a Hadamard on every qubit, then per layer k the cost phase
// (single-Z terms as one RZ; ZZ terms as CNOT, RZ on the target, CNOT) with
// angles proportional to gamma_k, followed by RX(2 beta_k) on every qubit.
// The cost rotations use angle -2*coeff*gamma_k, i.e. the layer applies
// exp(+i gamma_k H); the mixer applies exp(-i beta_k X). Terms with more
// than two qubits in the support are rejected.
ParametricCircuit compile_ansatz(const PauliHamiltonian& h, int layers);

struct QaoaConfig {
  int layers = 1;
  std::vector<double> initial_params;  // empty: random; otherwise size 2*layers,
                                       // used by the first restart
  NelderMeadOptions optimizer;         // max_iterations 0 evaluates initial_params only
  int restarts = 1;
  std::uint64_t seed = 0;
  int top_k = 16;
};

struct QaoaIterate {
  int restart = 0;
  std::vector<double> params;
  double expectation = 0.0;
};

struct QaoaTopState {
  std::uint64_t basis = 0;
  double probability = 0.0;
  double diag_energy = 0.0;
};

struct QaoaResult {
  std::vector<double> best_params;
  double best_expectation = 0.0;
  int best_restart = 0;
  Statevector state;                  // statevector at the best parameters
  std::vector<QaoaTopState> top_states;  // by probability desc, basis asc
  std::vector<QaoaIterate> trace;     // every objective evaluation, in order
  double diag_min = 0.0;              // ground value of the cost diagonal
};

// Optimizes <H> over the ansatz parameters with Nelder-Mead restarts.
// Restart initial points are drawn uniformly from [0, 2*pi) from a generator
// seeded with config.seed, so prefixes agree across different restart counts.
QaoaResult run_qaoa(const PauliHamiltonian& h, const QaoaConfig& config);

}  // namespace quboasm
