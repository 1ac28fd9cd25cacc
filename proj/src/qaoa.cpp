#include "quboasm/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "quboasm/errors.hpp"

namespace quboasm {

GateList ParametricCircuit::bind(std::span<const double> params) const {
  GateList gates;
  gates.reserve(slots.size());
  for (const Slot& slot : slots) {
    Gate gate = slot.gate;
    if (slot.param >= 0) {
      if (static_cast<std::size_t>(slot.param) >= params.size()) {
        throw ValidationError("parameter vector too short for the circuit");
      }
      gate.angle = slot.scale * params[slot.param];
    }
    gates.push_back(gate);
  }
  return gates;
}

ParametricCircuit compile_ansatz(const PauliHamiltonian& h, int layers) {
  if (layers < 1) throw ValidationError("ansatz needs at least one layer");
  if (h.num_qubits() > kSimulatorQubitCap) {
    throw BackendError("ansatz over " + std::to_string(h.num_qubits()) +
                       " qubits exceeds the " + std::to_string(kSimulatorQubitCap) +
                       "-qubit simulator limit");
  }
  for (const PauliTerm& term : h.terms()) {
    if (term.support.size() > 2) {
      throw ValidationError("cost terms must touch at most two qubits");
    }
  }

  ParametricCircuit circuit;
  circuit.num_qubits = h.num_qubits();
  circuit.layers = layers;

  for (int q = 0; q < h.num_qubits(); ++q) {
    circuit.slots.push_back({Gate::h(q), -1, 1.0});
  }
  for (int layer = 0; layer < layers; ++layer) {
    const int gamma = layer;
    const int beta = layers + layer;
    for (const PauliTerm& term : h.terms()) {
      if (term.support.empty()) continue;  // constant shift, no gate
      if (term.support.size() == 1) {
        circuit.slots.push_back({Gate::rz(term.support[0], 0.0), gamma, -2.0 * term.coeff});
      } else {
        const int a = term.support[0];
        const int b = term.support[1];
        circuit.slots.push_back({Gate::cnot(a, b), -1, 1.0});
        circuit.slots.push_back({Gate::rz(b, 0.0), gamma, -2.0 * term.coeff});
        circuit.slots.push_back({Gate::cnot(a, b), -1, 1.0});
      }
    }
    for (int q = 0; q < h.num_qubits(); ++q) {
      circuit.slots.push_back({Gate::rx(q, 0.0), beta, 2.0});
    }
  }
  return circuit;
}

QaoaResult run_qaoa(const PauliHamiltonian& h, const QaoaConfig& config) {
  if (config.restarts < 1) throw ValidationError("qaoa needs restarts >= 1");
  if (config.top_k < 0) throw ValidationError("top_k cannot be negative");
  if (!config.initial_params.empty() &&
      config.initial_params.size() != static_cast<std::size_t>(2 * config.layers)) {
    throw ValidationError("initial parameter vector must hold 2*layers angles");
  }

  const ParametricCircuit circuit = compile_ansatz(h, config.layers);
  const std::vector<double> diag = hamiltonian_diagonal(h);

  QaoaResult result{.best_params = {},
                    .best_expectation = std::numeric_limits<double>::infinity(),
                    .best_restart = -1,
                    .state = Statevector(0),
                    .top_states = {},
                    .trace = {},
                    .diag_min = *std::min_element(diag.begin(), diag.end())};

  int current_restart = 0;
  const auto objective = [&](std::span<const double> params) {
    const Statevector psi = simulate(circuit.bind(params), circuit.num_qubits);
    double expectation = 0.0;
    for (std::size_t b = 0; b < diag.size(); ++b) {
      expectation += psi.probability(b) * diag[b];
    }
    result.trace.push_back(
        {current_restart, std::vector<double>(params.begin(), params.end()), expectation});
    return expectation;
  };

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const std::size_t dims = static_cast<std::size_t>(2 * config.layers);

  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> x0(dims);
    for (double& v : x0) v = angle(rng);
    if (r == 0 && !config.initial_params.empty()) {
      x0 = config.initial_params;
    }
    current_restart = r;

    std::vector<double> best_x;
    double best_f;
    if (config.optimizer.max_iterations <= 0) {
      best_x = x0;
      best_f = objective(best_x);
    } else {
      const NelderMeadResult nm = nelder_mead(objective, x0, config.optimizer);
      best_x = nm.x;
      best_f = nm.fx;
    }
    if (best_f < result.best_expectation) {
      result.best_expectation = best_f;
      result.best_params = best_x;
      result.best_restart = r;
    }
  }

  result.state = simulate(circuit.bind(result.best_params), circuit.num_qubits);

  std::vector<std::uint64_t> order(diag.size());
  for (std::size_t b = 0; b < order.size(); ++b) order[b] = b;
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    const double pa = result.state.probability(a);
    const double pb = result.state.probability(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  const std::size_t keep = std::min<std::size_t>(config.top_k, order.size());
  result.top_states.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const std::uint64_t b = order[k];
    result.top_states.push_back({b, result.state.probability(b), diag[b]});
  }
  return result;
}

}  // namespace quboasm
