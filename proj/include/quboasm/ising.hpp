#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "quboasm/qubo.hpp"

namespace quboasm {

// Sparse Ising model over spins s_i in {-1, +1} with energy
//   E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j
// plus a constant `offset` carried from the binary model so that
// E(s) + offset equals the original QUBO energy. Zero-valued entries are
// never stored; J keys are strictly upper triangular.
struct IsingModel {
  std::size_t num_spins = 0;
  std::map<int, double> h;
  std::map<std::pair<int, int>, double> j;
  double offset = 0.0;

  double bias(int i) const;
  double coupling(int i, int k) const;  // order-insensitive lookup
};

// Exact change of variables x = (s + 1) / 2. For every state,
// ising_energy(result, s) + result.offset == qubo_energy(model, x).
IsingModel qubo_to_ising(const QuboModel& model);

// Reinterprets stored coefficients directly as Ising terms: diagonal cells
// become biases, upper-triangular cells become couplings, offset 0. This is
// how solver files carrying h/J values in the q-matrix layout are consumed.
IsingModel ising_from_qubo_coefficients(const QuboModel& model);

// sum h_i s_i + sum_{i<j} J_ij s_i s_j; the offset is not included.
double ising_energy(const IsingModel& model, std::span<const std::int8_t> s);

}  // namespace quboasm
