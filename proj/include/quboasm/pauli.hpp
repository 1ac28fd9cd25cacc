#pragma once

#include <cstdint>
#include <vector>

#include "quboasm/reads.hpp"
#include "quboasm/statevector.hpp"

namespace quboasm {

// One weighted product of Pauli-Z operators.
struct PauliTerm {
  double coeff = 0.0;
  std::vector<int> support;  // sorted, distinct qubit indices
};

// Weighted sum of Z-products; diagonal in the computational basis. Its value
// on basis state b is sum_k coeff_k * prod_{q in support_k} (1 - 2*bit_q(b)).
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int num_qubits);

  int num_qubits() const { return num_qubits_; }

  // Coefficients of equal supports accumulate. Exact-zero coefficients are
  // not inserted, but a stored support whose sum cancels to zero is kept.
  void add(double coeff, std::vector<int> support);

  // Terms sorted by (support size, support indices).
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  double eval_basis(std::uint64_t basis) const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

// Tour cost Hamiltonian over n^2 qubits (qubit i*n + r: node i in slot r),
// assembled from four printed sums with constraint scale w and path weights
// d_ij = -overlap(i, j):
//   H1 = sum_q w Z_q
//   H2 = sum_r sum_{i>j} { -w/2 Z_{in+r} - w/2 Z_{jn+r} + w/2 Z_{in+r} Z_{jn+r} }
//   H3 = sum_i sum_{r>s} { -w/2 Z_{in+r} - w/2 Z_{in+s} + w/2 Z_{in+r} Z_{in+s} }
//   H4 = sum_{i != j} sum_r { -d_ij/4 Z_{in+r} - d_ij/4 Z_{jn+s}
//                             + d_ij/4 Z_{in+r} Z_{jn+s} },  s = (r+1) mod n
PauliHamiltonian build_cost_hamiltonian(const OverlapGraph& graph, double w);

// All 2^q diagonal values.
std::vector<double> hamiltonian_diagonal(const PauliHamiltonian& h);

// <psi| H |psi> computed exactly from the amplitudes.
double hamiltonian_expectation(const PauliHamiltonian& h, const Statevector& psi);

}  // namespace quboasm
