#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace quboasm {

// Gate set used by the variational ansatz. Angle conventions:
//   RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2})
//   RX(theta) = exp(-i theta X / 2)
//   H         = Hadamard
//   CNOT      = controlled-X with control q0 and target q1
struct Gate {
  enum class Kind { H, RX, RZ, CNOT };

  Kind kind = Kind::H;
  int q0 = 0;          // target (H, RX, RZ) or control (CNOT)
  int q1 = -1;         // CNOT target
  double angle = 0.0;  // RX/RZ rotation angle

  static Gate h(int q) { return {Kind::H, q, -1, 0.0}; }
  static Gate rx(int q, double theta) { return {Kind::RX, q, -1, theta}; }
  static Gate rz(int q, double theta) { return {Kind::RZ, q, -1, theta}; }
  static Gate cnot(int control, int target) { return {Kind::CNOT, control, target, 0.0}; }
};

using GateList = std::vector<Gate>;

// Dense statevector over `num_qubits` qubits. Basis-index bit q holds the
// value of qubit q; qubit 0 is the least-significant bit.
class Statevector {
 public:
  explicit Statevector(int num_qubits);  // initialized to |0...0>

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::complex<double> amplitude(std::size_t basis) const { return amps_[basis]; }
  double probability(std::size_t basis) const { return std::norm(amps_[basis]); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }

  void apply(const Gate& gate);
  void apply_h(int q);
  void apply_rx(int q, double theta);
  void apply_rz(int q, double theta);
  void apply_cnot(int control, int target);

  double norm() const;  // 2-norm; unitarity keeps it at 1

 private:
  void apply_1q(int q, std::complex<double> u00, std::complex<double> u01,
                std::complex<double> u10, std::complex<double> u11);

  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

inline constexpr int kSimulatorQubitCap = 24;

// Applies the gates in order to |0...0>. num_qubits <= 24.
Statevector simulate(const GateList& gates, int num_qubits);

}  // namespace quboasm
