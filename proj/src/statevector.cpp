#include "quboasm/statevector.hpp"

#include <cmath>
#include <string>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_qubit(int q, int num_qubits, const char* what) {
  if (q < 0 || q >= num_qubits) {
    throw ValidationError(std::string(what) + " qubit " + std::to_string(q) +
                          " outside register of size " + std::to_string(num_qubits));
  }
}

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw ValidationError("negative qubit count");
  if (num_qubits > kSimulatorQubitCap) {
    throw BackendError("statevector capped at " + std::to_string(kSimulatorQubitCap) +
                       " qubits; requested " + std::to_string(num_qubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

// Applies a 2x2 unitary to qubit q. For every basis index with bit q clear,
// i0 interleaves the remaining bits around position q and i1 = i0 with bit q
// set; the pair (amps[i0], amps[i1]) transforms by the matrix.
void Statevector::apply_1q(int q, std::complex<double> u00, std::complex<double> u01,
                           std::complex<double> u10, std::complex<double> u11) {
  check_qubit(q, num_qubits_, "gate");
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t lo = mask - 1;
  const std::size_t half = amps_.size() >> 1;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t i0 = ((i & ~lo) << 1) | (i & lo);
    const std::size_t i1 = i0 | mask;
    const std::complex<double> a0 = amps_[i0];
    const std::complex<double> a1 = amps_[i1];
    amps_[i0] = u00 * a0 + u01 * a1;
    amps_[i1] = u10 * a0 + u11 * a1;
  }
}

void Statevector::apply_h(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  apply_1q(q, {s, 0.0}, {s, 0.0}, {s, 0.0}, {-s, 0.0});
}

void Statevector::apply_rx(int q, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_1q(q, {c, 0.0}, -kI * s, -kI * s, {c, 0.0});
}

void Statevector::apply_rz(int q, double theta) {
  check_qubit(q, num_qubits_, "gate");
  // Diagonal, so applied in place without pairing.
  const std::complex<double> phase0 = std::exp(-kI * (theta / 2.0));
  const std::complex<double> phase1 = std::exp(kI * (theta / 2.0));
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] *= (i & mask) ? phase1 : phase0;
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control, num_qubits_, "control");
  check_qubit(target, num_qubits_, "target");
  if (control == target) throw ValidationError("cnot control equals target");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(amps_[i], amps_[i | tmask]);
    }
  }
}

void Statevector::apply(const Gate& gate) {
  if (!std::isfinite(gate.angle)) throw ValidationError("gate angle is not finite");
  switch (gate.kind) {
    case Gate::Kind::H:
      apply_h(gate.q0);
      return;
    case Gate::Kind::RX:
      apply_rx(gate.q0, gate.angle);
      return;
    case Gate::Kind::RZ:
      apply_rz(gate.q0, gate.angle);
      return;
    case Gate::Kind::CNOT:
      apply_cnot(gate.q0, gate.q1);
      return;
  }
  throw ValidationError("unknown gate kind");
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

Statevector simulate(const GateList& gates, int num_qubits) {
  Statevector psi(num_qubits);
  for (const Gate& gate : gates) {
    psi.apply(gate);
  }
  return psi;
}

}  // namespace quboasm
