#include "quboasm/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

// Order terms by support size, then lexicographically by indices.
bool support_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::uint64_t support_mask(const std::vector<int>& support) {
  std::uint64_t mask = 0;
  for (int q : support) mask |= std::uint64_t{1} << q;
  return mask;
}

}  // namespace

PauliHamiltonian::PauliHamiltonian(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 64) {
    throw ValidationError("qubit count must be between 0 and 64");
  }
}

void PauliHamiltonian::add(double coeff, std::vector<int> support) {
  if (!std::isfinite(coeff)) throw ValidationError("term coefficient is not finite");
  std::sort(support.begin(), support.end());
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k] < 0 || support[k] >= num_qubits_) {
      throw ValidationError("term touches qubit " + std::to_string(support[k]) +
                            " outside register of size " + std::to_string(num_qubits_));
    }
    if (k > 0 && support[k] == support[k - 1]) {
      throw ValidationError("term repeats qubit " + std::to_string(support[k]));
    }
  }
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), support,
      [](const PauliTerm& t, const std::vector<int>& s) { return support_less(t.support, s); });
  if (it != terms_.end() && it->support == support) {
    it->coeff += coeff;
    return;
  }
  if (coeff == 0.0) return;  // nothing to record
  terms_.insert(it, PauliTerm{coeff, std::move(support)});
}

double PauliHamiltonian::eval_basis(std::uint64_t basis) const {
  double value = 0.0;
  for (const PauliTerm& term : terms_) {
    const int parity = std::popcount(basis & support_mask(term.support)) & 1;
    value += parity ? -term.coeff : term.coeff;
  }
  return value;
}

PauliHamiltonian build_cost_hamiltonian(const OverlapGraph& graph, double w) {
  if (!std::isfinite(w)) throw ValidationError("constraint scale must be finite");
  const int n = static_cast<int>(graph.n);
  const long long q_count = static_cast<long long>(n) * n;
  if (q_count > 64) {
    throw BackendError("cost Hamiltonian needs " + std::to_string(q_count) +
                       " qubits; limit is 64");
  }
  PauliHamiltonian h(static_cast<int>(q_count));

  for (int q = 0; q < q_count; ++q) {
    h.add(w, {q});
  }
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        h.add(-w / 2.0, {i * n + r});
        h.add(-w / 2.0, {j * n + r});
        h.add(w / 2.0, {j * n + r, i * n + r});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < r; ++s) {
        h.add(-w / 2.0, {i * n + r});
        h.add(-w / 2.0, {i * n + s});
        h.add(w / 2.0, {i * n + s, i * n + r});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = -graph.weight(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      for (int r = 0; r < n; ++r) {
        const int s = (r + 1) % n;
        h.add(-d / 4.0, {i * n + r});
        h.add(-d / 4.0, {j * n + s});
        h.add(d / 4.0, {i * n + r, j * n + s});
      }
    }
  }
  return h;
}

std::vector<double> hamiltonian_diagonal(const PauliHamiltonian& h) {
  if (h.num_qubits() > kSimulatorQubitCap) {
    throw BackendError("diagonal of a " + std::to_string(h.num_qubits()) +
                       "-qubit Hamiltonian exceeds the " +
                       std::to_string(kSimulatorQubitCap) + "-qubit limit");
  }
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  std::vector<double> diag(dim, 0.0);
  for (const PauliTerm& term : h.terms()) {
    const std::uint64_t mask = support_mask(term.support);
    for (std::size_t b = 0; b < dim; ++b) {
      diag[b] += (std::popcount(b & mask) & 1) ? -term.coeff : term.coeff;
    }
  }
  return diag;
}

double hamiltonian_expectation(const PauliHamiltonian& h, const Statevector& psi) {
  if (psi.num_qubits() != h.num_qubits()) {
    throw ValidationError("state and Hamiltonian qubit counts differ");
  }
  double acc = 0.0;
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    const double p = psi.probability(b);
    if (p != 0.0) acc += p * h.eval_basis(b);
  }
  return acc;
}

}  // namespace quboasm
