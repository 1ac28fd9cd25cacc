#include "quboasm/ising.hpp"

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

void prune_zeros(IsingModel& m) {
  for (auto it = m.h.begin(); it != m.h.end();) {
    it = it->second == 0.0 ? m.h.erase(it) : std::next(it);
  }
  for (auto it = m.j.begin(); it != m.j.end();) {
    it = it->second == 0.0 ? m.j.erase(it) : std::next(it);
  }
}

}  // namespace

double IsingModel::bias(int i) const {
  const auto it = h.find(i);
  return it == h.end() ? 0.0 : it->second;
}

double IsingModel::coupling(int i, int k) const {
  const auto key = i < k ? std::pair{i, k} : std::pair{k, i};
  const auto it = j.find(key);
  return it == j.end() ? 0.0 : it->second;
}

IsingModel qubo_to_ising(const QuboModel& model) {
  IsingModel out;
  out.num_spins = model.num_vars;
  const std::size_t n = model.num_vars;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = model.at(i, i);
    if (d != 0.0) {
      out.h[static_cast<int>(i)] += d / 2.0;
      out.offset += d / 2.0;
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      const double q = model.at(i, k) + model.at(k, i);
      if (q == 0.0) continue;
      out.j[{static_cast<int>(i), static_cast<int>(k)}] += q / 4.0;
      out.h[static_cast<int>(i)] += q / 4.0;
      out.h[static_cast<int>(k)] += q / 4.0;
      out.offset += q / 4.0;
    }
  }
  prune_zeros(out);
  return out;
}

IsingModel ising_from_qubo_coefficients(const QuboModel& model) {
  IsingModel out;
  out.num_spins = model.num_vars;
  const std::size_t n = model.num_vars;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = model.at(i, i);
    if (d != 0.0) out.h[static_cast<int>(i)] = d;
    for (std::size_t k = i + 1; k < n; ++k) {
      const double v = model.at(i, k) + model.at(k, i);
      if (v != 0.0) out.j[{static_cast<int>(i), static_cast<int>(k)}] = v;
    }
  }
  return out;
}

double ising_energy(const IsingModel& model, std::span<const std::int8_t> s) {
  if (s.size() != model.num_spins) {
    throw ValidationError("spin state length does not match the model");
  }
  for (std::int8_t v : s) {
    if (v != -1 && v != 1) {
      throw ValidationError("spin state entries must be -1 or +1");
    }
  }
  double energy = 0.0;
  for (const auto& [i, bias] : model.h) {
    energy += bias * s[i];
  }
  for (const auto& [key, coupling] : model.j) {
    energy += coupling * s[key.first] * s[key.second];
  }
  return energy;
}

}  // namespace quboasm
