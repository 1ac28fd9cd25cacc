#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "quboasm/ising.hpp"
#include "quboasm/qubo.hpp"

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(QUBOASM_FIXTURE_DIR) / name;
}

// Dense random QUBO with integer-over-4 coefficients so conversions stay
// exactly representable.
inline quboasm::QuboModel make_random_qubo(std::mt19937_64& rng, std::size_t n) {
  quboasm::QuboModel model;
  model.num_vars = n;
  model.q.assign(n * n, 0.0);
  model.labels.resize(n);
  std::uniform_int_distribution<int> coeff(-40, 40);
  for (std::size_t i = 0; i < n; ++i) {
    model.labels[i] = "x" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) {
      model.at(i, j) = coeff(rng) / 4.0;
    }
  }
  return model;
}

inline quboasm::IsingModel make_random_ising(std::mt19937_64& rng, std::size_t n) {
  quboasm::IsingModel model;
  model.num_spins = n;
  std::uniform_int_distribution<int> coeff(-40, 40);
  std::uniform_int_distribution<int> keep(0, 3);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep(rng) != 0) {
      const double v = coeff(rng) / 4.0;
      if (v != 0.0) model.h[static_cast<int>(i)] = v;
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      if (keep(rng) != 0) {
        const double v = coeff(rng) / 4.0;
        if (v != 0.0) model.j[{static_cast<int>(i), static_cast<int>(k)}] = v;
      }
    }
  }
  return model;
}
