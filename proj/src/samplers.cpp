#include "quboasm/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

// Dense symmetric view shared by both model kinds. Values v_i live in
// {0,1} (binary) or {-1,+1} (spin); the energy is
//   E(v) = sum_i linear_i v_i + sum_{i<j} coupling_ij v_i v_j.
struct QuadraticView {
  VarDomain domain = VarDomain::binary;
  std::size_t n = 0;
  std::vector<double> linear;    // n
  std::vector<double> coupling;  // n*n symmetric, zero diagonal

  static QuadraticView from(const QuboModel& m) {
    QuadraticView v;
    v.domain = VarDomain::binary;
    v.n = m.num_vars;
    v.linear.resize(v.n);
    v.coupling.assign(v.n * v.n, 0.0);
    for (std::size_t i = 0; i < v.n; ++i) {
      v.linear[i] = m.at(i, i);
      for (std::size_t j = i + 1; j < v.n; ++j) {
        const double c = m.at(i, j) + m.at(j, i);
        v.coupling[i * v.n + j] = c;
        v.coupling[j * v.n + i] = c;
      }
    }
    return v;
  }

  static QuadraticView from(const IsingModel& m) {
    QuadraticView v;
    v.domain = VarDomain::spin;
    v.n = m.num_spins;
    v.linear.assign(v.n, 0.0);
    v.coupling.assign(v.n * v.n, 0.0);
    for (const auto& [i, bias] : m.h) {
      if (i < 0 || static_cast<std::size_t>(i) >= v.n) {
        throw ValidationError("bias index out of range");
      }
      v.linear[i] = bias;
    }
    for (const auto& [key, c] : m.j) {
      const auto [i, j] = key;
      if (i < 0 || j <= i || static_cast<std::size_t>(j) >= v.n) {
        throw ValidationError("coupling index out of range");
      }
      v.coupling[static_cast<std::size_t>(i) * v.n + j] = c;
      v.coupling[static_cast<std::size_t>(j) * v.n + i] = c;
    }
    return v;
  }

  std::int8_t value_of_bit(bool bit) const {
    if (domain == VarDomain::binary) return bit ? 1 : 0;
    return bit ? 1 : -1;
  }

  double energy(const std::int8_t* v) const {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e += linear[i] * v[i];
      const double* row = coupling.data() + i * n;
      for (std::size_t j = i + 1; j < n; ++j) {
        e += row[j] * v[i] * v[j];
      }
    }
    return e;
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void check_cap(std::size_t n, std::size_t max_vars) {
  const std::size_t cap = std::min(max_vars, kExactSolverCap);
  if (n > cap) {
    throw BackendError("exact solver capped at " + std::to_string(cap) +
                       " variables; model has " + std::to_string(n));
  }
}

// Exhaustive enumeration. The variable set is split into a low and a high
// half; per high prefix a subset-sum table over the low half prices the cross
// couplings, so each state costs O(1) after O(2^(n/2)) setup per prefix.
SampleSet enumerate_states(const QuadraticView& view) {
  SampleSet out(view.domain, view.n);
  const std::size_t n = view.n;
  if (n == 0) {
    out.append({}, 0.0, 1);
    return out;
  }

  const std::size_t n_low = n / 2;
  const std::size_t n_high = n - n_low;
  const std::size_t dim_low = std::size_t{1} << n_low;
  const std::size_t dim_high = std::size_t{1} << n_high;
  const std::size_t dim = std::size_t{1} << n;

  std::vector<std::int8_t> values(n);
  const auto fill_values = [&](std::size_t bits, std::size_t offset, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      values[offset + k] = view.value_of_bit((bits >> k) & 1u);
    }
  };

  // Self energies of each half in isolation.
  std::vector<double> low_energy(dim_low, 0.0);
  std::fill(values.begin(), values.end(), view.value_of_bit(false));
  for (std::size_t b = 0; b < dim_low; ++b) {
    fill_values(b, 0, n_low);
    double e = 0.0;
    for (std::size_t i = 0; i < n_low; ++i) {
      e += view.linear[i] * values[i];
      const double* row = view.coupling.data() + i * n;
      for (std::size_t j = i + 1; j < n_low; ++j) e += row[j] * values[i] * values[j];
    }
    low_energy[b] = e;
  }
  std::vector<double> high_energy(dim_high, 0.0);
  for (std::size_t b = 0; b < dim_high; ++b) {
    fill_values(b, n_low, n_high);
    double e = 0.0;
    for (std::size_t i = n_low; i < n; ++i) {
      e += view.linear[i] * values[i];
      const double* row = view.coupling.data() + i * n;
      for (std::size_t j = i + 1; j < n; ++j) e += row[j] * values[i] * values[j];
    }
    high_energy[b] = e;
  }

  std::vector<double> energies(dim);
  std::vector<double> field(n_low);
  std::vector<double> cross(dim_low);
  for (std::size_t bh = 0; bh < dim_high; ++bh) {
    fill_values(bh, n_low, n_high);
    for (std::size_t i = 0; i < n_low; ++i) {
      const double* row = view.coupling.data() + i * n;
      double g = 0.0;
      for (std::size_t j = n_low; j < n; ++j) g += row[j] * values[j];
      field[i] = g;
    }
    if (view.domain == VarDomain::binary) {
      cross[0] = 0.0;
      for (std::size_t bl = 1; bl < dim_low; ++bl) {
        const std::size_t low_bit = bl & (~bl + 1);
        const auto k = static_cast<std::size_t>(std::countr_zero(bl));
        cross[bl] = cross[bl ^ low_bit] + field[k];
      }
    } else {
      double base = 0.0;
      for (std::size_t i = 0; i < n_low; ++i) base -= field[i];
      cross[0] = base;
      for (std::size_t bl = 1; bl < dim_low; ++bl) {
        const std::size_t low_bit = bl & (~bl + 1);
        const auto k = static_cast<std::size_t>(std::countr_zero(bl));
        cross[bl] = cross[bl ^ low_bit] + 2.0 * field[k];
      }
    }
    const double base = high_energy[bh];
    double* dst = energies.data() + (bh << n_low);
    for (std::size_t bl = 0; bl < dim_low; ++bl) {
      dst[bl] = low_energy[bl] + base + cross[bl];
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (energies[a] != energies[b]) return energies[a] < energies[b];
    return a < b;
  });

  out.reserve(dim);
  std::vector<std::int8_t> state(n);
  for (std::size_t rank = 0; rank < dim; ++rank) {
    const std::size_t b = order[rank];
    for (std::size_t k = 0; k < n; ++k) {
      state[k] = view.value_of_bit((b >> k) & 1u);
    }
    out.append(state, energies[b], 1);
  }
  return out;
}

AnnealSchedule schedule_from_coefficients(std::vector<double> magnitudes,
                                          std::uint64_t seed) {
  AnnealSchedule s;
  s.seed = seed;
  if (magnitudes.empty()) {
    s.beta_end = 1.0;
    return s;
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  const std::size_t m = magnitudes.size();
  const double median = m % 2 == 1
                            ? magnitudes[m / 2]
                            : 0.5 * (magnitudes[m / 2 - 1] + magnitudes[m / 2]);
  s.beta_end = 10.0 / median;
  if (s.beta_end <= s.beta_start) {
    s.beta_end = s.beta_start * 100.0;
  }
  return s;
}

SampleSet anneal(const QuadraticView& view, const AnnealSchedule& schedule) {
  schedule.validate();
  const std::size_t n = view.n;

  std::vector<double> betas(schedule.sweeps);
  if (schedule.sweeps == 1) {
    betas[0] = schedule.beta_end;
  } else {
    const double ratio = schedule.beta_end / schedule.beta_start;
    for (int k = 0; k < schedule.sweeps; ++k) {
      betas[k] = schedule.beta_start *
                 std::pow(ratio, static_cast<double>(k) /
                                     static_cast<double>(schedule.sweeps - 1));
    }
  }

  // Canonical aggregation: identical final states merge, counts sum.
  std::map<std::vector<std::int8_t>, std::pair<double, std::uint64_t>> merged;

  std::vector<std::int8_t> v(n);
  std::vector<double> field(n);
  for (int restart = 0; restart < schedule.reads; ++restart) {
    std::mt19937_64 rng(splitmix64(schedule.seed ^
                                   (0x9e3779b97f4a7c15ull * (restart + 1))));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = view.value_of_bit(rng() & 1u);
    }
    // Local fields: field_i = linear_i + sum_j coupling_ij v_j, so a flip of
    // variable i changes the energy by (v_new - v_old) * field_i.
    for (std::size_t i = 0; i < n; ++i) {
      double f = view.linear[i];
      const double* row = view.coupling.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) f += row[j] * v[j];
      field[i] = f;
    }
    const bool binary = view.domain == VarDomain::binary;
    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double beta = betas[sweep];
      for (std::size_t i = 0; i < n; ++i) {
        const double dv = binary ? static_cast<double>(1 - 2 * v[i])
                                 : static_cast<double>(-2 * v[i]);
        const double delta = dv * field[i];
        if (delta > 0.0 && unit(rng) >= std::exp(-beta * delta)) continue;
        v[i] = static_cast<std::int8_t>(v[i] + dv);
        const double* row = view.coupling.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) field[j] += row[j] * dv;
        // `row[i]` is the zero diagonal, so field_i stays exact.
      }
    }
    const double energy = view.energy(v.data());
    auto [it, inserted] = merged.try_emplace(v, energy, std::uint64_t{1});
    if (!inserted) it->second.second += 1;
  }

  SampleSet out(view.domain, n);
  out.reserve(merged.size());
  for (const auto& [state, value] : merged) {
    out.append(state, value.first, value.second);
  }
  out.sort_by_energy();
  return out;
}

std::vector<double> nonzero_magnitudes(const QuboModel& m) {
  std::vector<double> out;
  for (double q : m.q) {
    if (q != 0.0) out.push_back(std::abs(q));
  }
  return out;
}

std::vector<double> nonzero_magnitudes(const IsingModel& m) {
  std::vector<double> out;
  for (const auto& [i, bias] : m.h) {
    if (bias != 0.0) out.push_back(std::abs(bias));
  }
  for (const auto& [key, c] : m.j) {
    if (c != 0.0) out.push_back(std::abs(c));
  }
  return out;
}

}  // namespace

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw ValidationError("anneal schedule needs sweeps >= 1");
  if (reads < 1) throw ValidationError("anneal schedule needs reads >= 1");
  if (!(beta_start > 0.0) || !(beta_end > 0.0) || !(beta_start < beta_end)) {
    throw ValidationError("anneal schedule needs 0 < beta_start < beta_end");
  }
}

AnnealSchedule default_schedule(const QuboModel& model, std::uint64_t seed) {
  return schedule_from_coefficients(nonzero_magnitudes(model), seed);
}

AnnealSchedule default_schedule(const IsingModel& model, std::uint64_t seed) {
  return schedule_from_coefficients(nonzero_magnitudes(model), seed);
}

SampleSet solve_exact(const QuboModel& model, std::size_t max_vars) {
  check_cap(model.num_vars, max_vars);
  return enumerate_states(QuadraticView::from(model));
}

SampleSet solve_exact(const IsingModel& model, std::size_t max_vars) {
  check_cap(model.num_spins, max_vars);
  return enumerate_states(QuadraticView::from(model));
}

SampleSet solve_sa(const QuboModel& model, const AnnealSchedule& schedule) {
  return anneal(QuadraticView::from(model), schedule);
}

SampleSet solve_sa(const IsingModel& model, const AnnealSchedule& schedule) {
  return anneal(QuadraticView::from(model), schedule);
}

}  // namespace quboasm
