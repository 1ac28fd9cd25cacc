#pragma once

#include <cstdint>

#include "quboasm/ising.hpp"
#include "quboasm/qubo.hpp"
#include "quboasm/samples.hpp"

namespace quboasm {

// Hard cap for exhaustive enumeration; configurable downward per call.
inline constexpr std::size_t kExactSolverCap = 24;

// Enumerates all 2^N states with exact energies, count 1 each, sorted by
// ascending energy (ties by state as unsigned integer). N = 0 yields the
// single empty state with energy 0.
SampleSet solve_exact(const QuboModel& model, std::size_t max_vars = kExactSolverCap);
SampleSet solve_exact(const IsingModel& model, std::size_t max_vars = kExactSolverCap);

// Single-flip Metropolis annealing schedule. beta runs from beta_start to
// beta_end along a geometric interpolation over `sweeps` full passes;
// `reads` independent restarts are aggregated. Deterministic given `seed`.
struct AnnealSchedule {
  int sweeps = 1000;
  double beta_start = 0.01;
  double beta_end = 1.0;
  int reads = 1000;
  std::uint64_t seed = 0;

  void validate() const;  // sweeps >= 1, reads >= 1, 0 < beta_start < beta_end
};

// Default schedule for a model: beta_end = 10 / median(nonzero |coefficient|),
// raised above beta_start when the coefficients are large, 1.0 for an empty
// coefficient set.
AnnealSchedule default_schedule(const QuboModel& model, std::uint64_t seed = 0);
AnnealSchedule default_schedule(const IsingModel& model, std::uint64_t seed = 0);

// Aggregated final states of `reads` restarts; identical states merged with
// summed counts, canonically sorted by (energy, state).
SampleSet solve_sa(const QuboModel& model, const AnnealSchedule& schedule);
SampleSet solve_sa(const IsingModel& model, const AnnealSchedule& schedule);

}  // namespace quboasm
