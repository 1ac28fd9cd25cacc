#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "quboasm/qubo.hpp"
#include "quboasm/samplers.hpp"

namespace quboasm {

enum class Backend { exact, sa, qaoa };
enum class WeightScale { raw, normalized };
enum class ModelKind { qubo, ising };

struct SaSettings {
  int sweeps = 1000;
  int reads = 1000;
  double beta_start = 0.01;
  double beta_end = 0.0;  // <= 0: derive from the model's coefficients
};

struct QaoaSettings {
  int layers = 1;
  int restarts = 8;
  int max_iterations = 200;
  double tolerance = 1e-6;
  double w = 100000.0;
  int top_k = 16;
};

// End-to-end assembly run: reads -> overlap graph -> tour QUBO -> backend.
struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir = "out";
  int max_mismatch = 0;
  TspPenalties penalties;  // reward 0, multi-location 13, repetition 13
  WeightScale scale = WeightScale::raw;
  Backend backend = Backend::exact;
  std::uint64_t seed = 0;
  std::size_t exact_cap = kExactSolverCap;
  SaSettings sa;
  QaoaSettings qaoa;
};

// Standalone solve of a .qubo file, interpreted either as a QUBO matrix or
// directly as Ising coefficients.
struct SolveConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir = "out";
  ModelKind kind = ModelKind::qubo;
  Backend backend = Backend::exact;  // exact or sa
  std::uint64_t seed = 0;
  std::size_t exact_cap = kExactSolverCap;
  SaSettings sa;
};

struct EmbedConfig {
  std::filesystem::path input;  // ising.json
  std::filesystem::path out_dir = "out";
  int rows = 4;
  int cols = 4;
  int shore = 4;
  std::uint64_t seed = 0;
  int max_tries = 16;
};

struct QaoaPipelineConfig {
  std::filesystem::path input;  // reads file
  std::filesystem::path out_dir = "out";
  int max_mismatch = 0;
  WeightScale scale = WeightScale::normalized;
  std::uint64_t seed = 0;
  QaoaSettings qaoa;
};

// Each command writes its artifacts under out_dir and throws IoError /
// ValidationError / BackendError on failure. report.json depends only on the
// configuration and seed; wall-clock metadata goes to run_meta.json.
void run_assemble(const PipelineConfig& config);
void run_solve(const SolveConfig& config);
void run_embed(const EmbedConfig& config);
void run_qaoa_pipeline(const QaoaPipelineConfig& config);

// Runs `action`, mapping thrown errors to process exit codes:
// 0 success, 1 I/O, 2 validation, 3 backend (and unexpected failures).
int run_with_exit_code(const std::function<void()>& action, std::ostream& err);

}  // namespace quboasm
