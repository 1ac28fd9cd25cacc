#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "quboasm/pipeline.hpp"

namespace {

void add_out_option(CLI::App* cmd, std::filesystem::path& out_dir) {
  cmd->add_option("-o,--out", out_dir, "output directory")
      ->envname("QUBOASM_OUTDIR")
      ->capture_default_str();
}

void add_sa_options(CLI::App* cmd, quboasm::SaSettings& sa) {
  cmd->add_option("--sa-sweeps", sa.sweeps, "annealing sweeps per restart")
      ->capture_default_str();
  cmd->add_option("--sa-reads", sa.reads, "independent annealing restarts")
      ->capture_default_str();
  cmd->add_option("--beta-start", sa.beta_start, "initial inverse temperature")
      ->capture_default_str();
  cmd->add_option("--beta-end", sa.beta_end,
                  "final inverse temperature (<= 0 derives it from the model)")
      ->capture_default_str();
}

void add_qaoa_options(CLI::App* cmd, quboasm::QaoaSettings& qaoa) {
  cmd->add_option("--layers", qaoa.layers, "ansatz depth p")->capture_default_str();
  cmd->add_option("--restarts", qaoa.restarts, "optimizer restarts")
      ->capture_default_str();
  cmd->add_option("--max-iterations", qaoa.max_iterations,
                  "simplex iterations per restart")
      ->capture_default_str();
  cmd->add_option("--tolerance", qaoa.tolerance, "simplex convergence tolerance")
      ->capture_default_str();
  cmd->add_option("-w,--constraint-weight", qaoa.w,
                  "constraint scale of the cost Hamiltonian")
      ->capture_default_str();
  cmd->add_option("--top-k", qaoa.top_k, "basis states kept in the report")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reference-free read assembly via QUBO, Ising and QAOA backends"};
  app.require_subcommand(1);

  const std::map<std::string, quboasm::Backend> backends{
      {"exact", quboasm::Backend::exact},
      {"sa", quboasm::Backend::sa},
      {"qaoa", quboasm::Backend::qaoa}};
  const std::map<std::string, quboasm::Backend> solve_backends{
      {"exact", quboasm::Backend::exact}, {"sa", quboasm::Backend::sa}};
  const std::map<std::string, quboasm::WeightScale> scales{
      {"raw", quboasm::WeightScale::raw},
      {"normalized", quboasm::WeightScale::normalized}};
  const std::map<std::string, quboasm::ModelKind> kinds{
      {"qubo", quboasm::ModelKind::qubo}, {"ising", quboasm::ModelKind::ising}};

  quboasm::PipelineConfig assemble_cfg;
  CLI::App* assemble =
      app.add_subcommand("assemble", "assemble reads end to end via a tour QUBO");
  assemble->add_option("input", assemble_cfg.input, "reads file, one sequence per line")
      ->required();
  add_out_option(assemble, assemble_cfg.out_dir);
  assemble->add_option("--max-mismatch", assemble_cfg.max_mismatch,
                       "mismatches tolerated inside an overlap")
      ->capture_default_str();
  assemble->add_option("--reward-a", assemble_cfg.penalties.reward_a,
                       "diagonal reward (<= 0)")
      ->capture_default_str();
  assemble->add_option("--penalty-b", assemble_cfg.penalties.multi_location_b,
                       "penalty for a node in several slots")
      ->capture_default_str();
  assemble->add_option("--penalty-c", assemble_cfg.penalties.repetition_c,
                       "penalty for a slot holding several nodes")
      ->capture_default_str();
  assemble->add_option("--scale", assemble_cfg.scale, "overlap weight scale")
      ->transform(CLI::CheckedTransformer(scales, CLI::ignore_case))
      ->default_str("raw");
  assemble->add_option("--backend", assemble_cfg.backend, "solver backend")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case))
      ->default_str("exact");
  assemble->add_option("--seed", assemble_cfg.seed, "seed for stochastic backends")
      ->capture_default_str();
  assemble->add_option("--exact-cap", assemble_cfg.exact_cap,
                       "variable limit for the exact backend")
      ->capture_default_str();
  add_sa_options(assemble, assemble_cfg.sa);
  add_qaoa_options(assemble, assemble_cfg.qaoa);
  assemble->set_config("--config");

  quboasm::SolveConfig solve_cfg;
  CLI::App* solve = app.add_subcommand("solve-qubo", "solve a .qubo coefficient file");
  solve->add_option("input", solve_cfg.input, ".qubo file")->required();
  add_out_option(solve, solve_cfg.out_dir);
  solve->add_option("--as", solve_cfg.kind,
                    "interpret coefficients as a QUBO matrix or as Ising h/J")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case))
      ->default_str("qubo");
  solve->add_option("--backend", solve_cfg.backend, "solver backend")
      ->transform(CLI::CheckedTransformer(solve_backends, CLI::ignore_case))
      ->default_str("exact");
  solve->add_option("--seed", solve_cfg.seed, "seed for the sa backend")
      ->capture_default_str();
  solve->add_option("--exact-cap", solve_cfg.exact_cap,
                    "variable limit for the exact backend")
      ->capture_default_str();
  add_sa_options(solve, solve_cfg.sa);
  solve->set_config("--config");

  quboasm::EmbedConfig embed_cfg;
  CLI::App* embed =
      app.add_subcommand("embed", "embed an Ising model into a chimera graph");
  embed->add_option("input", embed_cfg.input, "ising model json")->required();
  add_out_option(embed, embed_cfg.out_dir);
  embed->add_option("--rows", embed_cfg.rows, "cell rows")->capture_default_str();
  embed->add_option("--cols", embed_cfg.cols, "cell columns")->capture_default_str();
  embed->add_option("--shore", embed_cfg.shore, "qubits per cell side")
      ->capture_default_str();
  embed->add_option("--seed", embed_cfg.seed, "placement seed")->capture_default_str();
  embed->add_option("--max-tries", embed_cfg.max_tries, "restart budget")
      ->capture_default_str();
  embed->set_config("--config");

  quboasm::QaoaPipelineConfig qaoa_cfg;
  CLI::App* qaoa =
      app.add_subcommand("qaoa", "variational tour search on a statevector simulator");
  qaoa->add_option("input", qaoa_cfg.input, "reads file, one sequence per line")
      ->required();
  add_out_option(qaoa, qaoa_cfg.out_dir);
  qaoa->add_option("--max-mismatch", qaoa_cfg.max_mismatch,
                   "mismatches tolerated inside an overlap")
      ->capture_default_str();
  qaoa->add_option("--scale", qaoa_cfg.scale, "overlap weight scale")
      ->transform(CLI::CheckedTransformer(scales, CLI::ignore_case))
      ->default_str("normalized");
  qaoa->add_option("--seed", qaoa_cfg.seed, "restart initialization seed")
      ->capture_default_str();
  add_qaoa_options(qaoa, qaoa_cfg.qaoa);
  qaoa->set_config("--config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (assemble->parsed()) {
    return quboasm::run_with_exit_code([&] { quboasm::run_assemble(assemble_cfg); },
                                       std::cerr);
  }
  if (solve->parsed()) {
    return quboasm::run_with_exit_code([&] { quboasm::run_solve(solve_cfg); }, std::cerr);
  }
  if (embed->parsed()) {
    return quboasm::run_with_exit_code([&] { quboasm::run_embed(embed_cfg); }, std::cerr);
  }
  if (qaoa->parsed()) {
    return quboasm::run_with_exit_code([&] { quboasm::run_qaoa_pipeline(qaoa_cfg); },
                                       std::cerr);
  }
  return 2;
}
