#include "quboasm/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quboasm/chimera.hpp"
#include "quboasm/errors.hpp"
#include "quboasm/ising.hpp"
#include "quboasm/pauli.hpp"
#include "quboasm/qaoa.hpp"
#include "quboasm/reads.hpp"
#include "quboasm/serialize.hpp"

namespace quboasm {

namespace {

constexpr std::size_t kReportListingCap = 32;

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::exact:
      return "exact";
    case Backend::sa:
      return "sa";
    case Backend::qaoa:
      return "qaoa";
  }
  return "?";
}

const char* scale_name(WeightScale scale) {
  return scale == WeightScale::raw ? "raw" : "normalized";
}

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed while writing " + path.string());
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Wall-clock data lives here so report.json stays reproducible.
class RunMeta {
 public:
  explicit RunMeta(std::string command) : command_(std::move(command)) {}

  void write(const std::filesystem::path& out_dir) const {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    Json meta;
    meta["command"] = command_;
    meta["timestamp_utc"] = utc_timestamp();
    meta["duration_seconds"] = elapsed.count();
    write_json_file(meta, out_dir / "run_meta.json");
  }

 private:
  std::string command_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename Model>
AnnealSchedule make_schedule(const Model& model, const SaSettings& settings,
                             std::uint64_t seed) {
  AnnealSchedule schedule = default_schedule(model, seed);
  schedule.sweeps = settings.sweeps;
  schedule.reads = settings.reads;
  schedule.beta_start = settings.beta_start;
  if (settings.beta_end > 0.0) {
    schedule.beta_end = settings.beta_end;
  } else if (schedule.beta_end <= schedule.beta_start) {
    schedule.beta_end = schedule.beta_start * 100.0;
  }
  schedule.validate();
  return schedule;
}

Json schedule_to_json(const AnnealSchedule& schedule) {
  Json j;
  j["sweeps"] = schedule.sweeps;
  j["reads"] = schedule.reads;
  j["beta_start"] = schedule.beta_start;
  j["beta_end"] = schedule.beta_end;
  j["seed"] = schedule.seed;
  return j;
}

std::string overlap_csv_text(const OverlapGraph& graph) {
  std::ostringstream out;
  write_overlap_csv(out, graph);
  return out.str();
}

std::string samples_csv_text(const SampleSet& samples) {
  std::ostringstream out;
  write_samples_csv(out, samples);
  return out.str();
}

// Report entry with tour decoding and, for valid tours, the stitched sequence.
Json decoded_entry(const QuboModel& model, const ReadSet& reads, const OverlapGraph& raw,
                   const SampleSet& samples, std::size_t idx) {
  Json e;
  e["state"] = samples.bitstring(idx);
  e["energy"] = samples.energy(idx);
  e["count"] = samples.count(idx);
  const TourDecoding decoding = decode_solution(model, samples.state(idx));
  e["valid_tour"] = decoding.valid;
  e["classification"] = decoding.describe();
  if (decoding.valid) {
    e["tour"] = decoding.tour;
    const Assembly assembly = assemble_sequence(reads, decoding.tour, raw);
    e["sequence"] = assembly.sequence;
    e["sequence_length"] = assembly.sequence.size();
    e["closing_overlap"] = assembly.closing_overlap;
  }
  return e;
}

Json plain_entry(const SampleSet& samples, std::size_t idx) {
  Json e;
  e["state"] = samples.bitstring(idx);
  e["energy"] = samples.energy(idx);
  e["count"] = samples.count(idx);
  return e;
}

std::string basis_bitstring(std::uint64_t basis, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((basis >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::vector<std::int8_t> basis_bits(std::uint64_t basis, int num_qubits) {
  std::vector<std::int8_t> x(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) {
    x[static_cast<std::size_t>(q)] = static_cast<std::int8_t>((basis >> q) & 1u);
  }
  return x;
}

Json qaoa_settings_json(const QaoaSettings& settings) {
  Json j;
  j["layers"] = settings.layers;
  j["restarts"] = settings.restarts;
  j["max_iterations"] = settings.max_iterations;
  j["tolerance"] = settings.tolerance;
  j["w"] = settings.w;
  j["top_k"] = settings.top_k;
  return j;
}

void write_qaoa_log(const QaoaResult& result, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const QaoaIterate& it : result.trace) {
    Json line;
    line["restart"] = it.restart;
    line["params"] = it.params;
    line["expectation"] = it.expectation;
    out << line.dump() << '\n';
  }
  write_text_file(out.str(), path);
}

Json qaoa_result_json(const QaoaResult& result) {
  Json j;
  j["best_restart"] = result.best_restart;
  j["best_params"] = result.best_params;
  j["best_expectation"] = result.best_expectation;
  j["diag_min"] = result.diag_min;
  j["evaluations"] = result.trace.size();
  return j;
}

}  // namespace

void run_assemble(const PipelineConfig& config) {
  RunMeta meta("assemble");
  if (config.max_mismatch < 0) throw ValidationError("max_mismatch cannot be negative");

  const ReadSet reads = load_reads_file(config.input);
  const OverlapGraph raw = raw_overlap_graph(reads, config.max_mismatch);
  const OverlapGraph graph =
      config.scale == WeightScale::normalized ? normalized_copy(raw) : raw;
  const QuboModel model = tsp_to_qubo(graph, config.penalties.reward_a,
                                      config.penalties.multi_location_b,
                                      config.penalties.repetition_c);
  const IsingModel ising = qubo_to_ising(model);

  ensure_out_dir(config.out_dir);
  write_text_file(overlap_csv_text(graph), config.out_dir / "overlap.csv");
  write_qubo_file(model, config.out_dir / "model.qubo");
  write_json_file(qubo_to_json(model), config.out_dir / "model.json");
  write_json_file(ising_to_json(ising), config.out_dir / "ising.json");

  Json report;
  report["command"] = "assemble";
  Json cfg;
  cfg["input"] = config.input.string();
  cfg["max_mismatch"] = config.max_mismatch;
  cfg["penalties"] = Json{{"reward_a", config.penalties.reward_a},
                          {"multi_location_b", config.penalties.multi_location_b},
                          {"repetition_c", config.penalties.repetition_c}};
  cfg["scale"] = scale_name(config.scale);
  cfg["backend"] = backend_name(config.backend);
  cfg["seed"] = config.seed;
  report["config"] = std::move(cfg);
  report["model"] = Json{{"num_reads", reads.size()},
                         {"num_vars", model.num_vars},
                         {"frobenius_norm", frobenius_norm(raw)}};

  SampleSet samples(VarDomain::binary, model.num_vars);
  switch (config.backend) {
    case Backend::exact: {
      samples = solve_exact(model, config.exact_cap);
      break;
    }
    case Backend::sa: {
      const AnnealSchedule schedule = make_schedule(model, config.sa, config.seed);
      report["schedule"] = schedule_to_json(schedule);
      samples = solve_sa(model, schedule);
      break;
    }
    case Backend::qaoa: {
      const PauliHamiltonian cost = build_cost_hamiltonian(graph, config.qaoa.w);
      QaoaConfig qc;
      qc.layers = config.qaoa.layers;
      qc.optimizer.max_iterations = config.qaoa.max_iterations;
      qc.optimizer.tolerance = config.qaoa.tolerance;
      qc.restarts = config.qaoa.restarts;
      qc.seed = config.seed;
      qc.top_k = config.qaoa.top_k;
      const QaoaResult result = run_qaoa(cost, qc);
      write_qaoa_log(result, config.out_dir / "qaoa_log.jsonl");
      report["config"]["qaoa"] = qaoa_settings_json(config.qaoa);
      report["qaoa"] = qaoa_result_json(result);
      for (const QaoaTopState& top : result.top_states) {
        const auto x = basis_bits(top.basis, cost.num_qubits());
        samples.append(x, qubo_energy(model, x), 1);
      }
      break;
    }
  }

  write_text_file(samples_csv_text(samples), config.out_dir / "samples.csv");
  write_json_file(histogram_to_json(energy_histogram(samples)),
                  config.out_dir / "histogram.json");

  Json results;
  results["num_entries"] = samples.size();
  if (!samples.empty()) {
    const double min_energy = samples.min_energy();
    results["min_energy"] = min_energy;
    Json optima = Json::array();
    for (std::size_t i = 0; i < samples.size() && optima.size() < kReportListingCap; ++i) {
      if (samples.energy(i) == min_energy) {
        optima.push_back(decoded_entry(model, reads, raw, samples, i));
      }
    }
    results["optima"] = std::move(optima);
    Json listing = Json::array();
    for (std::size_t i = 0; i < samples.size() && i < kReportListingCap; ++i) {
      listing.push_back(decoded_entry(model, reads, raw, samples, i));
    }
    results["listing"] = std::move(listing);
  }
  report["results"] = std::move(results);
  write_json_file(report, config.out_dir / "report.json");
  meta.write(config.out_dir);
}

void run_solve(const SolveConfig& config) {
  RunMeta meta("solve-qubo");
  if (config.backend == Backend::qaoa) {
    throw ValidationError("solve-qubo supports the exact and sa backends");
  }
  const QuboModel model = read_qubo_file(config.input);

  ensure_out_dir(config.out_dir);

  Json report;
  report["command"] = "solve-qubo";
  Json cfg;
  cfg["input"] = config.input.string();
  cfg["as"] = config.kind == ModelKind::qubo ? "qubo" : "ising";
  cfg["backend"] = backend_name(config.backend);
  cfg["seed"] = config.seed;
  report["config"] = std::move(cfg);
  report["model"] = Json{{"num_vars", model.num_vars}};

  SampleSet samples(config.kind == ModelKind::qubo ? VarDomain::binary : VarDomain::spin,
                    model.num_vars);
  if (model.num_vars > 0) {
    if (config.kind == ModelKind::qubo) {
      if (config.backend == Backend::exact) {
        samples = solve_exact(model, config.exact_cap);
      } else {
        const AnnealSchedule schedule = make_schedule(model, config.sa, config.seed);
        report["schedule"] = schedule_to_json(schedule);
        samples = solve_sa(model, schedule);
      }
    } else {
      const IsingModel ising = ising_from_qubo_coefficients(model);
      if (config.backend == Backend::exact) {
        samples = solve_exact(ising, config.exact_cap);
      } else {
        const AnnealSchedule schedule = make_schedule(ising, config.sa, config.seed);
        report["schedule"] = schedule_to_json(schedule);
        samples = solve_sa(ising, schedule);
      }
    }
  }

  write_text_file(samples_csv_text(samples), config.out_dir / "samples.csv");
  write_json_file(histogram_to_json(energy_histogram(samples)),
                  config.out_dir / "histogram.json");

  Json results;
  results["num_entries"] = samples.size();
  if (!samples.empty()) {
    results["min_energy"] = samples.min_energy();
    Json listing = Json::array();
    for (std::size_t i = 0; i < samples.size() && i < kReportListingCap; ++i) {
      listing.push_back(plain_entry(samples, i));
    }
    results["listing"] = std::move(listing);
  }
  report["results"] = std::move(results);
  write_json_file(report, config.out_dir / "report.json");
  meta.write(config.out_dir);
}

void run_embed(const EmbedConfig& config) {
  RunMeta meta("embed");
  const IsingModel logical = read_ising_json_file(config.input);
  const ChimeraGraph graph = chimera_graph(config.rows, config.cols, config.shore);

  std::vector<std::pair<int, int>> couplings;
  couplings.reserve(logical.j.size());
  for (const auto& [key, value] : logical.j) couplings.push_back(key);

  const auto embedding = find_embedding(couplings, graph, config.seed, config.max_tries,
                                        static_cast<int>(logical.num_spins));
  if (!embedding) {
    throw BackendError("no embedding found after " + std::to_string(config.max_tries) +
                       " tries");
  }
  const EmbeddingReport verification = verify_embedding(graph, *embedding, couplings);

  ensure_out_dir(config.out_dir);
  write_json_file(embedding_to_json(*embedding), config.out_dir / "embedding.json");

  Json report;
  report["command"] = "embed";
  Json cfg;
  cfg["input"] = config.input.string();
  cfg["rows"] = config.rows;
  cfg["cols"] = config.cols;
  cfg["shore"] = config.shore;
  cfg["seed"] = config.seed;
  cfg["max_tries"] = config.max_tries;
  report["config"] = std::move(cfg);
  report["graph"] = Json{{"num_qubits", graph.num_qubits()},
                         {"num_edges", graph.edges().size()}};
  Json emb;
  emb["num_chains"] = embedding->chains.size();
  emb["qubits_used"] = verification.qubits_used;
  emb["max_chain_length"] = verification.max_chain_length;
  emb["pass"] = verification.pass();
  emb["problems"] = verification.problems;
  report["embedding"] = std::move(emb);
  write_json_file(report, config.out_dir / "report.json");
  meta.write(config.out_dir);
}

void run_qaoa_pipeline(const QaoaPipelineConfig& config) {
  RunMeta meta("qaoa");
  if (config.max_mismatch < 0) throw ValidationError("max_mismatch cannot be negative");

  const ReadSet reads = load_reads_file(config.input);
  const OverlapGraph raw = raw_overlap_graph(reads, config.max_mismatch);
  const OverlapGraph graph =
      config.scale == WeightScale::normalized ? normalized_copy(raw) : raw;
  const PauliHamiltonian cost = build_cost_hamiltonian(graph, config.qaoa.w);

  QaoaConfig qc;
  qc.layers = config.qaoa.layers;
  qc.optimizer.max_iterations = config.qaoa.max_iterations;
  qc.optimizer.tolerance = config.qaoa.tolerance;
  qc.restarts = config.qaoa.restarts;
  qc.seed = config.seed;
  qc.top_k = config.qaoa.top_k;
  const QaoaResult result = run_qaoa(cost, qc);

  ensure_out_dir(config.out_dir);
  write_text_file(overlap_csv_text(graph), config.out_dir / "overlap.csv");
  write_qaoa_log(result, config.out_dir / "qaoa_log.jsonl");

  // A tour model over the same graph supplies the decoding of basis states.
  const QuboModel model = tsp_to_qubo(graph, 0.0, 1.0, 1.0);

  Json report;
  report["command"] = "qaoa";
  Json cfg;
  cfg["input"] = config.input.string();
  cfg["max_mismatch"] = config.max_mismatch;
  cfg["scale"] = scale_name(config.scale);
  cfg["seed"] = config.seed;
  cfg["qaoa"] = qaoa_settings_json(config.qaoa);
  report["config"] = std::move(cfg);
  report["hamiltonian"] = Json{{"num_qubits", cost.num_qubits()},
                               {"num_terms", cost.num_terms()},
                               {"w", config.qaoa.w}};
  report["qaoa"] = qaoa_result_json(result);

  Json top = Json::array();
  for (const QaoaTopState& state : result.top_states) {
    Json e;
    e["state"] = basis_bitstring(state.basis, cost.num_qubits());
    e["probability"] = state.probability;
    e["diag_energy"] = state.diag_energy;
    const auto x = basis_bits(state.basis, cost.num_qubits());
    const TourDecoding decoding = decode_solution(model, x);
    e["valid_tour"] = decoding.valid;
    e["classification"] = decoding.describe();
    if (decoding.valid) {
      e["tour"] = decoding.tour;
      const Assembly assembly = assemble_sequence(reads, decoding.tour, raw);
      e["sequence"] = assembly.sequence;
      e["sequence_length"] = assembly.sequence.size();
      e["closing_overlap"] = assembly.closing_overlap;
    }
    top.push_back(std::move(e));
  }
  report["top_states"] = std::move(top);
  write_json_file(report, config.out_dir / "report.json");
  meta.write(config.out_dir);
}

int run_with_exit_code(const std::function<void()>& action, std::ostream& err) {
  try {
    action();
    return 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BackendError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace quboasm
