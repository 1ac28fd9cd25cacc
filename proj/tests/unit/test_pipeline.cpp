#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "quboasm/errors.hpp"
#include "quboasm/pipeline.hpp"
#include "quboasm/qubo.hpp"
#include "quboasm/samplers.hpp"
#include "quboasm/serialize.hpp"
#include "test_util.hpp"

using namespace quboasm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("assemble writes the full artifact set and finds the optima") {
  const fs::path dir = fresh_dir("quboasm_pipeline_assemble");
  PipelineConfig config;
  config.input = fixture_path("denovo_reads.txt");
  config.out_dir = dir;
  config.backend = Backend::exact;
  run_assemble(config);

  for (const char* name : {"overlap.csv", "model.qubo", "model.json", "ising.json",
                           "samples.csv", "histogram.json", "report.json",
                           "run_meta.json"}) {
    CHECK(fs::exists(dir / name));
  }

  const Json report = read_json_file(dir / "report.json");
  CHECK(report["results"]["min_energy"] == -30.0);
  REQUIRE(report["results"]["optima"].size() == 4);
  std::multiset<std::size_t> lengths;
  std::set<int> starts;
  for (const auto& entry : report["results"]["optima"]) {
    CHECK(entry["classification"] == "valid tour");
    CHECK(entry["energy"] == -30.0);
    lengths.insert(entry["sequence"].get<std::string>().size());
    starts.insert(entry["tour"][0].get<int>());
  }
  // The optima are the four rotations of one cycle. The rotation whose linear
  // spelling drops the heaviest edge is the longest; the others reuse it.
  CHECK(lengths == std::multiset<std::size_t>{17, 17, 17, 19});
  CHECK(starts == std::set<int>{0, 1, 2, 3});
  CHECK(report["model"]["num_vars"] == 16);
  CHECK(report["config"]["backend"] == "exact");

  const std::string overlap = slurp(dir / "overlap.csv");
  CHECK(overlap == "0,7,4,1\n3,0,7,4\n6,3,0,7\n9,6,3,0\n");

  fs::remove_all(dir);
}

TEST_CASE("report bytes are deterministic; only run_meta differs") {
  const fs::path dir_a = fresh_dir("quboasm_pipeline_det_a");
  const fs::path dir_b = fresh_dir("quboasm_pipeline_det_b");
  PipelineConfig config;
  config.input = fixture_path("denovo_reads.txt");
  config.backend = Backend::sa;
  config.seed = 3;
  config.sa.sweeps = 50;
  config.sa.reads = 40;

  config.out_dir = dir_a;
  run_assemble(config);
  config.out_dir = dir_b;
  run_assemble(config);

  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
  CHECK(slurp(dir_a / "samples.csv") == slurp(dir_b / "samples.csv"));
  CHECK(slurp(dir_a / "model.qubo") == slurp(dir_b / "model.qubo"));

  const Json report = read_json_file(dir_a / "report.json");
  CHECK(report["schedule"]["sweeps"] == 50);
  CHECK(report["schedule"]["reads"] == 40);
  CHECK(report["config"]["seed"] == 3);

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("samples.csv energies re-evaluate under the written model") {
  const fs::path dir = fresh_dir("quboasm_pipeline_crosscheck");
  PipelineConfig config;
  config.input = fixture_path("denovo_reads.txt");
  config.out_dir = dir;
  config.backend = Backend::sa;
  config.seed = 12;
  config.sa.sweeps = 60;
  config.sa.reads = 25;
  run_assemble(config);

  const QuboModel model = read_qubo_file(dir / "model.qubo");
  std::ifstream in(dir / "samples.csv");
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "state,energy,count");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    REQUIRE(c1 != std::string::npos);
    REQUIRE(c2 != std::string::npos);
    const std::string state = line.substr(0, c1);
    const double energy = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    REQUIRE(state.size() == 16);
    std::vector<std::int8_t> x(16);
    for (int k = 0; k < 16; ++k) x[k] = state[k] == '1' ? 1 : 0;
    CHECK(qubo_energy(model, x) == doctest::Approx(energy).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows >= 1);
  fs::remove_all(dir);
}

TEST_CASE("normalized scale divides the model through by the frobenius norm") {
  const fs::path dir = fresh_dir("quboasm_pipeline_norm");
  PipelineConfig config;
  config.input = fixture_path("denovo_reads.txt");
  config.out_dir = dir;
  config.scale = WeightScale::normalized;
  config.penalties.multi_location_b = 1.0;
  config.penalties.repetition_c = 1.0;
  run_assemble(config);
  const Json report = read_json_file(dir / "report.json");
  const double expected = -30.0 / std::sqrt(360.0);
  CHECK(report["results"]["min_energy"].get<double>() ==
        doctest::Approx(expected).epsilon(1e-12));
  fs::remove_all(dir);
}

TEST_CASE("solve-qubo reproduces the 3-spin table from the fixture") {
  const fs::path dir = fresh_dir("quboasm_pipeline_solve");
  SolveConfig config;
  config.input = fixture_path("H_example.qubo");
  config.out_dir = dir;
  config.kind = ModelKind::ising;
  config.backend = Backend::exact;
  run_solve(config);

  const std::string csv = slurp(dir / "samples.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "state,energy,count");
  const std::vector<std::pair<std::string, double>> expected = {
      {"111", -1000.6}, {"110", -1000.4}, {"000", -999.6}, {"001", -999.4},
      {"100", 999.4},   {"101", 999.6},   {"011", 1000.4}, {"010", 1000.6}};
  for (const auto& [state, energy] : expected) {
    REQUIRE(std::getline(in, line));
    CHECK(line.substr(0, 3) == state);
    const auto c1 = line.find(',');
    const double got = std::stod(line.substr(c1 + 1));
    CHECK(got == doctest::Approx(energy).epsilon(1e-12));
  }
  CHECK_FALSE(std::getline(in, line));

  const Json report = read_json_file(dir / "report.json");
  CHECK(report["results"]["min_energy"].get<double>() ==
        doctest::Approx(-1000.6).epsilon(1e-12));
  fs::remove_all(dir);
}

TEST_CASE("solving an empty model produces an empty sample set") {
  const fs::path dir = fresh_dir("quboasm_pipeline_empty");
  const fs::path input = dir / "empty.qubo";
  fs::create_directories(dir);
  {
    std::ofstream out(input);
    out << "p qubo 0 0 0 0\n";
  }
  SolveConfig config;
  config.input = input;
  config.out_dir = dir / "out";
  run_solve(config);
  const Json report = read_json_file(config.out_dir / "report.json");
  CHECK(report["results"]["num_entries"] == 0);
  fs::remove_all(dir);
}

TEST_CASE("solve-qubo rejects the qaoa backend before doing any work") {
  SolveConfig config;
  config.input = fixture_path("H_example.qubo");
  config.out_dir = fresh_dir("quboasm_pipeline_reject");
  config.backend = Backend::qaoa;
  CHECK_THROWS_AS(run_solve(config), ValidationError);
  CHECK_FALSE(fs::exists(config.out_dir));
}

TEST_CASE("embed writes a verified embedding for a small model") {
  const fs::path dir = fresh_dir("quboasm_pipeline_embed");
  fs::create_directories(dir);
  IsingModel logical;
  logical.num_spins = 3;
  logical.h[0] = -0.5;
  logical.j[{0, 1}] = -1000.0;
  logical.j[{1, 2}] = -0.1;
  write_json_file(ising_to_json(logical), dir / "ising.json");

  EmbedConfig config;
  config.input = dir / "ising.json";
  config.out_dir = dir / "out";
  config.rows = 2;
  config.cols = 2;
  config.shore = 2;
  config.max_tries = 64;
  run_embed(config);

  const Embedding e = read_embedding_json_file(config.out_dir / "embedding.json");
  CHECK(e.chains.size() == 3);
  const Json report = read_json_file(config.out_dir / "report.json");
  CHECK(report["embedding"]["pass"] == true);
  CHECK(report["embedding"]["num_chains"] == 3);
  CHECK(report["embedding"]["max_chain_length"].get<int>() >= 1);
  CHECK(report["graph"]["num_qubits"] == 16);
  CHECK(fs::exists(config.out_dir / "run_meta.json"));
  fs::remove_all(dir);
}

TEST_CASE("the qaoa pipeline runs end to end on a two-read input") {
  const fs::path dir = fresh_dir("quboasm_pipeline_qaoa");
  fs::create_directories(dir);
  const fs::path input = dir / "reads.txt";
  {
    std::ofstream out(input);
    out << "ATGGCGTGCA\nGCGTGCAATG\n";
  }
  QaoaPipelineConfig config;
  config.input = input;
  config.out_dir = dir / "out";
  config.seed = 2;
  config.qaoa.layers = 1;
  config.qaoa.restarts = 2;
  config.qaoa.max_iterations = 40;
  config.qaoa.top_k = 8;
  run_qaoa_pipeline(config);

  for (const char* name : {"overlap.csv", "report.json", "qaoa_log.jsonl",
                           "run_meta.json"}) {
    CHECK(fs::exists(config.out_dir / name));
  }
  const Json report = read_json_file(config.out_dir / "report.json");
  CHECK(report["config"]["qaoa"]["layers"] == 1);
  CHECK(report["hamiltonian"]["num_qubits"] == 4);
  CHECK(report["top_states"].size() == 8);
  CHECK(report["qaoa"]["best_expectation"].get<double>() >=
        report["qaoa"]["diag_min"].get<double>() - 1e-9);
  // Probabilities are reported alongside a tour classification per state.
  for (const auto& entry : report["top_states"]) {
    CHECK(entry.contains("probability"));
    CHECK(entry.contains("classification"));
  }

  // Every line of the log is one self-contained json record.
  std::ifstream log(config.out_dir / "qaoa_log.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(log, line)) {
    const Json entry = Json::parse(line);
    CHECK(entry.contains("restart"));
    CHECK(entry.contains("params"));
    CHECK(entry.contains("expectation"));
    ++lines;
  }
  CHECK(lines >= 2);
  fs::remove_all(dir);
}

TEST_CASE("missing inputs and bad content map to the right exit codes") {
  std::ostringstream err;
  const int io = run_with_exit_code(
      [] { throw IoError("cannot open"); }, err);
  CHECK(io == 1);
  const int validation = run_with_exit_code(
      [] { throw ValidationError("bad value"); }, err);
  CHECK(validation == 2);
  const int backend = run_with_exit_code(
      [] { throw BackendError("cap exceeded"); }, err);
  CHECK(backend == 3);
  const int unexpected = run_with_exit_code(
      [] { throw std::runtime_error("surprise"); }, err);
  CHECK(unexpected == 3);
  const int ok = run_with_exit_code([] {}, err);
  CHECK(ok == 0);
  CHECK(err.str().find("error: cannot open") != std::string::npos);
  CHECK(err.str().find("unexpected error: surprise") != std::string::npos);

  // A real failing run: nonexistent input file.
  PipelineConfig config;
  config.input = "/nonexistent/reads.txt";
  config.out_dir = fresh_dir("quboasm_pipeline_missing");
  const int code = run_with_exit_code([&] { run_assemble(config); }, err);
  CHECK(code == 1);
}

TEST_CASE("an input with a single read is rejected") {
  const fs::path dir = fresh_dir("quboasm_pipeline_single");
  fs::create_directories(dir);
  const fs::path input = dir / "one.txt";
  {
    std::ofstream out(input);
    out << "ATGC\n";
  }
  PipelineConfig config;
  config.input = input;
  config.out_dir = dir / "out";
  CHECK_THROWS_AS(run_assemble(config), ValidationError);
  fs::remove_all(dir);
}
