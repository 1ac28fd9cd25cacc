#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "quboasm/chimera.hpp"
#include "quboasm/errors.hpp"
#include "quboasm/ising.hpp"
#include "quboasm/qubo.hpp"
#include "quboasm/samplers.hpp"
#include "quboasm/serialize.hpp"
#include "test_util.hpp"

using namespace quboasm;

namespace {

using Couplings = std::vector<std::pair<int, int>>;

IsingModel three_spin_example() {
  IsingModel model;
  model.num_spins = 3;
  model.h[0] = -0.5;
  model.j[{0, 1}] = -1000.0;
  model.j[{1, 2}] = -0.1;
  return model;
}

// Set of minimum-energy states of an exhaustive solve, as bitstrings.
std::set<std::string> minimizers(const SampleSet& samples) {
  std::set<std::string> out;
  const double lo = samples.min_energy();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples.energy(i) <= lo + 1e-9) out.insert(samples.bitstring(i));
  }
  return out;
}

}  // namespace

TEST_CASE("cell and edge counts match the topology parameters") {
  const ChimeraGraph c114 = chimera_graph(1, 1, 4);
  CHECK(c114.num_qubits() == 8);
  CHECK(c114.edges().size() == 16);

  const ChimeraGraph c334 = chimera_graph(3, 3, 4);
  CHECK(c334.num_qubits() == 72);
  CHECK(c334.edges().size() == 192);

  const ChimeraGraph c214 = chimera_graph(2, 1, 4);
  CHECK(c214.num_qubits() == 16);
  CHECK(c214.edges().size() == 36);

  const ChimeraGraph c111 = chimera_graph(1, 1, 1);
  CHECK(c111.num_qubits() == 2);
  CHECK(c111.edges().size() == 1);

  CHECK_THROWS_AS(chimera_graph(0, 1, 1), ValidationError);
  CHECK_THROWS_AS(chimera_graph(1, -1, 1), ValidationError);
  CHECK_THROWS_AS(chimera_graph(1, 1, 0), ValidationError);
}

TEST_CASE("adjacency is symmetric and matches the edge list") {
  const ChimeraGraph g = chimera_graph(2, 2, 2);
  std::size_t degree_sum = 0;
  for (int q = 0; q < g.num_qubits(); ++q) {
    degree_sum += g.neighbors(q).size();
    for (int r : g.neighbors(q)) {
      CHECK(g.has_edge(q, r));
      CHECK(g.has_edge(r, q));
    }
  }
  CHECK(degree_sum == 2 * g.edges().size());
  CHECK_FALSE(g.has_edge(0, 0));

  // Cell-internal structure: side 0 and side 1 of a cell are fully linked,
  // sides are internally independent.
  const ChimeraGraph cell = chimera_graph(1, 1, 4);
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      CHECK(cell.has_edge(k, 4 + l));
    }
    for (int l = k + 1; l < 4; ++l) {
      CHECK_FALSE(cell.has_edge(k, l));
      CHECK_FALSE(cell.has_edge(4 + k, 4 + l));
    }
  }

}

TEST_CASE("inter-cell couplers follow rows for side 0 and columns for side 1") {
  const ChimeraGraph grid = chimera_graph(2, 2, 1);
  // id(i,j,u,0) = (i*2 + j)*2 + u
  CHECK(grid.has_edge(0, 4));       // (0,0,0) down to (1,0,0)
  CHECK(grid.has_edge(2, 6));       // (0,1,0) down to (1,1,0)
  CHECK(grid.has_edge(1, 3));       // (0,0,1) right to (0,1,1)
  CHECK(grid.has_edge(5, 7));       // (1,0,1) right to (1,1,1)
  CHECK_FALSE(grid.has_edge(1, 5)); // side 1 does not link rows
  CHECK_FALSE(grid.has_edge(0, 2)); // side 0 does not link columns
}

TEST_CASE("verify_embedding accepts a hand-built valid embedding") {
  const ChimeraGraph g = chimera_graph(1, 1, 2);  // K_{2,2}: 0,1 vs 2,3
  Embedding e;
  e.chains[0] = {0};
  e.chains[1] = {2};
  e.chains[2] = {1, 3};
  const Couplings couplings = {{0, 1}, {1, 2}, {0, 2}};
  const EmbeddingReport r = verify_embedding(g, e, couplings);
  CHECK(r.pass());
  CHECK(r.max_chain_length == 2);
  CHECK(r.qubits_used == 4);
  CHECK(r.problems.empty());
}

TEST_CASE("verify_embedding flags each defect class") {
  const ChimeraGraph g = chimera_graph(1, 1, 2);
  const Couplings couplings = {{0, 1}};

  Embedding shared;
  shared.chains[0] = {0, 2};
  shared.chains[1] = {2};
  CHECK_FALSE(verify_embedding(g, shared, couplings).disjoint);

  Embedding disconnected;
  disconnected.chains[0] = {0, 1};  // same side, no edge between them
  disconnected.chains[1] = {2};
  const EmbeddingReport dr = verify_embedding(g, disconnected, couplings);
  CHECK_FALSE(dr.connected);
  CHECK_FALSE(dr.pass());

  Embedding uncovered;
  uncovered.chains[0] = {0};
  uncovered.chains[1] = {1};  // 0 and 1 share a side: no physical edge
  CHECK_FALSE(verify_embedding(g, uncovered, couplings).couplings_covered);

  Embedding empty_chain;
  empty_chain.chains[0] = {0};
  empty_chain.chains[1] = {};
  CHECK_FALSE(verify_embedding(g, empty_chain, couplings).chains_well_formed);

  Embedding out_of_range;
  out_of_range.chains[0] = {0};
  out_of_range.chains[1] = {99};
  CHECK_FALSE(verify_embedding(g, out_of_range, couplings).chains_well_formed);

  Embedding missing;
  missing.chains[0] = {0};
  const EmbeddingReport mr = verify_embedding(g, missing, couplings);
  CHECK_FALSE(mr.couplings_covered);
  CHECK_FALSE(mr.problems.empty());
}

TEST_CASE("find_embedding handles the smallest graphs") {
  const ChimeraGraph c111 = chimera_graph(1, 1, 1);
  const Couplings k2 = {{0, 1}};
  const auto e = find_embedding(k2, c111, 0, 16);
  REQUIRE(e.has_value());
  CHECK(verify_embedding(c111, *e, k2).pass());
  CHECK(verify_embedding(c111, *e, k2).max_chain_length == 1);

  // A triangle cannot live in a single K_{2,2} cell without a chain.
  const ChimeraGraph c112 = chimera_graph(1, 1, 2);
  const Couplings k3 = {{0, 1}, {1, 2}, {0, 2}};
  const auto t = find_embedding(k3, c112, 1, 64);
  REQUIRE(t.has_value());
  const EmbeddingReport r = verify_embedding(c112, *t, k3);
  CHECK(r.pass());
  CHECK(r.max_chain_length >= 2);
}

TEST_CASE("find_embedding output always verifies") {
  const ChimeraGraph g = chimera_graph(2, 2, 2);
  std::mt19937_64 rng(77);
  int successes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 variables
    Couplings couplings;
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        if (rng() % 3 != 0) couplings.push_back({i, k});
      }
    }
    if (couplings.empty()) couplings.push_back({0, 1});
    const auto e = find_embedding(couplings, g, rng(), 48, n);
    if (!e) continue;  // failure is allowed; invalid success is not
    ++successes;
    const EmbeddingReport r = verify_embedding(g, *e, couplings);
    CHECK(r.pass());
    CHECK(e->chains.size() == static_cast<std::size_t>(n));
  }
  CHECK(successes > 30);
}

TEST_CASE("find_embedding validates its arguments") {
  const ChimeraGraph g = chimera_graph(1, 1, 2);
  const Couplings bad = {{0, 0}};
  CHECK_THROWS_AS(find_embedding(bad, g, 0, 4), ValidationError);
  const Couplings negative = {{-1, 1}};
  CHECK_THROWS_AS(find_embedding(negative, g, 0, 4), ValidationError);
  const Couplings ok = {{0, 1}};
  CHECK_THROWS_AS(find_embedding(ok, g, 0, 0), ValidationError);
}

TEST_CASE("embed_ising splits biases and picks one coupler edge") {
  const ChimeraGraph g = chimera_graph(1, 1, 4);
  IsingModel logical;
  logical.num_spins = 2;
  logical.h[0] = 1.0;
  logical.h[1] = -2.0;
  logical.j[{0, 1}] = 0.5;
  logical.offset = 3.25;

  Embedding e;
  e.chains[0] = {0, 4, 1, 5};  // a connected 4-cycle in the cell
  e.chains[1] = {3};

  const IsingModel phys = embed_ising(logical, e, g, 7.0);
  CHECK(phys.num_spins == static_cast<std::size_t>(g.num_qubits()));
  CHECK(phys.offset == 3.25);
  for (int q : e.chains[0]) CHECK(phys.bias(q) == doctest::Approx(0.25));
  CHECK(phys.bias(3) == doctest::Approx(-2.0));

  // The logical coupler goes on the lowest physical edge between the chains:
  // candidates are (0,3)? no edge (same side)... edges from chain 0 to {3}:
  // (4,3) and (5,3) are side crossings; (0,3) and (1,3) are not edges.
  // Wait: 0 and 3 are both side 0, 4 and 5 side 1. Chain qubit 0 links 4..7.
  CHECK(phys.coupling(3, 4) == doctest::Approx(0.5));
  CHECK(phys.coupling(3, 5) == 0.0);

  // Chain internal edges all carry -chain_strength.
  CHECK(phys.coupling(0, 4) == doctest::Approx(-7.0));
  CHECK(phys.coupling(0, 5) == doctest::Approx(-7.0));
  CHECK(phys.coupling(1, 4) == doctest::Approx(-7.0));
  CHECK(phys.coupling(1, 5) == doctest::Approx(-7.0));
}

TEST_CASE("embed_ising with singleton chains reproduces the logical model") {
  const ChimeraGraph g = chimera_graph(1, 1, 2);
  IsingModel logical;
  logical.num_spins = 2;
  logical.h[0] = 0.75;
  logical.h[1] = -0.25;
  logical.j[{0, 1}] = 1.5;
  Embedding e;
  e.chains[0] = {0};
  e.chains[1] = {2};
  const IsingModel phys = embed_ising(logical, e, g, 4.0);
  CHECK(phys.bias(0) == 0.75);
  CHECK(phys.bias(2) == -0.25);
  CHECK(phys.coupling(0, 2) == 1.5);
  CHECK(phys.j.size() == 1);  // no chain edges exist for singleton chains
}

TEST_CASE("embed_ising rejects broken embeddings") {
  const ChimeraGraph g = chimera_graph(1, 1, 2);
  IsingModel logical;
  logical.num_spins = 2;
  logical.j[{0, 1}] = 1.0;

  Embedding overlapping;
  overlapping.chains[0] = {0};
  overlapping.chains[1] = {0};
  CHECK_THROWS_AS(embed_ising(logical, overlapping, g, 1.0), ValidationError);

  Embedding uncovered;
  uncovered.chains[0] = {0};
  uncovered.chains[1] = {1};
  CHECK_THROWS_AS(embed_ising(logical, uncovered, g, 1.0), ValidationError);
}

TEST_CASE("default_chain_strength tracks the largest coupling") {
  IsingModel logical;
  logical.num_spins = 3;
  logical.h[0] = 50.0;
  logical.j[{0, 1}] = -3.0;
  logical.j[{1, 2}] = 2.0;
  CHECK(default_chain_strength(logical) == 6.0);
  IsingModel no_couplings;
  no_couplings.num_spins = 2;
  no_couplings.h[0] = 9.0;
  CHECK(default_chain_strength(no_couplings) == 1.0);
}

TEST_CASE("unembed_majority votes per chain and recomputes energies") {
  IsingModel logical;
  logical.num_spins = 2;
  logical.h[0] = 1.0;
  logical.j[{0, 1}] = -2.0;

  Embedding e;
  e.chains[0] = {0, 1, 2};
  e.chains[1] = {3, 4};

  SampleSet physical(VarDomain::spin, 5);
  // Chain 0 majority +1, chain 1 unanimous -1.
  const std::vector<std::int8_t> first = {+1, +1, -1, -1, -1};
  physical.append(first, 0.0, 3);
  // Chain 1 ties (+1, -1): the vote goes to +1.
  const std::vector<std::int8_t> second = {-1, -1, -1, +1, -1};
  physical.append(second, 0.0, 2);

  const SampleSet out = unembed_majority(physical, e, logical);
  REQUIRE(out.size() == 2);
  CHECK(out.num_vars() == 2);
  CHECK(out.domain() == VarDomain::spin);

  CHECK(out.state(0)[0] == 1);
  CHECK(out.state(0)[1] == -1);
  CHECK(out.energy(0) == doctest::Approx(1.0 + 2.0));
  CHECK(out.count(0) == 3);

  CHECK(out.state(1)[0] == -1);
  CHECK(out.state(1)[1] == 1);
  CHECK(out.energy(1) == doctest::Approx(1.0));  // -1 + (-2)(-1)(+1)
  CHECK(out.count(1) == 2);
}

TEST_CASE("embedded solve recovers the logical minimizers") {
  const IsingModel logical = three_spin_example();
  double budget = 0.0;
  for (const auto& [i, v] : logical.h) budget += std::abs(v);
  for (const auto& [ij, v] : logical.j) budget += std::abs(v);

  const ChimeraGraph g = chimera_graph(1, 1, 2);
  const Couplings couplings = {{0, 1}, {1, 2}};
  const auto e = find_embedding(couplings, g, 3, 64);
  REQUIRE(e.has_value());
  REQUIRE(verify_embedding(g, *e, couplings).pass());

  const IsingModel phys = embed_ising(logical, *e, g, budget);
  const SampleSet phys_exact = solve_exact(phys);
  const SampleSet unembedded = unembed_majority(phys_exact, *e, logical);
  const SampleSet logical_exact = solve_exact(logical);

  CHECK(minimizers(unembedded) == minimizers(logical_exact));
  CHECK(unembedded.min_energy() ==
        doctest::Approx(logical_exact.min_energy()).epsilon(1e-12));
}

TEST_CASE("the stored clique embedding covers the de novo model") {
  const ReadSet reads = ReadSet::from_strings(
      {"ATGGCGTGCA", "GCGTGCAATG", "TGCAATGGCG", "AATGGCGTGC"});
  const QuboModel model = tsp_to_qubo(raw_overlap_graph(reads, 0), 0.0, 13.0, 13.0);
  const IsingModel logical = qubo_to_ising(model);

  Couplings couplings;
  for (const auto& [ij, v] : logical.j) couplings.push_back(ij);

  const Embedding e = embedding_from_json(
      read_json_file(fixture_path("denovo_c884_embedding.json")));
  const ChimeraGraph g = chimera_graph(8, 8, 4);
  const EmbeddingReport r = verify_embedding(g, e, couplings);
  CHECK(r.pass());
  CHECK(r.max_chain_length == 5);
  CHECK(r.qubits_used == 80);
}
