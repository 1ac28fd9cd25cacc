#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quboasm/ising.hpp"
#include "quboasm/samples.hpp"

namespace quboasm {

// Chimera topology C(rows, cols, shore): a rows x cols grid of complete
// bipartite K_{shore,shore} cells. Qubit (i, j, u, k) with shore side
// u in {0, 1} and in-shore index k has linear id ((i*cols + j)*2 + u)*shore + k.
// Side-0 qubits link to the same position one row down, side-1 qubits to the
// same position one column right.
class ChimeraGraph {
 public:
  ChimeraGraph(int rows, int cols, int shore);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int shore() const { return shore_; }
  int num_qubits() const { return rows_ * cols_ * 2 * shore_; }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int q) const { return adjacency_[q]; }
  bool has_edge(int a, int b) const;

 private:
  int rows_, cols_, shore_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

ChimeraGraph chimera_graph(int rows, int cols, int shore);

// Minor embedding: each logical variable owns a chain of physical qubits.
struct Embedding {
  std::map<int, std::vector<int>> chains;  // variable -> sorted qubit list
};

struct EmbeddingReport {
  bool chains_well_formed = false;  // nonempty, in range, no stray variables
  bool disjoint = false;
  bool connected = false;
  bool couplings_covered = false;
  int max_chain_length = 0;
  std::size_t qubits_used = 0;
  std::vector<std::string> problems;

  bool pass() const {
    return chains_well_formed && disjoint && connected && couplings_covered;
  }
};

// Checks chain disjointness, per-chain connectivity, and that every logical
// coupling has at least one physical edge between the two chains.
EmbeddingReport verify_embedding(const ChimeraGraph& graph, const Embedding& embedding,
                                 std::span<const std::pair<int, int>> logical_couplings);

// Randomized greedy search: variables are placed in shuffled order and each
// new chain grows along shortest free paths toward the chains of its already
// placed neighbors; up to max_tries restarts with fresh orders. Returns
// nothing when every try fails (a normal outcome for tight graphs). Any
// returned embedding passes verify_embedding. num_vars < 0 means "infer from
// the largest variable index in the couplings".
std::optional<Embedding> find_embedding(std::span<const std::pair<int, int>> logical_couplings,
                                        const ChimeraGraph& graph, std::uint64_t seed,
                                        int max_tries, int num_vars = -1);

// Physical Ising model over the graph's qubits: each logical bias is split
// uniformly across its chain, each logical coupling is placed on the single
// lowest-index physical edge between the two chains, and every physical edge
// inside a chain receives -chain_strength.
IsingModel embed_ising(const IsingModel& logical, const Embedding& embedding,
                       const ChimeraGraph& graph, double chain_strength);

// 2 * max |J| of the logical model; 1.0 when the model has no couplings.
double default_chain_strength(const IsingModel& logical);

// Majority vote within each chain (ties break to +1); energies are
// recomputed under the logical model. Entries are mapped one to one.
SampleSet unembed_majority(const SampleSet& physical, const Embedding& embedding,
                           const IsingModel& logical);

}  // namespace quboasm
