#include "quboasm/chimera.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

int cell_qubit(int cols, int shore, int i, int j, int u, int k) {
  return ((i * cols + j) * 2 + u) * shore + k;
}

}  // namespace

ChimeraGraph::ChimeraGraph(int rows, int cols, int shore)
    : rows_(rows), cols_(cols), shore_(shore) {
  if (rows < 1 || cols < 1 || shore < 1) {
    throw ValidationError("chimera dimensions must be positive");
  }
  adjacency_.resize(static_cast<std::size_t>(num_qubits()));
  const auto add_edge = [&](int a, int b) {
    edges_.emplace_back(a, b);
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int k0 = 0; k0 < shore; ++k0) {
        for (int k1 = 0; k1 < shore; ++k1) {
          add_edge(cell_qubit(cols, shore, i, j, 0, k0),
                   cell_qubit(cols, shore, i, j, 1, k1));
        }
      }
    }
  }
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < shore; ++k) {
        add_edge(cell_qubit(cols, shore, i, j, 0, k),
                 cell_qubit(cols, shore, i + 1, j, 0, k));
      }
    }
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      for (int k = 0; k < shore; ++k) {
        add_edge(cell_qubit(cols, shore, i, j, 1, k),
                 cell_qubit(cols, shore, i, j + 1, 1, k));
      }
    }
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
  for (auto& [a, b] : edges_) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool ChimeraGraph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= num_qubits() || b >= num_qubits() || a == b) {
    return false;
  }
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

ChimeraGraph chimera_graph(int rows, int cols, int shore) {
  return ChimeraGraph(rows, cols, shore);
}

EmbeddingReport verify_embedding(const ChimeraGraph& graph, const Embedding& embedding,
                                 std::span<const std::pair<int, int>> logical_couplings) {
  EmbeddingReport report;
  report.chains_well_formed = true;
  report.disjoint = true;
  report.connected = true;
  report.couplings_covered = true;

  std::unordered_map<int, int> owner;  // qubit -> variable
  for (const auto& [var, chain] : embedding.chains) {
    if (chain.empty()) {
      report.chains_well_formed = false;
      report.problems.push_back("variable " + std::to_string(var) + " has an empty chain");
      continue;
    }
    std::set<int> seen;
    for (int q : chain) {
      if (q < 0 || q >= graph.num_qubits()) {
        report.chains_well_formed = false;
        report.problems.push_back("variable " + std::to_string(var) + " uses qubit " +
                                  std::to_string(q) + " outside the graph");
        continue;
      }
      if (!seen.insert(q).second) {
        report.chains_well_formed = false;
        report.problems.push_back("variable " + std::to_string(var) +
                                  " lists qubit " + std::to_string(q) + " twice");
        continue;
      }
      auto [it, inserted] = owner.try_emplace(q, var);
      if (!inserted && it->second != var) {
        report.disjoint = false;
        report.problems.push_back("qubit " + std::to_string(q) + " shared by variables " +
                                  std::to_string(it->second) + " and " + std::to_string(var));
      }
    }
    report.max_chain_length =
        std::max(report.max_chain_length, static_cast<int>(chain.size()));

    // Flood fill restricted to the chain itself.
    if (!seen.empty()) {
      std::set<int> visited;
      std::vector<int> stack{*seen.begin()};
      visited.insert(*seen.begin());
      while (!stack.empty()) {
        const int q = stack.back();
        stack.pop_back();
        if (q < 0 || q >= graph.num_qubits()) continue;
        for (int nbr : graph.neighbors(q)) {
          if (seen.count(nbr) && visited.insert(nbr).second) {
            stack.push_back(nbr);
          }
        }
      }
      if (visited.size() != seen.size()) {
        report.connected = false;
        report.problems.push_back("chain of variable " + std::to_string(var) +
                                  " is not connected");
      }
    }
  }
  report.qubits_used = owner.size();

  for (const auto& [a, b] : logical_couplings) {
    const auto ca = embedding.chains.find(a);
    const auto cb = embedding.chains.find(b);
    if (a == b || ca == embedding.chains.end() || cb == embedding.chains.end()) {
      report.couplings_covered = false;
      report.problems.push_back("coupling (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") has no chains to connect");
      continue;
    }
    bool covered = false;
    for (int qa : ca->second) {
      for (int qb : cb->second) {
        if (graph.has_edge(qa, qb)) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) {
      report.couplings_covered = false;
      report.problems.push_back("coupling (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") has no physical edge");
    }
  }
  return report;
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// BFS from every qubit of `sources` through free qubits only. Source qubits
// get distance 0 and free qubits adjacent to them distance 1; parents point
// back toward the sources.
void bfs_from_chain(const ChimeraGraph& graph, const std::vector<int>& sources,
                    const std::vector<bool>& used, std::vector<int>& dist,
                    std::vector<int>& parent) {
  dist.assign(graph.num_qubits(), kUnreached);
  parent.assign(graph.num_qubits(), -1);
  std::queue<int> frontier;
  for (int q : sources) {
    dist[q] = 0;
    frontier.push(q);
  }
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int nbr : graph.neighbors(q)) {
      if (used[nbr] || dist[nbr] != kUnreached) continue;
      dist[nbr] = dist[q] + 1;
      parent[nbr] = q;
      frontier.push(nbr);
    }
  }
}

// Chain state shared by one placement attempt. Connection paths are split
// between the two chains they join, so chains placed early keep growing and
// logical degrees above the physical degree stay reachable.
struct ChainBuilder {
  const ChimeraGraph& graph;
  std::vector<bool> used;
  std::vector<std::set<int>> chains;

  ChainBuilder(const ChimeraGraph& g, int num_vars)
      : graph(g), used(g.num_qubits(), false), chains(num_vars) {}

  bool touching(int v, int u) const {
    for (int qa : chains[v]) {
      for (int nbr : graph.neighbors(qa)) {
        if (chains[u].count(nbr)) return true;
      }
    }
    return false;
  }

  // Grows chains v and u along a shortest path of free qubits; the half
  // nearer v joins chain v and the rest joins chain u.
  bool connect(int v, int u) {
    if (touching(v, u)) return true;

    std::vector<int> dist(graph.num_qubits(), kUnreached);
    std::vector<int> parent(graph.num_qubits(), -1);
    std::queue<int> frontier;
    for (int qa : chains[v]) {
      for (int nbr : graph.neighbors(qa)) {
        if (!used[nbr] && dist[nbr] == kUnreached) {
          dist[nbr] = 0;
          frontier.push(nbr);
        }
      }
    }
    int found = -1;
    while (!frontier.empty() && found < 0) {
      const int q = frontier.front();
      frontier.pop();
      for (int nbr : graph.neighbors(q)) {
        if (chains[u].count(nbr)) {
          found = q;
          break;
        }
        if (!used[nbr] && dist[nbr] == kUnreached) {
          dist[nbr] = dist[q] + 1;
          parent[nbr] = q;
          frontier.push(nbr);
        }
      }
    }
    if (found < 0) return false;

    std::vector<int> path;  // v side first
    for (int q = found; q >= 0; q = parent[q]) path.push_back(q);
    std::reverse(path.begin(), path.end());
    const std::size_t v_share = (path.size() + 1) / 2;
    for (std::size_t k = 0; k < path.size(); ++k) {
      chains[k < v_share ? v : u].insert(path[k]);
      used[path[k]] = true;
    }
    return true;
  }
};

std::optional<Embedding> try_embed(std::span<const std::pair<int, int>> couplings,
                                   const ChimeraGraph& graph, int num_vars,
                                   std::mt19937_64& rng) {
  std::vector<std::vector<int>> logical_adj(num_vars);
  for (const auto& [a, b] : couplings) {
    logical_adj[a].push_back(b);
    logical_adj[b].push_back(a);
  }
  for (auto& adj : logical_adj) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::vector<int> order(num_vars);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  ChainBuilder builder(graph, num_vars);
  std::vector<bool> placed(num_vars, false);

  std::vector<int> dist, parent;
  for (int v : order) {
    std::vector<int> neighbors;
    for (int u : logical_adj[v]) {
      if (placed[u]) neighbors.push_back(u);
    }

    if (neighbors.empty()) {
      std::vector<int> free;
      for (int q = 0; q < graph.num_qubits(); ++q) {
        if (!builder.used[q]) free.push_back(q);
      }
      if (free.empty()) return std::nullopt;
      const int q = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      builder.chains[v].insert(q);
      builder.used[q] = true;
      placed[v] = true;
      continue;
    }

    // Root: the free qubit with the smallest total distance to the placed
    // neighbor chains; neighbors out of reach from a given qubit cost a
    // whole-graph detour so mostly-reachable roots still win.
    const long long penalty = 4LL * graph.num_qubits();
    long long best_score = std::numeric_limits<long long>::max();
    int best_root = -1;
    std::vector<long long> score(graph.num_qubits(), 0);
    for (int u : neighbors) {
      std::vector<int> sources(builder.chains[u].begin(), builder.chains[u].end());
      bfs_from_chain(graph, sources, builder.used, dist, parent);
      for (int q = 0; q < graph.num_qubits(); ++q) {
        score[q] += dist[q] == kUnreached ? penalty : dist[q];
      }
    }
    for (int q = 0; q < graph.num_qubits(); ++q) {
      if (!builder.used[q] && score[q] < best_score) {
        best_score = score[q];
        best_root = q;
      }
    }
    if (best_root < 0) return std::nullopt;
    builder.chains[v].insert(best_root);
    builder.used[best_root] = true;

    for (int u : neighbors) {
      if (!builder.connect(v, u)) return std::nullopt;
    }
    placed[v] = true;
  }

  Embedding embedding;
  for (int v = 0; v < num_vars; ++v) {
    embedding.chains[v] = std::vector<int>(builder.chains[v].begin(), builder.chains[v].end());
  }
  return embedding;
}

}  // namespace

std::optional<Embedding> find_embedding(std::span<const std::pair<int, int>> logical_couplings,
                                        const ChimeraGraph& graph, std::uint64_t seed,
                                        int max_tries, int num_vars) {
  if (max_tries < 1) throw ValidationError("find_embedding needs max_tries >= 1");
  int inferred = num_vars;
  if (inferred < 0) {
    inferred = 0;
    for (const auto& [a, b] : logical_couplings) {
      inferred = std::max({inferred, a + 1, b + 1});
    }
  }
  for (const auto& [a, b] : logical_couplings) {
    if (a < 0 || b < 0 || a >= inferred || b >= inferred) {
      throw ValidationError("coupling index out of range");
    }
    if (a == b) throw ValidationError("coupling cannot pair a variable with itself");
  }

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    auto candidate = try_embed(logical_couplings, graph, inferred, rng);
    if (!candidate) continue;
    if (verify_embedding(graph, *candidate, logical_couplings).pass()) {
      return candidate;
    }
  }
  return std::nullopt;
}

IsingModel embed_ising(const IsingModel& logical, const Embedding& embedding,
                       const ChimeraGraph& graph, double chain_strength) {
  std::unordered_map<int, int> owner;
  for (const auto& [var, chain] : embedding.chains) {
    if (chain.empty()) {
      throw ValidationError("variable " + std::to_string(var) + " has an empty chain");
    }
    for (int q : chain) {
      if (q < 0 || q >= graph.num_qubits()) {
        throw ValidationError("chain qubit out of range");
      }
      if (!owner.try_emplace(q, var).second) {
        throw ValidationError("chains are not disjoint at qubit " + std::to_string(q));
      }
    }
  }

  IsingModel physical;
  physical.num_spins = graph.num_qubits();
  physical.offset = logical.offset;

  for (const auto& [var, bias] : logical.h) {
    const auto it = embedding.chains.find(var);
    if (it == embedding.chains.end()) {
      throw ValidationError("no chain for variable " + std::to_string(var));
    }
    const double share = bias / static_cast<double>(it->second.size());
    for (int q : it->second) physical.h[q] += share;
  }

  for (const auto& [key, value] : logical.j) {
    const auto [a, b] = key;
    const auto ca = embedding.chains.find(a);
    const auto cb = embedding.chains.find(b);
    if (ca == embedding.chains.end() || cb == embedding.chains.end()) {
      throw ValidationError("coupling (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") lacks a chain");
    }
    std::pair<int, int> best{-1, -1};
    for (int qa : ca->second) {
      for (int qb : cb->second) {
        if (!graph.has_edge(qa, qb)) continue;
        std::pair<int, int> edge{std::min(qa, qb), std::max(qa, qb)};
        if (best.first < 0 || edge < best) best = edge;
      }
    }
    if (best.first < 0) {
      throw ValidationError("coupling (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") has no physical edge under this embedding");
    }
    physical.j[best] += value;
  }

  for (const auto& [var, chain] : embedding.chains) {
    for (std::size_t x = 0; x < chain.size(); ++x) {
      for (std::size_t y = x + 1; y < chain.size(); ++y) {
        const int qa = std::min(chain[x], chain[y]);
        const int qb = std::max(chain[x], chain[y]);
        if (graph.has_edge(qa, qb)) {
          physical.j[{qa, qb}] += -chain_strength;
        }
      }
    }
  }

  std::erase_if(physical.h, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(physical.j, [](const auto& kv) { return kv.second == 0.0; });
  return physical;
}

double default_chain_strength(const IsingModel& logical) {
  double max_j = 0.0;
  for (const auto& [key, value] : logical.j) {
    max_j = std::max(max_j, std::abs(value));
  }
  return max_j > 0.0 ? 2.0 * max_j : 1.0;
}

SampleSet unembed_majority(const SampleSet& physical, const Embedding& embedding,
                           const IsingModel& logical) {
  if (physical.domain() != VarDomain::spin) {
    throw ValidationError("majority-vote unembedding expects spin samples");
  }
  const int num_spins = static_cast<int>(logical.num_spins);
  for (int v = 0; v < num_spins; ++v) {
    const auto it = embedding.chains.find(v);
    if (it == embedding.chains.end() || it->second.empty()) {
      throw ValidationError("no chain for variable " + std::to_string(v));
    }
    for (int q : it->second) {
      if (q < 0 || static_cast<std::size_t>(q) >= physical.num_vars()) {
        throw ValidationError("chain qubit outside the physical sample width");
      }
    }
  }

  SampleSet out(VarDomain::spin, logical.num_spins);
  out.reserve(physical.size());
  std::vector<std::int8_t> state(logical.num_spins);
  for (std::size_t s = 0; s < physical.size(); ++s) {
    const auto phys = physical.state(s);
    for (int v = 0; v < num_spins; ++v) {
      int sum = 0;
      for (int q : embedding.chains.at(v)) sum += phys[static_cast<std::size_t>(q)];
      state[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(sum < 0 ? -1 : 1);
    }
    out.append(state, ising_energy(logical, state), physical.count(s));
  }
  return out;
}

}  // namespace quboasm
