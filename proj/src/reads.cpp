#include "quboasm/reads.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

bool valid_base(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'T'; }

void validate_read(const std::string& read, std::size_t index) {
  if (read.empty()) {
    throw ValidationError("read " + std::to_string(index) + " is empty");
  }
  for (char c : read) {
    if (!valid_base(c)) {
      throw ValidationError("read " + std::to_string(index) +
                            " contains a character outside {A,C,G,T}: '" +
                            std::string(1, c) + "'");
    }
  }
}

}  // namespace

ReadSet ReadSet::from_strings(std::vector<std::string> reads) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    validate_read(reads[i], i);
    if (!seen.insert(reads[i]).second) {
      throw ValidationError("duplicate read: " + reads[i]);
    }
  }
  ReadSet out;
  out.reads = std::move(reads);
  return out;
}

ReadSet load_reads_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open reads file: " + path.string());
  }
  std::vector<std::string> reads;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '>') continue;
    std::transform(line.begin(), line.end(), line.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    validate_read(line, reads.size());
    if (seen.insert(line).second) reads.push_back(line);
  }
  if (reads.empty()) {
    throw ValidationError("no reads found in " + path.string());
  }
  ReadSet out;
  out.reads = std::move(reads);
  return out;
}

int align(std::string_view read1, std::string_view read2, int max_mismatch) {
  if (read1.empty() || read2.empty()) {
    throw ValidationError("align requires nonempty reads");
  }
  if (max_mismatch < 0) {
    throw ValidationError("max_mismatch must be >= 0");
  }
  const int l1 = static_cast<int>(read1.size());
  const int l2 = static_cast<int>(read2.size());
  // Longest candidate first; the overlap length is l1 - shift.
  for (int shift = std::max(0, l1 - l2); shift < l1; ++shift) {
    int mismatches = 0;
    bool ok = true;
    for (int k = 0; shift + k < l1; ++k) {
      if (read1[shift + k] != read2[k] && ++mismatches > max_mismatch) {
        ok = false;
        break;
      }
    }
    if (ok) return l1 - shift;
  }
  return 0;
}

OverlapGraph raw_overlap_graph(const ReadSet& reads, int max_mismatch) {
  if (reads.size() < 2) {
    throw ValidationError("overlap graph requires at least 2 reads");
  }
  OverlapGraph g;
  g.n = reads.size();
  g.weights.assign(g.n * g.n, 0.0);
  g.normalized = false;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      if (i == j) continue;
      g.weight(i, j) = align(reads[i], reads[j], max_mismatch);
    }
  }
  return g;
}

double frobenius_norm(const OverlapGraph& graph) {
  double sum = 0.0;
  for (double w : graph.weights) sum += w * w;
  return std::sqrt(sum);
}

OverlapGraph normalized_copy(const OverlapGraph& graph) {
  const double norm = frobenius_norm(graph);
  if (norm == 0.0) {
    throw ValidationError("overlap matrix is all zero; nothing to normalize");
  }
  OverlapGraph out = graph;
  for (double& w : out.weights) w /= norm;
  out.normalized = true;
  return out;
}

OverlapGraph reads_to_tsp(const ReadSet& reads, int max_mismatch) {
  return normalized_copy(raw_overlap_graph(reads, max_mismatch));
}

double tour_cost(const OverlapGraph& graph, std::span<const int> tour) {
  const std::size_t n = graph.n;
  if (n < 2) {
    throw ValidationError("tour cost requires at least 2 nodes");
  }
  if (tour.size() != n) {
    throw ValidationError("tour must visit every node exactly once");
  }
  std::vector<bool> used(n, false);
  for (int node : tour) {
    if (node < 0 || static_cast<std::size_t>(node) >= n || used[node]) {
      throw ValidationError("tour is not a permutation of the nodes");
    }
    used[node] = true;
  }
  double cost = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    cost -= graph.weight(tour[t], tour[(t + 1) % n]);
  }
  return cost;
}

void write_overlap_csv(std::ostream& out, const OverlapGraph& graph) {
  char buf[64];
  for (std::size_t i = 0; i < graph.n; ++i) {
    for (std::size_t j = 0; j < graph.n; ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", graph.weight(i, j));
      out << buf << (j + 1 == graph.n ? "" : ",");
    }
    out << '\n';
  }
}

}  // namespace quboasm
