#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quboasm {

// A collection of DNA reads over the alphabet {A, C, G, T}.
struct ReadSet {
  std::vector<std::string> reads;

  // Validates every read: nonempty, A/C/G/T only, no duplicates.
  static ReadSet from_strings(std::vector<std::string> reads);

  std::size_t size() const { return reads.size(); }
  const std::string& operator[](std::size_t i) const { return reads[i]; }
};

// Loads reads from a plain-text file (one read per line) or minimal FASTA
// (lines starting with '>' are skipped). Sequences are uppercased, blank
// lines ignored, duplicate reads dropped (first occurrence kept).
ReadSet load_reads_file(const std::filesystem::path& path);

// Length of the longest suffix of read1 that matches a prefix of read2 with
// at most max_mismatch mismatching characters; 0 when no overlap qualifies.
// Shifts are scanned from the longest candidate overlap downward and the
// first qualifying one wins. The overlap never exceeds either read length.
int align(std::string_view read1, std::string_view read2, int max_mismatch);

// Directed overlap graph: weights[i*n + j] is the suffix-prefix overlap of
// read i into read j (zero diagonal). Raw weights are integer overlap
// lengths; normalized weights are raw weights divided by the Frobenius norm.
struct OverlapGraph {
  std::size_t n = 0;
  std::vector<double> weights;  // n*n row-major, zero diagonal
  bool normalized = false;

  double weight(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
  double& weight(std::size_t i, std::size_t j) { return weights[i * n + j]; }
};

// Pairwise overlap matrix with raw integer weights. Requires >= 2 reads.
OverlapGraph raw_overlap_graph(const ReadSet& reads, int max_mismatch);

// Frobenius norm of the weight matrix.
double frobenius_norm(const OverlapGraph& graph);

// Copy of the graph scaled by 1/frobenius_norm. Errors on an all-zero matrix.
OverlapGraph normalized_copy(const OverlapGraph& graph);

// Overlap graph for the travelling-salesman reduction: raw overlaps
// normalized by the Frobenius norm. Requires >= 2 reads and at least one
// nonzero overlap.
OverlapGraph reads_to_tsp(const ReadSet& reads, int max_mismatch);

// Cost of visiting all nodes along `tour` and returning to the start:
// the negated sum of traversed overlap weights. `tour` must be a
// permutation of {0..n-1} with n >= 2.
double tour_cost(const OverlapGraph& graph, std::span<const int> tour);

// Writes the weight matrix as CSV with 12 significant digits.
void write_overlap_csv(std::ostream& out, const OverlapGraph& graph);

}  // namespace quboasm
