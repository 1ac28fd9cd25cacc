#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quboasm/reads.hpp"

namespace quboasm {

struct TspPenalties {
  double reward_a = 0.0;
  double multi_location_b = 13.0;
  double repetition_c = 13.0;
};

// Dense quadratic unconstrained binary optimisation model. The energy of a
// binary vector x is x^T Q x (diagonal terms are linear since x_i^2 = x_i).
struct QuboModel {
  std::size_t num_vars = 0;
  std::vector<double> q;             // num_vars * num_vars, row-major
  std::vector<std::string> labels;   // one per variable
  std::optional<TspPenalties> penalties;  // set for tour models only

  double at(std::size_t i, std::size_t j) const { return q[i * num_vars + j]; }
  double& at(std::size_t i, std::size_t j) { return q[i * num_vars + j]; }
};

// One-hot tour encoding of the overlap graph as a QUBO over n^2 variables.
// Variable i*n + t means "node i occupies tour slot t" (label "n{i}t{t}").
//   - every diagonal cell receives reward `a` (a <= 0),
//   - +b at (i*n+t1, i*n+t2) for each node i and ordered pair t1 != t2,
//   - +c at (i1*n+t, i2*n+t) for each slot t and ordered pair i1 != i2,
//   - -weights[ci][cj] at (ci*n+ti, cj*n+((ti+1) mod n)) for all ci, cj, ti;
//     the slot index wraps so the closing tour edge is priced.
QuboModel tsp_to_qubo(const OverlapGraph& graph, double a, double b, double c);

// x^T Q x for a binary vector x (entries 0/1, length num_vars).
double qubo_energy(const QuboModel& model, std::span<const std::int8_t> x);

// One-hot encoding of a tour: x[tour[t]*n + t] = 1.
std::vector<std::int8_t> encode_tour(std::span<const int> tour, std::size_t n);

// Outcome of decoding a one-hot bit vector back into a tour.
struct TourDecoding {
  bool valid = false;
  std::vector<int> tour;            // slot -> node, populated when valid
  std::vector<int> empty_slots;     // slots with no node assigned
  std::vector<int> crowded_slots;   // slots with more than one node
  std::vector<int> missing_nodes;   // nodes assigned to no slot
  std::vector<int> repeated_nodes;  // nodes assigned to several slots

  // Human-readable classification, e.g. "slot 2 unassigned; node 0 in 2 slots".
  std::string describe() const;
};

// Decodes a length-n^2 binary vector against the one-hot tour encoding.
TourDecoding decode_solution(const QuboModel& model, std::span<const std::int8_t> x);

struct Assembly {
  std::string sequence;     // linear stitch along the tour
  int closing_overlap = 0;  // overlap of the last read back into the first
};

// Stitches reads along a tour, dropping each successive read's overlapped
// prefix. Overlap lengths come from the raw (integer) graph. The closing
// tour edge is reported as metadata rather than folded into the string.
Assembly assemble_sequence(const ReadSet& reads, std::span<const int> tour,
                           const OverlapGraph& raw_graph);

// Upper-triangular canonical form: diagonal kept, each off-diagonal pair
// folded into Q[i][j] + Q[j][i] at i < j.
QuboModel canonicalized(const QuboModel& model);

// Text form:
//   c <comment lines, optional>
//   p qubo 0 <numVars> <numDiagonals> <numCouplers>
//   q<i> q<i> <value>        (nonzero diagonal entries)
//   q<i> q<j> <value>        (i < j, value Q[i][j] + Q[j][i], nonzero)
// Values are serialized with 17 significant digits so doubles round-trip.
std::string write_qubo_text(const QuboModel& model);
void write_qubo_file(const QuboModel& model, const std::filesystem::path& path);
QuboModel read_qubo_text(const std::string& text);
QuboModel read_qubo_file(const std::filesystem::path& path);

}  // namespace quboasm
