#include "quboasm/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quboasm/errors.hpp"

namespace quboasm {

namespace {

std::string var_label(std::size_t node, std::size_t slot) {
  return "n" + std::to_string(node) + "t" + std::to_string(slot);
}

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Parses "q<idx>" tokens from the matrix file.
std::size_t parse_q_token(const std::string& token, std::size_t num_vars) {
  if (token.size() < 2 || token[0] != 'q') {
    throw ValidationError("malformed variable token '" + token + "' in qubo file");
  }
  std::size_t pos = 0;
  unsigned long idx = 0;
  try {
    idx = std::stoul(token.substr(1), &pos);
  } catch (const std::exception&) {
    throw ValidationError("malformed variable token '" + token + "' in qubo file");
  }
  if (pos + 1 != token.size()) {
    throw ValidationError("malformed variable token '" + token + "' in qubo file");
  }
  if (idx >= num_vars) {
    throw ValidationError("variable index " + std::to_string(idx) +
                          " out of range in qubo file");
  }
  return idx;
}

double parse_value(const std::string& token) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ValidationError("non-numeric value '" + token + "' in qubo file");
  }
  if (pos != token.size()) {
    throw ValidationError("non-numeric value '" + token + "' in qubo file");
  }
  return v;
}

}  // namespace

QuboModel tsp_to_qubo(const OverlapGraph& graph, double a, double b, double c) {
  const std::size_t n = graph.n;
  if (n < 2) {
    throw ValidationError("tour model requires at least 2 nodes");
  }
  if (a > 0.0 || b < 0.0 || c < 0.0) {
    throw ValidationError("penalties must satisfy a <= 0, b >= 0, c >= 0");
  }
  QuboModel m;
  m.num_vars = n * n;
  m.q.assign(m.num_vars * m.num_vars, 0.0);
  m.labels.resize(m.num_vars);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      m.labels[i * n + t] = var_label(i, t);
    }
  }
  m.penalties = TspPenalties{a, b, c};

  for (std::size_t v = 0; v < m.num_vars; ++v) {
    m.at(v, v) += a;
  }
  // A node sitting in two slots.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t1 = 0; t1 < n; ++t1) {
      for (std::size_t t2 = 0; t2 < n; ++t2) {
        if (t1 == t2) continue;
        m.at(i * n + t1, i * n + t2) += b;
      }
    }
  }
  // Two nodes sharing a slot.
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        if (i1 == i2) continue;
        m.at(i1 * n + t, i2 * n + t) += c;
      }
    }
  }
  // Path reward for consecutive slots; wraps so the closing edge is priced.
  // Same-node pairs contribute their zero diagonal weight.
  for (std::size_t ci = 0; ci < n; ++ci) {
    for (std::size_t cj = 0; cj < n; ++cj) {
      for (std::size_t ti = 0; ti < n; ++ti) {
        m.at(ci * n + ti, cj * n + ((ti + 1) % n)) += -graph.weight(ci, cj);
      }
    }
  }
  return m;
}

double qubo_energy(const QuboModel& model, std::span<const std::int8_t> x) {
  if (x.size() != model.num_vars) {
    throw ValidationError("state length does not match the model");
  }
  for (std::int8_t v : x) {
    if (v != 0 && v != 1) {
      throw ValidationError("binary state entries must be 0 or 1");
    }
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < model.num_vars; ++i) {
    if (!x[i]) continue;
    const double* row = model.q.data() + i * model.num_vars;
    double acc = 0.0;
    for (std::size_t j = 0; j < model.num_vars; ++j) {
      if (x[j]) acc += row[j];
    }
    energy += acc;
  }
  return energy;
}

std::vector<std::int8_t> encode_tour(std::span<const int> tour, std::size_t n) {
  if (tour.size() != n) {
    throw ValidationError("tour length must equal the node count");
  }
  std::vector<std::int8_t> x(n * n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const int node = tour[t];
    if (node < 0 || static_cast<std::size_t>(node) >= n) {
      throw ValidationError("tour entry out of range");
    }
    x[static_cast<std::size_t>(node) * n + t] = 1;
  }
  return x;
}

TourDecoding decode_solution(const QuboModel& model, std::span<const std::int8_t> x) {
  if (x.size() != model.num_vars) {
    throw ValidationError("state length does not match the model");
  }
  const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(
      static_cast<double>(model.num_vars))));
  if (n * n != model.num_vars || n == 0) {
    throw ValidationError("model size is not a perfect square; not a tour encoding");
  }

  TourDecoding d;
  std::vector<std::vector<int>> nodes_in_slot(n);
  std::vector<int> slots_of_node(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      if (x[i * n + t]) {
        nodes_in_slot[t].push_back(static_cast<int>(i));
        ++slots_of_node[i];
      }
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (nodes_in_slot[t].empty()) d.empty_slots.push_back(static_cast<int>(t));
    if (nodes_in_slot[t].size() > 1) d.crowded_slots.push_back(static_cast<int>(t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (slots_of_node[i] == 0) d.missing_nodes.push_back(static_cast<int>(i));
    if (slots_of_node[i] > 1) d.repeated_nodes.push_back(static_cast<int>(i));
  }
  d.valid = d.empty_slots.empty() && d.crowded_slots.empty() &&
            d.missing_nodes.empty() && d.repeated_nodes.empty();
  if (d.valid) {
    d.tour.resize(n);
    for (std::size_t t = 0; t < n; ++t) d.tour[t] = nodes_in_slot[t][0];
  }
  return d;
}

std::string TourDecoding::describe() const {
  if (valid) return "valid tour";
  std::ostringstream out;
  const char* sep = "";
  for (int t : empty_slots) {
    out << sep << "slot " << t << " unassigned";
    sep = "; ";
  }
  for (int t : crowded_slots) {
    out << sep << "slot " << t << " holds multiple nodes";
    sep = "; ";
  }
  for (int i : missing_nodes) {
    out << sep << "node " << i << " unplaced";
    sep = "; ";
  }
  for (int i : repeated_nodes) {
    out << sep << "node " << i << " placed in multiple slots";
    sep = "; ";
  }
  return out.str();
}

Assembly assemble_sequence(const ReadSet& reads, std::span<const int> tour,
                           const OverlapGraph& raw_graph) {
  if (raw_graph.normalized) {
    throw ValidationError("assembly requires raw integer overlaps");
  }
  const std::size_t n = reads.size();
  if (n < 2) {
    throw ValidationError("assembly requires at least 2 reads");
  }
  if (raw_graph.n != n || tour.size() != n) {
    throw ValidationError("reads, graph, and tour sizes disagree");
  }
  std::vector<bool> used(n, false);
  for (int node : tour) {
    if (node < 0 || static_cast<std::size_t>(node) >= n || used[node]) {
      throw ValidationError("tour is not a permutation of the reads");
    }
    used[node] = true;
  }

  Assembly out;
  out.sequence = reads[tour[0]];
  for (std::size_t t = 1; t < n; ++t) {
    const int prev = tour[t - 1];
    const int next = tour[t];
    const int overlap = static_cast<int>(raw_graph.weight(prev, next));
    out.sequence.append(reads[next], overlap, std::string::npos);
  }
  out.closing_overlap = static_cast<int>(raw_graph.weight(tour[n - 1], tour[0]));
  return out;
}

QuboModel canonicalized(const QuboModel& model) {
  QuboModel out;
  out.num_vars = model.num_vars;
  out.labels = model.labels;
  out.penalties = model.penalties;
  out.q.assign(model.num_vars * model.num_vars, 0.0);
  for (std::size_t i = 0; i < model.num_vars; ++i) {
    out.at(i, i) = model.at(i, i);
    for (std::size_t j = i + 1; j < model.num_vars; ++j) {
      out.at(i, j) = model.at(i, j) + model.at(j, i);
    }
  }
  return out;
}

std::string write_qubo_text(const QuboModel& model) {
  const std::size_t n = model.num_vars;
  std::vector<std::pair<std::size_t, double>> diagonal;
  std::vector<std::tuple<std::size_t, std::size_t, double>> couplers;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = model.at(i, i);
    if (d != 0.0) diagonal.emplace_back(i, d);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = model.at(i, j) + model.at(j, i);
      if (v != 0.0) couplers.emplace_back(i, j, v);
    }
  }
  std::ostringstream out;
  out << "p qubo 0 " << n << ' ' << diagonal.size() << ' ' << couplers.size() << '\n';
  for (const auto& [i, v] : diagonal) {
    out << 'q' << i << " q" << i << ' ' << fmt17(v) << '\n';
  }
  for (const auto& [i, j, v] : couplers) {
    out << 'q' << i << " q" << j << ' ' << fmt17(v) << '\n';
  }
  return out.str();
}

void write_qubo_file(const QuboModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write qubo file: " + path.string());
  }
  out << write_qubo_text(model);
  if (!out) {
    throw IoError("failed while writing qubo file: " + path.string());
  }
}

QuboModel read_qubo_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0] == "c") continue;
    rows.push_back(std::move(tokens));
  }
  if (rows.empty()) {
    throw ValidationError("qubo file has no header line");
  }
  const auto& header = rows[0];
  if (header.size() != 6 || header[0] != "p" || header[1] != "qubo") {
    throw ValidationError("malformed qubo header");
  }
  std::size_t num_vars = 0, num_diag = 0, num_couplers = 0;
  try {
    num_vars = std::stoul(header[3]);
    num_diag = std::stoul(header[4]);
    num_couplers = std::stoul(header[5]);
  } catch (const std::exception&) {
    throw ValidationError("malformed qubo header");
  }
  if (rows.size() != 1 + num_diag + num_couplers) {
    throw ValidationError("qubo entry count does not match the header");
  }

  QuboModel m;
  m.num_vars = num_vars;
  m.q.assign(num_vars * num_vars, 0.0);
  m.labels.resize(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) m.labels[i] = "q" + std::to_string(i);

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& tokens = rows[r];
    if (tokens.size() != 3) {
      throw ValidationError("malformed qubo entry line");
    }
    const std::size_t i = parse_q_token(tokens[0], num_vars);
    const std::size_t j = parse_q_token(tokens[1], num_vars);
    const double v = parse_value(tokens[2]);
    const bool diag_section = r <= num_diag;
    if (diag_section && i != j) {
      throw ValidationError("diagonal section contains an off-diagonal entry");
    }
    if (!diag_section && i >= j) {
      throw ValidationError("coupler entries must satisfy i < j");
    }
    m.at(i, j) += v;
  }
  return m;
}

QuboModel read_qubo_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open qubo file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_qubo_text(buf.str());
}

}  // namespace quboasm
