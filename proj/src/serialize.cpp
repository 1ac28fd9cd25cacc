#include "quboasm/serialize.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "quboasm/errors.hpp"

namespace quboasm {

Json qubo_to_json(const QuboModel& model) {
  Json j;
  j["num_vars"] = model.num_vars;
  j["labels"] = model.labels;
  Json diagonal = Json::array();
  Json couplers = Json::array();
  for (std::size_t i = 0; i < model.num_vars; ++i) {
    const double d = model.at(i, i);
    if (d != 0.0) diagonal.push_back(Json::array({i, d}));
    for (std::size_t k = i + 1; k < model.num_vars; ++k) {
      const double q = model.at(i, k) + model.at(k, i);
      if (q != 0.0) couplers.push_back(Json::array({i, k, q}));
    }
  }
  j["diagonal"] = std::move(diagonal);
  j["couplers"] = std::move(couplers);
  return j;
}

Json ising_to_json(const IsingModel& model) {
  Json j;
  j["num_spins"] = model.num_spins;
  j["offset"] = model.offset;
  Json h = Json::array();
  for (const auto& [i, bias] : model.h) {
    h.push_back(Json::array({i, bias}));
  }
  Json couplings = Json::array();
  for (const auto& [key, value] : model.j) {
    couplings.push_back(Json::array({key.first, key.second, value}));
  }
  j["h"] = std::move(h);
  j["j"] = std::move(couplings);
  return j;
}

IsingModel ising_from_json(const Json& j) {
  IsingModel model;
  try {
    const auto num_spins = j.at("num_spins").get<std::int64_t>();
    if (num_spins < 0) throw ValidationError("negative spin count");
    model.num_spins = static_cast<std::size_t>(num_spins);
    model.offset = j.value("offset", 0.0);
    for (const auto& entry : j.at("h")) {
      const int i = entry.at(0).get<int>();
      const double bias = entry.at(1).get<double>();
      if (i < 0 || static_cast<std::size_t>(i) >= model.num_spins) {
        throw ValidationError("bias index " + std::to_string(i) + " out of range");
      }
      model.h[i] += bias;
    }
    for (const auto& entry : j.at("j")) {
      int a = entry.at(0).get<int>();
      int b = entry.at(1).get<int>();
      const double value = entry.at(2).get<double>();
      if (a > b) std::swap(a, b);
      if (a < 0 || a == b || static_cast<std::size_t>(b) >= model.num_spins) {
        throw ValidationError("coupling (" + std::to_string(a) + ", " +
                              std::to_string(b) + ") out of range");
      }
      model.j[{a, b}] += value;
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad ising json: ") + e.what());
  }
  std::erase_if(model.h, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(model.j, [](const auto& kv) { return kv.second == 0.0; });
  return model;
}

IsingModel read_ising_json_file(const std::filesystem::path& path) {
  return ising_from_json(read_json_file(path));
}

Json embedding_to_json(const Embedding& embedding) {
  Json j = Json::object();
  for (const auto& [var, chain] : embedding.chains) {
    j[std::to_string(var)] = chain;
  }
  return j;
}

Embedding embedding_from_json(const Json& j) {
  Embedding embedding;
  if (!j.is_object()) throw ValidationError("embedding json must be an object");
  for (const auto& [key, value] : j.items()) {
    int var = 0;
    try {
      std::size_t used = 0;
      var = std::stoi(key, &used);
      if (used != key.size() || var < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError("embedding key '" + key + "' is not a variable index");
    }
    std::vector<int> chain;
    try {
      chain = value.get<std::vector<int>>();
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("bad chain for variable ") + key + ": " + e.what());
    }
    if (!embedding.chains.emplace(var, std::move(chain)).second) {
      throw ValidationError("duplicate embedding entry for variable " + key);
    }
  }
  return embedding;
}

Embedding read_embedding_json_file(const std::filesystem::path& path) {
  return embedding_from_json(read_json_file(path));
}

Json samples_to_json(const SampleSet& samples, std::size_t limit) {
  Json j;
  j["domain"] = samples.domain() == VarDomain::binary ? "binary" : "spin";
  j["num_vars"] = samples.num_vars();
  j["num_entries"] = samples.size();
  Json entries = Json::array();
  const std::size_t keep =
      limit == 0 ? samples.size() : std::min(limit, samples.size());
  for (std::size_t s = 0; s < keep; ++s) {
    Json entry;
    entry["state"] = samples.bitstring(s);
    entry["energy"] = samples.energy(s);
    entry["count"] = samples.count(s);
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json histogram_to_json(const EnergyHistogram& histogram) {
  Json j;
  j["bin_edges"] = histogram.bin_edges;
  j["counts"] = histogram.counts;
  return j;
}

void write_json_file(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed while writing " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace quboasm
