#pragma once

#include <filesystem>
#include <json.hpp>

#include "quboasm/chimera.hpp"
#include "quboasm/ising.hpp"
#include "quboasm/qubo.hpp"
#include "quboasm/samples.hpp"

namespace quboasm {

// Key order is preserved so equal inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

Json qubo_to_json(const QuboModel& model);

Json ising_to_json(const IsingModel& model);
IsingModel ising_from_json(const Json& j);
IsingModel read_ising_json_file(const std::filesystem::path& path);

Json embedding_to_json(const Embedding& embedding);
Embedding embedding_from_json(const Json& j);
Embedding read_embedding_json_file(const std::filesystem::path& path);

Json samples_to_json(const SampleSet& samples, std::size_t limit = 0);  // 0: all
Json histogram_to_json(const EnergyHistogram& histogram);

void write_json_file(const Json& j, const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

}  // namespace quboasm
