#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace quboasm {

enum class VarDomain { binary, spin };

// Multiset of solver states with energies and occurrence counts. States are
// stored in one flat column so exhaustive enumerations stay compact.
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(VarDomain domain, std::size_t num_vars)
      : domain_(domain), num_vars_(num_vars) {}

  VarDomain domain() const { return domain_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t size() const { return energies_.size(); }
  bool empty() const { return energies_.empty(); }

  std::span<const std::int8_t> state(std::size_t i) const {
    return {states_.data() + i * num_vars_, num_vars_};
  }
  double energy(std::size_t i) const { return energies_[i]; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }

  void reserve(std::size_t entries);
  void append(std::span<const std::int8_t> state, double energy,
              std::uint64_t count = 1);

  // Ascending energy; ties ordered by the state read as an unsigned integer
  // (variable i is bit i), ascending.
  void sort_by_energy();
  // Descending count; ties by ascending energy, then state.
  void sort_by_count();

  // Index 0 is the leftmost character; spin +1 and binary 1 map to '1'.
  std::string bitstring(std::size_t i) const;

  double min_energy() const;  // throws ValidationError when empty

 private:
  bool state_less(std::size_t a, std::size_t b) const;
  void apply_permutation(const std::vector<std::size_t>& perm);

  VarDomain domain_ = VarDomain::binary;
  std::size_t num_vars_ = 0;
  std::vector<std::int8_t> states_;
  std::vector<double> energies_;
  std::vector<std::uint64_t> counts_;
};

// CSV with header "state,energy,count"; energies keep 17 significant digits.
void write_samples_csv(std::ostream& out, const SampleSet& samples);

struct EnergyHistogram {
  std::vector<double> bin_edges;        // bins + 1 edges, equal width
  std::vector<std::uint64_t> counts;    // weighted by sample counts
};

EnergyHistogram energy_histogram(const SampleSet& samples, std::size_t bins = 32);

}  // namespace quboasm
