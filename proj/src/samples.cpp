#include "quboasm/samples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "quboasm/errors.hpp"

namespace quboasm {

void SampleSet::reserve(std::size_t entries) {
  states_.reserve(entries * num_vars_);
  energies_.reserve(entries);
  counts_.reserve(entries);
}

void SampleSet::append(std::span<const std::int8_t> state, double energy,
                       std::uint64_t count) {
  if (state.size() != num_vars_) {
    throw ValidationError("sample state length does not match the set");
  }
  states_.insert(states_.end(), state.begin(), state.end());
  energies_.push_back(energy);
  counts_.push_back(count);
}

bool SampleSet::state_less(std::size_t a, std::size_t b) const {
  const std::int8_t* sa = states_.data() + a * num_vars_;
  const std::int8_t* sb = states_.data() + b * num_vars_;
  // Variable i is bit i of the integer, so the highest index is compared first.
  for (std::size_t k = num_vars_; k-- > 0;) {
    const bool ba = sa[k] > 0;
    const bool bb = sb[k] > 0;
    if (ba != bb) return bb;
  }
  return false;
}

void SampleSet::apply_permutation(const std::vector<std::size_t>& perm) {
  std::vector<std::int8_t> states(states_.size());
  std::vector<double> energies(energies_.size());
  std::vector<std::uint64_t> counts(counts_.size());
  for (std::size_t to = 0; to < perm.size(); ++to) {
    const std::size_t from = perm[to];
    std::copy_n(states_.data() + from * num_vars_, num_vars_,
                states.data() + to * num_vars_);
    energies[to] = energies_[from];
    counts[to] = counts_[from];
  }
  states_ = std::move(states);
  energies_ = std::move(energies);
  counts_ = std::move(counts);
}

void SampleSet::sort_by_energy() {
  std::vector<std::size_t> perm(size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [this](std::size_t a, std::size_t b) {
    if (energies_[a] != energies_[b]) return energies_[a] < energies_[b];
    return state_less(a, b);
  });
  apply_permutation(perm);
}

void SampleSet::sort_by_count() {
  std::vector<std::size_t> perm(size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [this](std::size_t a, std::size_t b) {
    if (counts_[a] != counts_[b]) return counts_[a] > counts_[b];
    if (energies_[a] != energies_[b]) return energies_[a] < energies_[b];
    return state_less(a, b);
  });
  apply_permutation(perm);
}

std::string SampleSet::bitstring(std::size_t i) const {
  std::string out(num_vars_, '0');
  const std::int8_t* s = states_.data() + i * num_vars_;
  for (std::size_t k = 0; k < num_vars_; ++k) {
    if (s[k] > 0) out[k] = '1';
  }
  return out;
}

double SampleSet::min_energy() const {
  if (empty()) {
    throw ValidationError("sample set is empty");
  }
  return *std::min_element(energies_.begin(), energies_.end());
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  out << "state,energy,count\n";
  char buf[64];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", samples.energy(i));
    out << samples.bitstring(i) << ',' << buf << ',' << samples.count(i) << '\n';
  }
}

EnergyHistogram energy_histogram(const SampleSet& samples, std::size_t bins) {
  EnergyHistogram h;
  if (samples.empty() || bins == 0) return h;

  double lo = samples.energy(0);
  double hi = lo;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    lo = std::min(lo, samples.energy(i));
    hi = std::max(hi, samples.energy(i));
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
    bins = 1;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  h.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.bin_edges[b] = lo + width * static_cast<double>(b);
  }
  h.bin_edges.back() = hi;
  h.counts.assign(bins, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto b = static_cast<std::size_t>((samples.energy(i) - lo) / width);
    if (b >= bins) b = bins - 1;  // the top edge is inclusive
    h.counts[b] += samples.count(i);
  }
  return h;
}

}  // namespace quboasm
