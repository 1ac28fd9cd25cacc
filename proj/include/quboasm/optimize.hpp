#pragma once

#include <functional>
#include <span>
#include <vector>

namespace quboasm {

struct NelderMeadOptions {
  int max_iterations = 200;
  double tolerance = 1e-6;  // stop when max f - min f over the simplex drops below
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Downhill simplex with the standard coefficients (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5). The initial simplex is x0 plus one vertex per
// coordinate nudged by 5% (0.00025 when the coordinate is zero).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const NelderMeadOptions& options);

}  // namespace quboasm
