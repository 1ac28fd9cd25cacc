#include "quboasm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "quboasm/errors.hpp"

namespace quboasm {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const NelderMeadOptions& options) {
  if (x0.empty()) throw ValidationError("optimizer needs at least one coordinate");
  if (!(options.tolerance >= 0.0)) throw ValidationError("tolerance must be non-negative");

  const std::size_t n = x0.size();
  NelderMeadResult result;

  std::vector<std::vector<double>> simplex;
  simplex.reserve(n + 1);
  simplex.emplace_back(x0.begin(), x0.end());
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(x0.begin(), x0.end());
    v[k] = v[k] != 0.0 ? v[k] * 1.05 : 0.00025;
    simplex.push_back(std::move(v));
  }

  std::vector<double> fx(n + 1);
  const auto eval = [&](std::span<const double> x) {
    ++result.evaluations;
    return objective(x);
  };
  for (std::size_t k = 0; k <= n; ++k) fx[k] = eval(simplex[k]);

  std::vector<std::size_t> order(n + 1);
  const auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
  };

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (result.iterations = 0; result.iterations < options.max_iterations;
       ++result.iterations) {
    sort_vertices();
    if (fx[order[n]] - fx[order[0]] < options.tolerance) {
      result.converged = true;
      break;
    }

    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[k][d];
    }
    for (std::size_t d = 0; d < n; ++d) centroid[d] /= static_cast<double>(n);

    for (std::size_t d = 0; d < n; ++d) xr[d] = 2.0 * centroid[d] - simplex[worst][d];
    const double fr = eval(xr);

    if (fr < fx[best]) {
      for (std::size_t d = 0; d < n; ++d) xe[d] = 3.0 * centroid[d] - 2.0 * simplex[worst][d];
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fx[worst] = fe;
      } else {
        simplex[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second_worst]) {
      simplex[worst] = xr;
      fx[worst] = fr;
      continue;
    }

    if (fr < fx[worst]) {
      // Outside contraction: halfway between centroid and the reflection.
      for (std::size_t d = 0; d < n; ++d) xc[d] = 0.5 * (centroid[d] + xr[d]);
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[worst] = xc;
        fx[worst] = fc;
        continue;
      }
    } else {
      // Inside contraction: halfway between centroid and the worst vertex.
      for (std::size_t d = 0; d < n; ++d) xc[d] = 0.5 * (centroid[d] + simplex[worst][d]);
      const double fc = eval(xc);
      if (fc < fx[worst]) {
        simplex[worst] = xc;
        fx[worst] = fc;
        continue;
      }
    }

    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t d = 0; d < n; ++d) {
        simplex[k][d] = 0.5 * (simplex[best][d] + simplex[k][d]);
      }
      fx[k] = eval(simplex[k]);
    }
  }

  sort_vertices();
  result.x = simplex[order[0]];
  result.fx = fx[order[0]];
  return result;
}

}  // namespace quboasm
