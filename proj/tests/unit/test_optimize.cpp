#include <cmath>
#include <vector>

#include <doctest.h>

#include "quboasm/errors.hpp"
#include "quboasm/optimize.hpp"

using namespace quboasm;

TEST_CASE("a one-dimensional parabola converges to its vertex") {
  const auto f = [](std::span<const double> x) {
    return (x[0] - 3.0) * (x[0] - 3.0);
  };
  const std::vector<double> x0 = {0.0};
  NelderMeadOptions opts;
  opts.max_iterations = 500;
  opts.tolerance = 1e-12;
  const NelderMeadResult r = nelder_mead(f, x0, opts);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-4));
  // A simplex straddling the vertex symmetrically has zero value spread, so
  // the stopping rule can fire with fx as large as the step size squared.
  CHECK(r.fx < 1e-6);
  CHECK(r.iterations <= 500);
  CHECK(r.evaluations >= r.iterations);
}

TEST_CASE("rosenbrock from the classic start reaches the valley floor") {
  const auto f = [](std::span<const double> x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  const std::vector<double> x0 = {-1.2, 1.0};
  NelderMeadOptions opts;
  opts.max_iterations = 2000;
  opts.tolerance = 1e-10;
  const NelderMeadResult r = nelder_mead(f, x0, opts);
  CHECK(r.fx < 1e-3);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("the best seen point is returned even without iterations") {
  int calls = 0;
  const auto f = [&calls](std::span<const double> x) {
    ++calls;
    return x[0] * x[0];
  };
  const std::vector<double> x0 = {2.0};
  NelderMeadOptions opts;
  opts.max_iterations = 0;
  const NelderMeadResult r = nelder_mead(f, x0, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 0);
  CHECK(calls == r.evaluations);
  CHECK(calls >= 1);           // the initial simplex is still evaluated
  CHECK(r.fx <= f(x0) + 1e-15);  // never worse than the start
}

TEST_CASE("zero coordinates get an absolute nudge") {
  // With a multiplicative-only perturbation the simplex would be degenerate
  // at the origin and no progress could ever be made.
  const auto f = [](std::span<const double> x) {
    return (x[0] - 0.001) * (x[0] - 0.001);
  };
  const std::vector<double> x0 = {0.0};
  NelderMeadOptions opts;
  opts.max_iterations = 200;
  opts.tolerance = 1e-14;
  const NelderMeadResult r = nelder_mead(f, x0, opts);
  CHECK(r.fx < 1e-10);
}

TEST_CASE("invalid arguments are rejected") {
  const auto f = [](std::span<const double>) { return 0.0; };
  const std::vector<double> empty;
  NelderMeadOptions opts;
  CHECK_THROWS_AS(nelder_mead(f, empty, opts), ValidationError);
  const std::vector<double> x0 = {1.0};
  opts.tolerance = -1.0;
  CHECK_THROWS_AS(nelder_mead(f, x0, opts), ValidationError);
}

TEST_CASE("a flat objective converges immediately") {
  const auto f = [](std::span<const double>) { return 7.5; };
  const std::vector<double> x0 = {1.0, 2.0};
  NelderMeadOptions opts;
  const NelderMeadResult r = nelder_mead(f, x0, opts);
  CHECK(r.converged);
  CHECK(r.fx == 7.5);
  CHECK(r.iterations == 0);
}
