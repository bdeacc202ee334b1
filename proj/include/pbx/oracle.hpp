#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pbx/core.hpp"
#include "pbx/parallel.hpp"

// Brute-force ground truth for the extremes engine. Nothing here uses generator
// sets, cones or the case tables: vertices are found by enumerating monotone
// staircases and testing the rank of the constraints active at each one.
namespace pbx::oracle {

inline constexpr std::size_t kDefaultLimit = 12;

enum class Mode {
  Pruned,     // F[i] drawn from {low[j]: j >= i} U {up[k]: k <= i}
  Reference,  // F[i] drawn from every bound value plus 0 and 1
};

/// Vertices of the credal set as distribution functions, sorted.
/// Throws Error(DomainTooLarge) when n exceeds `limit`.
std::vector<StepCDF> oracle_extremes(const PBox& pbox, Mode mode = Mode::Pruned, Exec exec = Exec::Parallel,
                                     std::size_t limit = kDefaultLimit);

/// Vertex test at a feasible F: the active constraints span R^n.
bool is_vertex(const RationalVector& f, const PBox& pbox);

/// min over oracle vertices of sum_i h[i] p[i].
Rational oracle_lower_expectation(const Gamble& h, const PBox& pbox, std::size_t limit = kDefaultLimit);

/// F[i] in {low[j]: j >= i} U {up[k]: k <= i} for every i.
bool satisfies_range_theorem(const StepCDF& f, const PBox& pbox);

/// F[i] in {low[i], up[i], F[i-1], F[i+1]} for every i < n.
bool satisfies_local_candidates(const StepCDF& f, const PBox& pbox);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;  // first failure, if any
};

struct CrossCheckReport {
  std::vector<SuiteResult> suites;

  bool ok() const;
  std::string describe() const;
};

/// Compares the extremes engine with the oracle: both enumeration methods,
/// `trials` seeded random gambles for lower and upper expectations, and the
/// range and local-candidate properties of every vertex.
CrossCheckReport cross_check(const PBox& pbox, std::size_t trials, std::uint64_t seed,
                             std::size_t limit = kDefaultLimit);

/// Random integer gamble with values in [-range, range]. Uses only the raw
/// engine output, so a given seed yields the same gamble on every platform.
Gamble random_gamble(const Domain& domain, std::mt19937_64& rng, int range = 10);

}  // namespace pbx::oracle
