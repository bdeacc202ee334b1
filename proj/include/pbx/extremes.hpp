#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pbx/cone_lab.hpp"
#include "pbx/core.hpp"
#include "pbx/generator_set.hpp"
#include "pbx/parallel.hpp"

namespace pbx {

/// Why a structurally valid MESC has no extreme point on a given p-box.
struct Infeasible {
  GapKind kind;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t index = 0;  // first position where F leaves the bounds or decreases
  std::string condition;
};

using Realization = std::variant<StepCDF, Infeasible>;

/// Solves the active constraints of g on the p-box (prefix members at the lower
/// bound, co-prefix members at the upper bound, singleton members with zero
/// mass) and returns F if it is a distribution inside the bounds. The solve is
/// cross-checked against the per-gap closed forms; a disagreement throws
/// std::logic_error. Throws InvalidGeneratorSet or DomainMismatch.
Realization extreme_from_mesc(const GeneratorSet& g, const PBox& pbox);

/// Same as extreme_from_mesc without the cross-check; nullopt when infeasible.
std::optional<StepCDF> realize(const GeneratorSet& g, const PBox& pbox);

struct Neighbor {
  GeneratorSet mesc;
  Generator added;
  StepCDF cdf;
};

/// Feasible MESCs adjacent to g across the facet opposite `out`. Candidates
/// come from the case tables for the gap or chain pattern around `out` and are
/// kept only if they pass the sign test and are feasible; a tie in the case
/// condition yields both. Throws GeneratorNotInSet, OmegaNotReplaceable, or
/// InfeasibleInput.
std::vector<Neighbor> adjacent_mesc(const GeneratorSet& g, Generator out, const PBox& pbox);

struct ExtremePoint {
  StepCDF cdf;
  std::vector<GeneratorSet> witnesses;  // sorted, nonempty
};

enum class Method { Structural, Bfs };

std::string to_string(Method m);

/// All extreme points, sorted by F. Structural filters every MESC of the
/// domain; Bfs walks adjacent_mesc from the all-prefix chain (F = low).
std::vector<ExtremePoint> enumerate_extremes(const PBox& pbox, Method method = Method::Structural,
                                             Exec exec = Exec::Parallel);

/// Feasible MESCs reachable from the all-prefix chain, sorted.
std::vector<GeneratorSet> bfs_mescs(const PBox& pbox, Exec exec = Exec::Parallel);

/// Feasible MESCs from the structural list, sorted.
std::vector<GeneratorSet> feasible_mescs(const PBox& pbox, Exec exec = Exec::Parallel);

struct Bound {
  Rational value;
  ExtremePoint point;
};

/// Minimum of E_F[h] over the extreme points; ties go to the smallest F.
Bound lower_expectation(const Gamble& h, const PBox& pbox);
Bound lower_expectation(const Gamble& h, const std::vector<ExtremePoint>& extremes);

/// -lower_expectation(-h).
Bound upper_expectation(const Gamble& h, const PBox& pbox);
Bound upper_expectation(const Gamble& h, const std::vector<ExtremePoint>& extremes);

struct FanEdge {
  std::size_t from;  // node indices, from < to
  std::size_t to;
  Generator removed;  // member of nodes[from] not in nodes[to]
  Generator added;    // member of nodes[to] not in nodes[from]
  bool same_point;
};

struct FanGraph {
  std::vector<GeneratorSet> nodes;  // feasible MESCs, sorted
  std::vector<std::size_t> point_of;  // node -> index into points
  std::vector<StepCDF> points;        // distinct F, sorted
  std::vector<FanEdge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> quotient_edges;  // point pairs (p < q)

  std::vector<std::vector<std::size_t>> point_neighbors() const;
  std::vector<ExtremePoint> extremes() const;
};

FanGraph build_fan(const PBox& pbox, Exec exec = Exec::Parallel);

struct WalkResult {
  ExtremePoint point;
  Rational value;
  std::size_t steps = 0;
};

/// Steepest descent of E_F[h] over the quotient graph, starting at the extreme
/// point of `start`. Moves only on strict improvement; among equally good
/// neighbors the smallest F wins. Throws InfeasibleStart.
WalkResult argmin_walk(const Gamble& h, const FanGraph& fan, const GeneratorSet& start);
WalkResult argmin_walk(const Gamble& h, const PBox& pbox, const GeneratorSet& start);

}  // namespace pbx
