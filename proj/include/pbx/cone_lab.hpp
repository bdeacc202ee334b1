#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pbx/core.hpp"
#include "pbx/generator_set.hpp"
#include "pbx/parallel.hpp"

namespace pbx {

/// Largest domain for which the structural MESC list is materialized.
inline constexpr std::size_t kMaxStructuralDomain = 14;

/// Gap pattern between consecutive chain anchors (left, right]:
/// Case1 (+,+), Case2 (+,-), Case3 (-,+), Case4 (-,-). The bottom anchor
/// A_0 = {} counts as positive.
enum class GapKind { Case1, Case2, Case3, Case4 };

std::string to_string(GapKind kind);

struct GapCase {
  std::size_t left = 0;   // 0 for the empty bottom anchor
  std::size_t right = 0;
  Sign left_sign = Sign::Plus;
  Sign right_sign = Sign::Plus;
  GapKind kind = GapKind::Case1;
  std::vector<std::size_t> present;  // singleton positions inside the gap
  // The one position in (left, right] without a singleton: the extreme F
  // jumps from F(left) to F(right) there.
  std::size_t jump = 0;

  bool bottom() const { return left == 0; }
  std::size_t width() const { return right - left; }
};

enum class MescRule {
  Ok,
  OmegaMissing,
  BothSigns,
  ForbiddenSingleton,
  GapPatternViolation,
  WrongCardinality,
  RankDeficient,
};

std::string to_string(MescRule rule);

struct ValidationReport {
  MescRule rule = MescRule::Ok;
  std::size_t index = 0;  // offending position, when there is one
  std::string detail;
  std::vector<GapCase> gaps;  // filled only when ok()

  bool ok() const { return rule == MescRule::Ok; }
  std::string describe() const;
};

/// Structural MESC test: Omega, sign/singleton rules, per-gap patterns,
/// cardinality, and finally a rank self-test (RankDeficient would mean the
/// structural rules are wrong, not that the input is).
ValidationReport mesc_validate(const GeneratorSet& g);

/// Throws Error(InvalidGeneratorSet) with the report unless g is a MESC.
std::vector<GapCase> require_mesc(const GeneratorSet& g);

/// Every structural MESC on n points, each subset family once, sorted.
std::vector<GeneratorSet> enumerate_mescs(std::size_t n, Exec exec = Exec::Parallel);

/// Cached enumerate_mescs(n); safe to call concurrently.
const std::vector<GeneratorSet>& structural_mescs(std::size_t n);

/// Singletons {x_s} whose addition turns `partial` into a MESC.
std::vector<std::size_t> singleton_completions(const GeneratorSet& partial);

enum class Membership { Interior, Boundary, Outside };

std::string to_string(Membership m);

struct ConeMembership {
  Membership kind;
  // Coefficient of each member indicator, aligned with GeneratorSet::members().
  RationalVector coefficients;
  // Coefficient of 1_Omega (unconstrained lineality direction).
  Rational omega;
};

/// Unique expansion of h in the basis given by the MESC g. Interior iff every
/// non-Omega coefficient is positive. Throws DomainMismatch or InvalidGeneratorSet.
ConeMembership cone_contains(const Gamble& h, const GeneratorSet& g);

/// True iff the indicator of the member swapped out of `a` and the one swapped
/// into `b` lie strictly on opposite sides of the hyperplane spanned by the
/// n-1 shared members. Throws NotSwapPair or DegenerateKernel.
bool adjacency_sign_test(const GeneratorSet& a, const GeneratorSet& b);

/// h lies in the relative interior of the cone spanned by the chain part of g
/// (plus the Omega line) iff h is constant between consecutive chain indices
/// and h[i] - h[i+1] has the sign of the chain entry at i.
bool chain_part_interior(const Gamble& h, const GeneratorSet& g);

}  // namespace pbx
