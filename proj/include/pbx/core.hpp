#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbx/error.hpp"
#include "pbx/rational.hpp"

namespace pbx {

using RationalVector = std::vector<Rational>;

/// Ordered finite domain x_1 < ... < x_n. Labels are opaque tokens; only
/// their position matters. Positions are 1-based throughout the public API.
class Domain {
 public:
  explicit Domain(std::vector<std::string> labels);

  /// Domain labelled "1".."n".
  static Domain integers(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t position) const { return labels_.at(position - 1); }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Throws Error(DomainMismatch) unless the two domains coincide.
void require_same_domain(const Domain& a, const Domain& b, const char* what);

/// Distribution function on a finite ordered domain. F(0) = 0 is a virtual
/// value served by at(0); it is never stored.
class StepCDF {
 public:
  /// Validates: nondecreasing, within [0,1], last value 1.
  StepCDF(Domain domain, RationalVector values);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  const RationalVector& values() const { return values_; }

  /// F(x_i) for i in 0..n; at(0) == 0.
  Rational at(std::size_t i) const;

  friend bool operator==(const StepCDF& a, const StepCDF& b) { return a.values_ == b.values_; }
  /// Lexicographic by values; used for deterministic listings.
  friend std::strong_ordering operator<=>(const StepCDF& a, const StepCDF& b) {
    return a.values_ <=> b.values_;
  }

 private:
  Domain domain_;
  RationalVector values_;
};

class MassFunction {
 public:
  /// Validates: nonnegative entries summing to one.
  MassFunction(Domain domain, RationalVector masses);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return masses_.size(); }
  const RationalVector& masses() const { return masses_; }
  const Rational& at(std::size_t position) const { return masses_.at(position - 1); }

  friend bool operator==(const MassFunction& a, const MassFunction& b) { return a.masses_ == b.masses_; }

 private:
  Domain domain_;
  RationalVector masses_;
};

/// Real-valued function on the domain.
class Gamble {
 public:
  Gamble(Domain domain, RationalVector values);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  const RationalVector& values() const { return values_; }
  const Rational& at(std::size_t position) const { return values_.at(position - 1); }

  Gamble operator-() const;
  friend Gamble operator+(const Gamble& a, const Gamble& b);

 private:
  Domain domain_;
  RationalVector values_;
};

/// Coefficients of h in the prefix-indicator basis: h = sum_i alpha[i] 1_{A_i}.
struct ChainCoefficients {
  RationalVector alpha;

  /// h[i] = sum_{j >= i} alpha[j].
  RationalVector reconstruct() const;
};

enum class Side { Lower, Upper };

enum class PBoxRule { NonMonotone, BoundOrderViolated, TerminalNotOne, ValueOutOfRange, LengthMismatch };

struct PBoxViolation {
  PBoxRule rule;
  std::optional<Side> side;
  std::size_t index = 0;  // 1-based position; 0 when not applicable

  std::string describe() const;
};

struct PBoxCheck;

/// Pair of step CDFs low <= up on one ordered domain.
class PBox {
 public:
  /// Throws Error(InvariantViolation) listing every violated invariant.
  PBox(Domain domain, RationalVector low, RationalVector up);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return low_.size(); }
  const RationalVector& low() const { return low_; }
  const RationalVector& up() const { return up_; }

  /// 1-based accessors; position 0 returns 0 for both bounds.
  Rational low_at(std::size_t i) const;
  Rational up_at(std::size_t i) const;

  /// low == up everywhere.
  bool is_precise() const { return low_ == up_; }

  friend bool operator==(const PBox& a, const PBox& b) {
    return a.domain_ == b.domain_ && a.low_ == b.low_ && a.up_ == b.up_;
  }

 private:
  friend PBoxCheck pbox_validate(RationalVector, RationalVector, Domain);
  struct Unchecked {};
  PBox(Unchecked, Domain domain, RationalVector low, RationalVector up)
      : domain_(std::move(domain)), low_(std::move(low)), up_(std::move(up)) {}

  Domain domain_;
  RationalVector low_;
  RationalVector up_;
};

struct PBoxCheck {
  std::optional<PBox> pbox;  // set iff violations is empty
  std::vector<PBoxViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Checks every p-box invariant and reports all violations (with 1-based index).
PBoxCheck pbox_validate(RationalVector low, RationalVector up, Domain domain);

/// Vacuous p-box: low = (0,...,0,1), up = (1,...,1).
PBox vacuous_pbox(const Domain& domain);

/// Degenerate p-box low = up = F.
PBox precise_pbox(const StepCDF& cdf);

MassFunction to_mass(const StepCDF& cdf);
StepCDF to_cdf(const MassFunction& mass);

ChainCoefficients chain_decompose(const Gamble& h);

/// sum_i h[i] p[i]. Throws Error(DomainMismatch).
Rational expectation(const MassFunction& p, const Gamble& h);
/// Evaluated as sum_i alpha[i] F[i] with alpha = chain_decompose(h).
Rational expectation(const StepCDF& F, const Gamble& h);

/// Convenience: parse each string with Rational::parse.
RationalVector parse_rationals(std::span<const std::string> texts);
/// Parses a comma separated list such as "1/5, 0.4, 1".
RationalVector parse_rational_list(std::string_view text);

std::string join(const RationalVector& values, std::string_view sep = ", ");

}  // namespace pbx
