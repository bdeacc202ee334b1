#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pbx/linalg.hpp"

namespace pbx {

/// Largest domain the subset-family machinery accepts (families are bitmasks).
inline constexpr std::size_t kMaxFamilyDomain = 62;

enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

/// One constraint set of the p-box credal set: a prefix A_i = {x_1..x_i}, its
/// complement A_i^c, or a singleton {x_i}. Omega is the prefix A_n.
struct Generator {
  enum class Kind : std::uint8_t { Prefix, CoPrefix, Singleton };

  Kind kind;
  std::size_t index;  // 1-based

  static Generator prefix(std::size_t i) { return {Kind::Prefix, i}; }
  static Generator co_prefix(std::size_t i) { return {Kind::CoPrefix, i}; }
  static Generator singleton(std::size_t i) { return {Kind::Singleton, i}; }
  static Generator omega(std::size_t n) { return {Kind::Prefix, n}; }

  bool is_chain() const { return kind != Kind::Singleton; }
  Sign sign() const { return kind == Kind::CoPrefix ? Sign::Minus : Sign::Plus; }

  /// Chain members by index, then singletons by index.
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    const auto key = [](const Generator& g) {
      return std::tuple(g.kind == Kind::Singleton, g.index, static_cast<int>(g.kind));
    };
    return key(a) <=> key(b);
  }
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Canonical representative of the set denoted by g on a domain of size n:
/// {x_1} is stored as A_1, {x_n} as A_{n-1}^c, and A_0^c as Omega.
/// Throws std::invalid_argument for indices that denote no nonempty set.
Generator canonical(std::size_t n, Generator g);

bool is_omega(std::size_t n, Generator g);

/// Bit i-1 set iff x_i belongs to the set.
std::uint64_t mask(std::size_t n, Generator g);

linalg::IntVector indicator(std::size_t n, Generator g);

/// "A3", "A3^c", "{4}", or "Ω".
std::string to_string(std::size_t n, Generator g);

/// Accepts the to_string forms (also "Omega" and "A3c").
Generator parse_generator(std::size_t n, std::string_view text);

/// Every constraint set other than Omega, once each, in canonical form.
std::vector<Generator> constraint_generators(std::size_t n);

struct ChainEntry {
  std::size_t index;
  Sign sign;
  friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
};

/// A family of constraint sets, stored canonically and sorted. Two
/// GeneratorSets compare equal iff they denote the same subset family.
/// Duplicates are retained so that validation can report them.
class GeneratorSet {
 public:
  GeneratorSet(std::size_t n, std::vector<Generator> members);

  static GeneratorSet from_chain(std::size_t n, std::span<const ChainEntry> chain,
                                 std::span<const std::size_t> singletons);

  /// Parses "{A1, A2^c, A4, Ω, {4}}".
  static GeneratorSet parse(std::size_t n, std::string_view text);

  /// The all-prefix family {A_1, ..., A_n}.
  static GeneratorSet full_chain(std::size_t n);

  std::size_t domain_size() const { return n_; }
  std::size_t size() const { return members_.size(); }
  std::span<const Generator> members() const { return members_; }

  /// Prefix/co-prefix members in index order (Omega last).
  std::vector<ChainEntry> chain() const;
  std::vector<std::size_t> singletons() const;

  /// Sorted subset bitmasks.
  std::vector<std::uint64_t> family() const;

  bool contains(Generator g) const;

  /// Copy with `out` removed and `in` added.
  GeneratorSet replaced(Generator out, Generator in) const;

  std::string str() const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }
  friend std::strong_ordering operator<=>(const GeneratorSet& a, const GeneratorSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.members_ <=> b.members_;
  }

  std::size_t hash() const;

 private:
  std::size_t n_;
  std::vector<Generator> members_;
};

/// Hash of the sorted subset family.
std::size_t family_hash(const GeneratorSet& g);

}  // namespace pbx

template <>
struct std::hash<pbx::GeneratorSet> {
  std::size_t operator()(const pbx::GeneratorSet& g) const noexcept { return g.hash(); }
};
