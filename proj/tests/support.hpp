#pragma once

// Test-only helpers: random and grid p-box generators plus small brute-force
// oracles that share no code with the library's combinatorics.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "pbx/core.hpp"

namespace pbx::testing {

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline RationalVector fractions(std::vector<long> nums, long den) {
  RationalVector v;
  for (long x : nums) v.emplace_back(x, den);
  return v;
}

/// Random p-box with bounds on a grid of 1/den, den drawn from a small set.
inline PBox random_pbox(std::size_t n, std::mt19937_64& rng) {
  static const long dens[] = {2, 3, 4, 5, 6, 8, 10};
  const long den = dens[uniform(rng, 7)];
  std::vector<long> a;
  std::vector<long> b;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a.push_back(static_cast<long>(uniform(rng, den + 1)));
    b.push_back(static_cast<long>(uniform(rng, den + 1)));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.push_back(den);
  b.push_back(den);
  std::vector<long> lo;
  std::vector<long> up;
  for (std::size_t i = 0; i < n; ++i) {
    lo.push_back(std::min(a[i], b[i]));
    up.push_back(std::max(a[i], b[i]));
  }
  return PBox(Domain::integers(n), fractions(lo, den), fractions(up, den));
}

/// Random distribution function on n points with denominators up to 12.
inline StepCDF random_cdf(std::size_t n, std::mt19937_64& rng) {
  const long den = 1 + static_cast<long>(uniform(rng, 12));
  std::vector<long> v;
  for (std::size_t i = 0; i + 1 < n; ++i) v.push_back(static_cast<long>(uniform(rng, den + 1)));
  std::sort(v.begin(), v.end());
  v.push_back(den);
  return StepCDF(Domain::integers(n), fractions(v, den));
}

inline Gamble random_gamble(std::size_t n, std::mt19937_64& rng, long range = 20) {
  RationalVector h;
  for (std::size_t i = 0; i < n; ++i) h.emplace_back(static_cast<long>(uniform(rng, 2 * range + 1)) - range);
  return Gamble(Domain::integers(n), std::move(h));
}

/// Calls visit(pbox) for every valid p-box on n points whose bounds lie on
/// the grid {0, 1/steps, ..., 1}.
inline void for_each_grid_pbox(std::size_t n, long steps, const std::function<void(const PBox&)>& visit) {
  std::vector<std::vector<long>> seqs;
  std::vector<long> cur;
  std::function<void()> rec = [&] {
    if (cur.size() + 1 == n) {
      auto s = cur;
      s.push_back(steps);
      seqs.push_back(s);
      return;
    }
    for (long v = cur.empty() ? 0 : cur.back(); v <= steps; ++v) {
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  for (const auto& lo : seqs) {
    for (const auto& up : seqs) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = lo[i] <= up[i];
      if (ok) visit(PBox(Domain::integers(n), fractions(lo, steps), fractions(up, steps)));
    }
  }
}

/// Rank over the rationals by plain Gauss-Jordan on Rational entries.
inline std::size_t rational_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

inline RationalVector mask_row(std::size_t n, std::uint64_t m) {
  RationalVector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<long>((m >> i) & 1U));
  return v;
}

/// Every family of n distinct constraint sets (as bitmasks) that contains
/// Omega, has rank n, and obeys the structural rules: no set together with its
/// complement, A_i excludes {x_{i+1}}, A_i^c excludes {x_i}. Pure brute force
/// over subsets of the distinct sets.
inline std::set<std::vector<std::uint64_t>> brute_force_mesc_families(std::size_t n) {
  const std::uint64_t full = (n >= 64) ? ~0ULL : ((1ULL << n) - 1);
  const auto prefix = [](std::size_t i) { return (1ULL << i) - 1; };
  std::set<std::uint64_t> sets;
  for (std::size_t i = 1; i < n; ++i) {
    sets.insert(prefix(i));
    sets.insert(full & ~prefix(i));
  }
  for (std::size_t i = 1; i <= n; ++i) sets.insert(1ULL << (i - 1));
  sets.erase(full);
  const std::vector<std::uint64_t> pool(sets.begin(), sets.end());
  const auto has = [](const std::vector<std::uint64_t>& fam, std::uint64_t m) {
    return std::find(fam.begin(), fam.end(), m) != fam.end();
  };

  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> fam;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (fam.size() + 1 == n) {
      std::vector<std::uint64_t> f = fam;
      f.push_back(full);
      for (std::size_t i = 1; i < n; ++i) {
        const std::uint64_t a = prefix(i);
        const std::uint64_t ac = full & ~a;
        if (has(f, a) && has(f, ac)) return;
        if (has(f, a) && has(f, 1ULL << i)) return;
        if (has(f, ac) && has(f, 1ULL << (i - 1))) return;
      }
      std::vector<RationalVector> rows;
      for (auto m : f) rows.push_back(mask_row(n, m));
      if (rational_rank(rows) != n) return;
      std::sort(f.begin(), f.end());
      out.insert(f);
      return;
    }
    for (std::size_t k = start; k < pool.size(); ++k) {
      fam.push_back(pool[k]);
      rec(k + 1);
      fam.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Rows of the constraints tight at F: Omega, A_i at the lower bound, A_i^c at
/// the upper bound (i < n), {x_i} with zero mass.
inline std::vector<RationalVector> tight_rows(const StepCDF& f, const PBox& pbox) {
  const std::size_t n = pbox.size();
  std::vector<RationalVector> rows{mask_row(n, (1ULL << n) - 1)};
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && f.at(i) == pbox.low_at(i)) rows.push_back(mask_row(n, (1ULL << i) - 1));
    if (i < n && f.at(i) == pbox.up_at(i)) rows.push_back(mask_row(n, ((1ULL << n) - 1) & ~((1ULL << i) - 1)));
    if (f.at(i) == f.at(i - 1)) rows.push_back(mask_row(n, 1ULL << (i - 1)));
  }
  return rows;
}

/// Two vertices of the credal polytope span an edge iff the constraints tight
/// at both have rank n - 1.
inline bool polytope_edge(const StepCDF& u, const StepCDF& v, const PBox& pbox) {
  const auto ru = tight_rows(u, pbox);
  const auto rv = tight_rows(v, pbox);
  std::vector<RationalVector> common;
  for (const auto& r : ru) {
    if (std::find(rv.begin(), rv.end(), r) != rv.end()) common.push_back(r);
  }
  return rational_rank(common) + 1 == pbox.size();
}

}  // namespace pbx::testing
