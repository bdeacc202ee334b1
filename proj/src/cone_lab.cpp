#include "pbx/cone_lab.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "pbx/error.hpp"
#include "pbx/linalg.hpp"

namespace pbx {

std::string to_string(GapKind kind) {
  switch (kind) {
    case GapKind::Case1: return "Case 1";
    case GapKind::Case2: return "Case 2";
    case GapKind::Case3: return "Case 3";
    case GapKind::Case4: return "Case 4";
  }
  return "?";
}

std::string to_string(MescRule rule) {
  switch (rule) {
    case MescRule::Ok: return "Ok";
    case MescRule::OmegaMissing: return "OmegaMissing";
    case MescRule::BothSigns: return "BothSigns";
    case MescRule::ForbiddenSingleton: return "ForbiddenSingleton";
    case MescRule::GapPatternViolation: return "GapPatternViolation";
    case MescRule::WrongCardinality: return "WrongCardinality";
    case MescRule::RankDeficient: return "RankDeficient";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

std::string ValidationReport::describe() const {
  if (ok()) return "Ok";
  std::string s = to_string(rule);
  if (index != 0) s += "(" + std::to_string(index) + ")";
  if (!detail.empty()) s += ": " + detail;
  return s;
}

namespace {

GapKind gap_kind(Sign left, Sign right) {
  if (left == Sign::Plus) return right == Sign::Plus ? GapKind::Case1 : GapKind::Case2;
  return right == Sign::Plus ? GapKind::Case3 : GapKind::Case4;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {  // [from, to]
  std::vector<std::size_t> v;
  for (std::size_t i = from; i <= to; ++i) v.push_back(i);
  return v;
}

ValidationReport fail(MescRule rule, std::size_t index, std::string detail) {
  ValidationReport r;
  r.rule = rule;
  r.index = index;
  r.detail = std::move(detail);
  return r;
}

// Checks the singleton pattern of one gap; fills gap.jump on success.
bool check_gap(GapCase& gap) {
  const std::size_t a = gap.left;
  const std::size_t b = gap.right;
  switch (gap.kind) {
    case GapKind::Case1:
      if (gap.present != range(a + 2, b)) return false;
      gap.jump = a + 1;
      return true;
    case GapKind::Case2:
      if (b - a != 1 || !gap.present.empty()) return false;
      gap.jump = b;
      return true;
    case GapKind::Case3: {
      if (gap.present.size() + 1 != b - a) return false;
      std::size_t k = a + 1;
      for (std::size_t s : gap.present) {
        if (s != k) break;
        ++k;
      }
      gap.jump = k;
      return true;
    }
    case GapKind::Case4:
      if (gap.present != range(a + 1, b - 1)) return false;
      gap.jump = b;
      return true;
  }
  return false;
}

std::string gap_label(const GapCase& gap) {
  return "gap (" + std::to_string(gap.left) + "," + std::to_string(gap.right) + "] " + to_string(gap.kind);
}

linalg::IntVector mask_vector(std::size_t n, std::uint64_t m) {
  linalg::IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (m >> i) & 1U;
  return v;
}

}  // namespace

ValidationReport mesc_validate(const GeneratorSet& g) {
  const std::size_t n = g.domain_size();
  const auto members = g.members();

  if (!g.contains(Generator::omega(n))) return fail(MescRule::OmegaMissing, 0, "Ω is not in " + g.str());
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i] == members[i - 1]) {
      return fail(MescRule::WrongCardinality, members[i].index, "duplicate member " + to_string(n, members[i]));
    }
  }

  const auto chain = g.chain();
  const auto singletons = g.singletons();
  for (std::size_t j = 1; j < chain.size(); ++j) {
    if (chain[j].index == chain[j - 1].index) {
      return fail(MescRule::BothSigns, chain[j].index, "A" + std::to_string(chain[j].index) + " and its complement");
    }
  }
  const auto has_singleton = [&](std::size_t s) { return std::binary_search(singletons.begin(), singletons.end(), s); };
  for (const auto& e : chain) {
    if (e.sign == Sign::Plus && has_singleton(e.index + 1)) {
      return fail(MescRule::ForbiddenSingleton, e.index + 1,
                  "rule iii: A" + std::to_string(e.index) + " excludes {" + std::to_string(e.index + 1) + "}");
    }
    if (e.sign == Sign::Minus && has_singleton(e.index)) {
      return fail(MescRule::ForbiddenSingleton, e.index,
                  "rule iv: A" + std::to_string(e.index) + "^c excludes {" + std::to_string(e.index) + "}");
    }
  }

  std::vector<GapCase> gaps;
  std::size_t prev = 0;
  Sign prev_sign = Sign::Plus;
  for (const auto& e : chain) {
    GapCase gap;
    gap.left = prev;
    gap.right = e.index;
    gap.left_sign = prev_sign;
    gap.right_sign = e.sign;
    gap.kind = gap_kind(prev_sign, e.sign);
    for (std::size_t s : singletons) {
      if (s > prev && s <= e.index) gap.present.push_back(s);
    }
    if (!check_gap(gap)) return fail(MescRule::GapPatternViolation, gap.right, gap_label(gap));
    gaps.push_back(std::move(gap));
    prev = e.index;
    prev_sign = e.sign;
  }

  if (g.size() != n) {
    return fail(MescRule::WrongCardinality, 0, std::to_string(g.size()) + " members on " + std::to_string(n) + " points");
  }

  std::vector<linalg::IntVector> rows;
  for (const auto& m : members) rows.push_back(indicator(n, m));
  if (linalg::rank(linalg::IntMatrix::from_rows(rows)) != n) {
    return fail(MescRule::RankDeficient, 0, "structurally valid family " + g.str() + " is linearly dependent");
  }

  ValidationReport ok;
  ok.gaps = std::move(gaps);
  return ok;
}

std::vector<GapCase> require_mesc(const GeneratorSet& g) {
  auto report = mesc_validate(g);
  if (!report.ok()) throw Error(ErrorCode::InvalidGeneratorSet, g.str() + " is not a MESC: " + report.describe());
  return std::move(report.gaps);
}

namespace {

struct PartialMesc {
  std::vector<ChainEntry> chain;
  std::vector<std::size_t> singletons;
};

// Singleton configurations allowed in the gap (a, b] for the given anchor
// signs, already restricted to canonical positions 2..n-1.
std::vector<std::vector<std::size_t>> gap_options(std::size_t n, std::size_t a, Sign sa, std::size_t b, Sign sb) {
  std::vector<std::vector<std::size_t>> out;
  switch (gap_kind(sa, sb)) {
    case GapKind::Case1: out.push_back(range(a + 2, b)); break;
    case GapKind::Case2:
      if (b - a == 1) out.emplace_back();
      break;
    case GapKind::Case3:
      for (std::size_t k = a + 1; k <= b; ++k) {
        std::vector<std::size_t> s;
        for (std::size_t x = a + 1; x <= b; ++x) {
          if (x != k) s.push_back(x);
        }
        out.push_back(std::move(s));
      }
      break;
    case GapKind::Case4: out.push_back(range(a + 1, b - 1)); break;
  }
  if (n > 1) {
    std::erase_if(out, [n](const std::vector<std::size_t>& s) {
      return std::any_of(s.begin(), s.end(), [n](std::size_t x) { return x == 1 || x == n; });
    });
  }
  return out;
}

// Extends `p` by every admissible next anchor after position a.
template <class Emit>
void for_each_step(std::size_t n, std::size_t a, Sign sa, const PartialMesc& p, Emit&& emit) {
  for (std::size_t b = a + 1; b <= n; ++b) {
    for (Sign sb : {Sign::Plus, Sign::Minus}) {
      if (b == n && sb == Sign::Minus) continue;
      for (auto& option : gap_options(n, a, sa, b, sb)) {
        PartialMesc next = p;
        next.chain.push_back({b, sb});
        next.singletons.insert(next.singletons.end(), option.begin(), option.end());
        emit(std::move(next));
      }
    }
  }
}

void extend(std::size_t n, const PartialMesc& p, std::vector<GeneratorSet>& out) {
  const std::size_t a = p.chain.empty() ? 0 : p.chain.back().index;
  const Sign sa = p.chain.empty() ? Sign::Plus : p.chain.back().sign;
  if (a == n) {
    out.push_back(GeneratorSet::from_chain(n, p.chain, p.singletons));
    return;
  }
  for_each_step(n, a, sa, p, [&](PartialMesc next) { extend(n, next, out); });
}

}  // namespace

std::vector<GeneratorSet> enumerate_mescs(std::size_t n, Exec exec) {
  if (n == 0 || n > kMaxStructuralDomain) {
    throw Error(ErrorCode::DomainTooLarge, "structural MESC enumeration supports 1.." +
                                               std::to_string(kMaxStructuralDomain) + " points, got " + std::to_string(n));
  }
  std::vector<PartialMesc> roots;
  for_each_step(n, 0, Sign::Plus, PartialMesc{}, [&](PartialMesc next) { roots.push_back(std::move(next)); });

  std::vector<std::vector<GeneratorSet>> parts(roots.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < roots.size(); ++i) extend(n, roots[i], parts[i]);
  } else {
    for (std::size_t i = 0; i < roots.size(); ++i) extend(n, roots[i], parts[i]);
  }

  std::vector<GeneratorSet> out;
  for (auto& part : parts) out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<GeneratorSet>& structural_mescs(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const std::vector<GeneratorSet>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const std::vector<GeneratorSet>>(enumerate_mescs(n, Exec::Serial));
  return *slot;
}

std::vector<std::size_t> singleton_completions(const GeneratorSet& partial) {
  const std::size_t n = partial.domain_size();
  std::vector<std::size_t> out;
  for (std::size_t s = 1; s <= n; ++s) {
    std::vector<Generator> members(partial.members().begin(), partial.members().end());
    members.push_back(Generator::singleton(s));
    if (mesc_validate(GeneratorSet(n, std::move(members))).ok()) out.push_back(s);
  }
  return out;
}

ConeMembership cone_contains(const Gamble& h, const GeneratorSet& g) {
  const std::size_t n = g.domain_size();
  if (h.size() != n) {
    throw Error(ErrorCode::DomainMismatch, "gamble has " + std::to_string(h.size()) + " values, generator family " +
                                               std::to_string(n) + " points");
  }
  require_mesc(g);
  std::vector<linalg::IntVector> cols;
  for (const auto& m : g.members()) cols.push_back(indicator(n, m));
  auto solution = linalg::solve(linalg::IntMatrix::from_columns(cols), h.values());
  if (!solution) throw Error(ErrorCode::InvalidGeneratorSet, g.str() + " is not a basis");

  ConeMembership result{Membership::Interior, std::move(*solution), Rational(0)};
  bool any_zero = false;
  bool any_negative = false;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const int sign = result.coefficients[j].sign();
    if (is_omega(n, g.members()[j])) {
      result.omega = result.coefficients[j];
      continue;
    }
    any_zero = any_zero || sign == 0;
    any_negative = any_negative || sign < 0;
  }
  if (any_negative) {
    result.kind = Membership::Outside;
  } else if (any_zero) {
    result.kind = Membership::Boundary;
  }
  return result;
}

bool adjacency_sign_test(const GeneratorSet& a, const GeneratorSet& b) {
  const std::size_t n = a.domain_size();
  if (b.domain_size() != n) throw Error(ErrorCode::DomainMismatch, "generator families on different domains");
  const auto fa = a.family();
  const auto fb = b.family();
  std::vector<std::uint64_t> shared;
  std::vector<std::uint64_t> only_a;
  std::vector<std::uint64_t> only_b;
  std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(shared));
  std::set_difference(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(only_a));
  std::set_difference(fb.begin(), fb.end(), fa.begin(), fa.end(), std::back_inserter(only_b));
  if (shared.size() + 1 != n || only_a.size() != 1 || only_b.size() != 1) {
    throw Error(ErrorCode::NotSwapPair, a.str() + " and " + b.str() + " share " + std::to_string(shared.size()) +
                                            " members, expected " + std::to_string(n - 1));
  }
  std::vector<linalg::IntVector> rows;
  for (std::uint64_t m : shared) rows.push_back(mask_vector(n, m));
  const auto t = linalg::kernel_vector(n == 1 ? linalg::IntMatrix(0, 1) : linalg::IntMatrix::from_rows(rows));
  if (!t) throw Error(ErrorCode::DegenerateKernel, "shared members of " + a.str() + " and " + b.str() + " are dependent");
  const std::int64_t fa_t = linalg::dot(mask_vector(n, only_a.front()), *t);
  const std::int64_t fb_t = linalg::dot(mask_vector(n, only_b.front()), *t);
  return (fa_t > 0 && fb_t < 0) || (fa_t < 0 && fb_t > 0);
}

bool chain_part_interior(const Gamble& h, const GeneratorSet& g) {
  const std::size_t n = g.domain_size();
  if (h.size() != n) throw Error(ErrorCode::DomainMismatch, "gamble and generator family sizes differ");
  const auto alpha = chain_decompose(h).alpha;
  std::vector<int> expected(n + 1, 0);
  for (const auto& e : g.chain()) {
    if (e.index == n) continue;
    if (expected[e.index] != 0) return false;
    expected[e.index] = static_cast<int>(e.sign);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (alpha[i - 1].sign() != expected[i]) return false;
  }
  return true;
}

}  // namespace pbx
