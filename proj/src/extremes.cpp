#include "pbx/extremes.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "pbx/error.hpp"
#include "pbx/linalg.hpp"

namespace pbx {

std::string to_string(Method m) { return m == Method::Structural ? "structural" : "bfs"; }

namespace {

void require_domain(const GeneratorSet& g, const PBox& pbox) {
  if (g.domain_size() != pbox.size()) {
    throw Error(ErrorCode::DomainMismatch, "generator family on " + std::to_string(g.domain_size()) +
                                               " points, p-box on " + std::to_string(pbox.size()));
  }
}

// F on positions 0..n from the per-gap closed forms: anchors sit at their
// active bound and each gap is flat on both sides of its jump.
RationalVector closed_form(const std::vector<GapCase>& gaps, const PBox& pbox) {
  const std::size_t n = pbox.size();
  RationalVector f(n + 1, Rational(0));
  for (const auto& gap : gaps) {
    f[gap.right] = gap.right_sign == Sign::Plus ? pbox.low_at(gap.right) : pbox.up_at(gap.right);
  }
  for (const auto& gap : gaps) {
    for (std::size_t x = gap.left + 1; x < gap.right; ++x) f[x] = x < gap.jump ? f[gap.left] : f[gap.right];
  }
  return f;
}

// Same F from the generic active-constraint system in mass coordinates.
RationalVector constraint_solve(const GeneratorSet& g, const PBox& pbox) {
  const std::size_t n = pbox.size();
  std::vector<linalg::IntVector> rows;
  RationalVector rhs;
  for (const auto& m : g.members()) {
    rows.push_back(indicator(n, m));
    switch (m.kind) {
      case Generator::Kind::Prefix: rhs.push_back(pbox.low_at(m.index)); break;
      case Generator::Kind::CoPrefix: rhs.push_back(Rational(1) - pbox.up_at(m.index)); break;
      case Generator::Kind::Singleton: rhs.push_back(Rational(0)); break;
    }
  }
  auto p = linalg::solve(linalg::IntMatrix::from_rows(rows), rhs);
  if (!p) throw std::logic_error("active constraints of " + g.str() + " are singular");
  RationalVector f(n + 1, Rational(0));
  for (std::size_t i = 1; i <= n; ++i) f[i] = f[i - 1] + (*p)[i - 1];
  return f;
}

std::string gap_requirement(const GapCase& gap) {
  const auto a = std::to_string(gap.left);
  const auto b = std::to_string(gap.right);
  switch (gap.kind) {
    case GapKind::Case1: return "up(" + std::to_string(gap.left + 1) + ") >= low(" + b + ")";
    case GapKind::Case2: return "low(" + a + ") <= up(" + b + ")";
    case GapKind::Case3:
      return "up(" + a + ") <= low(" + b + "), low(" + std::to_string(gap.jump - 1) + ") <= up(" + a + "), low(" + b +
             ") <= up(" + std::to_string(gap.jump) + ")";
    case GapKind::Case4: return "low(" + std::to_string(gap.right - 1) + ") <= up(" + a + ")";
  }
  return "";
}

std::optional<Infeasible> check_bounds(const RationalVector& f, const std::vector<GapCase>& gaps, const PBox& pbox) {
  const std::size_t n = pbox.size();
  for (std::size_t i = 1; i <= n; ++i) {
    std::string what;
    if (f[i] < f[i - 1]) {
      what = "F(" + std::to_string(i) + ") = " + f[i].str() + " < F(" + std::to_string(i - 1) + ") = " + f[i - 1].str();
    } else if (f[i] < pbox.low_at(i)) {
      what = "F(" + std::to_string(i) + ") = " + f[i].str() + " < low(" + std::to_string(i) + ") = " + pbox.low_at(i).str();
    } else if (f[i] > pbox.up_at(i)) {
      what = "F(" + std::to_string(i) + ") = " + f[i].str() + " > up(" + std::to_string(i) + ") = " + pbox.up_at(i).str();
    } else {
      continue;
    }
    const auto gap = std::find_if(gaps.begin(), gaps.end(), [i](const GapCase& c) { return c.left < i && i <= c.right; });
    return Infeasible{gap->kind, gap->left, gap->right, i,
                      to_string(gap->kind) + " gap (" + std::to_string(gap->left) + "," + std::to_string(gap->right) +
                          "] requires " + gap_requirement(*gap) + "; " + what};
  }
  return std::nullopt;
}

StepCDF to_step_cdf(const RationalVector& f, const PBox& pbox) {
  return StepCDF(pbox.domain(), RationalVector(f.begin() + 1, f.end()));
}

// Replacement candidates for `out` from the case tables. Candidates may be
// out of range or structurally invalid; the caller filters them.
std::vector<Generator> table_candidates(const std::vector<GapCase>& gaps, Generator out) {
  std::vector<Generator> c;
  const auto jump_of = [&](std::size_t right) {
    return std::find_if(gaps.begin(), gaps.end(), [right](const GapCase& g) { return g.right == right; })->jump;
  };
  if (out.kind == Generator::Kind::Singleton) {
    const std::size_t s = out.index;
    const auto gap = *std::find_if(gaps.begin(), gaps.end(), [s](const GapCase& g) { return g.left < s && s <= g.right; });
    const std::size_t a = gap.left;
    switch (gap.kind) {
      case GapKind::Case1:
        c = {Generator::prefix(s - 1), Generator::co_prefix(a + 1)};
        break;
      case GapKind::Case3: {
        const std::size_t i = s - a;
        const std::size_t j = gap.jump - a;
        c = {Generator::singleton(gap.jump), Generator::prefix(a + std::max(i, j) - 1),
             Generator::co_prefix(a + std::min(i, j))};
        break;
      }
      case GapKind::Case4:
        c = {Generator::co_prefix(s), Generator::prefix(gap.right - 1)};
        break;
      case GapKind::Case2: break;
    }
    return c;
  }

  const std::size_t q = out.index;
  const auto pos = static_cast<std::size_t>(
      std::find_if(gaps.begin(), gaps.end(), [q](const GapCase& g) { return g.right == q; }) - gaps.begin());
  const GapCase& before = gaps[pos];
  const GapCase& after = gaps[pos + 1];
  const std::size_t a = before.left;
  const std::size_t cn = after.right;
  const bool sp = before.left_sign == Sign::Plus;
  const bool sq = out.sign() == Sign::Plus;
  const bool sn = after.right_sign == Sign::Plus;
  if (sp && sq && sn) {
    c = {Generator::co_prefix(a + 1), Generator::singleton(q + 1)};
  } else if (sp && !sq && sn) {
    const std::size_t k = jump_of(cn);
    c = {Generator::prefix(k - 1), Generator::singleton(k)};
  } else if (sp && sq && !sn) {
    c = {Generator::co_prefix(a + 1)};
  } else if (sp && !sq && !sn) {
    c = {Generator::prefix(cn - 1)};
  } else if (!sp && sq && sn) {
    c = {Generator::co_prefix(jump_of(q)), Generator::singleton(q + 1)};
  } else if (!sp && !sq && sn) {
    c = {Generator::prefix(jump_of(cn) - 1), Generator::singleton(q)};
  } else if (!sp && sq && !sn) {
    c = {Generator::co_prefix(jump_of(q))};
  } else {
    c = {Generator::prefix(cn - 1), Generator::singleton(q)};
  }
  return c;
}

std::optional<GeneratorSet> try_swap(const GeneratorSet& g, Generator out, Generator in) {
  try {
    GeneratorSet next = g.replaced(out, in);
    if (next == g || !mesc_validate(next).ok()) return std::nullopt;
    return next;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidGeneratorSet) return std::nullopt;
    throw;
  }
}

std::vector<ExtremePoint> group(std::vector<std::pair<GeneratorSet, StepCDF>> realized) {
  std::map<StepCDF, std::vector<GeneratorSet>> by_point;
  for (auto& [g, f] : realized) by_point[std::move(f)].push_back(std::move(g));
  std::vector<ExtremePoint> out;
  out.reserve(by_point.size());
  for (auto& [f, witnesses] : by_point) {
    std::sort(witnesses.begin(), witnesses.end());
    out.push_back({f, std::move(witnesses)});
  }
  return out;
}

// Runs body(i) for i in [0, count), serially or on the OpenMP team. The first
// exception thrown by any iteration is rethrown afterwards.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(pbx_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::pair<GeneratorSet, StepCDF>> realize_all(const std::vector<GeneratorSet>& mescs, const PBox& pbox,
                                                          Exec exec) {
  std::vector<std::optional<StepCDF>> cdfs(mescs.size());
  for_each_index(mescs.size(), exec, [&](std::size_t i) {
    auto r = extreme_from_mesc(mescs[i], pbox);
    if (auto* f = std::get_if<StepCDF>(&r)) cdfs[i] = std::move(*f);
  });
  std::vector<std::pair<GeneratorSet, StepCDF>> out;
  for (std::size_t i = 0; i < mescs.size(); ++i) {
    if (cdfs[i]) out.emplace_back(mescs[i], std::move(*cdfs[i]));
  }
  return out;
}

}  // namespace

Realization extreme_from_mesc(const GeneratorSet& g, const PBox& pbox) {
  require_domain(g, pbox);
  const auto gaps = require_mesc(g);
  const RationalVector f = closed_form(gaps, pbox);
  if (constraint_solve(g, pbox) != f) {
    throw std::logic_error("closed form and active-constraint solve disagree for " + g.str());
  }
  if (auto bad = check_bounds(f, gaps, pbox)) return *bad;
  return to_step_cdf(f, pbox);
}

std::optional<StepCDF> realize(const GeneratorSet& g, const PBox& pbox) {
  require_domain(g, pbox);
  const auto gaps = require_mesc(g);
  const RationalVector f = closed_form(gaps, pbox);
  if (check_bounds(f, gaps, pbox)) return std::nullopt;
  return to_step_cdf(f, pbox);
}

std::vector<Neighbor> adjacent_mesc(const GeneratorSet& g, Generator out, const PBox& pbox) {
  require_domain(g, pbox);
  const std::size_t n = g.domain_size();
  if (!g.contains(out)) throw Error(ErrorCode::GeneratorNotInSet, to_string(n, out) + " is not in " + g.str());
  out = canonical(n, out);
  if (is_omega(n, out)) throw Error(ErrorCode::OmegaNotReplaceable, "Ω belongs to every MESC");
  const auto gaps = require_mesc(g);
  if (check_bounds(closed_form(gaps, pbox), gaps, pbox)) {
    throw Error(ErrorCode::InfeasibleInput, g.str() + " has no extreme point on this p-box");
  }

  std::vector<Neighbor> result;
  for (Generator in : table_candidates(gaps, out)) {
    auto next = try_swap(g, out, in);
    if (!next || !adjacency_sign_test(g, *next)) continue;
    auto f = realize(*next, pbox);
    if (!f) continue;
    const Generator added = canonical(n, in);
    if (std::any_of(result.begin(), result.end(), [&](const Neighbor& r) { return r.mesc == *next; })) continue;
    result.push_back({std::move(*next), added, std::move(*f)});
  }
  std::sort(result.begin(), result.end(), [](const Neighbor& a, const Neighbor& b) { return a.mesc < b.mesc; });
  return result;
}

std::vector<GeneratorSet> feasible_mescs(const PBox& pbox, Exec exec) {
  std::vector<GeneratorSet> out;
  for (auto& [g, f] : realize_all(structural_mescs(pbox.size()), pbox, exec)) out.push_back(std::move(g));
  return out;
}

std::vector<GeneratorSet> bfs_mescs(const PBox& pbox, Exec exec) {
  const std::size_t n = pbox.size();
  const GeneratorSet seed = GeneratorSet::full_chain(n);
  std::unordered_set<GeneratorSet> seen{seed};
  std::vector<GeneratorSet> frontier{seed};
  while (!frontier.empty()) {
    std::vector<std::vector<Neighbor>> found(frontier.size());
    for_each_index(frontier.size(), exec, [&](std::size_t i) {
      for (const Generator& out : frontier[i].members()) {
        if (is_omega(n, out)) continue;
        auto next = adjacent_mesc(frontier[i], out, pbox);
        found[i].insert(found[i].end(), std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
      }
    });
    std::vector<GeneratorSet> next_frontier;
    for (auto& batch : found) {
      for (auto& nb : batch) {
        if (seen.insert(nb.mesc).second) next_frontier.push_back(std::move(nb.mesc));
      }
    }
    std::sort(next_frontier.begin(), next_frontier.end());
    frontier = std::move(next_frontier);
  }
  std::vector<GeneratorSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExtremePoint> enumerate_extremes(const PBox& pbox, Method method, Exec exec) {
  if (method == Method::Structural) return group(realize_all(structural_mescs(pbox.size()), pbox, exec));
  return group(realize_all(bfs_mescs(pbox, exec), pbox, exec));
}

Bound lower_expectation(const Gamble& h, const std::vector<ExtremePoint>& extremes) {
  if (extremes.empty()) throw std::invalid_argument("no extreme points");
  std::size_t best = 0;
  Rational best_value = expectation(extremes[0].cdf, h);
  for (std::size_t i = 1; i < extremes.size(); ++i) {
    Rational v = expectation(extremes[i].cdf, h);
    if (v < best_value) {
      best = i;
      best_value = std::move(v);
    }
  }
  return {best_value, extremes[best]};
}

Bound upper_expectation(const Gamble& h, const std::vector<ExtremePoint>& extremes) {
  Bound b = lower_expectation(-h, extremes);
  b.value = -b.value;
  return b;
}

namespace {
std::vector<ExtremePoint> default_extremes(const PBox& pbox) {
  return enumerate_extremes(pbox, pbox.size() <= kMaxStructuralDomain ? Method::Structural : Method::Bfs);
}
}  // namespace

Bound lower_expectation(const Gamble& h, const PBox& pbox) {
  require_same_domain(h.domain(), pbox.domain(), "lower_expectation");
  return lower_expectation(h, default_extremes(pbox));
}

Bound upper_expectation(const Gamble& h, const PBox& pbox) {
  require_same_domain(h.domain(), pbox.domain(), "upper_expectation");
  return upper_expectation(h, default_extremes(pbox));
}

}  // namespace pbx
