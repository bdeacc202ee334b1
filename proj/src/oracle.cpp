#include "pbx/oracle.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>
#include <sstream>

#include "pbx/error.hpp"
#include "pbx/extremes.hpp"

namespace pbx::oracle {

namespace {

using Row = std::vector<long long>;

// Rank over the rationals by integer elimination with gcd normalization.
// Deliberately separate from the library's linear algebra.
std::size_t rank_of(std::vector<Row> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const long long x = rows[r][c];
      const long long y = rows[i][c];
      long long g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        rows[i][k] = rows[i][k] * x - rows[r][k] * y;
        g = std::gcd(g, rows[i][k]);
      }
      if (g > 1) {
        for (auto& v : rows[i]) v /= g;
      }
    }
    ++r;
  }
  return r;
}

Row interval(std::size_t n, std::size_t from, std::size_t to) {  // indicator of {x_from..x_to}
  Row v(n, 0);
  for (std::size_t i = from; i <= to; ++i) v[i - 1] = 1;
  return v;
}

std::vector<Rational> candidates(const PBox& pbox, std::size_t i, Mode mode) {
  const std::size_t n = pbox.size();
  std::vector<Rational> c;
  if (mode == Mode::Pruned) {
    for (std::size_t j = i; j <= n; ++j) c.push_back(pbox.low_at(j));
    for (std::size_t k = 1; k <= i; ++k) c.push_back(pbox.up_at(k));
  } else {
    c = {Rational(0), Rational(1)};
    for (std::size_t j = 1; j <= n; ++j) {
      c.push_back(pbox.low_at(j));
      c.push_back(pbox.up_at(j));
    }
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::erase_if(c, [&](const Rational& v) { return v < pbox.low_at(i) || v > pbox.up_at(i); });
  return c;
}

void dfs(const PBox& pbox, const std::vector<std::vector<Rational>>& cand, RationalVector& f,
         std::vector<StepCDF>& out) {
  const std::size_t n = pbox.size();
  const std::size_t i = f.size();
  if (i == n) {
    if (is_vertex(f, pbox)) out.emplace_back(pbox.domain(), f);
    return;
  }
  const Rational floor = f.empty() ? Rational(0) : f.back();
  for (const auto& v : cand[i]) {
    if (v < floor) continue;
    f.push_back(v);
    dfs(pbox, cand, f, out);
    f.pop_back();
  }
}

std::string show(const RationalVector& v) { return "(" + join(v) + ")"; }

std::string show(const std::vector<StepCDF>& fs) {
  std::string s = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? " " : "") + show(fs[i].values());
  return s + "}";
}

}  // namespace

bool is_vertex(const RationalVector& f, const PBox& pbox) {
  const std::size_t n = pbox.size();
  std::vector<Row> active{interval(n, 1, n)};
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational& v = f[i - 1];
    if (i < n && v == pbox.low_at(i)) active.push_back(interval(n, 1, i));
    if (i < n && v == pbox.up_at(i)) active.push_back(interval(n, i + 1, n));
    if (v == (i == 1 ? Rational(0) : f[i - 2])) active.push_back(interval(n, i, i));
  }
  return rank_of(std::move(active)) == n;
}

std::vector<StepCDF> oracle_extremes(const PBox& pbox, Mode mode, Exec exec, std::size_t limit) {
  const std::size_t n = pbox.size();
  if (n > limit) {
    throw Error(ErrorCode::DomainTooLarge, "oracle supports at most " + std::to_string(limit) + " points, got " +
                                               std::to_string(n) + " (set PBOX_ORACLE_LIMIT to override)");
  }
  std::vector<std::vector<Rational>> cand;
  for (std::size_t i = 1; i <= n; ++i) cand.push_back(candidates(pbox, i, mode));

  const auto& first = cand.front();
  std::vector<std::vector<StepCDF>> parts(first.size());
  const auto run = [&](std::size_t k) {
    RationalVector f{first[k]};
    dfs(pbox, cand, f, parts[k]);
  };
  if (exec == Exec::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < first.size(); ++k) {
      try {
        run(k);
      } catch (...) {
#pragma omp critical(pbx_oracle_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t k = 0; k < first.size(); ++k) run(k);
  }

  std::vector<StepCDF> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

Rational oracle_lower_expectation(const Gamble& h, const PBox& pbox, std::size_t limit) {
  require_same_domain(h.domain(), pbox.domain(), "oracle_lower_expectation");
  std::optional<Rational> best;
  for (const auto& f : oracle_extremes(pbox, Mode::Pruned, Exec::Serial, limit)) {
    Rational v(0);
    for (std::size_t i = 1; i <= f.size(); ++i) v += h.at(i) * (f.at(i) - f.at(i - 1));
    if (!best || v < *best) best = v;
  }
  return *best;
}

bool satisfies_range_theorem(const StepCDF& f, const PBox& pbox) {
  const std::size_t n = pbox.size();
  for (std::size_t i = 1; i <= n; ++i) {
    bool found = false;
    for (std::size_t j = i; j <= n && !found; ++j) found = f.at(i) == pbox.low_at(j);
    for (std::size_t k = 1; k <= i && !found; ++k) found = f.at(i) == pbox.up_at(k);
    if (!found) return false;
  }
  return true;
}

bool satisfies_local_candidates(const StepCDF& f, const PBox& pbox) {
  for (std::size_t i = 1; i < pbox.size(); ++i) {
    const Rational& v = f.at(i);
    if (v != pbox.low_at(i) && v != pbox.up_at(i) && v != f.at(i - 1) && v != f.at(i + 1)) return false;
  }
  return true;
}

Gamble random_gamble(const Domain& domain, std::mt19937_64& rng, int range) {
  RationalVector h;
  const auto width = static_cast<std::uint64_t>(2 * range + 1);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    h.emplace_back(static_cast<long>(rng() % width) - range);
  }
  return Gamble(domain, std::move(h));
}

bool CrossCheckReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string CrossCheckReport::describe() const {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.checked << " checked)";
    if (!s.passed) os << ": " << s.counterexample;
    os << '\n';
  }
  os << (ok() ? "all suites passed" : "cross-check FAILED") << '\n';
  return os.str();
}

CrossCheckReport cross_check(const PBox& pbox, std::size_t trials, std::uint64_t seed, std::size_t limit) {
  CrossCheckReport report;
  const auto truth = oracle_extremes(pbox, Mode::Pruned, Exec::Parallel, limit);

  std::vector<ExtremePoint> structural;
  for (Method method : {Method::Structural, Method::Bfs}) {
    SuiteResult s{"extremes (" + to_string(method) + ") = oracle", true, 1, ""};
    auto points = enumerate_extremes(pbox, method);
    std::vector<StepCDF> fs;
    for (const auto& p : points) fs.push_back(p.cdf);
    if (fs != truth) {
      s.passed = false;
      s.counterexample = "engine " + show(fs) + " vs oracle " + show(truth);
    }
    if (method == Method::Structural) structural = std::move(points);
    report.suites.push_back(std::move(s));
  }

  std::mt19937_64 rng(seed);
  SuiteResult lower{"lower expectation = oracle", true, 0, ""};
  SuiteResult upper{"upper expectation by conjugacy = -oracle(-h)", true, 0, ""};
  for (std::size_t t = 0; t < trials; ++t) {
    const Gamble h = random_gamble(pbox.domain(), rng);
    const Rational lo = lower_expectation(h, structural).value;
    const Rational lo_oracle = oracle_lower_expectation(h, pbox, limit);
    ++lower.checked;
    if (lo != lo_oracle && lower.passed) {
      lower.passed = false;
      lower.counterexample = "h=" + show(h.values()) + ": " + lo.str() + " vs " + lo_oracle.str();
    }
    const Rational up = upper_expectation(h, structural).value;
    const Rational up_oracle = -oracle_lower_expectation(-h, pbox, limit);
    ++upper.checked;
    if (up != up_oracle && upper.passed) {
      upper.passed = false;
      upper.counterexample = "h=" + show(h.values()) + ": " + up.str() + " vs " + up_oracle.str();
    }
  }
  report.suites.push_back(std::move(lower));
  report.suites.push_back(std::move(upper));

  SuiteResult range{"range theorem on oracle vertices", true, 0, ""};
  SuiteResult local{"local-candidate property on oracle vertices", true, 0, ""};
  for (const auto& f : truth) {
    ++range.checked;
    ++local.checked;
    if (range.passed && !satisfies_range_theorem(f, pbox)) {
      range.passed = false;
      range.counterexample = show(f.values());
    }
    if (local.passed && !satisfies_local_candidates(f, pbox)) {
      local.passed = false;
      local.counterexample = show(f.values());
    }
  }
  report.suites.push_back(std::move(range));
  report.suites.push_back(std::move(local));
  return report;
}

}  // namespace pbx::oracle
