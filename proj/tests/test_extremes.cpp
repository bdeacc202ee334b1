#include <doctest.h>

#include <random>

#include "pbx/error.hpp"
#include "pbx/extremes.hpp"
#include "pbx/oracle.hpp"
#include "support.hpp"

using namespace pbx;

namespace {
RationalVector q(std::string_view s) { return parse_rational_list(s); }
PBox pbox(std::string_view lo, std::string_view up) {
  auto l = q(lo);
  const std::size_t n = l.size();
  return PBox(Domain::integers(n), std::move(l), q(up));
}
GeneratorSet G(std::size_t n, const char* text) { return GeneratorSet::parse(n, text); }
const PBox& walkthrough() {
  static const PBox p = pbox("1/5,1/5,3/5,4/5,1", "2/5,2/5,1,1,1");
  return p;
}
const PBox& staircase() {
  static const PBox p = pbox("1/5,2/5,3/5,4/5,1", "1,1,1,1,1");
  return p;
}
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IOError;
}
RationalVector values(const std::vector<ExtremePoint>& e) {
  RationalVector out;
  for (const auto& x : e) out.insert(out.end(), x.cdf.values().begin(), x.cdf.values().end());
  return out;
}
std::vector<StepCDF> cdfs(const std::vector<ExtremePoint>& e) {
  std::vector<StepCDF> out;
  for (const auto& x : e) out.push_back(x.cdf);
  return out;
}
}  // namespace

TEST_CASE("extreme points of the worked generator families") {
  const auto f = extreme_from_mesc(G(5, "{A1, A2^c, A3, A4, Ω}"), walkthrough());
  REQUIRE(std::holds_alternative<StepCDF>(f));
  CHECK(std::get<StepCDF>(f).values() == q("1/5,2/5,3/5,4/5,1"));

  const auto g = extreme_from_mesc(G(5, "{A1, A4, Ω, {3}, {4}}"), staircase());
  REQUIRE(std::holds_alternative<StepCDF>(g));
  CHECK(std::get<StepCDF>(g).values() == q("1/5,4/5,4/5,4/5,1"));
}

TEST_CASE("the full positive chain realizes the lower bound") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const PBox p = testing::random_pbox(1 + testing::uniform(rng, 7), rng);
    const auto f = extreme_from_mesc(GeneratorSet::full_chain(p.size()), p);
    REQUIRE(std::holds_alternative<StepCDF>(f));
    CHECK(std::get<StepCDF>(f).values() == p.low());
  }
}

TEST_CASE("infeasible families name the failing gap condition") {
  const auto r = extreme_from_mesc(G(5, "{A1, A4, Ω, {3}, {4}}"), walkthrough());
  REQUIRE(std::holds_alternative<Infeasible>(r));
  const auto& bad = std::get<Infeasible>(r);
  CHECK(bad.kind == GapKind::Case1);
  CHECK(bad.left == 1);
  CHECK(bad.right == 4);
  CHECK(bad.index == 2);
  CHECK(bad.condition.find("up(2) >= low(4)") != std::string::npos);
  CHECK_FALSE(realize(G(5, "{A1, A4, Ω, {3}, {4}}"), walkthrough()));
  CHECK(code_of([] { extreme_from_mesc(G(5, "{A1, A3^c, A4, Ω, {4}}"), walkthrough()); }) ==
        ErrorCode::InvalidGeneratorSet);
  CHECK(code_of([] { extreme_from_mesc(GeneratorSet::full_chain(4), walkthrough()); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("replacing A3 in the walkthrough family") {
  const auto next = adjacent_mesc(G(5, "{A1, A2^c, A3, A4, Ω}"), Generator::prefix(3), walkthrough());
  REQUIRE(next.size() == 1);
  CHECK(next[0].mesc == G(5, "{A1, A2^c, A4, Ω, {4}}"));
  CHECK(next[0].cdf.values() == q("1/5,2/5,4/5,4/5,1"));
  CHECK(next[0].added == Generator::singleton(4));
}

TEST_CASE("replacing A3 on the staircase p-box has a unique neighbor") {
  const auto next = adjacent_mesc(G(5, "{A1, A3, A4, Ω, {3}}"), Generator::prefix(3), staircase());
  REQUIRE(next.size() == 1);
  CHECK(next[0].mesc == G(5, "{A1, A4, Ω, {3}, {4}}"));
  CHECK(next[0].cdf.values() == q("1/5,4/5,4/5,4/5,1"));
}

TEST_CASE("adjacent_mesc errors") {
  const auto g = G(5, "{A1, A2^c, A3, A4, Ω}");
  CHECK(code_of([&] { adjacent_mesc(g, Generator::singleton(3), walkthrough()); }) == ErrorCode::GeneratorNotInSet);
  CHECK(code_of([&] { adjacent_mesc(g, Generator::omega(5), walkthrough()); }) == ErrorCode::OmegaNotReplaceable);
  CHECK(code_of([&] { adjacent_mesc(G(5, "{A1, A4, Ω, {3}, {4}}"), Generator::prefix(1), walkthrough()); }) ==
        ErrorCode::InfeasibleInput);
}

TEST_CASE("boundary p-boxes") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Domain d = Domain::integers(n);
    const auto vac = enumerate_extremes(vacuous_pbox(d));
    REQUIRE(vac.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector dirac(n, Rational(0));
      for (std::size_t i = n - 1 - j; i < n; ++i) dirac[i] = 1;
      CHECK(vac[j].cdf.values() == dirac);
    }
  }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const StepCDF f = testing::random_cdf(1 + testing::uniform(rng, 6), rng);
    const auto e = enumerate_extremes(precise_pbox(f), Method::Bfs);
    REQUIRE(e.size() == 1);
    CHECK(e[0].cdf == f);
  }
}

TEST_CASE("the walkthrough p-box contains both worked extreme points") {
  const auto e = enumerate_extremes(walkthrough());
  const auto fs = cdfs(e);
  const Domain d = Domain::integers(5);
  CHECK(std::find(fs.begin(), fs.end(), StepCDF(d, q("1/5,2/5,3/5,4/5,1"))) != fs.end());
  CHECK(std::find(fs.begin(), fs.end(), StepCDF(d, q("1/5,2/5,4/5,4/5,1"))) != fs.end());
  CHECK(fs == oracle::oracle_extremes(walkthrough()));
  CHECK(fs.size() == 12);
}

TEST_CASE("expectation bounds on boundary p-boxes") {
  const PBox vac = vacuous_pbox(Domain::integers(3));
  const Gamble h(Domain::integers(3), q("3,1,2"));
  const auto lo = lower_expectation(h, vac);
  CHECK(lo.value == 1);
  CHECK(lo.point.cdf.values() == q("0,1,1"));
  CHECK(upper_expectation(h, vac).value == 3);
  const StepCDF f(Domain::integers(3), q("1/4,1/2,1"));
  CHECK(lower_expectation(h, precise_pbox(f)).value == expectation(f, h));
  CHECK(upper_expectation(h, precise_pbox(f)).value == expectation(f, h));
  CHECK(code_of([&] { lower_expectation(Gamble(Domain::integers(2), q("1,2")), vac); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("argmin walk examples") {
  // h strictly inside the cone of the start family: no move.
  const auto start = G(5, "{A1, A2^c, A3, A4, Ω}");
  RationalVector hv(5, Rational(0));
  for (const auto& m : start.members()) {
    const auto ind = indicator(5, m);
    for (std::size_t i = 0; i < 5; ++i) hv[i] += Rational(ind[i]);
  }
  const Gamble inside(Domain::integers(5), hv);
  const auto w = argmin_walk(inside, walkthrough(), start);
  CHECK(w.steps == 0);
  CHECK(w.point.cdf.values() == q("1/5,2/5,3/5,4/5,1"));

  // Vacuous: descend from the Dirac at x_1 to the unique minimum.
  const PBox vac = vacuous_pbox(Domain::integers(5));
  const Gamble h(Domain::integers(5), q("4,3,5,-2,1"));
  const auto from = G(5, "{A1^c, A2^c, A3^c, A4^c, Ω}");  // Dirac at x_1
  const auto r = argmin_walk(h, vac, from);
  CHECK(r.point.cdf.values() == q("0,0,0,1,1"));
  CHECK(r.value == -2);
  CHECK(r.steps >= 1);
  CHECK(code_of([&] { argmin_walk(h, walkthrough(), G(5, "{A1, A4, Ω, {3}, {4}}")); }) == ErrorCode::InfeasibleStart);
}

TEST_CASE("property: methods, execution modes and oracle agree") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 120; ++t) {
    const PBox p = testing::random_pbox(1 + testing::uniform(rng, 6), rng);
    const auto s = enumerate_extremes(p, Method::Structural, Exec::Serial);
    CHECK(values(s) == values(enumerate_extremes(p, Method::Structural, Exec::Parallel)));
    const auto b = enumerate_extremes(p, Method::Bfs, Exec::Serial);
    CHECK(values(b) == values(s));
    CHECK(bfs_mescs(p, Exec::Parallel) == feasible_mescs(p, Exec::Serial));
    CHECK(cdfs(s) == oracle::oracle_extremes(p));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].witnesses == b[i].witnesses);
  }
}

TEST_CASE("property: extreme points satisfy the range and local-candidate conditions") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 150; ++t) {
    const PBox p = testing::random_pbox(1 + testing::uniform(rng, 7), rng);
    for (const auto& e : enumerate_extremes(p)) {
      CHECK(oracle::satisfies_range_theorem(e.cdf, p));
      CHECK(oracle::satisfies_local_candidates(e.cdf, p));
      REQUIRE_FALSE(e.witnesses.empty());
      for (const auto& w : e.witnesses) {
        const auto f = extreme_from_mesc(w, p);
        REQUIRE(std::holds_alternative<StepCDF>(f));
        CHECK(std::get<StepCDF>(f) == e.cdf);
      }
    }
  }
}

TEST_CASE("property: witnesses are active at their extreme point") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const PBox p = testing::random_pbox(1 + testing::uniform(rng, 6), rng);
    const std::size_t n = p.size();
    for (const auto& e : enumerate_extremes(p)) {
      for (const auto& w : e.witnesses) {
        for (const auto& m : w.members()) {
          RationalVector v;
          for (auto x : indicator(n, m)) v.emplace_back(x);
          const Rational prob = expectation(e.cdf, Gamble(p.domain(), v));
          switch (m.kind) {
            case Generator::Kind::Prefix: CHECK(prob == p.low_at(m.index)); break;
            case Generator::Kind::CoPrefix: CHECK(prob == Rational(1) - p.up_at(m.index)); break;
            case Generator::Kind::Singleton: CHECK(prob == 0); break;
          }
        }
      }
    }
  }
}

TEST_CASE("property: gambles inside a witness cone are minimized only there") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 100; ++t) {
    const PBox p = testing::random_pbox(2 + testing::uniform(rng, 5), rng);
    const std::size_t n = p.size();
    const auto extremes = enumerate_extremes(p);
    const auto& e = extremes[testing::uniform(rng, extremes.size())];
    const auto& w = e.witnesses[testing::uniform(rng, e.witnesses.size())];
    RationalVector hv(n, Rational(static_cast<long>(testing::uniform(rng, 9)) - 4));
    for (const auto& m : w.members()) {
      if (is_omega(n, m)) continue;
      const Rational c(1 + static_cast<long>(testing::uniform(rng, 6)));
      const auto ind = indicator(n, m);
      for (std::size_t i = 0; i < n; ++i) hv[i] += c * Rational(ind[i]);
    }
    const Gamble h(p.domain(), hv);
    REQUIRE(cone_contains(h, w).kind == Membership::Interior);
    const Rational at_e = expectation(e.cdf, h);
    CHECK(lower_expectation(h, extremes).value == at_e);
    for (const auto& other : extremes) {
      if (!(other.cdf == e.cdf)) CHECK(expectation(other.cdf, h) > at_e);
    }
  }
}

TEST_CASE("property: ties in a case condition return neighbors of one extreme point") {
  std::mt19937_64 rng(25);
  int ties = 0;
  for (int t = 0; t < 300; ++t) {
    const PBox p = testing::random_pbox(2 + testing::uniform(rng, 5), rng);
    for (const auto& g : feasible_mescs(p)) {
      for (const auto& out : g.members()) {
        if (is_omega(p.size(), out)) continue;
        const auto next = adjacent_mesc(g, out, p);
        if (next.size() < 2) continue;
        ++ties;
        for (const auto& nb : next) CHECK(nb.cdf == next.front().cdf);
      }
    }
  }
  MESSAGE("tie cases seen: " << ties);
}
