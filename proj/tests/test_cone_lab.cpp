#include <doctest.h>

#include <random>
#include <set>

#include "pbx/cone_lab.hpp"
#include "pbx/error.hpp"
#include "pbx/linalg.hpp"
#include "support.hpp"

using namespace pbx;

namespace {
GeneratorSet G(std::size_t n, const char* text) { return GeneratorSet::parse(n, text); }
Gamble h(std::string_view s) {
  auto v = parse_rational_list(s);
  const std::size_t n = v.size();
  return Gamble(Domain::integers(n), std::move(v));
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
}  // namespace

TEST_CASE("a dependent family is rejected at its gap") {
  const auto r = mesc_validate(G(5, "{A1, A3^c, A4, Ω, {4}}"));
  CHECK(r.rule == MescRule::GapPatternViolation);
  CHECK(r.index == 3);
  // 1_A4 + 1_A3^c - 1_{4} = 1_Omega
  std::vector<linalg::IntVector> rows;
  const auto family = G(5, "{A1, A3^c, A4, Ω, {4}}");
  for (const auto& m : family.members()) rows.push_back(indicator(5, m));
  CHECK(linalg::rank(linalg::IntMatrix::from_rows(rows)) == 4);
}

TEST_CASE("the full positive chain is a MESC with unit gaps") {
  const auto r = mesc_validate(GeneratorSet::full_chain(5));
  REQUIRE(r.ok());
  REQUIRE(r.gaps.size() == 5);
  for (const auto& gap : r.gaps) {
    CHECK(gap.kind == GapKind::Case1);
    CHECK(gap.width() == 1);
    CHECK(gap.jump == gap.right);
  }
}

TEST_CASE("a prefix forbids the next singleton") {
  const auto r = mesc_validate(G(5, "{A1, A2, A3, Ω, {4}}"));
  CHECK(r.rule == MescRule::ForbiddenSingleton);
  CHECK(r.index == 4);
  CHECK(r.detail.find("rule iii") != std::string::npos);
  const auto r2 = mesc_validate(G(5, "{A2^c, A4, Ω, {2}, {3}}"));
  CHECK(r2.rule == MescRule::ForbiddenSingleton);
  CHECK(r2.detail.find("rule iv") != std::string::npos);
}

TEST_CASE("other structural failures") {
  CHECK(mesc_validate(G(3, "{A1, A2}")).rule == MescRule::OmegaMissing);
  CHECK(mesc_validate(G(3, "{A1, A1^c, Ω}")).rule == MescRule::BothSigns);
  CHECK(mesc_validate(G(3, "{A1, A1, Ω}")).rule == MescRule::WrongCardinality);
  CHECK(mesc_validate(G(3, "{A1, Ω}")).rule == MescRule::GapPatternViolation);
}

TEST_CASE("no single singleton completes the dependent chain") {
  CHECK(singleton_completions(G(5, "{A1, A3^c, A4, Ω}")).empty());
  CHECK(singleton_completions(G(5, "{A1, A4, Ω, {3}}")) == std::vector<std::size_t>{4});
}

TEST_CASE("gap decomposition of a mixed family") {
  const auto r = mesc_validate(G(5, "{A1^c, A4, Ω, {2}, {4}}"));
  REQUIRE(r.ok());
  REQUIRE(r.gaps.size() == 3);
  CHECK(r.gaps[0].kind == GapKind::Case2);
  CHECK(r.gaps[1].kind == GapKind::Case3);
  CHECK(r.gaps[1].present == std::vector<std::size_t>{2, 4});
  CHECK(r.gaps[1].jump == 3);
  CHECK(r.gaps[2].kind == GapKind::Case1);
}

TEST_CASE("structural counts for small domains") {
  CHECK(enumerate_mescs(1) == std::vector<GeneratorSet>{G(1, "{Ω}")});
  const auto two = enumerate_mescs(2);
  CHECK(two == std::vector<GeneratorSet>{G(2, "{A1, Ω}"), G(2, "{A1^c, Ω}")});
  CHECK(enumerate_mescs(3).size() == 6);
}

TEST_CASE("enumeration matches the brute-force family search") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CAPTURE(n);
    std::set<std::vector<std::uint64_t>> ours;
    for (const auto& g : enumerate_mescs(n)) {
      CHECK(mesc_validate(g).ok());
      CHECK(ours.insert(g.family()).second);
    }
    CHECK(ours == testing::brute_force_mesc_families(n));
  }
}

TEST_CASE("enumeration properties up to six points") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto mescs = enumerate_mescs(n, Exec::Serial);
    CHECK(mescs == enumerate_mescs(n, Exec::Parallel));
    CHECK(mescs == structural_mescs(n));
    for (const auto& g : mescs) {
      std::vector<linalg::IntVector> rows;
      for (const auto& m : g.members()) rows.push_back(indicator(n, m));
      CHECK(linalg::rank(linalg::IntMatrix::from_rows(rows)) == n);
      // each member expands to its own unit coefficient
      for (std::size_t j = 0; j < g.size(); ++j) {
        RationalVector v;
        for (auto x : indicator(n, g.members()[j])) v.emplace_back(x);
        const auto c = cone_contains(Gamble(Domain::integers(n), v), g);
        CHECK(c.kind != Membership::Outside);
        for (std::size_t k = 0; k < g.size(); ++k) CHECK(c.coefficients[k] == Rational(k == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("cone membership examples") {
  const auto in = cone_contains(h("1,2,3,3,1"), G(5, "{A1^c, A4, Ω, {3}, {4}}"));
  CHECK(in.kind == Membership::Interior);
  CHECK(in.coefficients == parse_rational_list("1,1,0,1,1"));
  CHECK(in.omega == 0);

  const auto g = G(5, "{A1^c, A4, Ω, {2}, {4}}");
  const auto out = cone_contains(h("1,2,3,3,1"), g);
  CHECK(out.kind == Membership::Outside);
  // members in order A1^c, A4, Ω, {2}, {4}
  CHECK(out.coefficients == parse_rational_list("2,2,-1,-1,0"));
  CHECK(out.omega == -1);

  CHECK(cone_contains(h("1,1,1,1,1"), g).kind == Membership::Boundary);
  CHECK(code_of([&] { cone_contains(h("1,2,3"), g); }) == ErrorCode::DomainMismatch);
  CHECK(code_of([&] { cone_contains(h("1,2,3,3,1"), G(5, "{A1, A3^c, A4, Ω, {4}}")); }) ==
        ErrorCode::InvalidGeneratorSet);
}

TEST_CASE("sign test on a singleton swap inside a (+,+) gap") {
  // Gap (1,4] with singletons {3},{4}; drop {3}.
  const auto g = G(5, "{A1, A4, Ω, {3}, {4}}");
  CHECK(adjacency_sign_test(g, G(5, "{A1, A2, A4, Ω, {4}}")));
  CHECK_FALSE(adjacency_sign_test(g, G(5, "{A1, A2^c, A4, Ω, {4}}")));
  CHECK(code_of([&] { adjacency_sign_test(g, g); }) == ErrorCode::NotSwapPair);
  CHECK(code_of([&] { adjacency_sign_test(G(3, "{A1, A1, A2}"), G(3, "{A1, A1, Ω}")); }) ==
        ErrorCode::DegenerateKernel);
}

TEST_CASE("property: sign test is symmetric on random swaps") {
  std::mt19937_64 rng(5);
  int tested = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto& mescs = structural_mescs(n);
    const auto gens = constraint_generators(n);
    for (int t = 0; t < 300; ++t) {
      const auto& g = mescs[testing::uniform(rng, mescs.size())];
      const auto& out = g.members()[testing::uniform(rng, g.size())];
      const auto& in = gens[testing::uniform(rng, gens.size())];
      if (is_omega(n, out) || g.contains(in)) continue;
      const auto other = g.replaced(out, in);
      if (!mesc_validate(other).ok()) continue;
      CHECK(adjacency_sign_test(g, other) == adjacency_sign_test(other, g));
      ++tested;
    }
  }
  CHECK(tested > 100);
}

TEST_CASE("property: signed measurability of the chain part") {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto& mescs = structural_mescs(n);
    const Domain dom = Domain::integers(n);
    for (int t = 0; t < 200; ++t) {
      const auto& g = mescs[testing::uniform(rng, mescs.size())];
      // positive chain coefficients plus positive singleton coefficients
      RationalVector chain_part(n, Rational(0));
      RationalVector full(n, Rational(0));
      const Rational e(static_cast<long>(testing::uniform(rng, 7)) - 3);
      for (std::size_t i = 0; i < n; ++i) {
        chain_part[i] = e;
        full[i] = e;
      }
      for (const auto& m : g.members()) {
        if (is_omega(n, m)) continue;
        const Rational c(1 + static_cast<long>(testing::uniform(rng, 5)));
        const auto ind = indicator(n, m);
        for (std::size_t i = 0; i < n; ++i) {
          if (m.is_chain()) chain_part[i] += c * Rational(ind[i]);
          full[i] += c * Rational(ind[i]);
        }
      }
      const auto r = cone_contains(Gamble(dom, full), g);
      REQUIRE(r.kind == Membership::Interior);
      CHECK(chain_part_interior(Gamble(dom, chain_part), g));

      // Converse: the chain part recovered from any interior expansion passes,
      // and flipping one chain coefficient's sign makes it fail.
      RationalVector recovered(n, r.omega);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const auto& m = g.members()[j];
        if (!m.is_chain() || is_omega(n, m)) continue;
        const auto ind = indicator(n, m);
        for (std::size_t i = 0; i < n; ++i) recovered[i] += r.coefficients[j] * Rational(ind[i]);
      }
      CHECK(chain_part_interior(Gamble(dom, recovered), g));
      if (g.chain().size() > 1) {
        const auto first = g.chain().front();
        const auto ind = indicator(n, first.sign == Sign::Plus ? Generator::prefix(first.index)
                                                             : Generator::co_prefix(first.index));
        RationalVector flipped = recovered;
        const Rational coeff = r.coefficients[0];
        for (std::size_t i = 0; i < n; ++i) flipped[i] -= Rational(2) * coeff * Rational(ind[i]);
        CHECK_FALSE(chain_part_interior(Gamble(dom, flipped), g));
      }
    }
  }
}
