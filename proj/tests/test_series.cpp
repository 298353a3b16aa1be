#include <random>

#include "doctest.h"
#include "newtok/error.hpp"
#include "newtok/series.hpp"
#include "oracles.hpp"

using namespace newtok;
using oracle::iv;
using oracle::rat;

namespace {

Poly poly(std::size_t d, std::initializer_list<std::pair<Monomial, Rational>> terms) {
  Poly p(d);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

Poly mono(Monomial m) { return Poly::monomial(std::move(m)); }

GradedLinearSeries simplex() { return GradedLinearSeries::toric(2, {iv({0, 0}), iv({1, 0}), iv({0, 1})}); }
GradedLinearSeries square() { return GradedLinearSeries::toric(2, {iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1})}); }
GradedLinearSeries even_line() {
  return GradedLinearSeries::generated(1, {{2, mono({0})}, {2, mono({1})}, {2, mono({2})}});
}

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected " << error_name(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

using oracle::random_poly;

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("nu examples") {
    CHECK(nu(poly(2, {{{2, 1}, 1}, {{0, 3}, 1}})) == iv({0, 3}));
    CHECK(nu(Poly::constant(2, 5)) == iv({0, 0}));
    CHECK(nu(poly(2, {{{1, 0}, 1}, {{1, 1}, 1}})) == iv({1, 0}));
    expect_code(ErrorCode::ZeroPoly, [] { (void)nu(Poly(2)); });
  }

  TEST_CASE("malformed exponents are rejected") {
    Poly p(2);
    expect_code(ErrorCode::BadExponent, [&] { p.add_term({1}, 1); });
    expect_code(ErrorCode::BadExponent, [&] { p.add_term({1, -1}, 1); });
  }

  TEST_CASE("leading_basis examples") {
    auto a = leading_basis({poly(1, {{{0}, 1}, {{1}, 1}}), mono({1})});
    CHECK(a.values == PointSet{iv({0}), iv({1})});
    CHECK(oracle::poly_rank({poly(1, {{{0}, 1}, {{1}, 1}}), mono({1})}) == 2);

    auto b = leading_basis({poly(2, {{{1, 0}, 1}, {{0, 1}, 1}}), poly(2, {{{1, 0}, 1}, {{0, 1}, -1}})});
    CHECK(b.values == PointSet{iv({1, 0}), iv({0, 1})});

    auto c = leading_basis({mono({1}), poly(1, {{{1}, 2}})});
    CHECK(c.values == PointSet{iv({1})});
    CHECK(c.basis.size() == 1);

    CHECK(leading_basis({}).basis.empty());
  }

  TEST_CASE("degree_piece examples") {
    CHECK(degree_piece(simplex(), 2).size() == 6);
    auto g = GradedLinearSeries::generated(1, {{1, mono({1})}});
    auto p3 = degree_piece(g, 3);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0] == mono({3}));

    auto h = GradedLinearSeries::generated(1, {{1, poly(1, {{{0}, 1}, {{1}, 1}})}, {1, mono({1})}});
    auto p2 = degree_piece(h, 2);
    CHECK(p2.size() == 3);
    Poly one_plus_y = poly(1, {{{0}, 1}, {{1}, 1}});
    CHECK(oracle::poly_rank({one_plus_y * one_plus_y, one_plus_y * mono({1}), mono({2})}) == 3);

    CHECK(degree_piece(simplex(), 0).size() == 1);
    auto e = GradedLinearSeries::explicit_series(1, 2, {{1, {mono({1})}}, {2, {mono({2})}}});
    expect_code(ErrorCode::OutOfRange, [&] { (void)degree_piece(e, 3); });
  }

  TEST_CASE("value_semigroup examples") {
    auto s = value_semigroup(simplex(), 8);
    for (long n = 1; n <= 8; ++n) {
      std::set<IntVec> lattice;
      for (long a = 0; a <= n; ++a)
        for (long b = 0; a + b <= n; ++b) lattice.insert(iv({a, b}));
      auto slice = s.slice(n);
      CHECK(std::set<IntVec>(slice.begin(), slice.end()) == lattice);
    }

    auto v = value_semigroup(even_line(), 10);
    for (long k = 1; k <= 5; ++k) {
      CHECK(v.slice(2 * k).size() == std::size_t(2 * k + 1));
      CHECK(v.slice(2 * k - 1).empty());
    }

    auto e = GradedLinearSeries::explicit_series(1, 1, {{1, {mono({1}), poly(1, {{{1}, 2}})}}});
    auto es = value_semigroup(e, 1);
    CHECK(es.slice(1) == PointSet{iv({1})});
    CHECK(degree_piece(e, 1).size() == 1);
  }

  TEST_CASE("index examples") {
    CHECK(index(even_line(), 10).m == 2);
    auto g23 = GradedLinearSeries::generated(1, {{2, mono({1})}, {3, mono({0})}});
    CHECK(index(g23, 10).m == 1);
    CHECK(index(simplex(), 5).m == 1);
    auto zero = GradedLinearSeries::explicit_series(1, 3, {});
    expect_code(ErrorCode::AllZero, [&] { (void)index(zero, 3); });
  }

  TEST_CASE("kappa examples") {
    auto k1 = kappa(simplex(), 6);
    CHECK(k1.value == 2);
    CHECK(k1.exact);
    CHECK(kappa(even_line(), 10).value == 1);
    auto zero = GradedLinearSeries::explicit_series(1, 3, {});
    CHECK(kappa(zero, 3).negative_infinity());
  }

  TEST_CASE("kappa of a non-monomial generated series uses the value semigroup") {
    // Generator values coincide but the algebra has growing dimension.
    auto g = GradedLinearSeries::generated(1, {{1, mono({1})}, {1, poly(1, {{{1}, 1}, {{2}, 1}})}});
    auto k = kappa(g, 8);
    CHECK(k.value == 1);
    CHECK(k.stabilized());
  }

  TEST_CASE("veronese examples") {
    auto v = veronese(simplex(), 2);
    CHECK(v.mode() == SeriesMode::Generated);
    CHECK(v.generators().size() == 6);
    for (const auto& g : v.generators()) CHECK(g.degree == 1);
    for (long n = 1; n <= 4; ++n) CHECK(degree_piece(v, n).size() == std::size_t((2 * n + 1) * (n + 1)));

    auto lin = GradedLinearSeries::generated(2, {{1, mono({0, 0})}, {1, mono({1, 0})}, {1, mono({0, 1})}});
    auto v1 = veronese(lin, 1);
    for (long n = 0; n <= 4; ++n) CHECK(degree_piece(v1, n).size() == degree_piece(lin, n).size());

    expect_code(ErrorCode::ZeroPiece, [] { (void)veronese(even_line(), 1); });
  }

  TEST_CASE("subalgebra_check examples") {
    auto closed = GradedLinearSeries::explicit_series(1, 2, {{1, {mono({1})}}, {2, {mono({2})}}});
    CHECK(subalgebra_check(closed, 2).ok);
    auto broken = GradedLinearSeries::explicit_series(1, 2, {{1, {mono({1})}}, {2, {mono({1})}}});
    auto r = subalgebra_check(broken, 2);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violation.has_value());
    CHECK(*r.violation == std::pair<long, long>{1, 1});
    CHECK(subalgebra_check(GradedLinearSeries::explicit_series(1, 3, {}), 3).ok);
  }

  TEST_CASE("valuation axioms on random polynomials") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t d = 1 + trial % 3;
      Poly f = random_poly(rng, d, 4, 3), g = random_poly(rng, d, 4, 3);
      CHECK(nu(f * g) == nu(f) + nu(g));
      Poly sum = f + g;
      if (sum.is_zero()) continue;
      auto lo = lex_cmp(nu(f), nu(g)) < 0 ? nu(f) : nu(g);
      CHECK(lex_cmp(nu(sum), lo) >= 0);
      if (nu(f) != nu(g)) CHECK(nu(sum) == lo);
    }
  }

  TEST_CASE("#S(L)_n equals the rank of the coefficient matrix") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + trial % 3;
      std::uniform_int_distribution<int> ngen(1, 3);
      std::uniform_int_distribution<long> deg(1, 3);
      std::vector<SeriesGenerator> gens;
      for (int i = ngen(rng); i > 0; --i) gens.push_back({deg(rng), random_poly(rng, d, 2, 2)});
      auto l = GradedLinearSeries::generated(d, gens);
      const long bound = 6;
      auto s = value_semigroup(l, bound);
      for (long n = 1; n <= bound; ++n) {
        // Independent spanning set: every product of generators of total degree n.
        std::vector<Poly> products;
        auto rec = [&](auto&& self, std::size_t i, long remaining, Poly acc) -> void {
          if (remaining == 0) {
            products.push_back(acc);
            return;
          }
          for (std::size_t j = i; j < gens.size(); ++j)
            if (gens[j].degree <= remaining) self(self, j, remaining - gens[j].degree, acc * gens[j].poly);
        };
        rec(rec, 0, n, Poly::constant(d, 1));
        CHECK(s.slice(n).size() == oracle::poly_rank(products));
        CHECK(oracle::poly_rank(degree_piece(l, n)) == degree_piece(l, n).size());
      }
    }
  }

  TEST_CASE("semigroup law on value slices") {
    for (const auto& l : {simplex(), square(), even_line()}) {
      auto s = value_semigroup(l, 6);
      for (long a = 1; a <= 3; ++a)
        for (long b = 1; a + b <= 6; ++b) {
          auto sab = s.slice(a + b);
          for (const auto& x : s.slice(a))
            for (const auto& y : s.slice(b)) CHECK(sab.count(x + y) == 1);
        }
    }
  }

  TEST_CASE("growth lower bound on generated series") {
    auto l = GradedLinearSeries::generated(2, {{1, mono({0, 0})}, {1, poly(2, {{{1, 0}, 1}, {{0, 1}, 1}})},
                                               {2, mono({0, 2})}});
    auto k = kappa(l, 8);
    REQUIRE(k.value == 2);
    Rational min_ratio = -1;
    for (long n = 1; n <= 8; ++n) {
      Rational r(static_cast<long>(degree_piece(l, n).size()), n * n);
      if (min_ratio < 0 || r < min_ratio) min_ratio = r;
    }
    CHECK(min_ratio > 0);
  }
}
