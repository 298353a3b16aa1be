#include <random>

#include "doctest.h"
#include "newtok/error.hpp"
#include "newtok/exactmath.hpp"
#include "oracles.hpp"

using namespace newtok;
using oracle::iv;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> r;
  for (auto row : rows) r.push_back(iv(row));
  return IntMatrix::from_rows(r);
}

void check_hnf(const IntMatrix& m) {
  auto [h, u] = hnf(m);
  CHECK(u * m == h);
  CHECK(abs(determinant(u)) == 1);
  // Echelon shape: strictly increasing pivot columns, positive pivots,
  // entries above a pivot reduced into [0, pivot).
  long last = -1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) {
      zero_seen = true;
      continue;
    }
    CHECK_FALSE(zero_seen);
    CHECK(static_cast<long>(c) > last);
    last = static_cast<long>(c);
    CHECK(h(i, c) > 0);
    for (std::size_t a = 0; a < i; ++a) {
      CHECK(h(a, c) >= 0);
      CHECK(h(a, c) < h(i, c));
    }
  }
}

void check_snf(const IntMatrix& m) {
  auto [d, u, v] = snf(m);
  CHECK(u * m * v == d);
  CHECK(abs(determinant(u)) == 1);
  CHECK(abs(determinant(v)) == 1);
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j) CHECK(d(i, j) == 0);
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    CHECK(d(i, i) >= 0);
    if (d(i, i) != 0)
      CHECK(d(i + 1, i + 1) % d(i, i) == 0);
    else
      CHECK(d(i + 1, i + 1) == 0);
  }
  if (m.rows() == m.cols()) CHECK(abs(determinant(m)) == abs(determinant(d)));
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_SUITE("exactmath") {
  TEST_CASE("hnf of the identity and of a positive diagonal is unchanged") {
    auto [h, u] = hnf(IntMatrix::identity(2));
    CHECK(h == IntMatrix::identity(2));
    CHECK(u == IntMatrix::identity(2));
    auto [h2, u2] = hnf(mat({{2, 0}, {0, 3}}));
    CHECK(h2 == mat({{2, 0}, {0, 3}}));
    CHECK(u2 == IntMatrix::identity(2));
  }

  TEST_CASE("hnf of [[2,4],[1,3]] has determinant 2") {
    auto m = mat({{2, 4}, {1, 3}});
    check_hnf(m);
    CHECK(abs(determinant(hnf(m).H)) == 2);
  }

  TEST_CASE("hnf of a zero matrix") {
    auto [h, u] = hnf(IntMatrix(2, 3));
    CHECK(h.is_zero());
    CHECK(u == IntMatrix::identity(2));
  }

  TEST_CASE("hnf and snf reconstruction on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 4);
      auto m = random_matrix(rng, dim(rng), dim(rng), -6, 6);
      check_hnf(m);
      check_snf(m);
    }
  }

  TEST_CASE("snf examples") {
    auto [d, u, v] = snf(mat({{2, 0}, {0, 3}}));
    CHECK(d == mat({{1, 0}, {0, 6}}));
    check_snf(mat({{2, 0}, {0, 3}}));
    CHECK(snf(IntMatrix(2, 2)).D.is_zero());
    CHECK(snf(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  }

  TEST_CASE("subgroup_index examples against coset enumeration") {
    Lattice z2 = Lattice::standard(2);
    Lattice two_z2 = Lattice::generated_by({iv({2, 0}), iv({0, 2})}, 2);
    CHECK(oracle::coset_count({iv({2, 0}), iv({0, 2})}) == 4);
    auto idx = subgroup_index(two_z2, z2);
    CHECK_FALSE(idx.infinite);
    CHECK(idx.value == 4);
    CHECK(subgroup_index(z2, z2).value == 1);
    CHECK(subgroup_index(Lattice::generated_by({iv({1, 0})}, 2), z2).infinite);
  }

  TEST_CASE("subgroup_index agrees with coset enumeration on random full-rank lattices") {
    std::mt19937 rng(11);
    int tested = 0;
    while (tested < 25) {
      auto m = random_matrix(rng, 2, 2, -4, 4);
      if (determinant(m) == 0) continue;
      auto rows = m.row_list();
      auto idx = subgroup_index(Lattice::generated_by(rows, 2), Lattice::standard(2));
      CHECK(idx.value == oracle::coset_count(rows));
      ++tested;
    }
  }

  TEST_CASE("subgroup_index rejects non-subgroups") {
    Lattice two_z = Lattice::generated_by({iv({2, 0}), iv({0, 2})}, 2);
    CHECK_THROWS_AS(subgroup_index(Lattice::standard(2), two_z), Error);
    Lattice x_axis = Lattice::generated_by({iv({1, 0})}, 2);
    try {
      subgroup_index(Lattice::generated_by({iv({0, 1})}, 2), x_axis);
      FAIL("expected NOT_SUBGROUP");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSubgroup);
    }
  }

  TEST_CASE("subgroup_index is multiplicative on nested lattices") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      auto m1 = random_matrix(rng, 3, 3, -3, 3);
      auto m2 = random_matrix(rng, 3, 3, -3, 3);
      if (determinant(m1) == 0 || determinant(m2) == 0) continue;
      Lattice c = Lattice::generated_by(m1.row_list(), 3);
      Lattice b = Lattice::generated_by((m2 * m1).row_list(), 3);  // b inside c
      Lattice a = Lattice::generated_by((m2 * m2 * m1).row_list(), 3);
      CHECK(subgroup_index(b, c).value * subgroup_index(a, b).value == subgroup_index(a, c).value);
    }
  }

  TEST_CASE("saturate examples") {
    auto s = saturate(Lattice::generated_by({iv({2, 2})}, 2));
    REQUIRE(s.rank() == 1);
    CHECK(s.basis()[0] == iv({1, 1}));
    auto p = saturate(Lattice::generated_by({iv({1, 0, 2})}, 3));
    CHECK(p.basis() == std::vector<IntVec>{iv({1, 0, 2})});

    // The plane x+y+z=0: any basis of two lattice vectors in the plane of index 1.
    auto plane = saturate(Lattice::generated_by({iv({2, -2, 0}), iv({0, 3, -3})}, 3));
    REQUIRE(plane.rank() == 2);
    for (const auto& b : plane.basis()) CHECK(b[0] + b[1] + b[2] == 0);
    auto reference = Lattice::generated_by({iv({1, -1, 0}), iv({0, 1, -1})}, 3);
    CHECK(subgroup_index(reference, plane).value == 1);
  }

  TEST_CASE("saturate is idempotent with finite index") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      auto m = random_matrix(rng, 2, 4, -5, 5);
      Lattice l = Lattice::generated_by(m.row_list(), 4);
      Lattice s = saturate(l);
      CHECK(saturate(s) == s);
      auto idx = subgroup_index(l, s);
      CHECK_FALSE(idx.infinite);
      // Saturation divides out the gcd along each primitive direction.
      for (const auto& b : s.basis()) {
        Integer g = 0;
        for (const auto& x : b) g = gcd(g, x);
        CHECK(g == 1);
      }
    }
  }

  TEST_CASE("lex_cmp") {
    CHECK(lex_cmp(iv({0, 3}), iv({2, 1})) < 0);
    CHECK(lex_cmp(iv({1, 1}), iv({1, 1})) == 0);
    CHECK(lex_cmp(iv({1, 0, 5}), iv({1, 0, 4})) > 0);
    try {
      (void)lex_cmp(iv({1}), iv({1, 2}));
      FAIL("expected LENGTH_MISMATCH");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthMismatch);
    }
  }

  TEST_CASE("lex order is a total order compatible with addition") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> dist(-4, 4);
    for (int trial = 0; trial < 500; ++trial) {
      IntVec a(3), b(3), c(3);
      for (int i = 0; i < 3; ++i) {
        a[i] = dist(rng);
        b[i] = dist(rng);
        c[i] = dist(rng);
      }
      auto ab = lex_cmp(a, b);
      CHECK((ab < 0) + (ab == 0) + (ab > 0) == 1);
      CHECK(lex_cmp(a + c, b + c) == ab);
      CHECK(lex_cmp(b, a) == (0 <=> ab));
    }
  }

  TEST_CASE("rational rendering") {
    CHECK(to_string(oracle::rat(1891, 3600)) == "1891/3600");
    CHECK(to_string(oracle::rat(4, 2)) == "2");
    CHECK(approx_string(oracle::rat(1, 2)) == "0.5");
  }
}
