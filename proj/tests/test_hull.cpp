#include <random>

#include "doctest.h"
#include "newtok/error.hpp"
#include "newtok/hull.hpp"
#include "oracles.hpp"

using namespace newtok;
using oracle::iv;
using oracle::rat;

namespace {

RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }

GradedSemigroup gens(std::size_t d, std::vector<IntVec> g) { return GradedSemigroup::from_generators(d, std::move(g)); }

Rational factorial(long n) {
  Rational f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Volume of a simplex given by vertices, straight from the determinant.
Rational simplex_volume(const std::vector<RatVec>& v) {
  std::vector<RatVec> rows;
  for (std::size_t i = 1; i < v.size(); ++i) {
    RatVec r(v[i].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = v[i][j] - v[0][j];
    rows.push_back(r);
  }
  return abs(determinant(rows)) / factorial(static_cast<long>(rows.size()));
}

}  // namespace

TEST_SUITE("hull") {
  TEST_CASE("convex_hull examples") {
    auto seg = convex_hull({rv({0}), rv({1}), rv({2})});
    CHECK(seg.vertices() == std::vector<RatVec>{rv({0}), rv({2})});
    CHECK(seg.dimension() == 1);

    auto sq = convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1}), rv({rat(1, 2), rat(1, 2)})});
    CHECK(sq.vertices().size() == 4);
    CHECK(sq.dimension() == 2);
    CHECK(sq.contains(rv({rat(1, 3), rat(2, 3)})));
    CHECK_FALSE(sq.contains(rv({rat(3, 2), 0})));

    auto pt = convex_hull({rv({rat(3, 2)})});
    CHECK(pt.dimension() == 0);
    CHECK(pt.vertices() == std::vector<RatVec>{rv({rat(3, 2)})});

    CHECK_THROWS_AS(convex_hull({}), Error);
  }

  TEST_CASE("hull of a cube with interior and facet points") {
    std::vector<RatVec> pts;
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y)
        for (int z = 0; z <= 2; ++z) pts.push_back(rv({x, y, z}));
    auto c = convex_hull(pts);
    CHECK(c.dimension() == 3);
    CHECK(c.vertices().size() == 8);
    CHECK(normalized_volume(c, Lattice::standard(3)).value == 8);
  }

  TEST_CASE("low-dimensional hull inside a higher ambient space") {
    auto tri = convex_hull({rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1}), rv({rat(1, 4), rat(1, 4), 1})});
    CHECK(tri.dimension() == 2);
    CHECK(tri.vertices().size() == 3);
    auto plane = Lattice::generated_by({iv({1, 0, 0}), iv({0, 1, 0})}, 3);
    CHECK(normalized_volume(tri, plane).value == rat(1, 2));
    CHECK_THROWS_AS(normalized_volume(tri, Lattice::standard(3)), Error);
  }

  TEST_CASE("unsupported dimension") {
    std::vector<RatVec> pts{RatVec(5, 0)};
    for (int i = 0; i < 5; ++i) {
      RatVec e(5, 0);
      e[i] = 1;
      pts.push_back(e);
    }
    try {
      (void)convex_hull(pts);
      FAIL("expected UNSUPPORTED_DIMENSION");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedDimension);
    }
  }

  TEST_CASE("nok_body examples") {
    auto b = nok_body(gens(1, {iv({0, 1}), iv({2, 1})}));
    CHECK(b.vertices() == std::vector<RatVec>{rv({0}), rv({2})});
    auto simplex = nok_body(gens(2, {iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1})}));
    CHECK(simplex.vertices() == std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0})});
    auto ray = nok_body(gens(1, {iv({3, 2})}));
    CHECK(ray.vertices() == std::vector<RatVec>{rv({rat(3, 2)})});
    CHECK(ray.dimension() == 0);
  }

  TEST_CASE("normalized_volume examples") {
    CHECK(normalized_volume(convex_hull({rv({0}), rv({2})}), Lattice::standard(1)).value == 2);
    CHECK(normalized_volume(convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}), Lattice::standard(2)).value ==
          1);
    std::vector<RatVec> tri{rv({0, 0}), rv({2, 0}), rv({0, 2})};
    CHECK(simplex_volume(tri) == 2);
    CHECK(normalized_volume(convex_hull(tri), Lattice::standard(2)).value == 2);
    auto pv = normalized_volume(convex_hull({rv({1})}), Lattice(1));
    CHECK(pv.value == 1);
    CHECK(pv.point_convention);
  }

  TEST_CASE("fan triangulation covers the polytope exactly") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> coord(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RatVec> pts;
      for (int i = 0; i < 8; ++i) pts.push_back(rv({coord(rng), coord(rng), coord(rng)}));
      auto p = convex_hull(pts);
      if (p.dimension() != 3) continue;
      Rational sum = 0;
      for (const auto& simplex : fan_triangulation(pts)) {
        std::vector<RatVec> v;
        for (auto i : simplex) v.push_back(pts[i]);
        sum += simplex_volume(v);
      }
      CHECK(sum == normalized_volume(p, Lattice::standard(3)).value);
    }
  }

  TEST_CASE("normalized volume is invariant under unimodular maps and lattice translations") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> coord(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<RatVec> pts;
      for (int i = 0; i < 6; ++i) pts.push_back(rv({coord(rng), coord(rng), coord(rng)}));
      auto p = convex_hull(pts);
      if (p.dimension() != 3) continue;
      auto t = oracle::random_unimodular(rng, 3);
      RatVec shift = rv({coord(rng), coord(rng), coord(rng)});
      std::vector<RatVec> moved;
      for (const auto& x : pts) {
        RatVec y(3, 0);
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) y[i] += Rational(t(i, j)) * x[j];
          y[i] += shift[i];
        }
        moved.push_back(y);
      }
      CHECK(normalized_volume(convex_hull(moved), Lattice::standard(3)).value ==
            normalized_volume(p, Lattice::standard(3)).value);
    }
  }

  TEST_CASE("body_limit examples agree with slice counts") {
    auto s1 = gens(1, {iv({0, 1}), iv({2, 1})});
    CHECK(body_limit(s1) == 1);
    CHECK(oracle::brute_slice(s1.generators(), 30).size() == 31);

    auto s2 = gens(1, {iv({0, 2}), iv({1, 2}), iv({2, 2})});
    CHECK(body_limit(s2) == 2);
    for (long k = 1; k <= 10; ++k) CHECK(oracle::brute_slice(s2.generators(), 2 * k).size() == std::size_t(2 * k + 1));

    auto s3 = gens(2, {iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1})});
    CHECK(body_limit(s3) == rat(1, 2));
    for (long k = 1; k <= 8; ++k)
      CHECK(oracle::brute_slice(s3.generators(), k).size() == std::size_t((k + 1) * (k + 2) / 2));
  }

  TEST_CASE("body_limit matches the slice-count trend on a non-normal example") {
    auto s = gens(1, {iv({0, 1}), iv({3, 1}), iv({1, 2})});
    Rational lim = body_limit(s);
    CHECK(lim == 3);
    Rational prev_gap = -1;
    for (long k = 10; k <= 40; k += 10) {
      Rational ratio(static_cast<long>(s.slice(k).size()), k);
      Rational gap = abs(ratio - lim);
      if (prev_gap >= 0) CHECK(gap <= prev_gap);
      prev_gap = gap;
    }
  }

  TEST_CASE("adding a generator inside the cone leaves the body unchanged") {
    auto a = gens(2, {iv({0, 0, 1}), iv({2, 0, 1}), iv({0, 2, 1})});
    auto b = gens(2, {iv({0, 0, 1}), iv({2, 0, 1}), iv({0, 2, 1}), iv({1, 1, 2})});
    CHECK(nok_body(a).vertices() == nok_body(b).vertices());
  }

  TEST_CASE("inner approximations grow with the sampling level") {
    auto s = gens(1, {iv({0, 2}), iv({5, 3}), iv({1, 1})});
    std::map<long, PointSet> slices;
    std::optional<RatPolytope> prev;
    for (long n = 1; n <= 7; ++n) {
      slices[n] = s.slice(n);
      auto approx = nok_body(GradedSemigroup::from_samples(1, slices, n));
      if (prev)
        for (const auto& v : prev->vertices()) CHECK(approx.contains(v));
      prev = approx;
    }
  }
}
