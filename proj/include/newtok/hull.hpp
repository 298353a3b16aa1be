#pragma once

// Exact convex hulls of rational point sets (affine dimension <= 4), fan
// triangulations and lattice-normalized volumes, and the Newton-Okounkov body
// of a graded semigroup.

#include <cstddef>
#include <optional>
#include <vector>

#include "newtok/exactmath.hpp"
#include "newtok/semigroup.hpp"

namespace newtok {

inline constexpr std::size_t kMaxHullDimension = 4;

/// a . x + b >= 0 (inequality) or == 0 (equation).
struct AffineForm {
  RatVec a;
  Rational b;

  Rational eval(const RatVec& x) const;
};

class RatPolytope {
 public:
  std::size_t ambient() const { return ambient_; }
  /// Dimension of the affine hull.
  std::size_t dimension() const { return dimension_; }
  /// Extreme points, lexicographically sorted.
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<AffineForm>& equations() const { return equations_; }
  const std::vector<AffineForm>& inequalities() const { return inequalities_; }

  /// Level of the slice this body lives in, when it comes from a semigroup.
  const std::optional<Rational>& level() const { return level_; }
  /// Lattice (in horizontal coordinates) carrying the integral measure.
  const std::optional<Lattice>& carrier() const { return carrier_; }

  bool contains(const RatVec& x) const;
  /// Integer points of scale * P.
  std::vector<IntVec> lattice_points(long scale = 1) const;

 private:
  friend RatPolytope convex_hull(const std::vector<RatVec>& points);
  friend RatPolytope nok_body(const GradedSemigroup& s);

  std::size_t ambient_ = 0;
  std::size_t dimension_ = 0;
  std::vector<RatVec> vertices_;
  std::vector<AffineForm> equations_;
  std::vector<AffineForm> inequalities_;
  std::optional<Rational> level_;
  std::optional<Lattice> carrier_;
};

/// Throws EMPTY_SET on no points and UNSUPPORTED_DIMENSION when the affine hull
/// has dimension above kMaxHullDimension.
RatPolytope convex_hull(const std::vector<RatVec>& points);

/// Triangulation of conv(points) into simplices of full affine dimension,
/// fanned from the lexicographically smallest vertex and recursively on
/// facets. Each simplex lists indices into `points`.
std::vector<std::vector<std::size_t>> fan_triangulation(const std::vector<RatVec>& points);

struct NormalizedVolume {
  Rational value;
  /// Set for 0-dimensional polytopes, whose volume is 1 by convention.
  bool point_convention = false;
};

/// Volume of P in coordinates where a fundamental cell of `lattice` has volume 1.
/// Throws DIMENSION_MISMATCH unless aff(P) is a translate of span(lattice).
NormalizedVolume normalized_volume(const RatPolytope& p, const Lattice& lattice);

/// Delta(S): the level-1 slice of the cone over S (inner approximation from
/// the samples in sampled mode), carried by the horizontal boundary lattice.
RatPolytope nok_body(const GradedSemigroup& s);

/// m(S)^q(S) * vol(Delta(S)) / ind(S): the limit of #S_{m k} / k^q.
Rational body_limit(const GradedSemigroup& s);

}  // namespace newtok
