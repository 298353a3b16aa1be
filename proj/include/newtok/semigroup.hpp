#pragma once

// Graded subsemigroups of Z^d x N. A semigroup is either given by finitely many
// generators of positive level, or known only through sampled slices up to a
// truncation level (value semigroups of series that are not known to be
// finitely generated). Points are stored as length d+1 vectors whose last
// coordinate is the level.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newtok/exactmath.hpp"

namespace newtok {

struct LexLess {
  bool operator()(const IntVec& a, const IntVec& b) const { return lex_cmp(a, b) < 0; }
};

/// A finite set of lattice points, ordered lexicographically.
using PointSet = std::set<IntVec, LexLess>;

class GradedSemigroup {
 public:
  /// Generator mode. Every generator has length d+1 and level >= 1.
  static GradedSemigroup from_generators(std::size_t d, std::vector<IntVec> generators);

  /// Sampled mode: `slices[k]` is the horizontal slice S_k for 1 <= k <= bound;
  /// absent levels are empty.
  static GradedSemigroup from_samples(std::size_t d, std::map<long, PointSet> slices, long bound);

  /// Sampled slices together with generators known to reproduce them.
  static GradedSemigroup from_samples_and_generators(std::size_t d, std::map<long, PointSet> slices,
                                                     long bound, std::vector<IntVec> generators);

  std::size_t d() const { return d_; }
  const std::vector<IntVec>& generators() const { return generators_; }
  bool has_generators() const { return !generators_.empty(); }
  bool is_sampled() const { return sample_bound_.has_value(); }
  std::optional<long> sample_bound() const { return sample_bound_; }
  /// Sampled slices by level (nonempty ones only).
  const std::map<long, PointSet>& samples() const { return samples_; }
  bool empty() const;

  /// Horizontal slice S_k. Throws NEGATIVE_LEVEL, or OUT_OF_RANGE past the
  /// truncation of a sampled semigroup without generators.
  PointSet slice(long k) const;

  /// All known points of positive level as (horizontal, level) vectors:
  /// the generators, or every sampled point.
  std::vector<IntVec> spanning_points() const;

  /// Applies a unimodular map to the horizontal coordinates.
  GradedSemigroup transformed(const IntMatrix& t) const;

 private:
  GradedSemigroup() = default;
  struct SliceCache;

  std::size_t d_ = 0;
  std::vector<IntVec> generators_;
  std::map<long, PointSet> samples_;
  std::optional<long> sample_bound_;
  std::shared_ptr<SliceCache> cache_;
};

/// G(S): the subgroup of Z^{d+1} generated by S.
Lattice group(const GradedSemigroup& s);

/// m(S) = [Z : pi(G(S))], the gcd of the levels.
Integer level_index(const GradedSemigroup& s);

/// (rational span of S) cap (Z^d x {0}).
Lattice boundary_lattice(const GradedSemigroup& s);

/// [boundary_lattice(S) : G(S) cap boundary_lattice(S)]; 1 when the boundary lattice is trivial.
Integer ind(const GradedSemigroup& s);

/// dim of the boundary subspace: rank of the span of S minus one.
std::size_t q(const GradedSemigroup& s);

struct NonnegativityReport {
  bool strongly_nonnegative = false;
  /// Smallest exponent with bounded growth (sampled mode); q(S) in generator mode.
  std::optional<std::size_t> q_estimate;
  std::string diagnostic;
};

NonnegativityReport strongly_nonnegative(const GradedSemigroup& s);

/// n-fold Minkowski sumset {x_1 + ... + x_n}.
PointSet sumset(const PointSet& a, long n);

/// Generators of positive level not expressible as sums of lower-level points,
/// extracted from slices 1..bound. They generate the same slices up to `bound`.
std::vector<IntVec> minimal_generators(std::size_t d, const std::map<long, PointSet>& slices, long bound);

}  // namespace newtok
