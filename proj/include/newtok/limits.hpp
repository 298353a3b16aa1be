#pragma once

// Limit verifiers: volume limits of dim L_{nm}/n^kappa, degrees of the
// Veronese images (Hilbert multiplicities), sumset sandwiches, and the
// component-by-component decomposition of series on reduced models.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "newtok/exactmath.hpp"
#include "newtok/semigroup.hpp"
#include "newtok/series.hpp"

namespace newtok {

struct LimitRow {
  long n = 0;
  long degree = 0;  // n * m (or a + n * r)
  Integer dim;
  Rational ratio;   // dim / n^kappa
};

struct Convergence {
  std::optional<Rational> last_delta;
  bool nonincreasing = true;
  bool nondecreasing = true;
  std::optional<Rational> gap;  // |last ratio - predicted|
  std::optional<bool> within_tolerance;
};

struct LimitReport {
  long kappa = 0;
  bool kappa_exact = false;
  long kappa_stable_since = 0;
  Integer m;
  std::vector<LimitRow> rows;
  std::optional<Rational> predicted;
  bool predicted_exact = false;
  Convergence convergence;
};

/// dim L_{nm} / n^kappa for n*m <= bound, with the exact body limit when the
/// value semigroup has generators. Throws KAPPA_UNDEFINED, UNSTABLE, NOT_SUBALGEBRA.
LimitReport volume_limit_report(const GradedLinearSeries& l, long bound,
                                const std::optional<Rational>& tolerance = std::nullopt);

/// dim of the degree-n piece of the subalgebra generated by L_p.
Integer hilbert_function(const GradedLinearSeries& l, long p, long n);

struct MultiplicityResult {
  long p = 0;
  long kappa = 0;                        // dimension of the image Y_p
  Integer degree;                        // route (a): kappa! * body limit
  std::optional<Integer> finite_difference;  // route (b); nullopt when UNSTABLE
  std::vector<Integer> hilbert;          // H(0..n_max)
};

/// deg Y_p by two routes; throws INCONSISTENT when both complete and disagree.
MultiplicityResult multiplicity(const GradedLinearSeries& l, long p, long n_max = 0);

struct DegreeRow {
  long p = 0;
  long degree = 0;  // p * m
  MultiplicityResult multiplicity;
  Rational ratio;   // deg / (kappa! p^kappa)
};

struct DegreeLimitReport {
  long kappa = 0;
  Integer m;
  std::optional<Rational> volume_limit;
  std::vector<DegreeRow> rows;
  bool bounded_by_volume_limit = true;
  bool nondecreasing = true;
};

DegreeLimitReport degree_limit_report(const GradedLinearSeries& l, const std::vector<long>& p_list, long bound);

struct SumsetRow {
  long n = 0;
  std::size_t sumset_count = 0;               // #(n * S_{pm})
  std::optional<Integer> veronese_dim;        // dim (L^{[pm]})_n when a series is given
  std::size_t slice_count = 0;                // #S_{npm}
  Rational ratio;                             // sumset / (n^q p^q)
  Rational slice_ratio;                       // slice / (n^q p^q)
};

struct SumsetReport {
  long p = 0;
  Integer m;
  std::size_t q = 0;
  std::vector<SumsetRow> rows;
  std::optional<Rational> body_limit;
  std::optional<Rational> gap;  // body_limit - last ratio
  bool sandwich_holds = true;
};

/// Throws EMPTY_SLICE when S_{pm} is empty.
SumsetReport sumset_report(const GradedSemigroup& s, long p, long n_max,
                           const GradedLinearSeries* series = nullptr);

// ---------------------------------------------------------------------------
// Reduced spaces

using Tuple = std::vector<Poly>;

/// A graded series on a model with s irreducible components: degree-n
/// elements are s-tuples of polynomials, component i in component_dims[i]
/// variables. The degree-0 piece is the diagonal constants.
class MultiComponentSeries {
 public:
  /// Spanning tuples per degree 1..max_degree.
  static MultiComponentSeries from_tuples(std::vector<std::size_t> component_dims, long max_degree,
                                          std::map<long, std::vector<Tuple>> pieces);

  /// Sections of the components agreeing at the origin (components glued at one point).
  static MultiComponentSeries glued_at_origin(const std::vector<GradedLinearSeries>& components, long max_degree);

  std::size_t s() const { return dims_.size(); }
  const std::vector<std::size_t>& component_dims() const { return dims_; }
  long max_degree() const { return max_degree_; }

  /// Linearly independent tuples spanning M_n.
  const std::vector<Tuple>& piece(long n) const;

 private:
  MultiComponentSeries() = default;

  std::vector<std::size_t> dims_;
  long max_degree_ = 0;
  std::map<long, std::vector<Tuple>> pieces_;
};

struct Restriction {
  GradedLinearSeries restricted;  // (M|X_i), explicit mode
  MultiComponentSeries kernel;    // K(M, X_i)
};

/// 0 -> K_n -> M_n -> (M|X_i)_n -> 0 for 1 <= n <= max_degree; i is 0-based.
Restriction restrict(const MultiComponentSeries& m, std::size_t i);

struct ComponentStep {
  std::size_t component = 0;
  std::optional<long> kappa;  // nullopt: -infinity
  bool kappa_stable = false;
  std::optional<Integer> m;   // nullopt when every positive piece vanishes
  std::vector<Integer> dims;  // dims[n-1] = dim (M^{k-1}|X_i)_n
};

struct ResidueTable {
  long residue = 0;
  std::vector<LimitRow> rows;
  Convergence convergence;
};

struct DecompositionReport {
  std::vector<std::size_t> ordering;
  std::vector<ComponentStep> steps;
  std::vector<Integer> dims;  // dims[n-1] = dim M_n
  bool additivity_holds = true;
  long kappa = 0;
  Integer r;
  std::vector<ResidueTable> tables;
};

/// Kernel chain M^0 = M, M^k = K(M^{k-1}, X_{ordering[k-1]}). Throws NOT_INJECTIVE
/// when M^s != 0 and KAPPA_UNDEFINED when every piece vanishes.
DecompositionReport decompose_reduced(const MultiComponentSeries& m, long bound,
                                      std::vector<std::size_t> ordering = {});

}  // namespace newtok
