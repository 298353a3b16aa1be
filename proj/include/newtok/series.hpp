#pragma once

// Graded linear series over the polynomial model Q[y_1..y_d] of a local ring
// at a nonsingular point, the lexicographic flag valuation, and value
// semigroups.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "newtok/exactmath.hpp"
#include "newtok/hull.hpp"
#include "newtok/semigroup.hpp"

namespace newtok {

/// Exponent vector in N^d. std::vector's ordering is lex with the first
/// coordinate most significant, so a term map iterates from the valuation up.
using Monomial = std::vector<long>;

/// Sparse polynomial with rational coefficients; no zero coefficients stored.
class Poly {
 public:
  explicit Poly(std::size_t d = 0) : d_(d) {}

  static Poly constant(std::size_t d, const Rational& c);
  static Poly monomial(Monomial exponent, const Rational& c = 1);

  std::size_t d() const { return d_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Adds c * y^exponent.
  void add_term(const Monomial& exponent, const Rational& c);

  /// Value at the origin (the constant coefficient).
  Rational constant_term() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  /// this += c * other
  void add_scaled(const Poly& other, const Rational& c);
  Poly scaled(const Rational& c) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

  std::string to_string() const;

 private:
  std::size_t d_;
  std::map<Monomial, Rational> terms_;
};

/// nu(f): the lex-smallest exponent of f. Throws ZERO_POLY.
IntVec nu(const Poly& f);

struct LeadingBasis {
  std::vector<Poly> basis;  // pairwise distinct nu-values, leading coefficient 1
  PointSet values;
};

/// Elimination by leading terms: a basis of span(vectors) with distinct values.
LeadingBasis leading_basis(const std::vector<Poly>& vectors);

/// Whether f lies in the span of a leading basis (distinct leading exponents).
bool in_span(Poly f, const std::vector<Poly>& leading);

struct SeriesGenerator {
  long degree;
  Poly poly;

  friend bool operator==(const SeriesGenerator&, const SeriesGenerator&) = default;
};

enum class SeriesMode { Toric, Generated, Explicit };

class GradedLinearSeries {
 public:
  /// Full section ring of a lattice polytope: L_n spanned by y^a, a in nP.
  static GradedLinearSeries toric(std::size_t d, const std::vector<IntVec>& vertices);
  /// Subalgebra generated by homogeneous elements.
  static GradedLinearSeries generated(std::size_t d, std::vector<SeriesGenerator> generators);
  /// Spanning lists per degree 1..max_degree. L_0 defaults to the constants.
  static GradedLinearSeries explicit_series(std::size_t d, long max_degree,
                                            std::map<long, std::vector<Poly>> pieces);

  std::size_t d() const { return d_; }
  SeriesMode mode() const { return mode_; }

  const std::vector<IntVec>& toric_vertices() const { return toric_vertices_; }
  const RatPolytope& polytope() const { return *polytope_; }
  const std::vector<SeriesGenerator>& generators() const { return generators_; }
  long max_degree() const { return max_degree_; }
  const std::map<long, std::vector<Poly>>& explicit_pieces() const { return pieces_; }

  /// True when every generator is a monomial (TORIC always).
  bool monomial_generated() const;

 private:
  friend std::vector<Poly> degree_piece(const GradedLinearSeries& l, long n);
  struct PieceCache;

  GradedLinearSeries() = default;

  std::size_t d_ = 0;
  SeriesMode mode_ = SeriesMode::Explicit;
  std::vector<IntVec> toric_vertices_;
  std::shared_ptr<const RatPolytope> polytope_;
  std::vector<SeriesGenerator> generators_;
  long max_degree_ = 0;
  std::map<long, std::vector<Poly>> pieces_;
  std::shared_ptr<PieceCache> cache_;
};

/// A basis of L_n with distinct valuations. Throws OUT_OF_RANGE past an
/// explicit series' truncation.
std::vector<Poly> degree_piece(const GradedLinearSeries& l, long n);

/// Value semigroup sampled on 1..bound. TORIC and monomial GENERATED series
/// also carry exact generators; other GENERATED series carry the minimal
/// generators of the truncation (see value_semigroup_is_exact).
GradedSemigroup value_semigroup(const GradedLinearSeries& l, long bound);

/// Whether the generators attached by value_semigroup generate all of S(L).
bool value_semigroup_is_exact(const GradedLinearSeries& l);

struct IndexResult {
  Integer m;
  bool exact = false;
  /// Smallest degree after which the gcd no longer changed.
  long stable_at = 0;
};

/// gcd of the degrees n <= bound with L_n != 0. Throws ALL_ZERO.
IndexResult index(const GradedLinearSeries& l, long bound);

struct KappaResult {
  /// nullopt encodes -infinity.
  std::optional<long> value;
  bool exact = false;
  /// Smallest degree from which the running estimate equals the final one.
  long stable_since = 0;
  long bound = 0;

  bool negative_infinity() const { return !value.has_value(); }
  /// Estimate unchanged for at least three consecutive degrees.
  bool stabilized() const { return exact || bound - stable_since >= 3; }
};

KappaResult kappa(const GradedLinearSeries& l, long bound);

/// The subalgebra generated by L_p, regraded with L_p in degree 1. Throws ZERO_PIECE.
GradedLinearSeries veronese(const GradedLinearSeries& l, long p);

struct SubalgebraCheck {
  bool ok = true;
  std::optional<std::pair<long, long>> violation;
};

/// Explicit series only: every product L_a * L_b (a+b <= bound) lies in L_{a+b}.
SubalgebraCheck subalgebra_check(const GradedLinearSeries& l, long bound);

}  // namespace newtok
