#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// sublattices of Z^k, group indices and saturation.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace newtok {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

/// Exact "p/q" (or "p" for integers) rendering.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);
/// Decimal rendering to 12 significant digits, for readability only.
std::string approx_string(const Rational& r);

IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec scaled(const IntVec& a, const Integer& c);
bool is_zero(const IntVec& v);
RatVec to_rational(const IntVec& v);

/// Lexicographic comparison, first coordinate most significant.
/// Throws LENGTH_MISMATCH when lengths differ.
std::strong_ordering lex_cmp(const IntVec& a, const IntVec& b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// All rows must share one length; `cols` is only consulted when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  std::vector<IntVec> row_list() const;
  IntMatrix transposed() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c);
  /// col[dst] += c * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
/// Determinant of a square matrix (Bareiss elimination).
Integer determinant(const IntMatrix& m);
Rational determinant(const std::vector<RatVec>& rows);

struct HermiteForm {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, H = U * M
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows last.
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix D;  // diagonal, d_1 | d_2 | ...
  IntMatrix U;
  IntMatrix V;  // D = U * M * V
};

SmithForm snf(const IntMatrix& m);

/// Rank over the rationals.
std::size_t rational_rank(const std::vector<IntVec>& vectors);
std::size_t rational_rank(const std::vector<RatVec>& vectors);

/// Pivot columns of the row echelon form of `vectors`.
std::vector<std::size_t> pivot_columns(const std::vector<RatVec>& vectors);

/// Coordinates c with sum c_i * basis_i = v, or nullopt if v is outside the
/// rational span. `basis` must be linearly independent.
std::optional<RatVec> solve_in_span(const std::vector<IntVec>& basis, const IntVec& v);
std::optional<RatVec> solve_in_span(const std::vector<RatVec>& basis, const RatVec& v);

/// Basis of the left kernel {x in Z^rows : x * M = 0}. The result is saturated.
std::vector<IntVec> integer_left_kernel(const IntMatrix& m);

/// A subgroup of Z^k given by a basis in row Hermite normal form.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient = 0) : ambient_(ambient) {}

  /// The subgroup generated by arbitrary (possibly dependent) vectors.
  static Lattice generated_by(const std::vector<IntVec>& generators, std::size_t ambient);
  static Lattice standard(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }

  bool contains(const IntVec& v) const;
  /// Coordinates of v in this basis if v lies in the rational span.
  std::optional<RatVec> coordinates(const IntVec& v) const;

  /// Intersection with the hyperplane {x : x[coord] = 0}.
  Lattice intersect_coordinate_hyperplane(std::size_t coord) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::size_t ambient_;
  std::vector<IntVec> basis_;
};

struct SubgroupIndex {
  bool infinite = false;
  Integer value = 1;

  static SubgroupIndex finite(Integer v) { return {false, std::move(v)}; }
  static SubgroupIndex unbounded() { return {true, 0}; }
  friend bool operator==(const SubgroupIndex&, const SubgroupIndex&) = default;
};

/// [B : A]. INFINITE when rank A < rank B. Throws NOT_SUBGROUP when A is
/// not contained in B (rationally, or as groups when ranks agree).
SubgroupIndex subgroup_index(const Lattice& a, const Lattice& b);

/// (rational span of L) intersected with Z^k.
Lattice saturate(const Lattice& l);

}  // namespace newtok
