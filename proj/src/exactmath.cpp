#include "newtok/exactmath.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "newtok/error.hpp"

namespace newtok {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string approx_string(const Rational& r) {
  mpf_class f(r, 128);
  char buf[64];
  gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
  return buf;
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "vector add: length mismatch");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "vector sub: length mismatch");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVec scaled(const IntVec& a, const Integer& c) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

std::strong_ordering lex_cmp(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "lex_cmp: vectors of length " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::LengthMismatch, "IntMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVec> IntMatrix::row_list() const {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::LengthMismatch, "matrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::LengthMismatch, "determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const std::vector<RatVec>& rows) {
  std::vector<RatVec> a = rows;
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k].size() != n) throw Error(ErrorCode::LengthMismatch, "determinant: matrix not square");
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = h.rows();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < h.cols() && pivot < rows; ++col) {
    // Euclid on the column below the pivot row until a single nonzero remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = pivot; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        if (best == rows || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == rows) break;
      h.swap_rows(pivot, best);
      u.swap_rows(pivot, best);
      bool done = true;
      for (std::size_t i = pivot + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Integer q = floor_div(h(i, col), h(pivot, col));
        h.add_row_multiple(i, pivot, -q);
        u.add_row_multiple(i, pivot, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot, col) == 0) continue;
    if (h(pivot, col) < 0) {
      h.negate_row(pivot);
      u.negate_row(pivot);
    }
    for (std::size_t i = 0; i < pivot; ++i) {
      Integer q = floor_div(h(i, col), h(pivot, col));
      h.add_row_multiple(i, pivot, -q);
      u.add_row_multiple(i, pivot, -q);
    }
    ++pivot;
  }
  return {std::move(h), std::move(u)};
}

SmithForm snf(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t r = d.rows();
  const std::size_t c = d.cols();
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = r, bj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (bi == r || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == r) break;
      d.swap_rows(t, bi);
      u.swap_rows(t, bi);
      d.swap_cols(t, bj);
      v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Rational elimination helpers

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<RatVec>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rational_rank(const std::vector<RatVec>& vectors) {
  std::vector<RatVec> a = vectors;
  return row_reduce(a).size();
}

std::size_t rational_rank(const std::vector<IntVec>& vectors) {
  std::vector<RatVec> a;
  a.reserve(vectors.size());
  for (const auto& v : vectors) a.push_back(to_rational(v));
  return rational_rank(a);
}

std::vector<std::size_t> pivot_columns(const std::vector<RatVec>& vectors) {
  std::vector<RatVec> a = vectors;
  return row_reduce(a);
}

std::optional<RatVec> solve_in_span(const std::vector<RatVec>& basis, const RatVec& v) {
  // Columns are basis vectors; augment with v and reduce the transpose system.
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  std::vector<RatVec> sys(n, RatVec(k + 1));
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != n) throw Error(ErrorCode::LengthMismatch, "solve_in_span: length mismatch");
    for (std::size_t i = 0; i < n; ++i) sys[i][j] = basis[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) sys[i][k] = v[i];
  auto pivots = row_reduce(sys);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  if (pivots.size() != k) throw Error(ErrorCode::DimensionMismatch, "solve_in_span: dependent basis");
  RatVec coords(k);
  for (std::size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = sys[r][k];
  return coords;
}

std::optional<RatVec> solve_in_span(const std::vector<IntVec>& basis, const IntVec& v) {
  std::vector<RatVec> b;
  b.reserve(basis.size());
  for (const auto& x : basis) b.push_back(to_rational(x));
  return solve_in_span(b, to_rational(v));
}

std::vector<IntVec> integer_left_kernel(const IntMatrix& m) {
  auto [h, u] = hnf(m);
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (zero) out.push_back(u.row(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattice

Lattice Lattice::generated_by(const std::vector<IntVec>& generators, std::size_t ambient) {
  Lattice l(ambient);
  if (generators.empty()) return l;
  auto h = hnf(IntMatrix::from_rows(generators, ambient)).H;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    IntVec r = h.row(i);
    if (!newtok::is_zero(r)) l.basis_.push_back(std::move(r));
  }
  return l;
}

Lattice Lattice::standard(std::size_t ambient) {
  return generated_by(IntMatrix::identity(ambient).row_list(), ambient);
}

std::optional<RatVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::LengthMismatch, "Lattice: vector of wrong length");
  if (basis_.empty()) {
    if (newtok::is_zero(v)) return RatVec{};
    return std::nullopt;
  }
  return solve_in_span(basis_, v);
}

bool Lattice::contains(const IntVec& v) const {
  auto c = coordinates(v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x.get_den() == 1; });
}

Lattice Lattice::intersect_coordinate_hyperplane(std::size_t coord) const {
  if (coord >= ambient_) throw Error(ErrorCode::OutOfRange, "Lattice: coordinate out of range");
  if (basis_.empty()) return *this;
  IntMatrix functional(basis_.size(), 1);
  for (std::size_t i = 0; i < basis_.size(); ++i) functional(i, 0) = basis_[i][coord];
  std::vector<IntVec> gens;
  for (const auto& combo : integer_left_kernel(functional)) {
    IntVec v(ambient_);
    for (std::size_t i = 0; i < combo.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) v[j] += combo[i] * basis_[i][j];
    gens.push_back(std::move(v));
  }
  return generated_by(gens, ambient_);
}

SubgroupIndex subgroup_index(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::LengthMismatch, "subgroup_index: ambient mismatch");
  std::vector<IntVec> coords;
  std::vector<Integer> dens;
  bool integral = true;
  for (const auto& v : a.basis()) {
    auto c = b.coordinates(v);
    if (!c) throw Error(ErrorCode::NotSubgroup, "subgroup_index: A is not in the rational span of B");
    IntVec row;
    for (const auto& x : *c) {
      if (x.get_den() != 1) integral = false;
      row.push_back(x.get_num());
    }
    coords.push_back(std::move(row));
  }
  if (a.rank() < b.rank()) return SubgroupIndex::unbounded();
  if (!integral) throw Error(ErrorCode::NotSubgroup, "subgroup_index: A is not a subgroup of B");
  if (b.rank() == 0) return SubgroupIndex::finite(1);
  auto s = snf(IntMatrix::from_rows(coords));
  Integer idx = 1;
  for (std::size_t i = 0; i < s.D.rows(); ++i) idx *= s.D(i, i);
  return SubgroupIndex::finite(abs(idx));
}

Lattice saturate(const Lattice& l) {
  const std::size_t k = l.ambient();
  if (l.rank() == 0) return Lattice(k);
  if (l.rank() == k) return Lattice::standard(k);
  // Integer orthogonal complement, then its orthogonal complement.
  auto basis = IntMatrix::from_rows(l.basis());
  auto complement = integer_left_kernel(basis.transposed());
  auto sat = integer_left_kernel(IntMatrix::from_rows(complement).transposed());
  return Lattice::generated_by(sat, k);
}

}  // namespace newtok
