#pragma once

// Test-only reference computations, kept independent of the library's
// algorithms: brute-force enumeration and dense elimination.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "newtok/exactmath.hpp"
#include "newtok/series.hpp"

namespace oracle {

using newtok::Integer;
using newtok::IntVec;
using newtok::Rational;

inline IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Dense Gaussian elimination rank over Q.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Rank of the coefficient matrix of a list of polynomials.
inline std::size_t poly_rank(const std::vector<newtok::Poly>& polys) {
  std::map<newtok::Monomial, std::size_t> columns;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) columns.emplace(m, 0);
  std::size_t idx = 0;
  for (auto& [m, i] : columns) i = idx++;
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : polys) {
    std::vector<Rational> row(columns.size(), 0);
    for (const auto& [m, c] : p.terms()) row[columns[m]] = c;
    rows.push_back(std::move(row));
  }
  return dense_rank(std::move(rows));
}

/// Random nonzero polynomial with at most `max_terms` terms and small coefficients.
inline newtok::Poly random_poly(std::mt19937& rng, std::size_t d, int max_terms, long max_exp) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<long> ex(0, max_exp), coef(-3, 3);
  newtok::Poly p(d);
  while (p.is_zero()) {
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      newtok::Monomial m(d);
      for (auto& e : m) e = ex(rng);
      long c = coef(rng);
      if (c != 0) p.add_term(m, c);
    }
  }
  return p;
}

/// Lex-smallest exponent of a nonzero polynomial, by direct comparison.
inline IntVec lex_min_exponent(const newtok::Poly& f) {
  const newtok::Monomial* best = nullptr;
  for (const auto& [m, c] : f.terms())
    if (!best || std::lexicographical_compare(m.begin(), m.end(), best->begin(), best->end())) best = &m;
  IntVec out;
  for (long e : *best) out.emplace_back(e);
  return out;
}

/// A basis of span(polys), from the nonzero rows of a dense row echelon form.
inline std::vector<newtok::Poly> span_basis(const std::vector<newtok::Poly>& polys, std::size_t d) {
  std::map<newtok::Monomial, std::size_t> columns;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) columns.emplace(m, 0);
  std::vector<newtok::Monomial> monos;
  for (auto& [m, i] : columns) {
    i = monos.size();
    monos.push_back(m);
  }
  std::vector<std::vector<Rational>> a;
  for (const auto& p : polys) {
    std::vector<Rational> row(monos.size(), 0);
    for (const auto& [m, c] : p.terms()) row[columns[m]] = c;
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < monos.size() && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < monos.size(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  std::vector<newtok::Poly> out;
  for (std::size_t i = 0; i < rank; ++i) {
    newtok::Poly p(d);
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (a[i][j] != 0) p.add_term(monos[j], a[i][j]);
    out.push_back(std::move(p));
  }
  return out;
}

/// Slices of the semigroup generated by `gens` (last coordinate = level),
/// by recursive enumeration of all generator multisets of total level k.
inline std::set<IntVec> brute_slice(const std::vector<IntVec>& gens, long k) {
  const std::size_t d = gens.front().size() - 1;
  std::set<IntVec> out;
  std::vector<std::size_t> counts(gens.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, long remaining) -> void {
    if (i == gens.size()) {
      if (remaining != 0) return;
      IntVec p(d);
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t j = 0; j < d; ++j) p[j] += gens[g][j] * static_cast<long>(counts[g]);
      out.insert(p);
      return;
    }
    const long lvl = gens[i].back().get_si();
    for (long c = 0; c * lvl <= remaining; ++c) {
      counts[i] = static_cast<std::size_t>(c);
      self(self, i + 1, remaining - c * lvl);
    }
    counts[i] = 0;
  };
  rec(rec, 0, k);
  return out;
}

/// Number of cosets of the full-rank sublattice spanned by `basis` in Z^k,
/// found by enumerating a box of side |det| and testing differences with
/// Cramer's rule.
inline long coset_count(const std::vector<IntVec>& basis) {
  const std::size_t k = basis.size();
  auto det = [&](const std::vector<IntVec>& m) { return newtok::determinant(newtok::IntMatrix::from_rows(m)); };
  const Integer dt = abs(det(basis));
  auto in_lattice = [&](const IntVec& v) {
    for (std::size_t j = 0; j < k; ++j) {
      auto m = basis;
      m[j] = v;
      if (det(m) % dt != 0) return false;
    }
    return true;
  };
  std::vector<IntVec> reps;
  IntVec x(k, 0);
  const long side = dt.get_si();
  for (;;) {
    bool fresh = true;
    for (const auto& r : reps)
      if (in_lattice(newtok::operator-(x, r))) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(x);
    std::size_t i = 0;
    while (i < k) {
      if (x[i] + 1 < side) {
        ++x[i];
        break;
      }
      x[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return static_cast<long>(reps.size());
}

/// Random unimodular d x d matrix: product of elementary moves with small entries.
inline newtok::IntMatrix random_unimodular(std::mt19937& rng, std::size_t d, long bound = 3) {
  for (;;) {
    auto t = newtok::IntMatrix::identity(d);
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) {
        if (coef(rng) > 0) t.negate_row(i);
        continue;
      }
      t.add_row_multiple(i, j, coef(rng));
    }
    bool small = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (abs(t(i, j)) > bound) small = false;
    if (small) return t;
  }
}

}  // namespace oracle
