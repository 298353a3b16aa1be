#include "newtok/limits.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "newtok/error.hpp"
#include "newtok/hull.hpp"

namespace newtok {

namespace {

Integer factorial(long k) {
  Integer f = 1;
  for (long i = 2; i <= k; ++i) f *= i;
  return f;
}

Integer power(long base, long exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return out;
}

Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Convergence diagnose(const std::vector<LimitRow>& rows, const std::optional<Rational>& predicted,
                     const std::optional<Rational>& tolerance) {
  Convergence c;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ratio > rows[i - 1].ratio) c.nonincreasing = false;
    if (rows[i].ratio < rows[i - 1].ratio) c.nondecreasing = false;
  }
  if (rows.size() >= 2) c.last_delta = rows.back().ratio - rows[rows.size() - 2].ratio;
  if (predicted && !rows.empty()) {
    c.gap = abs(rows.back().ratio - *predicted);
    if (tolerance) c.within_tolerance = *c.gap <= *tolerance;
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Volume and degree limits

LimitReport volume_limit_report(const GradedLinearSeries& l, long bound, const std::optional<Rational>& tolerance) {
  if (l.mode() == SeriesMode::Explicit) {
    auto check = subalgebra_check(l, bound);
    if (!check.ok)
      throw Error(ErrorCode::NotSubalgebra, "volume_limit_report: L_" + std::to_string(check.violation->first) +
                                                " * L_" + std::to_string(check.violation->second) +
                                                " is not contained in the stored piece");
  }
  auto k = kappa(l, bound);
  if (k.negative_infinity())
    throw Error(ErrorCode::KappaUndefined, "volume_limit_report: L_n = 0 for all 0 < n <= " + std::to_string(bound));
  if (!k.stabilized())
    throw Error(ErrorCode::Unstable, "volume_limit_report: kappa estimate last changed at degree " +
                                         std::to_string(k.stable_since) + " of " + std::to_string(k.bound));

  LimitReport r;
  r.kappa = *k.value;
  r.kappa_exact = k.exact;
  r.kappa_stable_since = k.stable_since;
  r.m = index(l, bound).m;
  const long m = r.m.get_si();

  GradedSemigroup s = value_semigroup(l, bound);
  for (long n = 1; n * m <= bound; ++n) {
    auto it = s.samples().find(n * m);
    Integer dim = it == s.samples().end() ? 0 : static_cast<unsigned long>(it->second.size());
    Integer den = power(n, r.kappa);
    r.rows.push_back({n, n * m, dim, ratio(dim, den)});
  }
  if (s.has_generators()) {
    r.predicted = body_limit(s);
    r.predicted_exact = value_semigroup_is_exact(l);
  }
  r.convergence = diagnose(r.rows, r.predicted, tolerance);
  return r;
}

Integer hilbert_function(const GradedLinearSeries& l, long p, long n) {
  auto v = veronese(l, p);
  return static_cast<unsigned long>(degree_piece(v, n).size());
}

MultiplicityResult multiplicity(const GradedLinearSeries& l, long p, long n_max) {
  auto v = veronese(l, p);
  MultiplicityResult r;
  r.p = p;
  if (n_max <= 0) n_max = 2 * static_cast<long>(l.d()) + 4;

  auto k = kappa(v, n_max);
  r.kappa = *k.value;  // L_p != 0, so the Veronese algebra is nonzero in degree 1
  n_max = std::max(n_max, 2 * r.kappa + 4);

  // Route (a): the image is generated in degree 1, so m = 1 and deg = kappa! * limit.
  GradedSemigroup s = value_semigroup(v, n_max);
  Rational a = Rational(factorial(r.kappa)) * body_limit(s);
  a.canonicalize();
  if (a.get_den() != 1)
    throw Error(ErrorCode::Inconsistent, "multiplicity: kappa! * body limit = " + to_string(a) + " is not an integer");
  r.degree = a.get_num();

  // Route (b): the kappa-th difference of H at the three largest n.
  for (long n = 0; n <= n_max; ++n) r.hilbert.push_back(static_cast<unsigned long>(degree_piece(v, n).size()));
  std::vector<Integer> diffs;
  for (long n = n_max - 2; n <= n_max; ++n) {
    Integer acc = 0;
    for (long j = 0; j <= r.kappa; ++j) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(r.kappa), static_cast<unsigned long>(j));
      Integer term = binom * r.hilbert[static_cast<std::size_t>(n - j)];
      acc += (j % 2 == 0) ? term : Integer(-term);
    }
    diffs.push_back(acc);
  }
  if (diffs[0] == diffs[1] && diffs[1] == diffs[2]) r.finite_difference = diffs[0];
  if (r.finite_difference && *r.finite_difference != r.degree)
    throw Error(ErrorCode::Inconsistent, "multiplicity: body route gives " + to_string(r.degree) +
                                             " but finite differences give " + to_string(*r.finite_difference));
  return r;
}

DegreeLimitReport degree_limit_report(const GradedLinearSeries& l, const std::vector<long>& p_list, long bound) {
  auto k = kappa(l, bound);
  if (k.negative_infinity())
    throw Error(ErrorCode::KappaUndefined, "degree_limit_report: L_n = 0 for all 0 < n <= " + std::to_string(bound));
  if (!k.stabilized()) throw Error(ErrorCode::Unstable, "degree_limit_report: kappa has not stabilized");
  DegreeLimitReport r;
  r.kappa = *k.value;
  r.m = index(l, bound).m;
  GradedSemigroup s = value_semigroup(l, bound);
  if (s.has_generators()) r.volume_limit = body_limit(s);

  const Integer kf = factorial(r.kappa);
  for (long p : p_list) {
    DegreeRow row;
    row.p = p;
    row.degree = p * r.m.get_si();
    row.multiplicity = multiplicity(l, row.degree);
    row.ratio = Rational(row.multiplicity.degree) / Rational(kf * power(p, r.kappa));
    row.ratio.canonicalize();
    if (r.volume_limit && row.ratio > *r.volume_limit) r.bounded_by_volume_limit = false;
    if (!r.rows.empty() && row.ratio < r.rows.back().ratio) r.nondecreasing = false;
    r.rows.push_back(std::move(row));
  }
  return r;
}

SumsetReport sumset_report(const GradedSemigroup& s, long p, long n_max, const GradedLinearSeries* series) {
  SumsetReport r;
  r.p = p;
  r.m = level_index(s);
  r.q = q(s);
  const long pm = p * r.m.get_si();
  PointSet base = s.slice(pm);
  if (base.empty()) throw Error(ErrorCode::EmptySlice, "sumset_report: S_" + std::to_string(pm) + " is empty");
  std::optional<GradedLinearSeries> v;
  if (series) v = veronese(*series, pm);

  const Integer scale = power(p, static_cast<long>(r.q));
  PointSet acc = base;
  for (long n = 1; n <= n_max; ++n) {
    if (n > 1) {
      PointSet next;
      for (const auto& x : acc)
        for (const auto& y : base) next.insert(x + y);
      acc = std::move(next);
    }
    SumsetRow row;
    row.n = n;
    row.sumset_count = acc.size();
    row.slice_count = s.slice(n * pm).size();
    if (v) row.veronese_dim = static_cast<unsigned long>(degree_piece(*v, n).size());
    const Integer den = power(n, static_cast<long>(r.q)) * scale;
    row.ratio = ratio(static_cast<unsigned long>(row.sumset_count), den);
    row.slice_ratio = ratio(static_cast<unsigned long>(row.slice_count), den);
    const Integer middle = row.veronese_dim.value_or(static_cast<unsigned long>(row.sumset_count));
    if (!(Integer(static_cast<unsigned long>(row.sumset_count)) <= middle &&
          middle <= Integer(static_cast<unsigned long>(row.slice_count))))
      r.sandwich_holds = false;
    r.rows.push_back(std::move(row));
  }
  if (s.has_generators()) {
    r.body_limit = body_limit(s);
    r.gap = *r.body_limit - r.rows.back().ratio;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reduced spaces

namespace {

using TupleKey = std::pair<std::size_t, Monomial>;
using SparseVec = std::map<TupleKey, Rational>;

SparseVec flatten(const Tuple& t) {
  SparseVec out;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& [m, c] : t[i].terms()) out.emplace(TupleKey{i, m}, c);
  return out;
}

void axpy(SparseVec& y, const SparseVec& x, const Rational& c) {
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, v * c);
    if (!inserted) {
      it->second += v * c;
      if (it->second == 0) y.erase(it);
    }
  }
}

struct Elimination {
  std::vector<std::size_t> independent;         // rows that became pivots
  std::vector<std::vector<Rational>> relations;  // combinations summing to zero
};

// Leading-term elimination tracking row combinations.
Elimination eliminate(const std::vector<SparseVec>& rows) {
  Elimination out;
  std::vector<SparseVec> pivot_rows;
  std::vector<std::vector<Rational>> pivot_combos;
  std::map<TupleKey, std::size_t> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseVec v = rows[r];
    std::vector<Rational> combo(rows.size(), 0);
    combo[r] = 1;
    while (!v.empty()) {
      auto it = pivots.find(v.begin()->first);
      if (it == pivots.end()) break;
      Rational c = v.begin()->second / pivot_rows[it->second].begin()->second;
      axpy(v, pivot_rows[it->second], -c);
      for (std::size_t j = 0; j < combo.size(); ++j) combo[j] -= c * pivot_combos[it->second][j];
    }
    if (v.empty()) {
      out.relations.push_back(std::move(combo));
    } else {
      pivots.emplace(v.begin()->first, pivot_rows.size());
      pivot_rows.push_back(std::move(v));
      pivot_combos.push_back(std::move(combo));
      out.independent.push_back(r);
    }
  }
  return out;
}

Tuple zero_tuple(const std::vector<std::size_t>& dims) {
  Tuple t;
  for (auto d : dims) t.emplace_back(d);
  return t;
}

}  // namespace

MultiComponentSeries MultiComponentSeries::from_tuples(std::vector<std::size_t> component_dims, long max_degree,
                                                       std::map<long, std::vector<Tuple>> pieces) {
  if (component_dims.empty()) throw Error(ErrorCode::SchemaError, "multicomponent series: no components");
  if (max_degree < 0) throw Error(ErrorCode::NegativeLevel, "multicomponent series: negative max degree");
  MultiComponentSeries m;
  m.dims_ = std::move(component_dims);
  m.max_degree_ = max_degree;
  Tuple diagonal;
  for (auto d : m.dims_) diagonal.push_back(Poly::constant(d, 1));
  m.pieces_[0] = {diagonal};
  for (auto& [n, tuples] : pieces) {
    if (n == 0) continue;
    if (n < 0 || n > max_degree)
      throw Error(ErrorCode::OutOfRange, "multicomponent series: degree " + std::to_string(n) + " out of range");
    std::vector<SparseVec> rows;
    for (const auto& t : tuples) {
      if (t.size() != m.dims_.size())
        throw Error(ErrorCode::SchemaError, "multicomponent series: tuple arity " + std::to_string(t.size()) +
                                                " but " + std::to_string(m.dims_.size()) + " components");
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i].d() != m.dims_[i])
          throw Error(ErrorCode::LengthMismatch, "multicomponent series: component poly in the wrong number of variables");
      rows.push_back(flatten(t));
    }
    std::vector<Tuple> basis;
    for (auto idx : eliminate(rows).independent) basis.push_back(tuples[idx]);
    if (!basis.empty()) m.pieces_[n] = std::move(basis);
  }
  return m;
}

MultiComponentSeries MultiComponentSeries::glued_at_origin(const std::vector<GradedLinearSeries>& components,
                                                           long max_degree) {
  std::vector<std::size_t> dims;
  for (const auto& c : components) dims.push_back(c.d());
  std::map<long, std::vector<Tuple>> pieces;
  for (long n = 1; n <= max_degree; ++n) {
    std::vector<Tuple> tuples;
    Tuple diagonal = zero_tuple(dims);
    bool all_have_constants = true;
    for (std::size_t i = 0; i < components.size(); ++i) {
      bool has_constant = false;
      for (const auto& f : degree_piece(components[i], n)) {
        if (f.constant_term() != 0) {
          // The leading-basis element of value 0; every other element vanishes at 0.
          diagonal[i] = f;
          has_constant = true;
          continue;
        }
        Tuple t = zero_tuple(dims);
        t[i] = f;
        tuples.push_back(std::move(t));
      }
      all_have_constants = all_have_constants && has_constant;
    }
    if (all_have_constants) tuples.push_back(std::move(diagonal));
    if (!tuples.empty()) pieces.emplace(n, std::move(tuples));
  }
  return from_tuples(std::move(dims), max_degree, std::move(pieces));
}

const std::vector<Tuple>& MultiComponentSeries::piece(long n) const {
  static const std::vector<Tuple> empty;
  if (n < 0 || n > max_degree_)
    throw Error(ErrorCode::OutOfRange, "multicomponent piece: degree " + std::to_string(n) + " out of range");
  auto it = pieces_.find(n);
  return it == pieces_.end() ? empty : it->second;
}

Restriction restrict(const MultiComponentSeries& m, std::size_t i) {
  if (i >= m.s())
    throw Error(ErrorCode::IndexOutOfRange, "restrict: component " + std::to_string(i) + " of " + std::to_string(m.s()));
  const auto& dims = m.component_dims();
  std::map<long, std::vector<Poly>> image;
  std::map<long, std::vector<Tuple>> kernel;
  image[0] = {Poly::constant(dims[i], 1)};
  for (long n = 1; n <= m.max_degree(); ++n) {
    const auto& tuples = m.piece(n);
    if (tuples.empty()) continue;
    std::vector<Poly> projected;
    std::vector<SparseVec> rows;
    for (const auto& t : tuples) {
      projected.push_back(t[i]);
      Tuple only = zero_tuple(dims);
      only[i] = t[i];
      rows.push_back(flatten(only));
    }
    auto lb = leading_basis(projected);
    if (!lb.basis.empty()) image[n] = std::move(lb.basis);
    for (const auto& combo : eliminate(rows).relations) {
      Tuple k = zero_tuple(dims);
      for (std::size_t j = 0; j < combo.size(); ++j)
        for (std::size_t c = 0; c < dims.size(); ++c) k[c].add_scaled(tuples[j][c], combo[j]);
      kernel[n].push_back(std::move(k));
    }
  }
  return {GradedLinearSeries::explicit_series(dims[i], m.max_degree(), std::move(image)),
          MultiComponentSeries::from_tuples(dims, m.max_degree(), std::move(kernel))};
}

DecompositionReport decompose_reduced(const MultiComponentSeries& m, long bound, std::vector<std::size_t> ordering) {
  const std::size_t s = m.s();
  if (ordering.empty()) {
    ordering.resize(s);
    std::iota(ordering.begin(), ordering.end(), std::size_t{0});
  }
  {
    auto sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != s || sorted[i] != i)
        throw Error(ErrorCode::IndexOutOfRange, "decompose_reduced: ordering is not a permutation of the components");
  }
  bound = std::min(bound, m.max_degree());

  DecompositionReport r;
  r.ordering = ordering;
  for (long n = 1; n <= bound; ++n) r.dims.push_back(static_cast<unsigned long>(m.piece(n).size()));

  MultiComponentSeries current = m;
  for (auto i : ordering) {
    auto [restricted, kernel] = restrict(current, i);
    ComponentStep step;
    step.component = i;
    for (long n = 1; n <= bound; ++n)
      step.dims.push_back(static_cast<unsigned long>(degree_piece(restricted, n).size()));
    auto k = kappa(restricted, bound);
    step.kappa = k.value;
    step.kappa_stable = k.stabilized();
    if (!k.negative_infinity()) step.m = index(restricted, bound).m;
    r.steps.push_back(std::move(step));
    current = std::move(kernel);
  }
  for (long n = 1; n <= bound; ++n)
    if (!current.piece(n).empty())
      throw Error(ErrorCode::NotInjective, "decompose_reduced: M^s is nonzero in degree " + std::to_string(n));

  for (long n = 1; n <= bound; ++n) {
    Integer total = 0;
    for (const auto& st : r.steps) total += st.dims[static_cast<std::size_t>(n - 1)];
    if (total != r.dims[static_cast<std::size_t>(n - 1)]) r.additivity_holds = false;
  }

  std::optional<long> kap;
  for (const auto& st : r.steps)
    if (st.kappa && (!kap || *st.kappa > *kap)) kap = st.kappa;
  if (!kap) throw Error(ErrorCode::KappaUndefined, "decompose_reduced: every positive piece vanishes");
  r.kappa = *kap;
  r.r = 1;
  for (const auto& st : r.steps) {
    if (st.kappa != kap) continue;
    if (!st.kappa_stable)
      throw Error(ErrorCode::Unstable, "decompose_reduced: kappa of component " + std::to_string(st.component) +
                                           " has not stabilized");
    r.r = lcm(r.r, *st.m);
  }

  const long step = r.r.get_si();
  for (long a = 0; a < step; ++a) {
    ResidueTable t;
    t.residue = a;
    bool nonzero = false;
    for (long n = 1; a + n * step <= bound; ++n) {
      const Integer& dim = r.dims[static_cast<std::size_t>(a + n * step - 1)];
      nonzero = nonzero || dim != 0;
      t.rows.push_back({n, a + n * step, dim, ratio(dim, power(n, r.kappa))});
    }
    if (!nonzero) continue;
    t.convergence = diagnose(t.rows, std::nullopt, std::nullopt);
    r.tables.push_back(std::move(t));
  }
  return r;
}

}  // namespace newtok
