#include "newtok/series.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "newtok/error.hpp"

namespace newtok {

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(std::size_t d, const Rational& c) {
  Poly p(d);
  p.add_term(Monomial(d, 0), c);
  return p;
}

Poly Poly::monomial(Monomial exponent, const Rational& c) {
  Poly p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

void Poly::add_term(const Monomial& exponent, const Rational& c) {
  if (exponent.size() != d_) throw Error(ErrorCode::BadExponent, "exponent of wrong length");
  if (std::any_of(exponent.begin(), exponent.end(), [](long e) { return e < 0; }))
    throw Error(ErrorCode::BadExponent, "negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial(d_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_scaled(const Poly& other, const Rational& c) {
  if (other.d_ != d_) throw Error(ErrorCode::LengthMismatch, "poly: variable count mismatch");
  if (c == 0) return;
  for (const auto& [m, a] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, a * c);
    if (!inserted) {
      it->second += a * c;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

Poly& Poly::operator+=(const Poly& other) {
  add_scaled(other, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  add_scaled(other, -1);
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  Poly out(d_);
  if (c == 0) return out;
  for (const auto& [m, a] : terms_) out.terms_.emplace(m, a * c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.d_ != b.d_) throw Error(ErrorCode::LengthMismatch, "poly: variable count mismatch");
  Poly out(a.d_);
  Monomial e(a.d_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ma[i] + mb[i];
      auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << newtok::to_string(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) os << "*y" << (i + 1) << (m[i] == 1 ? "" : "^" + std::to_string(m[i]));
  }
  return os.str();
}

IntVec nu(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "nu: zero polynomial");
  const auto& m = f.terms().begin()->first;
  return IntVec(m.begin(), m.end());
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// Cancels leading terms against `basis` until the leading exponent is new.
void top_reduce(Poly& f, const std::vector<Poly>& basis, const std::map<Monomial, std::size_t>& pivots) {
  while (!f.is_zero()) {
    const auto& [lead, coeff] = *f.terms().begin();
    auto it = pivots.find(lead);
    if (it == pivots.end()) return;
    Rational c = coeff;
    f.add_scaled(basis[it->second], -c);
  }
}

}  // namespace

LeadingBasis leading_basis(const std::vector<Poly>& vectors) {
  LeadingBasis out;
  std::map<Monomial, std::size_t> pivots;
  for (const auto& v : vectors) {
    Poly f = v;
    top_reduce(f, out.basis, pivots);
    if (f.is_zero()) continue;
    Rational lead = f.terms().begin()->second;
    f = f.scaled(1 / lead);
    pivots.emplace(f.terms().begin()->first, out.basis.size());
    out.values.insert(nu(f));
    out.basis.push_back(std::move(f));
  }
  return out;
}

bool in_span(Poly f, const std::vector<Poly>& leading) {
  std::map<Monomial, std::size_t> pivots;
  for (std::size_t i = 0; i < leading.size(); ++i) pivots.emplace(leading[i].terms().begin()->first, i);
  // Leading coefficients of `leading` need not be 1 here.
  while (!f.is_zero()) {
    const auto& [lead, coeff] = *f.terms().begin();
    auto it = pivots.find(lead);
    if (it == pivots.end()) return false;
    const Poly& b = leading[it->second];
    Rational c = coeff / b.terms().begin()->second;
    f.add_scaled(b, -c);
  }
  return true;
}

// ---------------------------------------------------------------------------
// GradedLinearSeries

struct GradedLinearSeries::PieceCache {
  std::mutex mutex;
  std::vector<std::vector<Poly>> pieces;
};

GradedLinearSeries GradedLinearSeries::toric(std::size_t d, const std::vector<IntVec>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::SchemaError, "toric series: empty vertex list");
  std::vector<RatVec> pts;
  for (const auto& v : vertices) {
    if (v.size() != d) throw Error(ErrorCode::LengthMismatch, "toric series: vertex of wrong length");
    for (const auto& x : v)
      if (x < 0) throw Error(ErrorCode::BadExponent, "toric series: vertices must be nonnegative");
    pts.push_back(to_rational(v));
  }
  GradedLinearSeries l;
  l.d_ = d;
  l.mode_ = SeriesMode::Toric;
  l.toric_vertices_ = vertices;
  l.polytope_ = std::make_shared<const RatPolytope>(convex_hull(pts));
  return l;
}

GradedLinearSeries GradedLinearSeries::generated(std::size_t d, std::vector<SeriesGenerator> generators) {
  for (const auto& g : generators) {
    if (g.degree < 1) throw Error(ErrorCode::NegativeLevel, "generator degree must be >= 1");
    if (g.poly.d() != d) throw Error(ErrorCode::LengthMismatch, "generator in the wrong number of variables");
  }
  GradedLinearSeries l;
  l.d_ = d;
  l.mode_ = SeriesMode::Generated;
  l.generators_ = std::move(generators);
  l.cache_ = std::make_shared<PieceCache>();
  return l;
}

GradedLinearSeries GradedLinearSeries::explicit_series(std::size_t d, long max_degree,
                                                       std::map<long, std::vector<Poly>> pieces) {
  if (max_degree < 0) throw Error(ErrorCode::NegativeLevel, "explicit series: negative max degree");
  for (const auto& [n, polys] : pieces) {
    if (n < 0 || n > max_degree)
      throw Error(ErrorCode::OutOfRange, "explicit series: degree " + std::to_string(n) + " outside 0.." +
                                             std::to_string(max_degree));
    for (const auto& p : polys)
      if (p.d() != d) throw Error(ErrorCode::LengthMismatch, "explicit series: poly in the wrong number of variables");
  }
  GradedLinearSeries l;
  l.d_ = d;
  l.mode_ = SeriesMode::Explicit;
  l.max_degree_ = max_degree;
  l.pieces_ = std::move(pieces);
  return l;
}

bool GradedLinearSeries::monomial_generated() const {
  if (mode_ == SeriesMode::Toric) return true;
  if (mode_ != SeriesMode::Generated) return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const SeriesGenerator& g) { return g.poly.is_zero() || g.poly.is_monomial(); });
}

std::vector<Poly> degree_piece(const GradedLinearSeries& l, long n) {
  if (n < 0) throw Error(ErrorCode::NegativeLevel, "degree_piece: negative degree");
  const std::size_t d = l.d();
  switch (l.mode()) {
    case SeriesMode::Toric: {
      std::vector<Poly> out;
      for (const auto& a : l.polytope().lattice_points(n)) {
        Monomial e;
        for (const auto& x : a) e.push_back(x.get_si());
        out.push_back(Poly::monomial(std::move(e)));
      }
      return out;
    }
    case SeriesMode::Explicit: {
      if (n > l.max_degree())
        throw Error(ErrorCode::OutOfRange, "degree_piece: degree " + std::to_string(n) +
                                               " beyond truncation " + std::to_string(l.max_degree()));
      auto it = l.explicit_pieces().find(n);
      if (it == l.explicit_pieces().end()) return n == 0 ? std::vector<Poly>{Poly::constant(d, 1)} : std::vector<Poly>{};
      return leading_basis(it->second).basis;
    }
    case SeriesMode::Generated: {
      std::lock_guard lock(l.cache_->mutex);
      auto& pieces = l.cache_->pieces;
      if (pieces.empty()) pieces.push_back({Poly::constant(d, 1)});
      while (static_cast<long>(pieces.size()) <= n) {
        const long k = static_cast<long>(pieces.size());
        std::vector<Poly> candidates;
        for (const auto& g : l.generators()) {
          if (g.degree > k || g.poly.is_zero()) continue;
          for (const auto& b : pieces[static_cast<std::size_t>(k - g.degree)]) candidates.push_back(b * g.poly);
        }
        pieces.push_back(leading_basis(candidates).basis);
      }
      return pieces[static_cast<std::size_t>(n)];
    }
  }
  return {};
}

namespace {

std::map<long, PointSet> sampled_values(const GradedLinearSeries& l, long bound) {
  std::map<long, PointSet> slices;
  for (long n = 1; n <= bound; ++n) {
    PointSet values;
    for (const auto& f : degree_piece(l, n)) values.insert(nu(f));
    if (!values.empty()) slices.emplace(n, std::move(values));
  }
  return slices;
}

IntVec with_level(const IntVec& h, long level) {
  IntVec v = h;
  v.emplace_back(level);
  return v;
}

}  // namespace

bool value_semigroup_is_exact(const GradedLinearSeries& l) { return l.monomial_generated(); }

GradedSemigroup value_semigroup(const GradedLinearSeries& l, long bound) {
  if (bound < 1) throw Error(ErrorCode::OutOfRange, "value_semigroup: degree bound must be >= 1");
  const std::size_t d = l.d();
  auto slices = sampled_values(l, bound);
  std::vector<IntVec> gens;
  switch (l.mode()) {
    case SeriesMode::Toric: {
      // The cone over P is generated by lattice points of kP, k <= max(1, dim P).
      const long top = std::max<long>(1, static_cast<long>(l.polytope().dimension()));
      for (long k = 1; k <= top; ++k)
        for (const auto& a : l.polytope().lattice_points(k)) gens.push_back(with_level(a, k));
      break;
    }
    case SeriesMode::Generated:
      if (l.monomial_generated()) {
        for (const auto& g : l.generators())
          if (!g.poly.is_zero()) gens.push_back(with_level(nu(g.poly), g.degree));
      } else {
        gens = minimal_generators(d, slices, bound);
      }
      break;
    case SeriesMode::Explicit:
      break;
  }
  if (gens.empty()) return GradedSemigroup::from_samples(d, std::move(slices), bound);
  return GradedSemigroup::from_samples_and_generators(d, std::move(slices), bound, std::move(gens));
}

IndexResult index(const GradedLinearSeries& l, long bound) {
  IndexResult r;
  if (l.mode() == SeriesMode::Toric) {
    r.m = 1;
    r.exact = true;
    r.stable_at = 1;
    return r;
  }
  if (l.mode() == SeriesMode::Generated) {
    Integer g = 0;
    for (const auto& gen : l.generators())
      if (!gen.poly.is_zero()) g = gcd(g, Integer(gen.degree));
    if (g == 0) throw Error(ErrorCode::AllZero, "index: every generator is zero");
    r.m = g;
    r.exact = true;
    r.stable_at = 0;
    for (const auto& gen : l.generators())
      if (!gen.poly.is_zero()) r.stable_at = std::max(r.stable_at, gen.degree);
    return r;
  }
  Integer g = 0;
  for (long n = 1; n <= std::min(bound, l.max_degree()); ++n) {
    if (degree_piece(l, n).empty()) continue;
    Integer next = gcd(g, Integer(n));
    if (next != g) r.stable_at = n;
    g = next;
  }
  if (g == 0) throw Error(ErrorCode::AllZero, "index: L_n = 0 for all 0 < n <= " + std::to_string(bound));
  r.m = g;
  return r;
}

KappaResult kappa(const GradedLinearSeries& l, long bound) {
  KappaResult r;
  r.bound = bound;
  if (l.mode() == SeriesMode::Toric) {
    r.value = static_cast<long>(l.polytope().dimension());
    r.exact = true;
    return r;
  }
  if (l.mode() == SeriesMode::Generated && l.monomial_generated()) {
    std::vector<IntVec> pts;
    for (const auto& g : l.generators())
      if (!g.poly.is_zero()) pts.push_back(with_level(nu(g.poly), g.degree));
    r.exact = true;
    if (!pts.empty()) r.value = static_cast<long>(rational_rank(pts)) - 1;
    return r;
  }
  const long top = l.mode() == SeriesMode::Explicit ? std::min(bound, l.max_degree()) : bound;
  r.bound = top;
  std::vector<IntVec> pts;
  std::size_t rank = 0;
  for (long n = 1; n <= top; ++n) {
    for (const auto& f : degree_piece(l, n)) pts.push_back(with_level(nu(f), n));
    std::size_t next = pts.empty() ? 0 : rational_rank(pts);
    if (next != rank) r.stable_since = n;
    rank = next;
  }
  if (rank > 0) r.value = static_cast<long>(rank) - 1;
  return r;
}

GradedLinearSeries veronese(const GradedLinearSeries& l, long p) {
  auto piece = degree_piece(l, p);
  if (piece.empty()) throw Error(ErrorCode::ZeroPiece, "veronese: L_" + std::to_string(p) + " = 0");
  std::vector<SeriesGenerator> gens;
  for (auto& b : piece) gens.push_back({1, std::move(b)});
  return GradedLinearSeries::generated(l.d(), std::move(gens));
}

SubalgebraCheck subalgebra_check(const GradedLinearSeries& l, long bound) {
  if (l.mode() != SeriesMode::Explicit)
    throw Error(ErrorCode::SchemaError, "subalgebra_check: only explicit series carry unchecked bases");
  const long top = std::min(bound, l.max_degree());
  SubalgebraCheck r;
  for (long total = 2; total <= top; ++total) {
    auto target = degree_piece(l, total);
    for (long a = 1; a <= total / 2; ++a) {
      const long b = total - a;
      auto pa = degree_piece(l, a);
      auto pb = degree_piece(l, b);
      for (const auto& f : pa)
        for (const auto& g : pb)
          if (!in_span(f * g, target)) {
            r.ok = false;
            r.violation = {a, b};
            return r;
          }
    }
  }
  return r;
}

}  // namespace newtok
