#include "newtok/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "newtok/error.hpp"

namespace newtok {

struct GradedSemigroup::SliceCache {
  std::mutex mutex;
  std::vector<PointSet> levels;  // levels[k] = S_k, filled contiguously from 0
};

namespace {

long level_of(const IntVec& v) { return v.back().get_si(); }

IntVec horizontal(const IntVec& v) { return IntVec(v.begin(), v.end() - 1); }

IntVec with_level(const IntVec& h, long level) {
  IntVec v = h;
  v.emplace_back(level);
  return v;
}

void check_point(const IntVec& v, std::size_t d, const char* what) {
  if (v.size() != d + 1)
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": expected a point of length " +
                                               std::to_string(d + 1));
}

}  // namespace

GradedSemigroup GradedSemigroup::from_generators(std::size_t d, std::vector<IntVec> generators) {
  GradedSemigroup s;
  s.d_ = d;
  for (const auto& g : generators) {
    check_point(g, d, "generator");
    if (g.back() < 1) throw Error(ErrorCode::NegativeLevel, "generator level must be >= 1");
  }
  std::sort(generators.begin(), generators.end(), LexLess{});
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  s.generators_ = std::move(generators);
  s.cache_ = std::make_shared<SliceCache>();
  return s;
}

GradedSemigroup GradedSemigroup::from_samples(std::size_t d, std::map<long, PointSet> slices, long bound) {
  GradedSemigroup s;
  s.d_ = d;
  if (bound < 0) throw Error(ErrorCode::NegativeLevel, "sample bound must be nonnegative");
  for (auto it = slices.begin(); it != slices.end();) {
    if (it->first < 1 || it->first > bound)
      throw Error(ErrorCode::OutOfRange, "sampled slice level outside 1.." + std::to_string(bound));
    for (const auto& p : it->second)
      if (p.size() != d) throw Error(ErrorCode::LengthMismatch, "sampled point of wrong length");
    if (it->second.empty())
      it = slices.erase(it);
    else
      ++it;
  }
  s.samples_ = std::move(slices);
  s.sample_bound_ = bound;
  s.cache_ = std::make_shared<SliceCache>();
  return s;
}

GradedSemigroup GradedSemigroup::from_samples_and_generators(std::size_t d, std::map<long, PointSet> slices,
                                                             long bound, std::vector<IntVec> generators) {
  GradedSemigroup s = from_samples(d, std::move(slices), bound);
  GradedSemigroup g = from_generators(d, std::move(generators));
  s.generators_ = std::move(g.generators_);
  return s;
}

bool GradedSemigroup::empty() const { return generators_.empty() && samples_.empty(); }

PointSet GradedSemigroup::slice(long k) const {
  if (k < 0) throw Error(ErrorCode::NegativeLevel, "slice: negative level " + std::to_string(k));
  if (k == 0) return PointSet{IntVec(d_)};
  if (generators_.empty()) {
    if (sample_bound_ && k > *sample_bound_)
      throw Error(ErrorCode::OutOfRange, "slice: level " + std::to_string(k) + " beyond sampled range " +
                                             std::to_string(*sample_bound_));
    auto it = samples_.find(k);
    return it == samples_.end() ? PointSet{} : it->second;
  }

  std::lock_guard lock(cache_->mutex);
  auto& levels = cache_->levels;
  if (levels.empty()) levels.push_back(PointSet{IntVec(d_)});
  while (static_cast<long>(levels.size()) <= k) {
    const long n = static_cast<long>(levels.size());
    PointSet next;
    for (const auto& g : generators_) {
      const long l = level_of(g);
      if (l > n) continue;
      const IntVec gh = horizontal(g);
      for (const auto& p : levels[static_cast<std::size_t>(n - l)]) next.insert(p + gh);
    }
    levels.push_back(std::move(next));
  }
  return levels[static_cast<std::size_t>(k)];
}

std::vector<IntVec> GradedSemigroup::spanning_points() const {
  if (!generators_.empty()) return generators_;
  std::vector<IntVec> out;
  for (const auto& [level, pts] : samples_)
    for (const auto& p : pts) out.push_back(with_level(p, level));
  return out;
}

GradedSemigroup GradedSemigroup::transformed(const IntMatrix& t) const {
  if (t.rows() != d_ || t.cols() != d_) throw Error(ErrorCode::LengthMismatch, "transform: expected d x d matrix");
  auto apply = [&](const IntVec& h) {
    IntVec out(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) out[i] += t(i, j) * h[j];
    return out;
  };
  GradedSemigroup s;
  s.d_ = d_;
  for (const auto& g : generators_) s.generators_.push_back(with_level(apply(horizontal(g)), level_of(g)));
  std::sort(s.generators_.begin(), s.generators_.end(), LexLess{});
  for (const auto& [level, pts] : samples_) {
    PointSet mapped;
    for (const auto& p : pts) mapped.insert(apply(p));
    s.samples_.emplace(level, std::move(mapped));
  }
  s.sample_bound_ = sample_bound_;
  s.cache_ = std::make_shared<SliceCache>();
  return s;
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

void require_nonempty(const GradedSemigroup& s, const char* op) {
  if (s.empty()) throw Error(ErrorCode::EmptySemigroup, std::string(op) + ": empty semigroup");
}

}  // namespace

Lattice group(const GradedSemigroup& s) {
  require_nonempty(s, "group");
  return Lattice::generated_by(s.spanning_points(), s.d() + 1);
}

Integer level_index(const GradedSemigroup& s) {
  require_nonempty(s, "level_index");
  Integer g = 0;
  for (const auto& p : s.spanning_points()) g = gcd(g, p.back());
  return g;
}

Lattice boundary_lattice(const GradedSemigroup& s) {
  require_nonempty(s, "boundary_lattice");
  Lattice span = saturate(group(s));
  return span.intersect_coordinate_hyperplane(s.d());
}

Integer ind(const GradedSemigroup& s) {
  Lattice boundary = boundary_lattice(s);
  if (boundary.rank() == 0) return 1;
  Lattice level_zero = group(s).intersect_coordinate_hyperplane(s.d());
  auto idx = subgroup_index(level_zero, boundary);
  if (idx.infinite) throw Error(ErrorCode::NotSubgroup, "ind: level-zero part of G(S) has deficient rank");
  return idx.value;
}

std::size_t q(const GradedSemigroup& s) {
  require_nonempty(s, "q");
  return rational_rank(s.spanning_points()) - 1;
}

NonnegativityReport strongly_nonnegative(const GradedSemigroup& s) {
  require_nonempty(s, "strongly_nonnegative");
  NonnegativityReport r;
  if (s.has_generators()) {
    r.strongly_nonnegative = true;
    r.q_estimate = q(s);
    r.diagnostic = "finitely generated with positive levels";
    return r;
  }

  const long m = level_index(s).get_si();
  const long bound = *s.sample_bound();
  std::vector<std::pair<long, std::size_t>> counts;  // (k, #S_{mk})
  for (long level = m; level <= bound; level += m) {
    auto n = s.slice(level).size();
    if (n > 0) counts.emplace_back(level / m, n);
  }
  if (counts.size() < 3)
    throw Error(ErrorCode::InsufficientSamples,
                "strongly_nonnegative: need at least 3 nonempty slices, have " + std::to_string(counts.size()));

  // Effective growth exponent between the middle and the last sample.
  const auto last = counts.back();
  auto mid = counts.front();
  for (const auto& c : counts)
    if (c.first * 2 <= last.first) mid = c;
  if (mid.first == last.first) mid = counts[counts.size() - 2];
  const double e = std::log(static_cast<double>(last.second) / static_cast<double>(mid.second)) /
                   std::log(static_cast<double>(last.first) / static_cast<double>(mid.first));
  const double rounded = std::ceil(e - 0.5);
  const std::size_t qe = rounded <= 0 ? 0 : static_cast<std::size_t>(rounded);
  r.q_estimate = qe;
  r.strongly_nonnegative = qe <= s.d();
  std::ostringstream os;
  os << "sampled growth exponent " << e << " between k=" << mid.first << " and k=" << last.first
     << "; lower-bound estimate from truncation at level " << bound;
  r.diagnostic = os.str();
  return r;
}

PointSet sumset(const PointSet& a, long n) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "sumset: empty set");
  if (n < 1) throw Error(ErrorCode::OutOfRange, "sumset: n must be positive");
  PointSet acc = a;
  for (long i = 1; i < n; ++i) {
    PointSet next;
    for (const auto& x : acc)
      for (const auto& y : a) next.insert(x + y);
    acc = std::move(next);
  }
  return acc;
}

std::vector<IntVec> minimal_generators(std::size_t d, const std::map<long, PointSet>& slices, long bound) {
  auto slice_at = [&](long k) -> const PointSet* {
    static const PointSet empty;
    auto it = slices.find(k);
    return it == slices.end() ? &empty : &it->second;
  };
  std::vector<IntVec> gens;
  for (long k = 1; k <= bound; ++k) {
    const PointSet* target = slice_at(k);
    if (target->empty()) continue;
    PointSet reachable;
    for (const auto& g : gens) {
      const long l = level_of(g);
      if (l >= k) continue;
      const IntVec gh = horizontal(g);
      for (const auto& p : *slice_at(k - l)) reachable.insert(p + gh);
    }
    for (const auto& p : *target) {
      if (p.size() != d) throw Error(ErrorCode::LengthMismatch, "minimal_generators: point of wrong length");
      if (!reachable.count(p)) gens.push_back(with_level(p, k));
    }
  }
  return gens;
}

}  // namespace newtok
