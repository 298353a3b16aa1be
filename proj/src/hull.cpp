#include "newtok/hull.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "newtok/error.hpp"

namespace newtok {

Rational AffineForm::eval(const RatVec& x) const {
  Rational v = b;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
  return v;
}

namespace {

RatVec sub(const RatVec& x, const RatVec& y) {
  RatVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

bool lex_less(const RatVec& x, const RatVec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (y[i] < x[i]) return false;
  }
  return false;
}

struct Facet {
  AffineForm form;  // in projected coordinates, >= 0 on the hull
  std::set<std::size_t> points;
};

// Affine dimension of a point set, -1 when empty.
long affine_dim(const std::vector<RatVec>& pts, const std::set<std::size_t>& ids) {
  if (ids.empty()) return -1;
  const RatVec& base = pts[*ids.begin()];
  std::vector<RatVec> diffs;
  for (auto id : ids) diffs.push_back(sub(pts[id], base));
  return static_cast<long>(rational_rank(diffs));
}

void normalize(AffineForm& f) {
  for (const auto& x : f.a)
    if (x != 0) {
      Rational s = abs(x);
      for (auto& y : f.a) y /= s;
      f.b /= s;
      return;
    }
}

bool same_plane(const AffineForm& f, const AffineForm& g) { return f.a == g.a && f.b == g.b; }

// Hyperplane through q affinely independent points of R^q, oriented so that
// `interior` lies strictly on the nonnegative side.
AffineForm hyperplane_through(const std::vector<RatVec>& pts, const RatVec& interior) {
  const std::size_t q = interior.size();
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  AffineForm f;
  f.a.assign(q, 0);
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<RatVec> minor;
    for (const auto& d : diffs) {
      RatVec row;
      for (std::size_t k = 0; k < q; ++k)
        if (k != j) row.push_back(d[k]);
      minor.push_back(std::move(row));
    }
    Rational det = determinant(minor);
    f.a[j] = (j % 2 == 0) ? det : Rational(-det);
  }
  f.b = 0;
  for (std::size_t k = 0; k < q; ++k) f.b -= f.a[k] * pts[0][k];
  if (f.eval(interior) < 0) {
    for (auto& x : f.a) x = -x;
    f.b = -f.b;
  }
  normalize(f);
  return f;
}

// Picks q affinely independent points among `first` followed by `candidates`.
std::vector<RatVec> independent_subset(const std::vector<RatVec>& pts, std::size_t first,
                                       const std::set<std::size_t>& candidates, std::size_t q) {
  std::vector<RatVec> chosen{pts[first]};
  std::vector<RatVec> diffs;
  for (auto id : candidates) {
    if (chosen.size() == q) break;
    auto trial = diffs;
    trial.push_back(sub(pts[id], pts[first]));
    if (rational_rank(trial) == trial.size()) {
      diffs = std::move(trial);
      chosen.push_back(pts[id]);
    }
  }
  return chosen;
}

struct HullCore {
  std::size_t dim = 0;
  RatVec base;
  std::vector<RatVec> directions;
  std::vector<std::size_t> coords;  // projection coordinates
  std::vector<Facet> facets;        // point ids index the input vector
  std::vector<std::size_t> vertices;
};

HullCore hull_core(const std::vector<RatVec>& input) {
  if (input.empty()) throw Error(ErrorCode::EmptySet, "convex_hull: no points");
  const std::size_t n = input.front().size();
  for (const auto& p : input)
    if (p.size() != n) throw Error(ErrorCode::LengthMismatch, "convex_hull: points of mixed length");

  std::vector<std::size_t> uniq;
  {
    std::set<RatVec> seen;
    for (std::size_t i = 0; i < input.size(); ++i)
      if (seen.insert(input[i]).second) uniq.push_back(i);
  }

  HullCore h;
  h.base = input[uniq.front()];
  std::vector<std::size_t> simplex{uniq.front()};
  for (auto id : uniq) {
    auto trial = h.directions;
    trial.push_back(sub(input[id], h.base));
    if (rational_rank(trial) == trial.size()) {
      h.directions = std::move(trial);
      simplex.push_back(id);
    }
  }
  h.dim = h.directions.size();
  if (h.dim > kMaxHullDimension)
    throw Error(ErrorCode::UnsupportedDimension,
                "convex_hull: affine dimension " + std::to_string(h.dim) + " exceeds 4");
  h.coords = pivot_columns(h.directions);

  std::vector<RatVec> proj(input.size());
  for (auto id : uniq)
    for (auto c : h.coords) proj[id].push_back(input[id][c]);

  const std::size_t q = h.dim;
  if (q == 0) {
    h.vertices = {uniq.front()};
    return h;
  }
  if (q == 1) {
    std::size_t lo = uniq.front(), hi = uniq.front();
    for (auto id : uniq) {
      if (proj[id][0] < proj[lo][0]) lo = id;
      if (proj[id][0] > proj[hi][0]) hi = id;
    }
    h.facets.push_back({AffineForm{{Rational(1)}, -proj[lo][0]}, {lo}});
    h.facets.push_back({AffineForm{{Rational(-1)}, proj[hi][0]}, {hi}});
    h.vertices = {lo, hi};
    std::sort(h.vertices.begin(), h.vertices.end());
    return h;
  }

  RatVec interior(q, 0);
  for (auto id : simplex)
    for (std::size_t k = 0; k < q; ++k) interior[k] += proj[id][k];
  for (auto& x : interior) x /= static_cast<long>(simplex.size());

  for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
    Facet f;
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != skip) {
        f.points.insert(simplex[i]);
        pts.push_back(proj[simplex[i]]);
      }
    f.form = hyperplane_through(pts, interior);
    h.facets.push_back(std::move(f));
  }

  const std::set<std::size_t> in_simplex(simplex.begin(), simplex.end());
  for (auto id : uniq) {
    if (in_simplex.count(id)) continue;
    const RatVec& x = proj[id];
    std::vector<bool> visible(h.facets.size());
    bool any = false;
    for (std::size_t f = 0; f < h.facets.size(); ++f) {
      visible[f] = h.facets[f].form.eval(x) < 0;
      any = any || visible[f];
    }
    if (!any) continue;

    std::vector<Facet> added;
    for (std::size_t v = 0; v < h.facets.size(); ++v) {
      if (!visible[v]) continue;
      for (std::size_t w = 0; w < h.facets.size(); ++w) {
        if (visible[w]) continue;
        std::set<std::size_t> ridge;
        std::set_intersection(h.facets[v].points.begin(), h.facets[v].points.end(),
                              h.facets[w].points.begin(), h.facets[w].points.end(),
                              std::inserter(ridge, ridge.begin()));
        if (affine_dim(proj, ridge) != static_cast<long>(q) - 2) continue;
        AffineForm plane = hyperplane_through(independent_subset(proj, id, ridge, q), interior);
        auto coplanar = std::find_if(h.facets.begin(), h.facets.end(), [&](const Facet& f) {
          return same_plane(f.form, plane);
        });
        if (coplanar != h.facets.end() && !visible[static_cast<std::size_t>(coplanar - h.facets.begin())]) {
          coplanar->points.insert(id);
          coplanar->points.insert(ridge.begin(), ridge.end());
          continue;
        }
        auto it = std::find_if(added.begin(), added.end(),
                               [&](const Facet& f) { return same_plane(f.form, plane); });
        if (it == added.end()) {
          Facet f{plane, ridge};
          f.points.insert(id);
          added.push_back(std::move(f));
        } else {
          it->points.insert(ridge.begin(), ridge.end());
        }
      }
    }
    std::vector<Facet> kept;
    for (std::size_t f = 0; f < h.facets.size(); ++f)
      if (!visible[f]) kept.push_back(std::move(h.facets[f]));
    for (auto& f : added) kept.push_back(std::move(f));
    h.facets = std::move(kept);
  }

  // A point is a vertex iff the normals of the facets through it span R^q.
  std::map<std::size_t, std::vector<RatVec>> normals;
  for (const auto& f : h.facets)
    for (auto id : f.points) normals[id].push_back(f.form.a);
  for (const auto& [id, ns] : normals)
    if (rational_rank(ns) == q) h.vertices.push_back(id);
  return h;
}

std::vector<RatVec> subset(const std::vector<RatVec>& pts, const std::vector<std::size_t>& ids) {
  std::vector<RatVec> out;
  for (auto id : ids) out.push_back(pts[id]);
  return out;
}

}  // namespace

RatPolytope convex_hull(const std::vector<RatVec>& points) {
  HullCore h = hull_core(points);
  RatPolytope p;
  p.ambient_ = h.base.size();
  p.dimension_ = h.dim;
  for (auto id : h.vertices) p.vertices_.push_back(points[id]);
  std::sort(p.vertices_.begin(), p.vertices_.end(), lex_less);

  // Equations cut out the affine hull: integer vectors orthogonal to all directions.
  const std::size_t n = p.ambient_;
  IntMatrix dirs(n, h.dim);
  for (std::size_t j = 0; j < h.dim; ++j) {
    Integer den = 1;
    for (const auto& x : h.directions[j]) den = lcm(den, Integer(x.get_den()));
    for (std::size_t i = 0; i < n; ++i) dirs(i, j) = Integer(h.directions[j][i] * den);
  }
  std::vector<IntVec> normals = h.dim == 0 ? IntMatrix::identity(n).row_list() : integer_left_kernel(dirs);
  for (const auto& e : normals) {
    AffineForm f{to_rational(e), 0};
    for (std::size_t i = 0; i < n; ++i) f.b -= f.a[i] * h.base[i];
    p.equations_.push_back(std::move(f));
  }
  for (const auto& facet : h.facets) {
    AffineForm f{RatVec(n, 0), facet.form.b};
    for (std::size_t k = 0; k < h.coords.size(); ++k) f.a[h.coords[k]] = facet.form.a[k];
    p.inequalities_.push_back(std::move(f));
  }
  return p;
}

bool RatPolytope::contains(const RatVec& x) const {
  if (x.size() != ambient_) throw Error(ErrorCode::LengthMismatch, "contains: point of wrong length");
  for (const auto& e : equations_)
    if (e.eval(x) != 0) return false;
  for (const auto& f : inequalities_)
    if (f.eval(x) < 0) return false;
  return true;
}

std::vector<IntVec> RatPolytope::lattice_points(long scale) const {
  if (scale < 0) throw Error(ErrorCode::NegativeLevel, "lattice_points: negative scale");
  std::vector<IntVec> out;
  if (vertices_.empty()) return out;
  const std::size_t n = ambient_;
  IntVec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = vertices_.front()[i], mx = mn;
    for (const auto& v : vertices_) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    mn *= scale;
    mx *= scale;
    mpz_cdiv_q(lo[i].get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_fdiv_q(hi[i].get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    if (lo[i] > hi[i]) return out;
  }
  auto inside = [&](const IntVec& x) {
    for (const auto& e : equations_) {
      Rational v = e.b * scale;
      for (std::size_t i = 0; i < n; ++i) v += e.a[i] * x[i];
      if (v != 0) return false;
    }
    for (const auto& f : inequalities_) {
      Rational v = f.b * scale;
      for (std::size_t i = 0; i < n; ++i) v += f.a[i] * x[i];
      if (v < 0) return false;
    }
    return true;
  };
  IntVec x = lo;
  for (;;) {
    if (inside(x)) out.push_back(x);
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (x[i] < hi[i]) {
        ++x[i];
        for (std::size_t j = i + 1; j < n; ++j) x[j] = lo[j];
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

std::vector<std::vector<std::size_t>> fan_triangulation(const std::vector<RatVec>& points) {
  HullCore h = hull_core(points);
  if (h.dim == 0) return {{h.vertices.front()}};
  if (h.dim == 1) return {{h.vertices[0], h.vertices[1]}};

  std::size_t apex = h.vertices.front();
  for (auto id : h.vertices)
    if (lex_less(points[id], points[apex])) apex = id;
  const std::set<std::size_t> vertex_set(h.vertices.begin(), h.vertices.end());

  std::vector<std::vector<std::size_t>> simplices;
  for (const auto& f : h.facets) {
    if (f.points.count(apex)) continue;
    std::vector<std::size_t> ids;
    for (auto id : f.points)
      if (vertex_set.count(id)) ids.push_back(id);
    for (auto& s : fan_triangulation(subset(points, ids))) {
      std::vector<std::size_t> mapped{apex};
      for (auto local : s) mapped.push_back(ids[local]);
      simplices.push_back(std::move(mapped));
    }
  }
  return simplices;
}

NormalizedVolume normalized_volume(const RatPolytope& p, const Lattice& lattice) {
  if (lattice.ambient() != p.ambient())
    throw Error(ErrorCode::DimensionMismatch, "normalized_volume: lattice ambient differs from polytope");
  if (lattice.rank() != p.dimension())
    throw Error(ErrorCode::DimensionMismatch, "normalized_volume: lattice rank " + std::to_string(lattice.rank()) +
                                                  " but polytope dimension " + std::to_string(p.dimension()));
  const auto& verts = p.vertices();
  std::vector<RatVec> basis;
  for (const auto& b : lattice.basis()) basis.push_back(to_rational(b));
  std::vector<RatVec> coords;
  for (const auto& v : verts) {
    auto c = basis.empty() ? std::optional<RatVec>(RatVec{}) : solve_in_span(basis, sub(v, verts.front()));
    if (!c || (basis.empty() && v != verts.front()))
      throw Error(ErrorCode::DimensionMismatch, "normalized_volume: polytope leaves the lattice's span");
    coords.push_back(std::move(*c));
  }
  const std::size_t q = p.dimension();
  if (q == 0) return {Rational(1), true};

  Rational total = 0;
  for (const auto& s : fan_triangulation(verts)) {
    std::vector<RatVec> rows;
    for (std::size_t i = 1; i < s.size(); ++i) rows.push_back(sub(coords[s[i]], coords[s[0]]));
    total += abs(determinant(rows));
  }
  Integer fact = 1;
  for (std::size_t i = 2; i <= q; ++i) fact *= static_cast<unsigned long>(i);
  return {total / fact, false};
}

RatPolytope nok_body(const GradedSemigroup& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySemigroup, "nok_body: empty semigroup");
  const std::size_t d = s.d();
  std::vector<RatVec> pts;
  for (const auto& g : s.spanning_points()) {
    RatVec x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = Rational(g[i], g[d]);
    for (auto& c : x) c.canonicalize();
    pts.push_back(std::move(x));
  }
  RatPolytope p = convex_hull(pts);
  p.level_ = Rational(1);
  std::vector<IntVec> horizontal;
  const Lattice boundary = boundary_lattice(s);
  for (const auto& b : boundary.basis()) horizontal.emplace_back(b.begin(), b.end() - 1);
  p.carrier_ = Lattice::generated_by(horizontal, d);
  return p;
}

Rational body_limit(const GradedSemigroup& s) {
  auto nonneg = strongly_nonnegative(s);
  if (!nonneg.strongly_nonnegative)
    throw Error(ErrorCode::Unstable, "body_limit: semigroup is not strongly nonnegative");
  RatPolytope body = nok_body(s);
  const std::size_t qs = q(s);
  if (body.dimension() != qs)
    throw Error(ErrorCode::DimensionMismatch, "body_limit: body dimension differs from q(S)");
  Rational vol = normalized_volume(body, *body.carrier()).value;
  Integer m = level_index(s);
  Integer mq = 1;
  for (std::size_t i = 0; i < qs; ++i) mq *= m;
  Rational out = Rational(mq) * vol / Rational(ind(s));
  out.canonicalize();
  return out;
}

}  // namespace newtok
