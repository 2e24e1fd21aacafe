#pragma once

// Exact rational polytopes.
//
// Facets are stored as (normal, offset) meaning <x, normal> >= offset with a
// primitive integer normal. Vertices and facets are kept in lexicographic
// order so that equal polytopes compare equal field by field.

#include "toricy/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace toricy {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// <x, normal> >= offset.
struct Facet {
  IntVector normal;
  Rational offset;

  bool operator==(const Facet&) const = default;
  bool operator<(const Facet& o) const {
    return normal != o.normal ? normal < o.normal : offset < o.offset;
  }
};

class OriginNotInteriorError : public Error {
 public:
  OriginNotInteriorError(const std::string& what, Facet separating)
      : Error(what), separating_facet(std::move(separating)) {}
  Facet separating_facet;
};

class FaceLattice;
class RationalPolytope;

namespace detail {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline int sign(std::int64_t a) { return (a > 0) - (a < 0); }
inline std::int64_t gcd_step(std::int64_t g, std::int64_t a) { return std::gcd(g, a); }

inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline int sign(const Integer& a) { return sgn(a); }
inline Integer gcd_step(const Integer& g, const Integer& a) { return toricy::gcd(g, a); }

template <class T>
T dot_t(const std::vector<T>& a, const std::vector<T>& b) {
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
  return acc;
}

template <class T>
void make_primitive(std::vector<T>& v) {
  T g = 0;
  for (const auto& x : v) g = gcd_step(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

/// Facets of the full-dimensional pointed cone spanned by integer vectors
/// (double description with combinatorial adjacency). `order` lists the
/// generators in insertion order; `init` are d independent ones among them.
template <class T>
std::vector<std::vector<T>> cone_facets(const std::vector<std::vector<T>>& gens,
                                        const std::vector<std::size_t>& order,
                                        const std::vector<std::size_t>& init,
                                        const RatMatrix& init_inverse) {
  const std::size_t d = init.size();
  const std::size_t m = gens.size();
  struct Ray {
    std::vector<T> v;
    Bits zero;
  };
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = init_inverse(i, k);
    IntVector iv = clear_denominators(col);
    Ray r;
    r.v.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      if constexpr (std::is_same_v<T, Integer>) {
        r.v[i] = iv[i];
      } else {
        if (!iv[i].fits_slong_p()) throw Overflow{};
        r.v[i] = iv[i].get_si();
      }
    }
    r.zero.resize(m);
    for (std::size_t j = 0; j < d; ++j)
      if (j != k) r.zero.set(init[j]);
    rays.push_back(std::move(r));
  }
  Bits done(m);
  for (auto i : init) done.set(i);

  std::vector<T> val;
  for (std::size_t idx : order) {
    if (done.test(idx)) continue;
    done.set(idx);
    const auto& p = gens[idx];
    val.resize(rays.size());
    bool any_neg = false;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot_t(rays[r].v, p);
      if (sign(val[r]) < 0) any_neg = true;
    }
    if (!any_neg) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (sign(val[r]) == 0) rays[r].zero.set(idx);
      continue;
    }
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      int s = sign(val[r]);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
    }
    std::vector<Ray> next;
    for (std::size_t pi : pos)
      for (std::size_t ni : neg) {
        Bits z = rays[pi].zero & rays[ni].zero;
        if (z.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == pi || r == ni) continue;
          if (z.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(d);
        const T& a = val[pi];
        const T b = -val[ni];
        for (std::size_t i = 0; i < d; ++i)
          nr.v[i] = add(mul(a, rays[ni].v[i]), mul(b, rays[pi].v[i]));
        make_primitive(nr.v);
        nr.zero = std::move(z);
        nr.zero.set(idx);
        next.push_back(std::move(nr));
      }
    std::vector<Ray> kept;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      int s = sign(val[r]);
      if (s < 0) continue;
      if (s == 0) rays[r].zero.set(idx);
      kept.push_back(std::move(rays[r]));
    }
    for (auto& nr : next) kept.push_back(std::move(nr));
    rays = std::move(kept);
  }
  std::vector<std::vector<T>> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

inline bool lex_less(const RatVector& a, const RatVector& b) { return a < b; }

}  // namespace detail

/// Affine hull data for lower-dimensional polytopes: the polytope lies in
/// base + span(chart rows), where chart is a saturated lattice basis of the
/// direction space.
struct AffineHull {
  IntMatrix equations;  // rows e with <e, x> = rhs
  RatVector rhs;
  RatVector base;
  IntMatrix chart;  // k x n
};

class RationalPolytope {
 public:
  RationalPolytope() = default;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t affine_dim() const noexcept { return affine_dim_; }
  bool is_full_dimensional() const noexcept { return affine_dim_ == dim_; }
  const std::vector<RatVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const AffineHull& affine_hull() const noexcept { return affine_; }

  bool contains(std::span<const Rational> x) const {
    for (const auto& f : facets_)
      if (dot<Rational, Integer>(x, f.normal) < f.offset) return false;
    for (std::size_t i = 0; i < affine_.equations.rows(); ++i)
      if (dot<Rational, Integer>(x, affine_.equations.row(i)) != affine_.rhs[i]) return false;
    return true;
  }
  bool contains(std::span<const Integer> x) const {
    RatVector r(x.begin(), x.end());
    return contains(r);
  }

  /// Facets on which x is tight.
  Bits tight_facets(std::span<const Rational> x) const {
    Bits b(facets_.size());
    for (std::size_t k = 0; k < facets_.size(); ++k)
      if (dot<Rational, Integer>(x, facets_[k].normal) == facets_[k].offset) b.set(k);
    return b;
  }

  Bits vertex_facets(std::size_t v) const { return tight_facets(vertices_[v]); }

  /// Vertices lying on facet k.
  Bits facet_vertices(std::size_t k) const {
    Bits b(vertices_.size());
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (dot<Rational, Integer>(vertices_[v], facets_[k].normal) == facets_[k].offset) b.set(v);
    return b;
  }

  bool is_lattice() const {
    return std::all_of(vertices_.begin(), vertices_.end(),
                       [](const RatVector& v) { return is_integral(v); });
  }

  bool origin_interior() const {
    if (!is_full_dimensional() || facets_.empty()) return false;
    return std::all_of(facets_.begin(), facets_.end(),
                       [](const Facet& f) { return f.offset < 0; });
  }

  std::optional<std::size_t> vertex_index(std::span<const Rational> x) const {
    RatVector v(x.begin(), x.end());
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  bool operator==(const RationalPolytope& o) const {
    return dim_ == o.dim_ && vertices_ == o.vertices_;
  }

  /// Face lattice, computed once and shared by copies.
  const FaceLattice& faces() const;

  /// Lattice points, computed once and shared by copies.
  const std::vector<IntVector>& cached_lattice_points() const;

  friend RationalPolytope hull(const std::vector<RatVector>&);
  friend RationalPolytope polar(const RationalPolytope&);
  friend RationalPolytope from_parts(std::size_t, std::vector<RatVector>, std::vector<Facet>);

 private:
  struct Cache {
    std::once_flag faces_once;
    std::shared_ptr<const FaceLattice> faces;
    std::once_flag points_once;
    std::vector<IntVector> points;
  };

  void finish() {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(facets_.begin(), facets_.end());
    cache_ = std::make_shared<Cache>();
  }

  void validate() const {
    // every vertex satisfies every facet; tightness counts
    const std::size_t k = affine_dim_;
    std::vector<std::size_t> facet_tight(facets_.size(), 0);
    for (const auto& v : vertices_) {
      std::size_t tight = 0;
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        Rational s = dot<Rational, Integer>(v, facets_[f].normal);
        if (s < facets_[f].offset) throw Error("polytope: vertex violates a facet");
        if (s == facets_[f].offset) {
          ++tight;
          ++facet_tight[f];
        }
      }
      if (k > 0 && tight < k) throw Error("polytope: vertex tight on too few facets");
    }
    for (auto t : facet_tight)
      if (k > 0 && t < k) throw Error("polytope: facet tight on too few vertices");
  }

  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<RatVector> vertices_;
  std::vector<Facet> facets_;
  AffineHull affine_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

namespace detail {

inline Facet make_facet(std::span<const Integer> a, const Integer& c) {
  // a.x + c >= 0  ->  (a/g).x >= -c/g
  IntVector n(a.begin(), a.end());
  Integer g = content(n);
  Facet f;
  if (g == 0) throw Error("degenerate facet normal");
  for (auto& x : n) x /= g;
  f.normal = std::move(n);
  f.offset = make_rational(-c, g);
  return f;
}

/// Hull of points spanning Q^n (the caller guarantees full dimension).
inline std::pair<std::vector<RatVector>, std::vector<Facet>> full_hull(
    const std::vector<RatVector>& pts, std::size_t n) {
  const std::size_t m = pts.size();
  const std::size_t d = n + 1;
  Integer den = 1;
  for (const auto& p : pts)
    for (const auto& q : p) den = lcm(den, q.get_den());
  std::vector<IntVector> hom(m, IntVector(d));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) hom[i][j] = Rational(pts[i][j] * den).get_num();
    hom[i][n] = den;
  }

  // insertion order: far from the centroid first
  std::vector<double> c(n, 0.0);
  for (const auto& p : pts)
    for (std::size_t j = 0; j < n; ++j) c[j] += p[j].get_d() / double(m);
  std::vector<std::pair<double, std::size_t>> key;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(pts[i][j].get_d() - c[j]);
    key.push_back({-s, i});
  }
  std::sort(key.begin(), key.end());
  std::vector<std::size_t> order;
  for (auto& kv : key) order.push_back(kv.second);

  // greedy independent start
  std::vector<std::size_t> init;
  RatMatrix acc(0, d);
  for (std::size_t i : order) {
    RatMatrix trial = acc;
    trial.append_row(to_rational(hom[i]));
    if (rank(trial) == trial.rows()) {
      acc = std::move(trial);
      init.push_back(i);
      if (init.size() == d) break;
    }
  }
  if (init.size() != d) throw Error("hull: points are not full-dimensional");
  RatMatrix inv = *inverse(acc);

  std::vector<IntVector> normals;
  bool small = true;
  for (const auto& h : hom)
    for (const auto& x : h)
      if (!x.fits_slong_p() || abs(x) > (Integer(1) << 24)) small = false;
  bool done = false;
  if (small) {
    try {
      std::vector<std::vector<std::int64_t>> g(m, std::vector<std::int64_t>(d));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) g[i][j] = hom[i][j].get_si();
      auto f = cone_facets<std::int64_t>(g, order, init, inv);
      for (auto& r : f) {
        IntVector iv;
        for (auto x : r) iv.emplace_back(static_cast<long>(x));
        normals.push_back(std::move(iv));
      }
      done = true;
    } catch (const Overflow&) {
      normals.clear();
    }
  }
  if (!done) normals = cone_facets<Integer>(hom, order, init, inv);

  std::vector<Facet> facets;
  for (const auto& r : normals) facets.push_back(make_facet(std::span(r).first(n), r[n]));

  // vertices: points whose tight normals have rank n
  std::vector<RatVector> verts;
  std::vector<RatVector> uniq = pts;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (const auto& p : uniq) {
    RatMatrix t(0, n);
    for (const auto& f : facets)
      if (dot<Rational, Integer>(p, f.normal) == f.offset) t.append_row(to_rational(f.normal));
    if (t.rows() >= n && rank(t) == n) verts.push_back(p);
  }
  return {std::move(verts), std::move(facets)};
}

}  // namespace detail

/// Convex hull of finitely many rational points.
inline RationalPolytope hull(const std::vector<RatVector>& points) {
  if (points.empty()) throw PreconditionError("hull of an empty point set");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw PreconditionError("hull: mixed ambient dimensions");

  RationalPolytope P;
  P.dim_ = n;
  const RatVector& x0 = points.front();
  RatMatrix diff(0, n);
  for (const auto& p : points) {
    RatVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = p[j] - x0[j];
    diff.append_row(d);
  }
  const std::size_t k = rank(diff);
  P.affine_dim_ = k;
  if (k == n) {
    auto [v, f] = detail::full_hull(points, n);
    P.vertices_ = std::move(v);
    P.facets_ = std::move(f);
    P.finish();
    P.validate();
    return P;
  }

  // lower-dimensional: work in a lattice chart of the affine hull
  IntMatrix idiff(diff.rows(), n);
  for (std::size_t i = 0; i < diff.rows(); ++i) {
    IntVector r = clear_denominators(diff.row(i));
    std::copy(r.begin(), r.end(), idiff.row(i).begin());
  }
  AffineHull& ah = P.affine_;
  ah.equations = kernel_basis(idiff);
  for (std::size_t i = 0; i < ah.equations.rows(); ++i)
    ah.rhs.push_back(dot<Rational, Integer>(x0, ah.equations.row(i)));
  ah.chart = kernel_basis(ah.equations);
  ah.base = x0;

  if (k == 0) {
    P.vertices_ = {x0};
    P.finish();
    return P;
  }

  RatMatrix chart_q = to_rational(ah.chart);
  std::vector<RatVector> local;
  for (std::size_t i = 0; i < diff.rows(); ++i) {
    // diff = c * chart
    auto c = solve_rational(chart_q.transpose(), diff.row(i));
    if (!c) throw Error("hull: chart does not cover the affine hull");
    local.push_back(std::move(*c));
  }
  auto [lv, lf] = detail::full_hull(local, k);
  (void)lv;
  SmithForm sf = snf(ah.chart);  // u * chart * v = [I | 0]
  for (const auto& f : lf) {
    // ambient a with chart * a^T = a'^T
    IntVector ua = times_column<Integer, Integer>(sf.u, f.normal);
    IntVector z(n, Integer(0));
    for (std::size_t i = 0; i < k; ++i) z[i] = ua[i];
    IntVector a = times_column<Integer, Integer>(sf.v, z);
    Rational off = f.offset + dot<Rational, Integer>(x0, a);
    Integer g = content(a);
    for (auto& x : a) x /= g;
    P.facets_.push_back({std::move(a), off / g});
  }
  // vertices are the points whose local images are local vertices
  std::vector<RatVector> uniq = points;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (const auto& p : uniq) {
    std::size_t tight = 0;
    RatMatrix t(0, n);
    for (const auto& f : P.facets_)
      if (dot<Rational, Integer>(p, f.normal) == f.offset) {
        ++tight;
        t.append_row(to_rational(f.normal));
      }
    for (std::size_t i = 0; i < ah.equations.rows(); ++i) t.append_row(to_rational(ah.equations.row(i)));
    if (rank(t) == n) P.vertices_.push_back(p);
  }
  P.finish();
  P.validate();
  return P;
}

inline RationalPolytope hull(const std::vector<IntVector>& points) {
  std::vector<RatVector> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back(to_rational(p));
  return hull(r);
}

/// Construct from already-known minimal V- and H-representations of a
/// full-dimensional polytope (validated).
inline RationalPolytope from_parts(std::size_t dim, std::vector<RatVector> vertices,
                                   std::vector<Facet> facets) {
  RationalPolytope P;
  P.dim_ = dim;
  P.affine_dim_ = dim;
  P.vertices_ = std::move(vertices);
  P.facets_ = std::move(facets);
  P.finish();
  P.validate();
  return P;
}

/// {y : <x, y> >= -1 for all x in p}.
inline RationalPolytope polar(const RationalPolytope& p) {
  if (!p.is_full_dimensional()) throw PreconditionError("polar: polytope is not full-dimensional");
  for (const auto& f : p.facets())
    if (f.offset >= 0)
      throw OriginNotInteriorError("polar: origin is not an interior point", f);
  RationalPolytope Q;
  Q.dim_ = p.dim();
  Q.affine_dim_ = p.dim();
  for (const auto& f : p.facets()) {
    RatVector v(f.normal.size());
    Rational s = -1 / f.offset;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.normal[j] * s;
    Q.vertices_.push_back(std::move(v));
  }
  for (const auto& v : p.vertices()) {
    // <v, y> >= -1 with v = t * a, a primitive
    IntVector a = clear_denominators(v);
    std::size_t j = 0;
    while (a[j] == 0) ++j;
    Rational t = v[j] / a[j];
    Q.facets_.push_back({std::move(a), -1 / t});
  }
  Q.finish();
  Q.validate();
  return Q;
}

/// min over the polytope of <x, y>.
inline Rational support_value(const RationalPolytope& p, std::span<const Integer> y) {
  if (p.vertices().empty()) throw PreconditionError("support_value of an empty polytope");
  Rational best = dot<Rational, Integer>(p.vertices().front(), y);
  for (const auto& v : p.vertices()) {
    Rational s = dot<Rational, Integer>(v, y);
    if (s < best) best = s;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lattice points

namespace detail {

struct SliceLevel {
  // a_j x_j >= rhs - sum_{i<j} a_i x_i with everything scaled to integers
  std::vector<std::vector<std::int64_t>> small;
  std::vector<IntVector> big;  // normal (j+1 entries) followed by the integer offset
};

inline void slice(const std::vector<std::vector<IntVector>>& levels, std::size_t j,
                  IntVector& x, std::vector<IntVector>& out) {
  const auto& fs = levels[j];
  bool has_lo = false, has_hi = false;
  Integer lo, hi, partial, bound;
  for (const auto& f : fs) {
    // f = (a_0 .. a_j, c): sum a_i x_i >= c
    const Integer& aj = f[j];
    if (aj == 0) continue;
    partial = f[j + 1];
    for (std::size_t i = 0; i < j; ++i) partial -= f[i] * x[i];
    if (aj > 0) {
      mpz_cdiv_q(bound.get_mpz_t(), partial.get_mpz_t(), aj.get_mpz_t());
      if (!has_lo || bound > lo) lo = bound;
      has_lo = true;
    } else {
      mpz_fdiv_q(bound.get_mpz_t(), partial.get_mpz_t(), aj.get_mpz_t());
      if (!has_hi || bound < hi) hi = bound;
      has_hi = true;
    }
  }
  if (!has_lo || !has_hi) throw Error("lattice_points: unbounded slice");
  for (Integer t = lo; t <= hi; ++t) {
    // inequalities not involving x_j must also hold
    x[j] = t;
    bool ok = true;
    for (const auto& f : fs) {
      if (f[j] != 0) continue;
      partial = 0;
      for (std::size_t i = 0; i < j; ++i) partial += f[i] * x[i];
      if (partial < f[j + 1]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (j + 1 == levels.size())
      out.push_back(x);
    else
      slice(levels, j + 1, x, out);
  }
}

/// Integer points of a full-dimensional polytope, lexicographic.
inline std::vector<IntVector> full_lattice_points(const RationalPolytope& p) {
  const std::size_t n = p.dim();
  std::vector<IntVector> out;
  if (n == 0) return {IntVector{}};
  // level j uses the facets of the projection onto the first j+1 coordinates
  std::vector<std::vector<IntVector>> levels(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Facet> fs;
    if (j + 1 == n) {
      fs = p.facets();
    } else {
      std::vector<RatVector> proj;
      for (const auto& v : p.vertices()) proj.emplace_back(v.begin(), v.begin() + (j + 1));
      if (j == 0) {
        Rational lo = proj.front()[0], hi = lo;
        for (const auto& q : proj) {
          lo = std::min(lo, q[0]);
          hi = std::max(hi, q[0]);
        }
        fs.push_back({IntVector{Integer(1)}, lo});
        fs.push_back({IntVector{Integer(-1)}, -hi});
      } else {
        RationalPolytope pr = hull(proj);
        fs = pr.facets();
        for (std::size_t i = 0; i < pr.affine_hull().equations.rows(); ++i) {
          IntVector e(pr.affine_hull().equations.row(i).begin(), pr.affine_hull().equations.row(i).end());
          IntVector ne = e;
          for (auto& x : ne) x = -x;
          fs.push_back({e, pr.affine_hull().rhs[i]});
          fs.push_back({ne, -pr.affine_hull().rhs[i]});
        }
      }
    }
    for (const auto& f : fs) {
      // a.x >= num/den  ->  a.x >= ceil(num/den) for integer x
      IntVector row(f.normal);
      row.push_back(ceil_rational(f.offset));
      levels[j].push_back(std::move(row));
    }
  }
  IntVector x(n);
  slice(levels, 0, x, out);
  return out;
}

}  // namespace detail

/// Integer points of p in lexicographic order.
inline std::vector<IntVector> lattice_points(const RationalPolytope& p) {
  if (p.vertices().empty()) return {};
  if (p.is_full_dimensional()) return detail::full_lattice_points(p);
  const auto& ah = p.affine_hull();
  const std::size_t n = p.dim();
  const std::size_t k = p.affine_dim();
  // an integer point on the affine hull: E x = rhs
  for (const auto& r : ah.rhs)
    if (r.get_den() != 1) return {};
  SmithForm sf = snf(ah.equations);  // u E v = s
  const std::size_t e = ah.equations.rows();
  IntVector ur(e);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) ur[i] += sf.u(i, j) * ah.rhs[j].get_num();
  IntVector z(n, Integer(0));
  for (std::size_t i = 0; i < e; ++i) {
    const Integer& d = sf.s(i, i);
    if (d == 0 || !mpz_divisible_p(ur[i].get_mpz_t(), d.get_mpz_t())) return {};
    z[i] = ur[i] / d;
  }
  IntVector base = times_column<Integer, Integer>(sf.v, z);
  if (k == 0) {
    if (RatVector(base.begin(), base.end()) == p.vertices().front()) return {base};
    return {};
  }
  RatMatrix chart_t = to_rational(ah.chart).transpose();
  std::vector<RatVector> local;
  for (const auto& v : p.vertices()) {
    RatVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = v[j] - base[j];
    local.push_back(*solve_rational(chart_t, d));
  }
  RationalPolytope lp = hull(local);
  std::vector<IntVector> out;
  for (const auto& c : detail::full_lattice_points(lp)) {
    IntVector x = row_times<Integer, Integer>(c, ah.chart);
    for (std::size_t j = 0; j < n; ++j) x[j] += base[j];
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Bounding-box scan; slow, used to cross-check lattice_points.
inline std::vector<IntVector> lattice_points_bruteforce(const RationalPolytope& p) {
  const std::size_t n = p.dim();
  if (p.vertices().empty()) return {};
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational a = p.vertices().front()[j], b = a;
    for (const auto& v : p.vertices()) {
      a = std::min(a, v[j]);
      b = std::max(b, v[j]);
    }
    lo[j] = ceil_rational(a);
    hi[j] = floor_rational(b);
    if (lo[j] > hi[j]) return {};
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  for (;;) {
    if (p.contains(std::span<const Integer>(x))) out.push_back(x);
    std::size_t j = n;
    while (j > 0 && x[j - 1] == hi[j - 1]) {
      x[j - 1] = lo[j - 1];
      --j;
    }
    if (j == 0) return out;
    ++x[j - 1];
  }
}

inline const std::vector<IntVector>& RationalPolytope::cached_lattice_points() const {
  std::call_once(cache_->points_once, [this] { cache_->points = lattice_points(*this); });
  return cache_->points;
}

/// Integer points strictly inside every facet (relative interior for
/// lower-dimensional polytopes).
inline std::vector<IntVector> interior_lattice_points(const RationalPolytope& p) {
  std::vector<IntVector> out;
  for (const auto& x : p.cached_lattice_points()) {
    RatVector r(x.begin(), x.end());
    if (p.tight_facets(r).none()) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Face lattice

struct Face {
  int dim = -1;
  Bits vertices;  // indices into polytope vertices
  Bits facets;    // facets containing the face
};

class FaceLattice {
 public:
  /// All faces, sorted by dimension (empty face first, polytope last).
  const std::vector<Face>& faces() const noexcept { return faces_; }
  std::size_t dim() const noexcept { return dim_; }

  std::vector<std::size_t> faces_of_dim(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
      if (faces_[i].dim == d) out.push_back(i);
    return out;
  }
  std::size_t count(int d) const { return faces_of_dim(d).size(); }

  std::optional<std::size_t> find_by_facets(const Bits& facets) const {
    auto it = by_facets_.find(facets);
    if (it == by_facets_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_by_vertices(const Bits& verts) const {
    auto it = by_vertices_.find(verts);
    if (it == by_vertices_.end()) return std::nullopt;
    return it->second;
  }

  /// F <= G.
  bool is_subface(std::size_t f, std::size_t g) const {
    return faces_[f].vertices.is_subset_of(faces_[g].vertices);
  }

  static FaceLattice build(const RationalPolytope& p) {
    if (!p.is_full_dimensional()) throw PreconditionError("face_lattice: polytope not full-dimensional");
    const std::size_t nv = p.vertices().size(), nf = p.facets().size();
    std::vector<Bits> fv(nf);
    for (std::size_t k = 0; k < nf; ++k) fv[k] = p.facet_vertices(k);

    std::map<Bits, Bits> found;  // vertex set -> facet set
    Bits all(nv);
    all.set();
    std::vector<Bits> frontier{all};
    found[all] = Bits(nf);
    while (!frontier.empty()) {
      std::vector<Bits> next;
      for (const auto& f : frontier)
        for (std::size_t k = 0; k < nf; ++k) {
          Bits g = f & fv[k];
          if (g == f || found.count(g)) continue;
          found[g] = Bits(nf);
          next.push_back(g);
        }
      frontier = std::move(next);
    }
    FaceLattice L;
    L.dim_ = p.dim();
    for (auto& [verts, facets] : found) {
      Face face;
      face.vertices = verts;
      face.facets = Bits(nf);
      for (std::size_t k = 0; k < nf; ++k)
        if (verts.is_subset_of(fv[k])) face.facets.set(k);
      if (verts.none()) {
        face.dim = -1;
        face.facets.set();
      } else {
        std::size_t first = verts.find_first();
        RatMatrix d(0, p.dim());
        for (auto v = verts.find_next(first); v != Bits::npos; v = verts.find_next(v)) {
          RatVector r(p.dim());
          for (std::size_t j = 0; j < p.dim(); ++j) r[j] = p.vertices()[v][j] - p.vertices()[first][j];
          d.append_row(r);
        }
        face.dim = d.rows() ? static_cast<int>(rank(d)) : 0;
      }
      L.faces_.push_back(std::move(face));
    }
    std::stable_sort(L.faces_.begin(), L.faces_.end(), [](const Face& a, const Face& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    for (std::size_t i = 0; i < L.faces_.size(); ++i) {
      L.by_facets_[L.faces_[i].facets] = i;
      L.by_vertices_[L.faces_[i].vertices] = i;
    }
    return L;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Face> faces_;
  std::map<Bits, std::size_t> by_facets_;
  std::map<Bits, std::size_t> by_vertices_;
};

inline const FaceLattice& RationalPolytope::faces() const {
  std::call_once(cache_->faces_once,
                 [this] { cache_->faces = std::make_shared<FaceLattice>(FaceLattice::build(*this)); });
  return *cache_->faces;
}

inline const FaceLattice& face_lattice(const RationalPolytope& p) { return p.faces(); }

/// Index in polar(p)'s face lattice of the face dual to face f of p. The
/// vertices of the polar correspond to the facets of p.
inline std::size_t dual_face(const RationalPolytope& p, const RationalPolytope& pstar, std::size_t f) {
  const Face& face = p.faces().faces()[f];
  Bits verts(pstar.vertices().size());
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    if (!face.facets.test(k)) continue;
    const Facet& fc = p.facets()[k];
    RatVector v(fc.normal.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fc.normal[j] * (-1 / fc.offset);
    auto idx = pstar.vertex_index(v);
    if (!idx) throw Error("dual_face: polar does not match");
    verts.set(*idx);
  }
  auto g = pstar.faces().find_by_vertices(verts);
  if (!g) throw Error("dual_face: no dual face");
  return *g;
}

/// Number of lattice points in the relative interior of each face, indexed
/// like p.faces().faces().
inline std::vector<std::size_t> relint_counts(const RationalPolytope& p) {
  const auto& L = p.faces();
  std::vector<std::size_t> cnt(L.faces().size(), 0);
  for (const auto& x : p.cached_lattice_points()) {
    RatVector r(x.begin(), x.end());
    auto f = L.find_by_facets(p.tight_facets(r));
    if (!f) throw Error("relint_counts: point with no carrier face");
    ++cnt[*f];
  }
  return cnt;
}

inline std::size_t relint_count(const RationalPolytope& p, std::size_t face) {
  if (face >= p.faces().faces().size()) throw PreconditionError("relint_count: unknown face");
  return relint_counts(p)[face];
}

// ---------------------------------------------------------------------------
// Classification

struct ClassificationFlags {
  bool is_lattice = false;
  bool has_origin_interior = false;
  bool is_qfano = false;
  bool is_canonical = false;
  bool is_reflexive = false;
  std::optional<RatVector> non_lattice_vertex;
  std::optional<IntVector> non_primitive_vertex;
  std::optional<IntVector> extra_interior_point;
  std::optional<Facet> non_reflexive_facet;
  std::optional<Facet> origin_separating_facet;
};

/// `known_points`, when given, must contain every lattice point of p.
inline ClassificationFlags classify(const RationalPolytope& p,
                                    const std::vector<IntVector>* known_points = nullptr) {
  ClassificationFlags c;
  c.is_lattice = true;
  for (const auto& v : p.vertices())
    if (!is_integral(v)) {
      c.is_lattice = false;
      c.non_lattice_vertex = v;
      break;
    }
  c.has_origin_interior = p.origin_interior();
  if (!c.has_origin_interior && p.is_full_dimensional())
    for (const auto& f : p.facets())
      if (f.offset >= 0) {
        c.origin_separating_facet = f;
        break;
      }
  if (!c.is_lattice || !c.has_origin_interior) return c;

  c.is_qfano = true;
  for (const auto& v : p.vertices()) {
    IntVector iv = to_integer(v);
    if (!is_primitive(iv)) {
      c.is_qfano = false;
      c.non_primitive_vertex = iv;
      break;
    }
  }
  const auto& pts = known_points ? *known_points : p.cached_lattice_points();
  c.is_canonical = true;
  for (const auto& x : pts) {
    if (std::all_of(x.begin(), x.end(), [](const Integer& t) { return t == 0; })) continue;
    RatVector r(x.begin(), x.end());
    if (!p.contains(r)) continue;
    if (p.tight_facets(r).none()) {
      c.is_canonical = false;
      c.extra_interior_point = x;
      break;
    }
  }
  c.is_reflexive = true;
  for (const auto& f : p.facets())
    if (f.offset != -1) {
      c.is_reflexive = false;
      c.non_reflexive_facet = f;
      break;
    }
  if (c.is_reflexive && !c.is_canonical) throw Error("classify: reflexive but not canonical");
  if (c.is_canonical && !c.is_qfano) throw Error("classify: canonical but not Q-Fano");
  return c;
}

// ---------------------------------------------------------------------------
// Text / JSON formats live in io.hpp; these helpers are shared.

inline std::vector<RatVector> to_rational_points(const std::vector<IntVector>& pts) {
  std::vector<RatVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_rational(p));
  return out;
}

/// Apply the linear map x -> x * t to every vertex.
inline RationalPolytope transform(const RationalPolytope& p, const RatMatrix& t) {
  std::vector<RatVector> img;
  for (const auto& v : p.vertices()) img.push_back(row_times<Rational, Rational>(v, t));
  return hull(img);
}

}  // namespace toricy
