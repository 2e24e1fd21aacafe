#pragma once

// Seeded generators shared by unit tests and the acceptance binary.

#include "toricy/toricy.hpp"

#include <random>

namespace toricy::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_int_matrix(Rng& rng, std::size_t r, std::size_t c, long lo, long hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

/// Product of random elementary matrices.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int s = 0; s < steps; ++s) {
    std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    long k = uniform(rng, -2, 2);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    if (uniform(rng, 0, 3) == 0) u.swap_rows(i, j);
  }
  return u;
}

inline std::vector<IntVector> random_points(Rng& rng, std::size_t n, std::size_t k, long lo, long hi) {
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector p(n);
    for (auto& x : p) x = uniform(rng, lo, hi);
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Random polytope with rational vertices (denominators up to 3).
inline RationalPolytope random_rational_polytope(Rng& rng, std::size_t n) {
  std::size_t k = uniform(rng, 1, n + 4);
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < k; ++i) {
    RatVector p(n);
    for (auto& x : p) x = make_rational(uniform(rng, -7, 7), uniform(rng, 1, 3));
    pts.push_back(std::move(p));
  }
  return hull(pts);
}

/// Lattice polytope whose only interior lattice point is the origin.
inline RationalPolytope random_canonical(Rng& rng, std::size_t n, std::size_t max_vertices = 64) {
  for (;;) {
    std::size_t k = uniform(rng, n + 1, n + 5);
    auto pts = random_points(rng, n, k, -1, 1);
    if (uniform(rng, 0, 2) == 0) {
      auto extra = random_points(rng, n, 1, -2, 2);
      pts.push_back(extra[0]);
    }
    RationalPolytope p = hull(pts);
    if (!p.is_full_dimensional() || !p.origin_interior()) continue;
    if (p.vertices().size() > max_vertices) continue;
    if (classify(p).is_canonical) return p;
  }
}

/// Good pair (d1, d2): d2 = polar of a canonical polytope, d1 the hull of
/// random lattice points of d2 around the origin.
inline GoodPair random_good_pair(Rng& rng, std::size_t n) {
  for (;;) {
    RationalPolytope c = random_canonical(rng, n);
    RationalPolytope d2 = polar(c);
    const auto& pts = d2.cached_lattice_points();
    std::vector<IntVector> pick;
    for (const auto& p : pts)
      if (uniform(rng, 0, 2) != 0) pick.push_back(p);
    if (pick.size() < n + 1) continue;
    RationalPolytope d1 = hull(pick);
    if (!d1.is_full_dimensional() || !d1.origin_interior()) continue;
    return good_pair(std::move(d1), std::move(d2));
  }
}

/// Random BHK datum of rank n with at most 8 monomials and 8 rays, and a
/// random group lattice between M_W and M.
inline BhkDatum random_bhk(Rng& rng, std::size_t n) {
  for (;;) {
    RationalPolytope c = random_canonical(rng, n, 8);
    ToricVarietyData x;
    try {
      x = variety_from_polytope(polar(c));
    } catch (const PreconditionError&) {
      continue;
    }
    if (!x.class_group.invariant_factors.empty()) continue;
    RationalPolytope d2 = polar(c);
    // candidates: boundary points of d2 on a facet, so each monomial misses a variable
    std::vector<IntVector> cand;
    for (const auto& p : d2.cached_lattice_points()) {
      bool on = false;
      for (const auto& r : x.rays)
        if (dot<Integer, Integer>(p, r) == -1) on = true;
      if (on) cand.push_back(p);
    }
    std::shuffle(cand.begin(), cand.end(), rng);
    std::size_t take = std::min<std::size_t>(cand.size(), uniform(rng, n + 1, 8));
    cand.resize(take);
    if (cand.size() < n + 1) continue;
    RationalPolytope d1 = hull(cand);
    if (!d1.is_full_dimensional() || !d1.origin_interior() || d1.vertices().size() > 8) continue;
    std::vector<IntVector> us;
    for (const auto& v : d1.vertices()) us.push_back(to_integer(v));
    BhkDatum bd;
    try {
      bd = make_datum(x, us);
    } catch (const PreconditionError&) {
      continue;
    }
    Integer idx = 1;
    for (const auto& d : smith_diagonal(bd.m_w)) idx *= d;
    if (idx > 1 && idx <= 64) {
      auto ls = intermediate_lattices(bd);
      bd = make_datum(bd.ambient, bd.monomials, ls[uniform(rng, 0, ls.size() - 1)]);
    }
    return bd;
  }
}

/// Product of the first k invariant factors via gcds of k x k minors.
inline std::vector<Integer> minor_gcd_products(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), kmax = std::min(r, c);
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        std::vector<std::size_t> ri, ci;
        for (std::size_t i = 0; i < r; ++i)
          if (rs[i]) ri.push_back(i);
        for (std::size_t j = 0; j < c; ++j)
          if (cs[j]) ci.push_back(j);
        g = gcd(g, determinant(m.select_rows(ri).select_cols(ci)));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    out.push_back(abs(g));
  }
  return out;
}

inline bool snf_matches_minors(const IntMatrix& m) {
  auto d = smith_diagonal(m);
  auto g = minor_gcd_products(m);
  Integer prod = 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    Integer dk = k < d.size() ? d[k] : Integer(0);
    prod *= dk;
    if (prod != g[k]) return false;
  }
  return true;
}

/// Lattice points of Theta for P(w) from monomials, in wps coordinates.
inline std::vector<IntVector> theta_points_from_exponents(const ToricVarietyData& x,
                                                          const std::vector<IntVector>& exps) {
  auto sel = independent_rows(x.p_matrix);
  RatMatrix pinv_t = inverse(to_rational(x.p_matrix.select_rows(sel)))->transpose();
  std::vector<IntVector> pts;
  for (const auto& a : exps) {
    RatVector rhs(x.rank);
    for (std::size_t k = 0; k < x.rank; ++k) rhs[k] = a[sel[k]] - 1;
    pts.push_back(to_integer(row_times<Rational, Rational>(rhs, pinv_t)));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// Point of M for an exponent vector of P(w), in wps coordinates.
inline IntVector point_of_exponents(const ToricVarietyData& x, const IntVector& a) {
  return theta_points_from_exponents(x, {a}).front();
}

}  // namespace toricy::testing
