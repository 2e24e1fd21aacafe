#pragma once

// Regularity of the general member of a family of anticanonical
// hypersurfaces with prescribed Newton polytope.

#include "toricy/toric.hpp"

#include <bit>

namespace toricy {

struct FamilyDatum {
  ToricVarietyData ambient;
  RationalPolytope newton;
  std::vector<IntVector> support;

  /// Validates the datum; an empty support defaults to the lattice points of newton.
  static FamilyDatum make(ToricVarietyData ambient, RationalPolytope newton,
                          std::vector<IntVector> support = {}) {
    if (!newton.is_lattice()) throw PreconditionError("family: Newton polytope is not a lattice polytope");
    if (!newton.origin_interior()) throw PreconditionError("family: origin is not interior to the Newton polytope");
    for (const auto& v : newton.vertices())
      for (const auto& n : ambient.rays)
        if (dot<Rational, Integer>(v, n) < -1)
          throw PreconditionError("family: Newton polytope is not inside the anticanonical polytope");
    if (support.empty()) {
      support = newton.cached_lattice_points();
    } else {
      for (const auto& u : support)
        if (!newton.contains(std::span<const Integer>(u)))
          throw PreconditionError("family: support point outside the Newton polytope");
      for (const auto& v : newton.vertices())
        if (std::find(support.begin(), support.end(), to_integer(v)) == support.end())
          throw PreconditionError("family: support misses a vertex of the Newton polytope");
    }
    FamilyDatum fd{std::move(ambient), std::move(newton), std::move(support)};
    return fd;
  }
};

struct OffendingPair {
  std::size_t i = 0, j = 0;
  std::string clause;  // "well_formed" or "normal"
};

struct RegularityReport {
  bool irreducible = false;
  bool well_formed = false;
  bool normal_sufficient = false;  // false means unknown, never "not normal"
  bool canonical_newton = false;
  std::vector<IntVector> conjectural_witnesses;
  std::vector<OffendingPair> offending_pairs;
  std::vector<std::size_t> non_boundary_rays;
};

namespace detail {
inline Integer min_pairing(const RationalPolytope& newton, std::span<const Integer> n) {
  // newton is a lattice polytope so the minimum is an integer
  return support_value(newton, n).get_num();
}
}  // namespace detail

inline RegularityReport regularity_report(const FamilyDatum& fd) {
  const auto& rays = fd.ambient.rays;
  const auto& newton = fd.newton;
  RegularityReport rep;

  // pairings <v, n_i> for vertices v of the Newton polytope
  std::vector<std::vector<Integer>> pair(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (const auto& v : newton.vertices()) pair[i].push_back(dot<Rational, Integer>(v, rays[i]).get_num());

  rep.irreducible = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (std::find(pair[i].begin(), pair[i].end(), Integer(-1)) == pair[i].end()) {
      rep.irreducible = false;
      rep.non_boundary_rays.push_back(i);
    }

  const RationalPolytope& fan = fd.ambient.fan_polytope ? *fd.ambient.fan_polytope : hull(rays);
  rep.well_formed = true;
  rep.normal_sufficient = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (!detail::common_facet(fan, {rays[i], rays[j]})) continue;
      bool in_dual_facet = false;
      for (std::size_t v = 0; v < newton.vertices().size() && !in_dual_facet; ++v)
        if (pair[i][v] == -1 && pair[j][v] == -1) in_dual_facet = true;
      if (in_dual_facet) continue;
      IntVector d(rays[i].size()), s(rays[i].size());
      for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = rays[j][k] - rays[i][k];
        s[k] = rays[j][k] + rays[i][k];
      }
      if (content(d) != 1) {
        rep.well_formed = false;
        rep.offending_pairs.push_back({i, j, "well_formed"});
      }
      if (detail::min_pairing(newton, s) > -1) {
        rep.normal_sufficient = false;
        rep.offending_pairs.push_back({i, j, "normal"});
      }
    }

  rep.canonical_newton = classify(newton).is_canonical;
  RationalPolytope dstar = polar(newton);
  for (const auto& x : interior_lattice_points(dstar))
    if (std::any_of(x.begin(), x.end(), [](const Integer& t) { return t != 0; }))
      rep.conjectural_witnesses.push_back(x);
  return rep;
}

/// -1 - min over the Newton polytope of <u, n>.
inline Rational discrepancy(const FamilyDatum& fd, std::span<const Integer> n) {
  if (std::all_of(n.begin(), n.end(), [](const Integer& t) { return t == 0; }))
    throw PreconditionError("discrepancy: zero vector");
  return Rational(-1) - support_value(fd.newton, n);
}

/// Nonzero lattice points of the polar of the Newton polytope.
inline std::vector<IntVector> crepant_rays(const FamilyDatum& fd) {
  RationalPolytope dstar = polar(fd.newton);
  std::vector<IntVector> out;
  for (const auto& x : dstar.cached_lattice_points()) {
    if (std::all_of(x.begin(), x.end(), [](const Integer& t) { return t == 0; })) continue;
    RatVector r(x.begin(), x.end());
    bool boundary = dstar.tight_facets(r).any();
    Rational a = discrepancy(fd, x);
    if ((a == 0) != boundary || (a < 0) == boundary)
      throw Error("crepant_rays: discrepancy disagrees with the boundary test");
    if (boundary) out.push_back(x);
  }
  return out;
}

struct QuasismoothResult {
  bool quasismooth = true;
  std::vector<std::size_t> witness;  // a violating variable subset when not quasismooth
};

/// General-member quasismoothness in a weighted projective space. Variable i
/// has weight w[i] (stored order).
inline QuasismoothResult quasismooth_general_wps(const WeightSystem& w,
                                                 const std::vector<IntVector>& support) {
  const std::size_t n = w.size();
  if (n > 20) throw PreconditionError("quasismooth: too many variables");
  if (support.empty()) throw PreconditionError("quasismooth: empty support");
  std::optional<Integer> deg;
  for (std::size_t m = 0; m < support.size(); ++m) {
    if (support[m].size() != n) throw PreconditionError("quasismooth: exponent vector of wrong length");
    Integer d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (support[m][i] < 0) throw PreconditionError("quasismooth: negative exponent");
      d += support[m][i] * w[i];
    }
    if (deg && *deg != d) throw PreconditionError("quasismooth: support has mixed degrees");
    deg = d;
  }
  // only the support pattern and the first-power variables matter
  std::vector<std::pair<std::uint32_t, std::uint32_t>> mons;
  for (std::size_t m = 0; m < support.size(); ++m) {
    std::uint32_t mk = 0, on = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (support[m][i] > 0) mk |= 1u << i;
      if (support[m][i] == 1) on |= 1u << i;
    }
    mons.push_back({mk, on});
  }
  std::sort(mons.begin(), mons.end());
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 1; s < (1u << n); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::uint32_t I : subsets) {
    bool ok = false;
    std::uint32_t ext = 0;
    for (const auto& [mk, on] : mons) {
      if ((mk & ~I) == 0) {
        ok = true;
        break;
      }
      std::uint32_t out = mk & ~I;
      // exactly one outside variable, appearing to the first power
      if ((out & (out - 1)) == 0 && (out & on)) ext |= out;
    }
    if (!ok && std::popcount(ext) >= std::popcount(I)) ok = true;
    if (!ok) {
      QuasismoothResult r;
      r.quasismooth = false;
      for (std::size_t i = 0; i < n; ++i)
        if (I >> i & 1u) r.witness.push_back(i);
      return r;
    }
  }
  return {};
}

/// gcd of the weights omitting any two divides the sum.
inline bool wellformed_wps_gcd(const WeightSystem& w) {
  const long h = w.sum();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long g = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) g = std::gcd(g, w[k]);
      if (g == 0 || h % g != 0) return false;
    }
  return true;
}

/// Exponent vectors of all anticanonical monomials of P(w), i.e. all a >= 0
/// with sum a_i w_i = sum w_i, in the stored variable order.
inline std::vector<IntVector> anticanonical_exponents(const WeightSystem& w) {
  const std::size_t n = w.size();
  const long h = w.sum();
  std::vector<IntVector> out;
  std::vector<long> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, long rest) -> void {
    if (i + 1 == n) {
      if (rest % w[i] == 0) {
        a[i] = rest / w[i];
        IntVector v;
        for (long x : a) v.emplace_back(x);
        out.push_back(std::move(v));
      }
      return;
    }
    for (long k = 0; k * w[i] <= rest; ++k) {
      a[i] = k;
      self(self, i + 1, rest - k * w[i]);
    }
  };
  rec(rec, 0, h);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toricy
