#pragma once

// Good pairs (D1, D2): D1 inside D2, D1 and the polar of D2 canonical.

#include "toricy/toric.hpp"

namespace toricy {

class GoodPairError : public PreconditionError {
 public:
  enum class Clause { dimension, inclusion, non_lattice, not_canonical, origin };
  GoodPairError(const std::string& what, Clause clause, std::optional<RatVector> witness)
      : PreconditionError(what), clause(clause), witness(std::move(witness)) {}
  Clause clause;
  std::optional<RatVector> witness;
};

inline const char* to_string(GoodPairError::Clause c) {
  switch (c) {
    case GoodPairError::Clause::dimension: return "dimension";
    case GoodPairError::Clause::inclusion: return "inclusion";
    case GoodPairError::Clause::non_lattice: return "non_lattice";
    case GoodPairError::Clause::not_canonical: return "not_canonical";
    case GoodPairError::Clause::origin: return "origin";
  }
  return "?";
}

struct GoodPair {
  RationalPolytope delta1, delta2;
  bool operator==(const GoodPair& o) const { return delta1 == o.delta1 && delta2 == o.delta2; }
};

namespace detail {
inline void check_canonical(const RationalPolytope& p, const char* name) {
  using C = GoodPairError::Clause;
  if (!p.is_full_dimensional() || !p.origin_interior())
    throw GoodPairError(std::string("good pair: origin is not interior to ") + name, C::origin, std::nullopt);
  auto c = classify(p);
  if (!c.is_lattice)
    throw GoodPairError(std::string("good pair: ") + name + " has a non-lattice vertex", C::non_lattice,
                        c.non_lattice_vertex);
  if (!c.is_canonical)
    throw GoodPairError(std::string("good pair: ") + name + " has an extra interior lattice point",
                        C::not_canonical, to_rational(*c.extra_interior_point));
}
}  // namespace detail

/// Validates (d1, d2); throws GoodPairError naming the failed clause.
inline GoodPair good_pair(RationalPolytope d1, RationalPolytope d2) {
  using C = GoodPairError::Clause;
  if (d1.dim() != d2.dim()) throw GoodPairError("good pair: ambient ranks differ", C::dimension, std::nullopt);
  detail::check_canonical(d1, "delta1");
  for (const auto& v : d1.vertices())
    if (!d2.contains(std::span<const Rational>(v)))
      throw GoodPairError("good pair: delta1 is not contained in delta2", C::inclusion, v);
  if (!d2.is_full_dimensional() || !d2.origin_interior())
    throw GoodPairError("good pair: origin is not interior to delta2", C::origin, std::nullopt);
  detail::check_canonical(polar(d2), "the polar of delta2");
  return GoodPair{std::move(d1), std::move(d2)};
}

inline GoodPair polar_pair(const GoodPair& gp) { return GoodPair{polar(gp.delta2), polar(gp.delta1)}; }

inline bool is_batyrev_case(const GoodPair& gp) { return gp.delta1 == gp.delta2; }

struct FamilyDescription {
  ToricVarietyData ambient;
  std::vector<IntVector> support;
  bool dual = false;
  bool calabi_yau = false;  // Newton polytope canonical, so the general member is Calabi-Yau
};

/// Primal family on the variety of delta2 with support delta1 ∩ M, and the
/// dual family on the variety of polar(delta1) with support polar(delta2) ∩ N.
inline std::pair<FamilyDescription, FamilyDescription> families(const GoodPair& gp) {
  FamilyDescription a, b;
  a.ambient = variety_from_polytope(gp.delta2);
  a.support = gp.delta1.cached_lattice_points();
  a.calabi_yau = classify(gp.delta1).is_canonical;
  RationalPolytope d2s = polar(gp.delta2);
  b.ambient = variety_from_polytope(polar(gp.delta1));
  b.support = d2s.cached_lattice_points();
  b.dual = true;
  b.calabi_yau = classify(d2s).is_canonical;
  return {std::move(a), std::move(b)};
}

/// Two pairs over the same delta2 have dual families with the same monomials.
inline bool shared_ambient_duals_agree(const GoodPair& g1, const GoodPair& g2) {
  if (!(g1.delta2 == g2.delta2)) throw PreconditionError("shared_ambient_duals_agree: delta2 differs");
  return polar(g1.delta2).cached_lattice_points() == polar(g2.delta2).cached_lattice_points();
}

}  // namespace toricy
