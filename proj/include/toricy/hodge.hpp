#pragma once

// Hodge numbers h11, h21 of anticanonical Calabi-Yau threefolds from a
// four-dimensional reflexive polytope, and the mirror test for good pairs.

#include "toricy/good_pair.hpp"

namespace toricy {

struct HodgePair {
  long h11 = 0, h21 = 0;
  bool operator==(const HodgePair&) const = default;
  HodgePair swapped() const { return {h21, h11}; }
};

inline std::string to_string(const HodgePair& h) {
  return std::to_string(h.h11) + " " + std::to_string(h.h21);
}

namespace detail {
// l(P) - 5 - sum over facets of P of l* + sum over codim-2 faces of l* * l*(dual)
inline long hodge_term(const RationalPolytope& p, const RationalPolytope& pstar) {
  const auto& faces = p.faces();
  auto lp = relint_counts(p);
  auto lq = relint_counts(pstar);
  long h = static_cast<long>(p.cached_lattice_points().size()) - 5;
  for (std::size_t f : faces.faces_of_dim(3)) h -= static_cast<long>(lp[f]);
  for (std::size_t f : faces.faces_of_dim(2))
    h += static_cast<long>(lp[f]) * static_cast<long>(lq[dual_face(p, pstar, f)]);
  return h;
}
}  // namespace detail

inline HodgePair batyrev_hodge(const RationalPolytope& delta) {
  if (delta.dim() != 4) throw PreconditionError("batyrev_hodge: only rank 4 is supported");
  if (!delta.is_full_dimensional() || !classify(delta).is_reflexive)
    throw PreconditionError("batyrev_hodge: polytope is not reflexive");
  RationalPolytope dstar = polar(delta);
  HodgePair h{detail::hodge_term(dstar, delta), detail::hodge_term(delta, dstar)};
  if (h.h11 < 0 || h.h21 < 0) throw Error("batyrev_hodge: negative Hodge number");
  return h;
}

inline void require_reflexive4(const GoodPair& gp) {
  for (const auto* p : {&gp.delta1, &gp.delta2})
    if (p->dim() != 4 || !classify(*p).is_reflexive)
      throw PreconditionError("pair_hodge: both polytopes must be reflexive of rank 4");
}

/// The general member of the primal family has the Hodge numbers of delta1.
inline HodgePair pair_hodge(const GoodPair& gp) {
  require_reflexive4(gp);
  return batyrev_hodge(gp.delta1);
}

struct MirrorVerdict {
  bool passes = false;
  HodgePair primal, dual;
};

inline MirrorVerdict mirror_test(const GoodPair& gp) {
  MirrorVerdict v;
  v.primal = pair_hodge(gp);
  v.dual = pair_hodge(polar_pair(gp));
  v.passes = v.primal == v.dual.swapped();
  // the test passes iff the two polytopes share Hodge numbers
  if (v.passes != (batyrev_hodge(gp.delta1) == batyrev_hodge(gp.delta2)))
    throw Error("mirror_test: inconsistent with the Hodge numbers of delta2");
  return v;
}

}  // namespace toricy
