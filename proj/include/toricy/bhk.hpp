#pragma once

// Generalized Berglund-Hubsch-Krawitz transposition. A datum is an exponent
// matrix a_ij = <u_i, n_j> + 1 together with lattices M_W ⊆ M_G ⊆ M = Z^n.
// Groups are carried by the lattice M_G; phase vectors are derived from it.

#include "toricy/good_pair.hpp"

#include <set>

namespace toricy {

struct BhkDatum {
  IntMatrix a_matrix;               // s x r
  ToricVarietyData ambient;         // rays n_j, torsion-free class group
  std::vector<IntVector> monomials; // u_i in M
  IntMatrix m_w;                    // hnf basis of the span of the u_i
  IntMatrix m_g;                    // hnf basis, M_W ⊆ M_G ⊆ M

  std::size_t rank() const noexcept { return ambient.rank; }
  std::size_t num_monomials() const noexcept { return monomials.size(); }
  std::size_t num_rays() const noexcept { return ambient.rays.size(); }
};

/// Phases are read modulo 1 and represent diag(exp(2 pi i phase)).
struct DiagonalGroupPresentation {
  std::vector<RatVector> generators;
  AbelianGroupStructure structure;
};

namespace detail {

inline IntMatrix pairing_matrix(const std::vector<IntVector>& us, const std::vector<IntVector>& ns) {
  IntMatrix a(us.size(), ns.size());
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < ns.size(); ++j) a(i, j) = dot<Integer, Integer>(us[i], ns[j]) + 1;
  return a;
}

inline void validate(const BhkDatum& bd) {
  const std::size_t n = bd.rank();
  if (bd.a_matrix != pairing_matrix(bd.monomials, bd.ambient.rays))
    throw PreconditionError("bhk: exponent matrix disagrees with the pairings");
  for (std::size_t i = 0; i < bd.a_matrix.rows(); ++i) {
    bool zero = false;
    for (const auto& a : bd.a_matrix.row(i)) {
      if (a < 0) throw PreconditionError("bhk: negative exponent");
      if (a == 0) zero = true;
    }
    if (!zero) throw PreconditionError("bhk: a monomial contains every variable");
  }
  if (bd.ambient.class_group.free_rank + n != bd.num_rays() || !bd.ambient.class_group.invariant_factors.empty())
    throw PreconditionError("bhk: ambient class group has torsion");
  RationalPolytope d1 = hull(bd.monomials);
  if (!d1.is_full_dimensional() || !d1.origin_interior())
    throw PreconditionError("bhk: origin is not interior to the Newton polytope");
  Lattice mw = Lattice::from_basis_rows(bd.m_w), mg = Lattice::from_basis_rows(bd.m_g);
  if (!mw.is_sublattice_of(mg) || !mg.is_sublattice_of(Lattice::standard(n)))
    throw PreconditionError("bhk: lattices are not nested");
}

inline IntMatrix span_basis(const std::vector<IntVector>& gens, std::size_t n) {
  IntMatrix b = hnf_basis(IntMatrix::from_rows(gens, n));
  if (b.rows() != n) throw PreconditionError("bhk: monomials do not span");
  return b;
}

}  // namespace detail

/// Datum with the given ambient and monomials; m_g defaults to M.
inline BhkDatum make_datum(ToricVarietyData ambient, std::vector<IntVector> monomials,
                           std::optional<IntMatrix> m_g = std::nullopt) {
  BhkDatum bd;
  const std::size_t n = ambient.rank;
  bd.a_matrix = detail::pairing_matrix(monomials, ambient.rays);
  bd.m_w = detail::span_basis(monomials, n);
  bd.m_g = m_g ? hnf_basis(*m_g) : IntMatrix::identity(n);
  bd.ambient = std::move(ambient);
  bd.monomials = std::move(monomials);
  detail::validate(bd);
  return bd;
}

/// Monomials = vertices of delta1, rays = vertices of polar(delta2), both sorted.
inline BhkDatum exponent_matrix(const GoodPair& gp) {
  ToricVarietyData x = variety_from_polytope(gp.delta2);
  if (!x.class_group.invariant_factors.empty())
    throw PreconditionError("exponent_matrix: ambient class group has torsion " + x.class_group.to_string());
  std::vector<IntVector> us;
  for (const auto& v : gp.delta1.vertices()) us.push_back(to_integer(v));
  return make_datum(std::move(x), std::move(us));
}

class RecoveryError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Rebuilds ambient and monomials from A alone (up to lattice automorphism).
/// The row lattice of A - 1 saturates to the image of M under P^T.
inline BhkDatum recover_datum(const IntMatrix& a) {
  const std::size_t s = a.rows(), r = a.cols();
  IntMatrix e(s, r);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) e(i, j) = a(i, j) - 1;
  auto sel = independent_rows(e);
  const std::size_t n = sel.size();
  if (n == 0 || n >= r) throw RecoveryError("recover_variety: rank deficiency in A - 1");
  IntMatrix pprime = e.select_rows(sel);
  IntMatrix sat = kernel_basis(kernel_basis(pprime));  // n x r, rows span the saturation
  std::vector<IntVector> rays;
  for (std::size_t j = 0; j < r; ++j) {
    IntVector c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = sat(k, j);
    rays.push_back(std::move(c));
  }
  RatMatrix sat_t = to_rational(sat).transpose();
  std::vector<IntVector> us;
  for (std::size_t i = 0; i < s; ++i) {
    RatVector rhs(r);
    for (std::size_t j = 0; j < r; ++j) rhs[j] = e(i, j);
    auto u = solve_rational(sat_t, rhs);
    if (!u || !is_integral(*u)) throw RecoveryError("recover_variety: row outside the recovered lattice");
    us.push_back(to_integer(*u));
  }
  ToricVarietyData x = variety_from_rays(std::move(rays));
  auto c = classify(*x.fan_polytope);
  if (!c.is_canonical) throw RecoveryError("recover_variety: recovered fan polytope is not canonical");
  if (x.fan_polytope->vertices().size() != r) throw RecoveryError("recover_variety: a ray is not a vertex");
  return make_datum(std::move(x), std::move(us));
}

inline ToricVarietyData recover_variety(const IntMatrix& a) { return recover_datum(a).ambient; }

struct ClassicalDual {
  RatVector q;                 // (A^T)^{-1} 1, barycentric coordinates of the origin
  std::vector<Integer> weights; // q scaled to a primitive integer vector, variable order
  WeightSystem sorted;
};

inline ClassicalDual classical_dual_weights(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("classical_dual_weights: matrix is not square");
  RatVector ones(a.rows(), Rational(1));
  if (determinant(a) == 0) throw PreconditionError("classical_dual_weights: singular matrix");
  ClassicalDual d;
  d.q = *solve_rational(a.transpose(), ones);
  Rational sum = 0;
  for (const auto& x : d.q) {
    if (x <= 0) throw PreconditionError("classical_dual_weights: origin is not interior (non-positive entry)");
    sum += x;
  }
  if (sum != 1) throw Error("classical_dual_weights: barycentric coordinates do not sum to 1");
  d.weights = clear_denominators(d.q);
  std::vector<long> w;
  for (const auto& x : d.weights) w.push_back(x.get_si());
  d.sorted = WeightSystem(w);
  return d;
}

/// The dual datum: matrix A^T, rays u_i and monomials n_j read in the
/// lattices M_W and its dual, group lattice M_G^∨.
inline BhkDatum transpose(const BhkDatum& bd) {
  RatMatrix b = to_rational(bd.m_w);
  RatMatrix binv = *inverse(b);
  RatMatrix bt = b.transpose();
  std::vector<IntVector> rays, mons;
  for (const auto& u : bd.monomials) rays.push_back(to_integer(row_times<Integer, Rational>(u, binv)));
  for (const auto& nj : bd.ambient.rays) mons.push_back(to_integer(row_times<Integer, Rational>(nj, bt)));
  RatMatrix bg = b * *inverse(to_rational(bd.m_g));
  if (!is_integral(bg))
    throw Error("transpose: M_W is not inside M_G");
  BhkDatum d = make_datum(variety_from_rays(std::move(rays)), std::move(mons), to_integer(bg.transpose()));
  if (d.a_matrix != bd.a_matrix.transpose()) throw Error("transpose: dual matrix is not A^T");
  return d;
}

/// Phase generators of the group cut out by the lattice L ⊇ M_W inside SL
/// modulo the group acting trivially (the analogue of J).
namespace detail {
inline DiagonalGroupPresentation phases_for(const BhkDatum& bd, const IntMatrix& lattice) {
  const std::size_t n = bd.rank(), r = bd.num_rays();
  DiagonalGroupPresentation g;
  g.structure = quotient_structure(Lattice::standard(n), Lattice::from_basis_rows(lattice));
  SmithForm sf = snf(lattice);
  auto sel = independent_rows(bd.ambient.p_matrix);
  RatMatrix pinv = *inverse(to_rational(bd.ambient.p_matrix.select_rows(sel)));
  // a grading row with nonzero total restores the SL condition
  std::optional<IntVector> grade;
  for (std::size_t i = 0; i < bd.ambient.grading.rows() && !grade; ++i) {
    Integer t = 0;
    for (const auto& v : bd.ambient.grading.row(i)) t += v;
    if (t != 0) grade = IntVector(bd.ambient.grading.row(i).begin(), bd.ambient.grading.row(i).end());
  }
  if (!grade) throw Error("group_elements: no grading with nonzero anticanonical degree");
  Integer gsum = 0;
  for (const auto& v : *grade) gsum += v;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& k = sf.s(i, i);
    if (k <= 1) continue;
    RatVector m(n);  // dual basis element, m = (column i of v) / k
    for (std::size_t j = 0; j < n; ++j) m[j] = make_rational(sf.v(j, i), k);
    RatVector ws = row_times<Rational, Rational>(m, pinv);
    RatVector w(r);
    for (std::size_t t = 0; t < n; ++t) w[sel[t]] = ws[t];
    Rational tot = 0;
    for (const auto& x : w) tot += x;
    Rational c = tot / Rational(gsum);
    for (std::size_t j = 0; j < r; ++j) {
      w[j] -= c * (*grade)[j];
      w[j] -= floor_rational(w[j]);
    }
    g.generators.push_back(std::move(w));
  }
  return g;
}
}  // namespace detail

/// SL(W) modulo J, isomorphic to M/M_W.
inline DiagonalGroupPresentation symmetry_group(const BhkDatum& bd) { return detail::phases_for(bd, bd.m_w); }

/// G modulo J, isomorphic to M/M_G.
inline DiagonalGroupPresentation group_elements(const BhkDatum& bd) { return detail::phases_for(bd, bd.m_g); }

class IndexTooLargeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Every lattice between M_W and M in hnf form, from the subgroups of M/M_W.
inline std::vector<IntMatrix> intermediate_lattices(const BhkDatum& bd, std::size_t cap = 10000) {
  const std::size_t n = bd.rank();
  SmithForm sf = snf(bd.m_w);
  std::vector<long> ord;  // cyclic factor orders, basis f_i = rows of v^{-1}
  std::vector<std::size_t> idx;
  Integer index = 1;
  for (std::size_t i = 0; i < n; ++i) {
    index *= sf.s(i, i);
    if (sf.s(i, i) > 1) {
      if (!sf.s(i, i).fits_slong_p()) throw IndexTooLargeError("intermediate_lattices: index too large");
      ord.push_back(sf.s(i, i).get_si());
      idx.push_back(i);
    }
  }
  if (index > Integer(static_cast<unsigned long>(cap)))
    throw IndexTooLargeError("intermediate_lattices: index " + index.get_str() + " exceeds the cap");
  using Elt = std::vector<long>;
  const std::size_t q = ord.size();
  std::vector<Elt> elements{Elt(q, 0)};
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<Elt> next;
    for (const auto& e : elements)
      for (long t = 0; t < ord[i]; ++t) {
        Elt x = e;
        x[i] = t;
        next.push_back(std::move(x));
      }
    elements = std::move(next);
  }
  auto add = [&](const Elt& a, const Elt& b) {
    Elt c(q);
    for (std::size_t i = 0; i < q; ++i) c[i] = (a[i] + b[i]) % ord[i];
    return c;
  };
  auto close = [&](std::set<Elt> h, const Elt& g) {
    std::vector<Elt> todo(h.begin(), h.end());
    if (h.insert(g).second) todo.push_back(g);
    std::vector<Elt> gens{g};
    for (const auto& x : h) gens.push_back(x);
    while (!todo.empty()) {
      Elt x = todo.back();
      todo.pop_back();
      for (const auto& y : gens) {
        Elt z = add(x, y);
        if (h.insert(z).second) todo.push_back(z);
      }
    }
    return h;
  };
  std::set<std::set<Elt>> seen{{Elt(q, 0)}};
  std::vector<std::set<Elt>> frontier{{Elt(q, 0)}};
  while (!frontier.empty()) {
    std::vector<std::set<Elt>> next;
    for (const auto& h : frontier)
      for (const auto& g : elements) {
        if (h.count(g)) continue;
        auto h2 = close(h, g);
        if (seen.insert(h2).second) next.push_back(std::move(h2));
      }
    frontier = std::move(next);
  }
  RatMatrix vinv = *inverse(to_rational(sf.v));
  std::vector<IntMatrix> out;
  for (const auto& h : seen) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(IntVector(bd.m_w.row(i).begin(), bd.m_w.row(i).end()));
    for (const auto& e : h) {
      RatVector x(n);
      for (std::size_t t = 0; t < q; ++t)
        for (std::size_t j = 0; j < n; ++j) x[j] += e[t] * vinv(idx[t], j);
      gens.push_back(to_integer(x));
    }
    out.push_back(hnf_basis(IntMatrix::from_rows(gens, n)));
  }
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    return a.row_list() < b.row_list();
  });
  return out;
}

/// Newton polytope and anticanonical polytope of X/G, in M_G coordinates.
inline GoodPair bhk_pair(const BhkDatum& bd) {
  RatMatrix g = to_rational(bd.m_g);
  RatMatrix ginv = *inverse(g), gt = g.transpose();
  std::vector<RatVector> us, ns;
  for (const auto& u : bd.monomials) us.push_back(row_times<Integer, Rational>(u, ginv));
  for (const auto& nj : bd.ambient.rays) ns.push_back(row_times<Integer, Rational>(nj, gt));
  try {
    return good_pair(hull(us), polar(hull(ns)));
  } catch (const GoodPairError& e) {
    throw Error(std::string("bhk_pair: not a good pair: ") + e.what());
  }
}

struct DualityCheck {
  bool holds = false;
  std::optional<RatMatrix> map;  // N_G coordinates of the datum -> M_G coordinates of the dual
  std::string detail;
};

/// bhk_pair(transpose(bd)) is polar_pair(bhk_pair(bd)) under the lattice
/// isomorphism matching each ray n_j with the dual monomial it becomes.
inline DualityCheck verify_duality(const BhkDatum& bd) {
  DualityCheck res;
  BhkDatum d = transpose(bd);
  GoodPair p = polar_pair(bhk_pair(bd));
  GoodPair q = bhk_pair(d);
  RatMatrix gt = to_rational(bd.m_g).transpose();
  RatMatrix g2inv = *inverse(to_rational(d.m_g));
  std::vector<RatVector> src, dst;
  for (std::size_t j = 0; j < bd.num_rays(); ++j) {
    src.push_back(row_times<Integer, Rational>(bd.ambient.rays[j], gt));
    dst.push_back(row_times<Integer, Rational>(d.monomials[j], g2inv));
  }
  auto t = labeled_linear_map(src, dst);
  if (!t) {
    res.detail = "no linear map matches rays with dual monomials";
    return res;
  }
  const RatMatrix& tm = *t;
  if (!is_integral(tm) ||
      abs(determinant(to_integer(tm))) != 1) {
    res.detail = "matching map is not unimodular";
    return res;
  }
  res.map = tm;
  if (!(transform(p.delta1, tm) == q.delta1)) {
    res.detail = "first polytopes differ";
    return res;
  }
  if (!(transform(p.delta2, tm) == q.delta2)) {
    res.detail = "second polytopes differ";
    return res;
  }
  res.holds = true;
  res.detail = "ok";
  return res;
}

/// Same matrix and a unimodular change of M carrying rays, monomials and M_G
/// of one datum to the other.
inline bool equivalent(const BhkDatum& a, const BhkDatum& b) {
  if (a.a_matrix != b.a_matrix || a.rank() != b.rank()) return false;
  auto t = labeled_linear_map(to_rational_points(a.ambient.rays), to_rational_points(b.ambient.rays));
  if (!t) return false;
  const RatMatrix& tm = *t;
  if (!is_integral(tm) ||
      abs(determinant(to_integer(tm))) != 1)
    return false;
  RatMatrix tit = inverse(tm)->transpose();
  for (std::size_t i = 0; i < a.num_monomials(); ++i)
    if (row_times<Integer, Rational>(a.monomials[i], tit) != to_rational(b.monomials[i])) return false;
  std::vector<RatVector> mg;
  for (std::size_t i = 0; i < a.rank(); ++i)
    mg.push_back(row_times<Integer, Rational>(a.m_g.row(i), tit));
  return Lattice::from_generators(mg, a.rank()) == Lattice::from_basis_rows(b.m_g);
}

/// Square case only: the phase lattices of the transposed group from the
/// inverse-matrix definition and from the lattice definition, as lattices in
/// Q^s containing Z^s.
struct TransposedGroupCheck {
  Lattice from_inverse, from_lattice;
  bool equal = false;
};

namespace detail {
// Z^r, the J generator q / sum(q), and lifts of the group generators.
inline Lattice phase_lattice(const BhkDatum& bd) {
  const std::size_t r = bd.num_rays();
  std::vector<RatVector> gens;
  for (std::size_t j = 0; j < r; ++j) {
    RatVector e(r);
    e[j] = 1;
    gens.push_back(e);
  }
  IntVector q(bd.ambient.grading.row(0).begin(), bd.ambient.grading.row(0).end());
  Integer tot = 0;
  for (const auto& x : q) tot += x;
  RatVector jg(r);
  for (std::size_t j = 0; j < r; ++j) jg[j] = make_rational(q[j], tot);
  gens.push_back(jg);
  for (auto& g : group_elements(bd).generators) gens.push_back(g);
  return Lattice::from_generators(gens, r);
}
}  // namespace detail

inline TransposedGroupCheck transposed_group_check(const BhkDatum& bd) {
  const std::size_t s = bd.num_monomials(), r = bd.num_rays();
  if (s != r || r != bd.rank() + 1) throw PreconditionError("transposed_group_check: datum is not square");
  Lattice g = detail::phase_lattice(bd);
  RatMatrix ainv = *inverse(bd.a_matrix);
  // exponent vectors alpha with alpha . w integral for all w in G, mapped by A^{-1}
  Lattice inv = g.dual();
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < s; ++i) gens.push_back(row_times<Rational, Rational>(inv.basis().row(i), ainv));
  TransposedGroupCheck c{Lattice::from_generators(gens, s), detail::phase_lattice(transpose(bd)), false};
  c.equal = c.from_inverse == c.from_lattice;
  return c;
}

}  // namespace toricy
