#pragma once

// Q-Fano toric varieties given by their rays, weighted projective spaces,
// anticanonical polytopes and torus-invariant strata.

#include "toricy/polytope.hpp"

namespace toricy {

class WeightError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Positive integer weights with overall gcd 1, stored in descending order.
class WeightSystem {
 public:
  WeightSystem() = default;
  explicit WeightSystem(std::vector<long> w) : w_(std::move(w)) {
    if (w_.empty()) throw WeightError("weight system is empty");
    long g = 0;
    for (long x : w_) {
      if (x <= 0) throw WeightError("weights must be positive");
      g = std::gcd(g, x);
    }
    if (g != 1) throw WeightError("weights must have gcd 1");
    std::sort(w_.begin(), w_.end(), std::greater<>());
  }

  const std::vector<long>& weights() const noexcept { return w_; }
  std::vector<long> ascending() const { return {w_.rbegin(), w_.rend()}; }
  std::size_t size() const noexcept { return w_.size(); }
  long operator[](std::size_t i) const { return w_[i]; }
  long sum() const { return std::accumulate(w_.begin(), w_.end(), 0L); }

  /// Every subset obtained by dropping one weight has gcd 1.
  bool is_normalized() const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      long g = 0;
      for (std::size_t j = 0; j < w_.size(); ++j)
        if (j != i) g = std::gcd(g, w_[j]);
      if (g != 1) return false;
    }
    return true;
  }

  /// Display form: ascending, comma separated.
  std::string to_string() const {
    std::string s;
    for (long x : ascending()) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  }

  static WeightSystem parse(const std::string& text) {
    std::vector<long> w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        w.push_back(v);
      } catch (const std::logic_error&) {
        throw WeightError("bad weight '" + tok + "'");
      }
    }
    return WeightSystem(std::move(w));
  }

  bool operator==(const WeightSystem&) const = default;
  bool operator<(const WeightSystem& o) const { return ascending() < o.ascending(); }

 private:
  std::vector<long> w_;
};

struct ToricVarietyData {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  IntMatrix p_matrix;  // rows = rays
  IntMatrix grading;   // free part of the class group grading, r columns
  IntMatrix torsion_grading;  // row k is read modulo class_group.invariant_factors[k]
  AbelianGroupStructure class_group;
  std::optional<RationalPolytope> fan_polytope;  // conv(rays)
  bool canonical_checked = false;

  std::size_t num_rays() const noexcept { return rays.size(); }
};

namespace detail {

inline ToricVarietyData assemble(std::vector<IntVector> rays, std::size_t n) {
  ToricVarietyData x;
  x.rank = n;
  for (const auto& r : rays) {
    if (r.size() != n) throw PreconditionError("ray of wrong dimension");
    if (!is_primitive(r)) throw PreconditionError("ray " + to_string(r) + " is not primitive");
  }
  x.p_matrix = IntMatrix::from_rows(rays, n);
  x.rays = std::move(rays);
  if (rank(x.p_matrix) != n) throw PreconditionError("rays do not span");
  x.class_group = cokernel(x.p_matrix);
  // free grading: rows q with q * P = 0
  x.grading = kernel_basis(x.p_matrix.transpose());
  // make rows with nonzero anticanonical degree positive in that degree
  for (std::size_t i = 0; i < x.grading.rows(); ++i) {
    Integer s = 0;
    bool neg = false;
    for (const auto& v : x.grading.row(i)) s += v;
    if (s < 0) neg = true;
    if (s == 0) {
      for (const auto& v : x.grading.row(i))
        if (v != 0) {
          neg = v < 0;
          break;
        }
    }
    if (neg)
      for (auto& v : x.grading.row(i)) v = -v;
  }
  SmithForm sf = snf(x.p_matrix);
  x.torsion_grading = IntMatrix(0, x.rays.size());
  for (std::size_t i = 0; i < std::min(sf.s.rows(), sf.s.cols()); ++i)
    if (sf.s(i, i) > 1) {
      IntVector row(sf.u.row(i).begin(), sf.u.row(i).end());
      for (auto& v : row) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), sf.s(i, i).get_mpz_t());
      x.torsion_grading.append_row(row);
    }
  return x;
}

}  // namespace detail

/// Toric variety with the given rays (no fan checks beyond primitivity and spanning).
inline ToricVarietyData variety_from_rays(std::vector<IntVector> rays) {
  if (rays.empty()) throw PreconditionError("no rays");
  std::size_t n = rays.front().size();
  ToricVarietyData x = detail::assemble(std::move(rays), n);
  x.fan_polytope = hull(x.rays);
  return x;
}

/// Weighted projective space P(w); rays follow the stored (descending) order.
inline ToricVarietyData wps(const WeightSystem& w) {
  if (!w.is_normalized()) throw WeightError("weights " + w.to_string() + " are not normalized");
  const std::size_t n = w.size();
  if (n < 2) throw WeightError("need at least two weights");
  IntMatrix row(1, n);
  for (std::size_t i = 0; i < n; ++i) row(0, i) = w[i];
  SmithForm sf = snf(row);  // u w v = e1, so rows of v minus column 0 are the rays
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.emplace_back(sf.v.row(i).begin() + 1, sf.v.row(i).end());
  ToricVarietyData x = detail::assemble(std::move(rays), n - 1);
  x.fan_polytope = hull(x.rays);
  return x;
}

/// {u : <u, n_i> >= -1 for every ray}.
inline RationalPolytope anticanonical_polytope(const ToricVarietyData& x) {
  const RationalPolytope& fan = x.fan_polytope ? *x.fan_polytope : hull(x.rays);
  if (!fan.origin_interior())
    throw PreconditionError("anticanonical polytope is unbounded: rays do not positively span");
  return polar(fan);
}

class NotCanonicalError : public PreconditionError {
 public:
  NotCanonicalError(const std::string& what, std::optional<IntVector> witness)
      : PreconditionError(what), witness(std::move(witness)) {}
  std::optional<IntVector> witness;
};

/// Toric variety given by the face fan of polar(delta2). With `checked`
/// the polar must be canonical.
inline ToricVarietyData variety_from_polytope(const RationalPolytope& delta2, bool checked = true) {
  RationalPolytope fan = polar(delta2);
  if (checked) {
    auto c = classify(fan);
    if (!c.is_canonical) {
      std::optional<IntVector> w = c.extra_interior_point;
      throw NotCanonicalError("variety_from_polytope: polar polytope is not canonical", w);
    }
  }
  std::vector<IntVector> rays;
  for (const auto& v : fan.vertices()) {
    if (!is_integral(v)) throw NotCanonicalError("variety_from_polytope: polar is not a lattice polytope", std::nullopt);
    rays.push_back(to_integer(v));
  }
  ToricVarietyData x = detail::assemble(std::move(rays), delta2.dim());
  x.fan_polytope = std::move(fan);
  x.canonical_checked = checked;
  return x;
}

/// Exponent vector <u, n_i> + 1 of the monomial for u in the anticanonical polytope.
inline IntVector monomial_exponents(const ToricVarietyData& x, std::span<const Integer> u) {
  IntVector e;
  e.reserve(x.rays.size());
  for (const auto& n : x.rays) {
    Integer v = dot<Integer, Integer>(u, n) + 1;
    if (v < 0) throw PreconditionError("monomial_exponents: point outside the anticanonical polytope");
    e.push_back(std::move(v));
  }
  return e;
}

/// Degree of an exponent vector under the free grading.
inline IntVector degree(const ToricVarietyData& x, std::span<const Integer> exps) {
  return times_column<Integer, Integer>(x.grading, exps);
}

struct QuotientResult {
  ToricVarietyData variety;       // same fan, coordinates in N'
  AbelianGroupStructure group;    // N'/N
  AbelianGroupStructure expected; // Cl(X) + N'/N
};

class ImprimitiveRayError : public PreconditionError {
 public:
  ImprimitiveRayError(const std::string& what, std::size_t ray)
      : PreconditionError(what), ray_index(ray) {}
  std::size_t ray_index;
};

/// Quotient of x by N'/N where N' is spanned by the rows (rational, in N
/// coordinates) together with N itself.
inline QuotientResult finite_quotient(const ToricVarietyData& x, const RatMatrix& n_prime_gens) {
  const std::size_t n = x.rank;
  std::vector<RatVector> gens = n_prime_gens.row_list();
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    gens.push_back(e);
  }
  Lattice np = Lattice::from_generators(gens, n);
  Lattice base = Lattice::standard(n);
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < x.rays.size(); ++i) {
    IntVector c = *np.coordinates(to_rational(x.rays[i]));
    if (!is_primitive(c))
      throw ImprimitiveRayError("finite_quotient: ray " + std::to_string(i) + " is not primitive in N'", i);
    rays.push_back(std::move(c));
  }
  QuotientResult q;
  q.variety = detail::assemble(std::move(rays), n);
  q.variety.fan_polytope = hull(q.variety.rays);
  q.group = quotient_structure(np, base);
  q.expected = x.class_group.direct_sum(q.group);
  return q;
}

inline QuotientResult finite_quotient(const ToricVarietyData& x, const IntMatrix& numerators,
                                      const Integer& denominator) {
  RatMatrix g(numerators.rows(), numerators.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = make_rational(numerators(i, j), denominator);
  return finite_quotient(x, g);
}

enum class Stratum { empty, contained_in_general_member, meets_general_member };

inline const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::empty: return "empty";
    case Stratum::contained_in_general_member: return "contained_in_general_member";
    case Stratum::meets_general_member: return "meets_general_member";
  }
  return "?";
}

struct StratumStatus {
  std::vector<std::size_t> index_set;
  Stratum status = Stratum::empty;
};

namespace detail {
inline bool common_facet(const RationalPolytope& p, const std::vector<IntVector>& pts) {
  for (const auto& f : p.facets()) {
    bool all = true;
    for (const auto& x : pts)
      if (dot<Integer, Integer>(x, f.normal) != f.offset) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}
}  // namespace detail

/// Status of the torus-invariant stratum D_I relative to the general member
/// of the family with Newton polytope delta.
inline StratumStatus stratum_status(const ToricVarietyData& x, const RationalPolytope& delta,
                                    std::vector<std::size_t> i_set) {
  if (i_set.empty()) throw PreconditionError("stratum_status: empty index set");
  for (auto i : i_set)
    if (i >= x.rays.size()) throw PreconditionError("stratum_status: ray index out of range");
  for (const auto& v : delta.vertices())
    for (const auto& n : x.rays)
      if (dot<Rational, Integer>(v, n) < -1)
        throw PreconditionError("stratum_status: delta is not contained in the anticanonical polytope");
  std::sort(i_set.begin(), i_set.end());
  std::vector<IntVector> pts;
  for (auto i : i_set) pts.push_back(x.rays[i]);
  const RationalPolytope& fan = x.fan_polytope ? *x.fan_polytope : hull(x.rays);
  StratumStatus st;
  st.index_set = i_set;
  if (!detail::common_facet(fan, pts)) {
    st.status = Stratum::empty;
    return st;
  }
  RationalPolytope dstar = polar(delta);
  st.status = detail::common_facet(dstar, pts) ? Stratum::meets_general_member
                                               : Stratum::contained_in_general_member;
  return st;
}

/// Canonicity of P(w) from the weights: the simplex conv(n_i) has a nonzero
/// interior lattice point iff some k in [2, h-1] has sum {k w_i / h} = 1
/// with no fractional part zero.
inline bool wps_is_canonical_arith(const WeightSystem& w) {
  const long h = w.sum();
  for (long k = 2; k < h; ++k) {
    long total = 0;
    bool interior = true;
    for (long wi : w.weights()) {
      long r = (k * wi) % h;
      if (r == 0) {
        interior = false;
        break;
      }
      total += r;
    }
    if (interior && total == h) return false;
  }
  return true;
}

/// Theta is a lattice polytope iff every weight divides the sum.
inline bool wps_is_gorenstein_arith(const WeightSystem& w) {
  const long h = w.sum();
  return std::all_of(w.weights().begin(), w.weights().end(), [h](long x) { return h % x == 0; });
}

}  // namespace toricy
