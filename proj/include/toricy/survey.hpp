#pragma once

// Classification of weight systems: the F / R / Q / C buckets.

#include "toricy/hypersurface.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace toricy {

/// All non-decreasing (dim+1)-tuples with entries in [1, max_w] whose every
/// dim-subset has gcd 1, in lexicographic order.
inline std::vector<WeightSystem> enumerate_normalized_weights(std::size_t dim, long max_w) {
  if (dim < 1 || max_w < 1) throw PreconditionError("enumerate: need dim >= 1 and max_w >= 1");
  const std::size_t n = dim + 1;
  std::vector<WeightSystem> out;
  std::vector<long> w(n);
  auto rec = [&](auto&& self, std::size_t i, long lo) -> void {
    if (i == n) {
      for (std::size_t k = 0; k < n; ++k) {
        long g = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) g = std::gcd(g, w[j]);
        if (g != 1) return;
      }
      out.emplace_back(w);
      return;
    }
    for (long v = lo; v <= max_w; ++v) {
      w[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 1);
  return out;
}

enum class Bucket { F, R, Q_not_R, C_not_R_not_Q, other };

inline const char* to_string(Bucket b) {
  switch (b) {
    case Bucket::F: return "F";
    case Bucket::R: return "R";
    case Bucket::Q_not_R: return "Q&!R";
    case Bucket::C_not_R_not_Q: return "C&!R&!Q";
    case Bucket::other: return "other";
  }
  return "?";
}

struct SurveyRecord {
  WeightSystem weights;
  bool F = false;  // Theta reflexive
  bool R = false;  // hull of Theta's lattice points reflexive
  bool C = false;  // that hull canonical
  bool Q = false;  // general anticanonical member quasismooth
  Bucket bucket = Bucket::other;
  std::size_t theta_points = 0;
  std::size_t hull_vertices = 0;
  std::vector<std::string> consistency_failures;
};

inline Bucket bucket_of(bool F, bool R, bool C, bool Q) {
  if (F) return Bucket::F;
  if (R) return Bucket::R;
  if (Q) return Bucket::Q_not_R;
  if (C) return Bucket::C_not_R_not_Q;
  return Bucket::other;
}

inline SurveyRecord classify_weight_system(const WeightSystem& w) {
  SurveyRecord rec;
  rec.weights = w;
  ToricVarietyData x = wps(w);
  RationalPolytope theta = anticanonical_polytope(x);
  rec.F = theta.is_lattice();

  // Theta's lattice points from the anticanonical monomials: <u, n_i> = a_i - 1
  std::vector<IntVector> exps = anticanonical_exponents(w);
  const std::size_t n = x.rank;
  auto sel = independent_rows(x.p_matrix);
  RatMatrix psel = to_rational(x.p_matrix.select_rows(sel));
  RatMatrix pinv_t = inverse(psel)->transpose();
  std::vector<IntVector> pts;
  pts.reserve(exps.size());
  for (const auto& a : exps) {
    RatVector rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = a[sel[k]] - 1;
    pts.push_back(to_integer(row_times<Rational, Rational>(rhs, pinv_t)));
  }
  std::sort(pts.begin(), pts.end());
  rec.theta_points = pts.size();

  RationalPolytope bar = hull(pts);
  rec.hull_vertices = bar.vertices().size();
  ClassificationFlags c = classify(bar, &pts);
  rec.R = c.is_reflexive;
  rec.C = c.is_canonical;
  rec.Q = quasismooth_general_wps(w, exps).quasismooth;
  rec.bucket = bucket_of(rec.F, rec.R, rec.C, rec.Q);

  if (rec.F && !rec.R) rec.consistency_failures.push_back("F without R");
  if (rec.R && !rec.C) rec.consistency_failures.push_back("R without C");
  if (rec.Q && !rec.C) rec.consistency_failures.push_back("Q without C");
  if (rec.F != wps_is_gorenstein_arith(w)) rec.consistency_failures.push_back("Gorenstein test disagrees");
  return rec;
}

/// Classify every weight system, merging results in input order.
inline std::vector<SurveyRecord> run_survey(const std::vector<WeightSystem>& ws, unsigned jobs = 1,
                                            const std::function<void(std::size_t)>& progress = {}) {
  std::vector<SurveyRecord> out(ws.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < ws.size(); ++i) {
      out[i] = classify_weight_system(ws[i]);
      if (progress) progress(i + 1);
    }
    return out;
  }
  std::atomic<std::size_t> next{0}, finished{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= ws.size()) return;
      try {
        out[i] = classify_weight_system(ws[i]);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
      }
      std::size_t f = finished.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lk(err_mu);
        progress(f);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

struct Table1Row {
  long bound = 0;
  std::size_t F = 0, R = 0, Q_not_R = 0, C_not_R_not_Q = 0;
  bool operator==(const Table1Row&) const = default;
};

/// Cumulative counts for bounds 1..max_w from records of the full universe.
inline std::vector<Table1Row> table1_from(const std::vector<SurveyRecord>& recs, long max_w) {
  std::vector<Table1Row> rows;
  for (long b = 1; b <= max_w; ++b) {
    Table1Row r;
    r.bound = b;
    for (const auto& rec : recs) {
      if (rec.weights[0] > b) continue;
      if (rec.F) ++r.F;
      if (rec.R) ++r.R;
      if (rec.Q && !rec.R) ++r.Q_not_R;
      if (rec.C && !rec.R && !rec.Q) ++r.C_not_R_not_Q;
    }
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<Table1Row> table1(long max_w, unsigned jobs = 1) {
  return table1_from(run_survey(enumerate_normalized_weights(5, max_w), jobs), max_w);
}

struct Table2 {
  std::vector<WeightSystem> quasismooth;
  std::vector<WeightSystem> not_quasismooth;
};

/// Dimension 5, weights at most 4, bucket C and not R, split by Q.
inline Table2 table2() {
  Table2 t;
  for (const auto& rec : run_survey(enumerate_normalized_weights(5, 4))) {
    if (!rec.C || rec.R) continue;
    (rec.Q ? t.quasismooth : t.not_quasismooth).push_back(rec.weights);
  }
  return t;
}

struct Census {
  long bound = 0;
  std::size_t canonical = 0;  // P(w) has canonical singularities
  std::size_t rcq = 0;        // among those: R, C and Q
  std::size_t fano = 0;       // among those: F
};

/// Three-dimensional weighted projective spaces with canonical singularities.
inline Census dim3_census(long bound = 50, unsigned jobs = 1) {
  Census c;
  c.bound = bound;
  std::vector<WeightSystem> can;
  for (const auto& w : enumerate_normalized_weights(3, bound))
    if (wps_is_canonical_arith(w)) can.push_back(w);
  c.canonical = can.size();
  for (const auto& rec : run_survey(can, jobs)) {
    if (rec.R && rec.C && rec.Q) ++c.rcq;
    if (rec.F) ++c.fano;
  }
  return c;
}

}  // namespace toricy
