#pragma once

// Exact integer and rational linear algebra.
//
// Convention: matrices act on row vectors from the left in all normal forms
// (row Hermite form, u * m = h), and on column vectors when a matrix is read
// as a linear map (kernel_basis, solve_rational, cokernel).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricy {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
inline void gcdext(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

inline bool is_primitive(std::span<const Integer> v) { return content(v) == 1; }

inline bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

inline IntVector to_integer(std::span<const Rational> v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) {
    if (q.get_den() != 1) throw PreconditionError("vector is not integral");
    out.push_back(q.get_num());
  }
  return out;
}

inline RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

template <class A, class B>
auto dot(std::span<const A> a, std::span<const B> b) {
  using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>,
                               Rational, Integer>;
  R acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  return dot<Integer, Integer>(a, b);
}
inline Rational dot(const RatVector& a, const IntVector& b) {
  return dot<Rational, Integer>(a, b);
}
inline Rational dot(const IntVector& a, const RatVector& b) {
  return dot<Rational, Integer>(b, a);
}
inline Rational dot(const RatVector& a, const RatVector& b) {
  return dot<Rational, Rational>(a, b);
}

/// Smallest positive integer multiple of a rational vector (zero stays zero).
inline IntVector clear_denominators(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_num() * (den / q.get_den()));
  Integer g = content(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  const T* data() const noexcept { return data_.data(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> column_vector(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw PreconditionError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      std::copy(row(idx[k]).begin(), row(idx[k]).end(), m.row(k).begin());
    return m;
  }
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch in product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// Row vector times matrix.
template <class V, class T>
auto row_times(std::span<const V> v, const Matrix<T>& m) {
  using R = std::conditional_t<std::is_same_v<V, Rational> || std::is_same_v<T, Rational>,
                               Rational, Integer>;
  if (v.size() != m.rows()) throw PreconditionError("vector/matrix shape mismatch");
  std::vector<R> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

/// Matrix times column vector.
template <class T, class V>
auto times_column(const Matrix<T>& m, std::span<const V> v) {
  using R = std::conditional_t<std::is_same_v<V, Rational> || std::is_same_v<T, Rational>,
                               Rational, Integer>;
  if (v.size() != m.cols()) throw PreconditionError("matrix/vector shape mismatch");
  std::vector<R> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline bool is_integral(const RatMatrix& m) {
  return is_integral(std::span<const Rational>(m.data(), m.rows() * m.cols()));
}

inline IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw PreconditionError("matrix is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

inline IntMatrix matrix_from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  return IntMatrix::from_rows(rows, cols);
}

// ---------------------------------------------------------------------------
// Normal forms

struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
};

/// Row Hermite normal form: u unimodular, u * m = h, pivots positive,
/// entries above a pivot reduced into [0, pivot), zero rows last.
inline HermiteForm hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  Integer g, s, t, a, b, x, y;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      gcdext(h(r, c), h(i, c), g, s, t);
      a = h(r, c) / g;
      b = h(i, c) / g;
      for (std::size_t j = 0; j < cols; ++j) {
        x = h(r, j);
        y = h(i, j);
        h(r, j) = s * x + t * y;
        h(i, j) = a * y - b * x;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        x = u(r, j);
        y = u(i, j);
        u(r, j) = s * x + t * y;
        u(i, j) = a * y - b * x;
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) h(i, j) -= q * h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
inline IntMatrix hnf_basis(const IntMatrix& m) {
  IntMatrix h = hnf(m).h;
  IntMatrix out(0, m.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto r = h.row(i);
    if (std::any_of(r.begin(), r.end(), [](const Integer& x) { return x != 0; }))
      out.append_row(r);
  }
  return out;
}

struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
};

/// Smith normal form u * m * v = s with d_1 | d_2 | ... and d_i >= 0.
/// Pivots are the entries of least absolute value, ties broken by lowest
/// row and then lowest column.
inline SmithForm snf(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t rows = s.rows(), cols = s.cols();
  const std::size_t diag = std::min(rows, cols);
  Integer q;
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // least |entry| in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          if (pi == rows || mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;  // trailing block is zero
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) s(i, j) -= q * s(t, j);
        for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(t, j);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) s(i, j) -= q * s(i, t);
        for (std::size_t i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the remaining block by the pivot
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) s(t, j) += s(bad, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) += u(bad, j);
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

inline std::vector<Integer> smith_diagonal(const IntMatrix& m) {
  SmithForm f = snf(m);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(f.s(i, i));
  return d;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // each >= 2, each dividing the next

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_free() const { return invariant_factors.empty(); }

  /// Group presented by arbitrary cyclic orders (0 = infinite cyclic).
  static AbelianGroupStructure from_cyclic_orders(const std::vector<Integer>& orders) {
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = abs(orders[i]);
    AbelianGroupStructure g;
    for (const auto& x : smith_diagonal(d)) {
      if (x == 0)
        ++g.free_rank;
      else if (x > 1)
        g.invariant_factors.push_back(x);
    }
    return g;
  }

  AbelianGroupStructure direct_sum(const AbelianGroupStructure& o) const {
    std::vector<Integer> orders(free_rank + o.free_rank, Integer(0));
    orders.insert(orders.end(), invariant_factors.begin(), invariant_factors.end());
    orders.insert(orders.end(), o.invariant_factors.begin(), o.invariant_factors.end());
    return from_cyclic_orders(orders);
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const auto& d : invariant_factors) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  bool operator==(const AbelianGroupStructure&) const = default;
};

/// Structure of Z^rows / m * Z^cols.
inline AbelianGroupStructure cokernel(const IntMatrix& m) {
  AbelianGroupStructure g;
  std::size_t rank = 0;
  for (const auto& d : smith_diagonal(m)) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) g.invariant_factors.push_back(d);
  }
  g.free_rank = m.rows() - rank;
  return g;
}

// ---------------------------------------------------------------------------
// Rational elimination

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
  RatMatrix c = m;
  return rref(c).size();
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Exact x with a * x = b (x a column vector), or nullopt when the system is
/// inconsistent or its solution space is positive-dimensional.
inline std::optional<RatVector> solve_rational(const RatMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw PreconditionError("solve_rational: shape mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  if (piv.size() < a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, a.cols());
  return x;
}

inline std::optional<RatVector> solve_rational(const IntMatrix& a, std::span<const Rational> b) {
  return solve_rational(to_rational(a), b);
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline std::optional<RatMatrix> inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rows form a basis of the saturated integer kernel {x : m * x = 0}, in
/// Hermite form.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  HermiteForm f = hnf(m.transpose());
  IntMatrix k(0, m.cols());
  for (std::size_t i = 0; i < f.h.rows(); ++i) {
    auto r = f.h.row(i);
    if (std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; }))
      k.append_row(f.u.row(i));
  }
  if (k.rows() == 0) return k;
  return hnf_basis(k);
}

/// Indices of the first rows (greedy, in order) that are linearly independent.
inline std::vector<std::size_t> independent_rows(const RatMatrix& m) {
  std::vector<std::size_t> chosen;
  RatMatrix acc(0, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatMatrix trial = acc;
    trial.append_row(m.row(i));
    if (rank(trial) == trial.rows()) {
      acc = std::move(trial);
      chosen.push_back(i);
    }
  }
  return chosen;
}

inline std::vector<std::size_t> independent_rows(const IntMatrix& m) {
  return independent_rows(to_rational(m));
}

// ---------------------------------------------------------------------------
// Full-rank lattices in Q^n

/// A full-rank lattice in Q^n, stored by its canonical (Hermite) basis.
class Lattice {
 public:
  Lattice() = default;

  static Lattice standard(std::size_t n) { return Lattice(RatMatrix::identity(n)); }

  static Lattice from_generators(const std::vector<RatVector>& gens, std::size_t dim) {
    Integer den = 1;
    for (const auto& g : gens) {
      if (g.size() != dim) throw PreconditionError("lattice generator of wrong dimension");
      for (const auto& q : g) den = lcm(den, q.get_den());
    }
    IntMatrix scaled(gens.size(), dim);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) scaled(i, j) = Rational(gens[i][j] * den).get_num();
    IntMatrix basis = hnf_basis(scaled);
    if (basis.rows() != dim) throw PreconditionError("generators do not span a full-rank lattice");
    RatMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) b(i, j) = make_rational(basis(i, j), den);
    return Lattice(std::move(b));
  }

  static Lattice from_generators(const std::vector<IntVector>& gens, std::size_t dim) {
    std::vector<RatVector> r;
    for (const auto& g : gens) r.push_back(to_rational(g));
    return from_generators(r, dim);
  }

  static Lattice from_basis_rows(const IntMatrix& rows) {
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < rows.rows(); ++i) gens.push_back(to_rational(rows.row(i)));
    return from_generators(gens, rows.cols());
  }

  static Lattice from_basis_rows(const RatMatrix& rows) {
    return from_generators(rows.row_list(), rows.cols());
  }

  std::size_t dim() const noexcept { return basis_.rows(); }
  const RatMatrix& basis() const noexcept { return basis_; }
  const RatMatrix& inverse_basis() const noexcept { return inverse_; }

  /// Coordinates of x in the basis (x = c * basis), possibly non-integral.
  RatVector rational_coordinates(std::span<const Rational> x) const {
    return row_times<Rational, Rational>(x, inverse_);
  }
  RatVector rational_coordinates(std::span<const Integer> x) const {
    return row_times<Integer, Rational>(x, inverse_);
  }

  std::optional<IntVector> coordinates(std::span<const Rational> x) const {
    RatVector c = rational_coordinates(x);
    if (!is_integral(c)) return std::nullopt;
    return to_integer(c);
  }

  bool contains(std::span<const Rational> x) const { return coordinates(x).has_value(); }
  bool contains(std::span<const Integer> x) const {
    return is_integral(rational_coordinates(x));
  }

  RatVector point(std::span<const Integer> coords) const {
    return row_times<Integer, Rational>(coords, basis_);
  }

  /// {y : <x, y> in Z for all x in the lattice}.
  Lattice dual() const { return from_basis_rows(inverse_.transpose()); }

  bool is_sublattice_of(const Lattice& super) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!super.contains(basis_.row(i))) return false;
    return true;
  }

  Rational covolume() const {
    // Hermite basis is upper triangular
    Rational v = 1;
    for (std::size_t i = 0; i < dim(); ++i) v *= basis_(i, i);
    return abs(v);
  }

  bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

 private:
  explicit Lattice(RatMatrix basis) : basis_(std::move(basis)) {
    auto inv = inverse(basis_);
    if (!inv) throw PreconditionError("lattice basis is singular");
    inverse_ = std::move(*inv);
  }

  RatMatrix basis_;
  RatMatrix inverse_;
};

/// Structure of super / sub for full-rank lattices sub ⊆ super.
inline AbelianGroupStructure quotient_structure(const Lattice& super, const Lattice& sub) {
  if (!sub.is_sublattice_of(super)) throw PreconditionError("not a sublattice");
  IntMatrix coords(sub.dim(), sub.dim());
  for (std::size_t i = 0; i < sub.dim(); ++i) {
    auto c = *super.coordinates(sub.basis().row(i));
    std::copy(c.begin(), c.end(), coords.row(i).begin());
  }
  return cokernel(coords.transpose());
}

/// The unique linear map T with src[i] * T = dst[i] for all i, when the src
/// points span and the correspondence is linear; nullopt otherwise.
inline std::optional<RatMatrix> labeled_linear_map(const std::vector<RatVector>& src,
                                                   const std::vector<RatVector>& dst) {
  if (src.size() != dst.size() || src.empty()) return std::nullopt;
  const std::size_t n = src.front().size();
  RatMatrix s = RatMatrix::from_rows(src, n);
  auto idx = independent_rows(s);
  if (idx.size() != n) return std::nullopt;
  RatMatrix sb = s.select_rows(idx);
  RatMatrix db = RatMatrix::from_rows(dst, dst.front().size()).select_rows(idx);
  auto inv = inverse(sb);
  RatMatrix t = *inv * db;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (row_times<Rational, Rational>(src[i], t) != dst[i]) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------------------
// Text format: "rows cols" then rows of integers.

inline IntMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw Error("matrix: missing 'rows cols' header");
  IntMatrix m(rows, cols);
  std::string tok;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(in >> tok)) throw Error("matrix: truncated body");
      if (m(i, j).set_str(tok, 10) != 0) throw Error("matrix: bad integer '" + tok + "'");
    }
  return m;
}

inline void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline std::string to_string(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

}  // namespace toricy
