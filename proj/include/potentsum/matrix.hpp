#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "potentsum/rational.hpp"

namespace potentsum {

// Dense matrix over a scalar backend S (CycloNum, FloatComplex, PrimeFieldScalar).
// Immutable value semantics in the algorithms; entries share one backend context.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, const S& fill)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, fill) {
    if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  }

  static Matrix zeros(int rows, int cols, const S& proto) {
    return Matrix(rows, cols, proto.zero_like());
  }
  static Matrix identity(int n, const S& proto) {
    Matrix m = zeros(n, n, proto);
    for (int i = 0; i < n; ++i) m.at(i, i) = proto.one_like();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const S& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  // a zero element carrying the backend context
  S proto() const { return e_.empty() ? S() : e_.front().zero_like(); }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] != b.e_[i]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix scaled(const S& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
  }
  Matrix scaled(const Rational& q) const { return scaled(proto().from_rational_like(q)); }

  Matrix transpose() const {
    Matrix r(cols_, rows_, proto());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  S trace() const {
    require_square("trace");
    S t = proto();
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_identity() const {
    if (!is_square()) return false;
    return *this == identity(rows_, proto());
  }
  bool is_diagonal() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (i != j && !at(i, j).is_zero()) return false;
    return true;
  }
  bool is_scalar_matrix() const {
    if (!is_square() || !is_diagonal()) return false;
    for (int i = 1; i < rows_; ++i)
      if (at(i, i) != at(0, 0)) return false;
    return true;
  }

  std::vector<S> column(int j) const {
    std::vector<S> v;
    v.reserve(rows_);
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }

  Matrix submatrix(int i0, int j0, int r, int c) const {
    Matrix m(r, c, proto());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
  }

  void require_square(const char* what) const {
    if (!is_square()) throw DimensionError(std::string(what) + " requires a square matrix");
  }
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::string str() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
      out << (i == 0 ? "[" : " ");
      for (int j = 0; j < cols_; ++j) out << (j ? ", " : "[") << at(i, j).str();
      out << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return out.str();
  }

 private:
  int rows_, cols_;
  std::vector<S> e_;
};

// ---------- multiplication kernels ----------

// Serial reference kernel, kept alongside the parallel one for testing and
// benchmarking. Skips exact zeros, which dominates on the sparse summands.
template <class S>
Matrix<S> matmul_serial(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  Matrix<S> c = Matrix<S>::zeros(a.rows(), b.cols(), a.proto());
  for (int i = 0; i < a.rows(); ++i) {
    for (int p = 0; p < a.cols(); ++p) {
      const S& aip = a.at(i, p);
      if constexpr (!S::approximate) {
        if (aip.is_zero()) continue;
      }
      for (int j = 0; j < b.cols(); ++j) {
        if constexpr (!S::approximate) {
          if (b.at(p, j).is_zero()) continue;
        }
        c.at(i, j) += aip * b.at(p, j);
      }
    }
  }
  return c;
}

#ifdef _OPENMP
template <class S>
Matrix<S> matmul_parallel(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  Matrix<S> c = Matrix<S>::zeros(a.rows(), b.cols(), a.proto());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.rows(); ++i) {
    for (int p = 0; p < a.cols(); ++p) {
      const S& aip = a.at(i, p);
      if constexpr (!S::approximate) {
        if (aip.is_zero()) continue;
      }
      for (int j = 0; j < b.cols(); ++j) {
        if constexpr (!S::approximate) {
          if (b.at(p, j).is_zero()) continue;
        }
        c.at(i, j) += aip * b.at(p, j);
      }
    }
  }
  return c;
}
#endif

inline constexpr long kParallelMatmulThreshold = 16L * 16L * 16L;

template <class S>
Matrix<S> matmul(const Matrix<S>& a, const Matrix<S>& b) {
#ifdef _OPENMP
  long work = static_cast<long>(a.rows()) * a.cols() * b.cols();
  if (work >= kParallelMatmulThreshold && !omp_in_parallel()) return matmul_parallel(a, b);
#endif
  return matmul_serial(a, b);
}

inline constexpr unsigned kDefaultPowCap = 64;

// Binary exponentiation; the exponent cap bounds coefficient blow-up.
template <class S>
Matrix<S> matpow(const Matrix<S>& a, unsigned long e, unsigned long cap = kDefaultPowCap) {
  a.require_square("matpow");
  if (e > cap) throw UnsupportedError("matpow: exponent exceeds cap");
  Matrix<S> result = Matrix<S>::identity(a.rows(), a.proto());
  Matrix<S> base = a;
  while (e > 0) {
    if (e & 1) result = matmul(result, base);
    e >>= 1;
    if (e > 0) base = matmul(base, base);
  }
  return result;
}

// ---------- elimination ----------

template <class S>
struct EchelonForm {
  Matrix<S> mat;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Fraction-free (Bareiss-style) elimination. Exact over the exact backends;
// the approximate backend pivots on magnitude with the eps threshold.
template <class S>
EchelonForm<S> echelon_bareiss(Matrix<S> m) {
  EchelonForm<S> out{m, {}};
  Matrix<S>& a = out.mat;
  int row = 0;
  S prev = a.proto().one_like();
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int pr = -1;
    if constexpr (S::approximate) {
      double best = 0;
      for (int i = row; i < a.rows(); ++i) {
        double mag = std::abs(a.at(i, col).value());
        if (!a.at(i, col).is_zero() && mag > best) {
          best = mag;
          pr = i;
        }
      }
    } else {
      for (int i = row; i < a.rows(); ++i) {
        if (!a.at(i, col).is_zero()) {
          pr = i;
          break;
        }
      }
    }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pr, j), a.at(row, j));
    const S pivot = a.at(row, col);
    for (int i = row + 1; i < a.rows(); ++i) {
      const S lower = a.at(i, col);
      for (int j = col + 1; j < a.cols(); ++j) {
        a.at(i, j) = (pivot * a.at(i, j) - lower * a.at(row, j)) / prev;
      }
      a.at(i, col) = a.proto();
    }
    prev = pivot;
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

template <class S>
int rank(const Matrix<S>& a) {
  return echelon_bareiss(a).rank();
}

// Basis of the right kernel; vectors v with A v = 0, exactly n - rank of them.
template <class S>
std::vector<std::vector<S>> kernel_basis(const Matrix<S>& a) {
  EchelonForm<S> ech = echelon_bareiss(a);
  const Matrix<S>& r = ech.mat;
  const S zero = a.proto();
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<S>> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(a.cols(), zero);
    v[f] = zero.one_like();
    for (int t = ech.rank() - 1; t >= 0; --t) {
      int p = ech.pivot_cols[t];
      S acc = zero;
      for (int j = p + 1; j < a.cols(); ++j) {
        if (r.at(t, j).is_zero() || v[j].is_zero()) continue;
        acc += r.at(t, j) * v[j];
      }
      v[p] = -acc / r.at(t, p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  a.require_square("inverse");
  int n = a.rows();
  Matrix<S> m = a;
  Matrix<S> inv = Matrix<S>::identity(n, a.proto());
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    if constexpr (S::approximate) {
      double best = 0;
      for (int i = col; i < n; ++i) {
        double mag = std::abs(m.at(i, col).value());
        if (!m.at(i, col).is_zero() && mag > best) {
          best = mag;
          pr = i;
        }
      }
    } else {
      for (int i = col; i < n; ++i) {
        if (!m.at(i, col).is_zero()) {
          pr = i;
          break;
        }
      }
    }
    if (pr < 0) throw SingularError("matrix is singular");
    if (pr != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(pr, j), m.at(col, j));
        std::swap(inv.at(pr, j), inv.at(col, j));
      }
    S piv = m.at(col, col).inv();
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = m.at(col, j) * piv;
      inv.at(col, j) = inv.at(col, j) * piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m.at(i, col).is_zero()) continue;
      S f = m.at(i, col);
      for (int j = 0; j < n; ++j) {
        m.at(i, j) -= f * m.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// S A S^{-1}; throws SingularError when S is not invertible.
template <class S>
Matrix<S> conjugate_by(const Matrix<S>& s, const Matrix<S>& a) {
  return matmul(matmul(s, a), inverse(s));
}

// ---------- similarity to kernel block form ----------

template <class S>
struct KernelBlockForm {
  Matrix<S> sim;    // invertible S with A = S C S^{-1}
  Matrix<S> block;  // C = S^{-1} A S, last n-lead columns zero
  int rank = 0;
  int lead = 0;  // size of the leading block A1 (>= rank when widened)
};

// Change of basis whose trailing columns are a kernel basis, so C = S^{-1} A S
// has its last n-lead columns zero. `lead` >= rank(A) pulls extra kernel
// vectors into the leading block.
template <class S>
KernelBlockForm<S> kernel_block_form(const Matrix<S>& a, int lead = -1) {
  a.require_square("kernel_block_form");
  int n = a.rows();
  auto kernel = kernel_basis(a);
  int r = n - static_cast<int>(kernel.size());
  if (lead < r) lead = r;
  if (lead > n) throw DimensionError("kernel_block_form: leading block larger than matrix");

  // complete the kernel to a basis with standard basis vectors, greedily
  std::vector<std::vector<S>> completion;
  const S zero = a.proto();
  for (int i = 0; i < n && static_cast<int>(completion.size()) < r; ++i) {
    std::vector<S> e(n, zero);
    e[i] = zero.one_like();
    Matrix<S> test(n, r + static_cast<int>(kernel.size()) + 1, zero);
    int c = 0;
    for (const auto& v : completion) {
      for (int t = 0; t < n; ++t) test.at(t, c) = v[t];
      ++c;
    }
    for (int t = 0; t < n; ++t) test.at(t, c) = e[t];
    ++c;
    for (const auto& v : kernel) {
      for (int t = 0; t < n; ++t) test.at(t, c) = v[t];
      ++c;
    }
    Matrix<S> sq = test.submatrix(0, 0, n, c);
    if (rank(sq) == c) completion.push_back(std::move(e));
  }
  if (static_cast<int>(completion.size()) != r)
    throw Error("kernel_block_form: completion failed");

  KernelBlockForm<S> out;
  out.rank = r;
  out.lead = lead;
  Matrix<S> s(n, n, zero);
  int c = 0;
  for (const auto& v : completion) {
    for (int t = 0; t < n; ++t) s.at(t, c) = v[t];
    ++c;
  }
  for (const auto& v : kernel) {
    for (int t = 0; t < n; ++t) s.at(t, c) = v[t];
    ++c;
  }
  out.sim = s;
  out.block = matmul(matmul(inverse(s), a), s);
  return out;
}

// ---------- potency predicates ----------

// true iff A^k = A (the paper's headline objects are (k+1)-potent).
template <class S>
bool is_kpotent(const Matrix<S>& a, unsigned long k) {
  a.require_square("is_kpotent");
  if (k < 1) return false;
  return matpow(a, k) == a;
}

// smallest 1 <= m <= bound with A^m = I, or nullopt.
template <class S>
std::optional<unsigned long> order_of(const Matrix<S>& a, unsigned long bound) {
  a.require_square("order_of");
  Matrix<S> id = Matrix<S>::identity(a.rows(), a.proto());
  Matrix<S> p = a;
  for (unsigned long m = 1; m <= bound; ++m) {
    if (p == id) return m;
    if (m < bound) p = matmul(p, a);
  }
  return std::nullopt;
}

}  // namespace potentsum
