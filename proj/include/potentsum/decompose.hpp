#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potentsum/certificate.hpp"
#include "potentsum/cyclotomic.hpp"
#include "potentsum/matrix.hpp"

namespace potentsum {

// ---------- decomposition containers ----------

enum class SummandKind { Potent, FiniteOrder, ScalarMultiple };

template <class S>
struct Summand {
  Matrix<S> matrix;  // the summand (the potent base in scalar-multiple mode)
  SummandKind kind = SummandKind::Potent;
  unsigned long order = 2;  // Potent: matrix^order = matrix; FiniteOrder: matrix^order = I
  S coefficient{};          // ScalarMultiple only
  std::string provenance;

  Matrix<S> contribution() const {
    if (kind == SummandKind::ScalarMultiple) return matrix.scaled(coefficient);
    return matrix;
  }
};

enum class DecompositionMode { Sum, LinearCombination };

struct CountReport {
  std::string label;
  long constructed = 0;
  long claimed = 0;
  std::string formula;
  bool matches() const { return constructed == claimed; }
};

template <class S>
struct Decomposition {
  Matrix<S> target;
  DecompositionMode mode = DecompositionMode::Sum;
  std::vector<Summand<S>> summands;
  bool verified = false;
  std::optional<TraceCertificate> certificate;
  std::vector<CountReport> counts;
};

// ---------- verification ----------

template <class S>
bool check_summand(const Summand<S>& s) {
  switch (s.kind) {
    case SummandKind::Potent:
      return is_kpotent(s.matrix, s.order);
    case SummandKind::FiniteOrder:
      return matpow(s.matrix, s.order) == Matrix<S>::identity(s.matrix.rows(), s.matrix.proto());
    case SummandKind::ScalarMultiple:
      return !s.coefficient.is_zero() && is_kpotent(s.matrix, s.order);
  }
  return false;
}

struct VerifyReport {
  std::vector<bool> summand_ok;
  bool sum_ok = false;
  bool ok() const {
    if (!sum_ok) return false;
    for (bool b : summand_ok)
      if (!b) return false;
    return true;
  }
};

template <class S>
VerifyReport verify_decomposition_serial(Decomposition<S>& dec) {
  VerifyReport rep;
  rep.summand_ok.resize(dec.summands.size());
  for (size_t i = 0; i < dec.summands.size(); ++i)
    rep.summand_ok[i] = check_summand(dec.summands[i]);
  Matrix<S> sum = Matrix<S>::zeros(dec.target.rows(), dec.target.cols(), dec.target.proto());
  for (const auto& s : dec.summands) sum += s.contribution();
  rep.sum_ok = (sum == dec.target);
  dec.verified = rep.ok();
  return rep;
}

// Per-summand checks are independent; this is the OpenMP variant of the
// serial reference above.
template <class S>
VerifyReport verify_decomposition(Decomposition<S>& dec) {
  VerifyReport rep;
  int n = static_cast<int>(dec.summands.size());
  rep.summand_ok.resize(n);
#ifdef _OPENMP
  std::vector<char> ok(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) ok[i] = check_summand(dec.summands[i]) ? 1 : 0;
  for (int i = 0; i < n; ++i) rep.summand_ok[i] = ok[i] != 0;
#else
  for (int i = 0; i < n; ++i) rep.summand_ok[i] = check_summand(dec.summands[i]);
#endif
  Matrix<S> sum = Matrix<S>::zeros(dec.target.rows(), dec.target.cols(), dec.target.proto());
  for (const auto& s : dec.summands) sum += s.contribution();
  rep.sum_ok = (sum == dec.target);
  dec.verified = rep.ok();
  return rep;
}

// ---------- generic building blocks (any field with a k-th root) ----------

// B = [[a, -a], [a-w, w-a]] and C = [[a, a], [w-a, w-a]]; both satisfy
// X^{k+1} = X for any k-th root of unity w (B^i = w^{i-1} B).
template <class S>
std::pair<Matrix<S>, Matrix<S>> potent_pair(const S& a, const S& root) {
  Matrix<S> b(2, 2, a.zero_like());
  b.at(0, 0) = a;
  b.at(0, 1) = -a;
  b.at(1, 0) = a - root;
  b.at(1, 1) = root - a;
  Matrix<S> c(2, 2, a.zero_like());
  c.at(0, 0) = a;
  c.at(0, 1) = a;
  c.at(1, 0) = root - a;
  c.at(1, 1) = root - a;
  return {b, c};
}

// diag(x, 2w - x) as a sum of the two matrices of potent_pair with a = x/2.
template <class S>
std::pair<Matrix<S>, Matrix<S>> potent_split_pair(const S& x, const S& root) {
  S a = x.from_rational_like(Rational(1, 2)) * x;
  return potent_pair(a, root);
}

// (wI + A) + (wI - A) block form: the pair split applied blockwise with X = wI + A.
template <class S>
std::pair<Matrix<S>, Matrix<S>> potent_split_blocks(const Matrix<S>& a) {
  a.require_square("potent_split_blocks");
  int n = a.rows();
  const S w = a.proto().omega_pow_like(1);
  const S half = a.proto().from_rational_like(Rational(1, 2));
  Matrix<S> x = Matrix<S>::identity(n, a.proto()).scaled(w) + a;  // wI + A
  Matrix<S> ah = x.scaled(half);                                  // X/2
  Matrix<S> b(2 * n, 2 * n, a.proto());
  Matrix<S> c(2 * n, 2 * n, a.proto());
  Matrix<S> wI = Matrix<S>::identity(n, a.proto()).scaled(w);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b.at(i, j) = ah.at(i, j);
      b.at(i, n + j) = -ah.at(i, j);
      b.at(n + i, j) = ah.at(i, j) - wI.at(i, j);
      b.at(n + i, n + j) = wI.at(i, j) - ah.at(i, j);
      c.at(i, j) = ah.at(i, j);
      c.at(i, n + j) = ah.at(i, j);
      c.at(n + i, j) = wI.at(i, j) - ah.at(i, j);
      c.at(n + i, n + j) = wI.at(i, j) - ah.at(i, j);
    }
  return {b, c};
}

// true when the only nonzero entries sit in a single column (single-column shape);
// the 1-based column index is reported through column_out.
template <class S>
bool is_single_column_shape(const Matrix<S>& e, int* column_out = nullptr) {
  if (!e.is_square()) return false;
  int col = -1;
  for (int j = 0; j < e.cols(); ++j) {
    bool nonzero = false;
    for (int i = 0; i < e.rows(); ++i)
      if (!e.at(i, j).is_zero()) {
        nonzero = true;
        break;
      }
    if (!nonzero) continue;
    if (col >= 0) return false;
    col = j;
  }
  if (col < 0) col = 0;  // zero matrix: any column
  if (column_out) *column_out = col + 1;
  return true;
}

// B = (1/k)(I + A + ... + A^{k-1}) for A of order k; B is idempotent, hence
// k-potent. The postcondition B^k = B is re-checked.
template <class S>
Matrix<S> potent_from_order(const Matrix<S>& a, unsigned long k) {
  a.require_square("potent_from_order");
  if (k < 1) throw Error("potent_from_order: k must be >= 1");
  Matrix<S> id = Matrix<S>::identity(a.rows(), a.proto());
  if (matpow(a, k) != id) throw NotPotentError("matrix is not of order k");
  Matrix<S> sum = id;
  Matrix<S> p = id;
  for (unsigned long i = 1; i < k; ++i) {
    p = matmul(p, a);
    sum += p;
  }
  Matrix<S> b = sum.scaled(a.proto().from_rational_like(Rational(1, static_cast<long>(k))));
  if (matpow(b, k) != b) throw Error("potent_from_order: postcondition B^k = B failed");
  return b;
}

enum class OrderVariant { RootMinusOne, OnePlusRoot };

namespace detail {
inline Integer binomial(unsigned long n, unsigned long r) {
  Integer b(1);
  for (unsigned long i = 0; i < r; ++i) {
    b *= static_cast<long>(n - i);
    b /= static_cast<long>(i + 1);
  }
  return b;
}
}  // namespace detail

// Left side of equation (1): x^{k-1} + C(k,1)x^{k-2} + ... + C(k,k-1).
template <class S>
S order_poly_binomial(const S& x, unsigned long k) {
  S acc = x.zero_like();
  S xp = x.one_like();
  for (long i = static_cast<long>(k) - 1; i >= 0; --i) {
    Rational c(detail::binomial(k, static_cast<unsigned long>(i)));
    acc += xp.from_rational_like(c) * xp;
    if (i > 0) xp = xp * x;
  }
  return acc;
}

// Left side of equation (2): x^{k-1} - C(k,1)x^{k-2} + - ... - C(k,k-1).
template <class S>
S order_poly_alternating(const S& x, unsigned long k) {
  S acc = x.zero_like();
  S xp = x.one_like();  // builds from the constant term upward
  for (long i = static_cast<long>(k) - 1; i >= 0; --i) {
    Rational c(detail::binomial(k, static_cast<unsigned long>(i)));
    if (i % 2 == 1) c = -c;
    acc += xp.from_rational_like(c) * xp;
    if (i > 0) xp = xp * x;
  }
  return acc;
}

// the k-th root of unity inside a backend whose root order is a multiple of k
template <class S>
S root_of_order(const S& proto, unsigned long k) {
  long full = proto.root_order();
  if (k < 1 || full % static_cast<long>(k) != 0)
    throw Error("backend lacks a root of unity of order " + std::to_string(k));
  return proto.omega_pow_like(full / static_cast<long>(k));
}

// Order-k matrix from a k-potent A. RootMinusOne: B = (w-1)A^{k-1} + I.
// OnePlusRoot (k even): C = (1+w)A^{k-1} - I; the minus sign makes the
// binomial telescope to w^k = 1, so C^k = I for every even k including w = -1.
template <class S>
Matrix<S> order_from_potent(const Matrix<S>& a, unsigned long k, OrderVariant variant) {
  a.require_square("order_from_potent");
  if (k < 2) throw Error("order_from_potent: k must be >= 2");
  if (!is_kpotent(a, k)) throw NotPotentError("matrix is not k-potent (A^k = A required)");
  if (variant == OrderVariant::OnePlusRoot && k % 2 != 0)
    throw UnsupportedError("variant eq2 requires even k");
  const S w = root_of_order(a.proto(), k);
  Matrix<S> akm1 = matpow(a, k - 1);
  Matrix<S> id = Matrix<S>::identity(a.rows(), a.proto());
  Matrix<S> out = variant == OrderVariant::RootMinusOne
                      ? akm1.scaled(w - w.one_like()) + id
                      : akm1.scaled(w.one_like() + w) - id;
  if (matpow(out, k) != id) throw Error("order_from_potent: postcondition B^k = I failed");
  return out;
}

// B = 2E - wI for a single-column potent E with diagonal w and even k; B^2 = w^2 I,
// so B^k = I.
template <class S>
Matrix<S> order_from_single_column(const Matrix<S>& e, unsigned long k) {
  e.require_square("order_from_single_column");
  if (k % 2 != 0) throw UnsupportedError("order_from_single_column requires even k");
  int col = 0;
  if (!is_single_column_shape(e, &col))
    throw Error("order_from_single_column: matrix is not in single-column shape");
  const S w = root_of_order(e.proto(), k);
  if (e.at(col - 1, col - 1) != w)
    throw Error("order_from_single_column: diagonal entry must be omega");
  Matrix<S> id = Matrix<S>::identity(e.rows(), e.proto());
  Matrix<S> b = e.scaled(e.proto().from_int_like(2)) - id.scaled(w);
  if (matpow(b, k) != id) throw Error("order_from_single_column: postcondition B^k = I failed");
  return b;
}

// ---------- exact-backend constructions (Q(zeta_k)) ----------

// Single nonzero column at `position` (1-based) with diagonal entry `diag`
// (must be a power of omega), `above` filling rows 1..position-1 and `below`
// rows position+1..n. Guaranteed (k+1)-potent.
Matrix<CycloNum> single_column_potent(const CycloFieldPtr& field, int n, int position,
                              const CycloNum& diag, const std::vector<CycloNum>& above,
                              const std::vector<CycloNum>& below);

// I_n (scaled by alpha) as a sum of alpha * n * (k-1) potent matrices; k even.
Decomposition<CycloNum> identity_decomposition(const CycloFieldPtr& field, int n, long alpha = 1);

// Similarity S with diag(S B S^{-1}) = d; constructive induction with a
// lookahead that avoids scalar trailing blocks.
Matrix<CycloNum> fillmore_diagonalize(const Matrix<CycloNum>& b, const std::vector<CycloNum>& d);

struct PotentSumOptions {
  long budget = 24;
};

Decomposition<CycloNum> decompose_potent_sum(const Matrix<CycloNum>& a, int k,
                                           std::optional<TraceCertificate> cert = std::nullopt,
                                           const PotentSumOptions& opts = {});

Decomposition<CycloNum> decompose_multiroot_sum(const Matrix<CycloNum>& a,
                                           const MultiRootCertificate& cert);

// Order-k summands plus |g-m| copies of +-wI; k even.
Decomposition<CycloNum> decompose_finite_order(const Matrix<CycloNum>& a, int k,
                                               long m_budget = 64);

// Rank-1 counted construction (trace alpha*w^j, alpha > 3).
Decomposition<CycloNum> decompose_rank1(const Matrix<CycloNum>& a, int k);

// Counted construction: `alphas` holds the intended trace
// coefficients (entries are 0 or > 3); rank(A) must equal the number of
// nonzero entries.
Decomposition<CycloNum> decompose_counted_general(const Matrix<CycloNum>& a,
                                                  const std::vector<long>& alphas);

// Multi-root counted construction; every band coefficient > 3.
Decomposition<CycloNum> decompose_counted_multiroot(const Matrix<CycloNum>& a, long a0,
                                                    const std::vector<MultiRootBand>& bands);

// Linear combination: A = sum c_i E_i with potent bases E_i.
Decomposition<CycloNum> decompose_linear_combination(const Matrix<CycloNum>& a,
                                                     const SignedCertificate& cert);

}  // namespace potentsum
