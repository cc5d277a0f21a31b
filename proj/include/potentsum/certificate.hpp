#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "potentsum/cyclotomic.hpp"
#include "potentsum/matrix.hpp"

namespace potentsum {

// Certificate for potent-sum decompositions: F(x) = sum a_j x^j with
// nonnegative integer coefficients in the redundant power basis 1..w^{k-1},
// F(omega) = target trace and F(1) >= rank bound.
struct TraceCertificate {
  int k = 1;
  std::vector<long> coeffs;  // length k, nonnegative

  long f1() const {
    long s = 0;
    for (long c : coeffs) s += c;
    return s;
  }
  int groups() const {
    int g = 0;
    for (long c : coeffs)
      if (c != 0) ++g;
    return g;
  }
  // F evaluated at the root of unity of order k inside `field`
  // (requires k | field->k()).
  CycloNum value_in(const CycloFieldPtr& field) const;
  std::string str() const;  // e.g. "3 + 2*x^2"
};

struct MultiRootBand {
  int beta = 2;                // root order
  std::vector<long> coeffs;    // length beta, coeffs[0] == 0
  long f1() const {
    long s = 0;
    for (long c : coeffs) s += c;
    return s;
  }
};

// Multi-root certificate: a0 + sum_i F_i(omega_i) with distinct root orders.
struct MultiRootCertificate {
  long a0 = 0;
  std::vector<MultiRootBand> bands;
  long total_f1() const {
    long s = a0;
    for (const auto& b : bands) s += b.f1();
    return s;
  }
};

// Signed (linear-combination) certificate. Stored coefficients are nonzero;
// rational values are allowed so traces like 4 - 9/2 w + 25/4 w^2 certify.
struct SignedCertificate {
  int k = 1;
  std::map<long, Rational> coeffs;  // power -> nonzero coefficient

  Rational module() const {  // |F| = sum |a_j|
    Rational s(0);
    for (const auto& [_, c] : coeffs) s += rational_abs(c);
    return s;
  }
  Rational min_abs() const;
  CycloNum value_in(const CycloFieldPtr& field) const;
};

struct MultiRootCheck {
  bool valid = false;
  std::string reason;  // empty when valid
};

// Eigenvalue-multiplicity certificate of a (k+1)-potent matrix, computed
// exactly through spectral projectors (a_j = rank of the projector onto the
// omega^j eigenspace; eigenvalue 0 is uncounted). Throws NotPotentError.
TraceCertificate extract_certificate_from_potent(const Matrix<CycloNum>& e, int k);

struct CertificateSearchOptions {
  long budget = 24;     // upper bound on F(1)
  int max_groups = -1;  // cap on nonzero coefficients (-1: unlimited)
};

// Smallest-F(1) nonnegative certificate with F(omega) = t and F(1) >= r,
// ties broken by lexicographically smallest coefficient vector. Throws
// InfeasibleError when t is not in the Z-span or no certificate fits the
// budget box.
TraceCertificate find_certificate(const CycloNum& t, int k, long r,
                                  const CertificateSearchOptions& opts = {});

MultiRootCheck verify_multiroot(const MultiRootCertificate& cert, const CycloNum& t, long r);

// Canonical signed certificate for t with |F| >= r: base coordinates plus, if
// needed, the smallest uniform shift along 1 + w + ... + w^{k-1} = 0.
SignedCertificate find_signed_certificate(const CycloNum& t, int k, const Rational& r);

}  // namespace potentsum
