#pragma once

#include <memory>
#include <string>
#include <vector>

#include "potentsum/rational.hpp"

namespace potentsum {

// Coefficients of the k-th cyclotomic polynomial, ascending degree, monic.
// Computed by the recursive exact quotient (x^k - 1) / prod_{d|k, d<k} Phi_d.
std::vector<Integer> cyclotomic_polynomial(int k);

// Shared per-k context: Phi_k, phi(k), and the reductions of x^m mod Phi_k
// needed for products and omega powers. Instances are canonical (one per k),
// so field identity checks are pointer comparisons.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> get(int k);

  int k() const { return k_; }
  int degree() const { return degree_; }  // phi(k)
  const std::vector<Integer>& modulus() const { return modulus_; }

  // x^m mod Phi_k as integer coordinates in the power basis, 0 <= m <= max_power().
  const std::vector<Integer>& power_residue(int m) const;
  int max_power() const { return static_cast<int>(residues_.size()) - 1; }

 private:
  explicit CycloField(int k);
  int k_;
  int degree_;
  std::vector<Integer> modulus_;
  std::vector<std::vector<Integer>> residues_;
};

using CycloFieldPtr = std::shared_ptr<const CycloField>;

// Element of Q(zeta_k), exact coordinates in the power basis 1, z, ..., z^{phi(k)-1}.
// A default-constructed value is 0 in Q(zeta_1) = Q; mixed-field arithmetic throws.
class CycloNum {
 public:
  CycloNum() : CycloNum(CycloField::get(1)) {}
  explicit CycloNum(CycloFieldPtr field)
      : field_(std::move(field)), coeffs_(field_->degree(), Rational(0)) {}
  CycloNum(CycloFieldPtr field, std::vector<Rational> coeffs);

  static CycloNum zero(const CycloFieldPtr& f) { return CycloNum(f); }
  static CycloNum one(const CycloFieldPtr& f) { return from_int(f, 1); }
  static CycloNum from_int(const CycloFieldPtr& f, long v);
  static CycloNum from_rational(const CycloFieldPtr& f, const Rational& q);
  // omega^j for omega = zeta_k the fixed primitive root; j arbitrary (reduced mod k).
  static CycloNum omega_power(const CycloFieldPtr& f, long j);

  const CycloFieldPtr& field() const { return field_; }
  int k() const { return field_->k(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in Q
  Rational rational_part() const;  // requires is_rational()

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inv(); }
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  CycloNum scaled(const Rational& q) const;

  // Exact inverse via extended Euclid against Phi_k; throws on zero.
  CycloNum inv() const;
  // Complex conjugation, zeta -> zeta^{k-1}.
  CycloNum conj() const;

  // Image under zeta_k -> zeta_L^{L/k} in Q(zeta_L); requires k | L.
  CycloNum embed_into(const CycloFieldPtr& target) const;

  // Interface expected by Matrix<S> and the generic algorithms.
  static constexpr bool approximate = false;
  CycloNum zero_like() const { return CycloNum(field_); }
  CycloNum one_like() const { return from_int(field_, 1); }
  CycloNum from_int_like(long v) const { return from_int(field_, v); }
  CycloNum from_rational_like(const Rational& q) const { return from_rational(field_, q); }
  CycloNum omega_pow_like(long j) const { return omega_power(field_, j); }
  int root_order() const { return field_->k(); }

  std::string str() const;
  static CycloNum parse(const CycloFieldPtr& f, const std::string& text);

 private:
  void require_same_field(const CycloNum& o) const;
  CycloFieldPtr field_;
  std::vector<Rational> coeffs_;
};

}  // namespace potentsum
