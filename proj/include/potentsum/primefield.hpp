#pragma once

#include <string>

#include "potentsum/rational.hpp"

namespace potentsum {

// Optional prime-field backend F_p with a distinguished element of
// multiplicative order k. Requires k | p-1 and p > 3 (the constructions
// divide by 2 and use the diagonal shifts 2w, 3w, 5w). Not exposed through
// the CLI; exists to exercise the field-generic code paths.
class PrimeFieldScalar {
 public:
  PrimeFieldScalar() : v_(0), p_(5), k_(1), omega_(1) {}
  PrimeFieldScalar(long v, long p, long k) : p_(p), k_(k) {
    check_params(p, k);
    v_ = norm(v, p);
    omega_ = find_omega(p, k);
  }

  static PrimeFieldScalar zero(long p, long k) { return {0, p, k}; }
  static PrimeFieldScalar one(long p, long k) { return {1, p, k}; }

  long value() const { return v_; }
  long p() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  PrimeFieldScalar operator-() const { return with(p_ - v_ == p_ ? 0 : (p_ - v_) % p_); }
  PrimeFieldScalar& operator+=(const PrimeFieldScalar& o) {
    check_same(o);
    v_ = (v_ + o.v_) % p_;
    return *this;
  }
  PrimeFieldScalar& operator-=(const PrimeFieldScalar& o) {
    check_same(o);
    v_ = ((v_ - o.v_) % p_ + p_) % p_;
    return *this;
  }
  friend PrimeFieldScalar operator+(PrimeFieldScalar a, const PrimeFieldScalar& b) {
    return a += b;
  }
  friend PrimeFieldScalar operator-(PrimeFieldScalar a, const PrimeFieldScalar& b) {
    return a -= b;
  }
  friend PrimeFieldScalar operator*(const PrimeFieldScalar& a, const PrimeFieldScalar& b) {
    a.check_same(b);
    return a.with(static_cast<long>((static_cast<__int128>(a.v_) * b.v_) % a.p_));
  }
  friend PrimeFieldScalar operator/(const PrimeFieldScalar& a, const PrimeFieldScalar& b) {
    return a * b.inv();
  }
  friend bool operator==(const PrimeFieldScalar& a, const PrimeFieldScalar& b) {
    a.check_same(b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const PrimeFieldScalar& a, const PrimeFieldScalar& b) {
    return !(a == b);
  }

  PrimeFieldScalar inv() const {
    if (v_ == 0) throw DivisionByZeroError("inverse of zero in F_" + std::to_string(p_));
    return with(pow_mod(v_, p_ - 2, p_));
  }
  // Frobenius-style conjugation is trivial in the prime field.
  PrimeFieldScalar conj() const { return *this; }

  static constexpr bool approximate = false;
  PrimeFieldScalar zero_like() const { return with(0); }
  PrimeFieldScalar one_like() const { return with(1); }
  PrimeFieldScalar from_int_like(long v) const { return with(norm(v, p_)); }
  PrimeFieldScalar from_rational_like(const Rational& q) const {
    long num = norm(to_long(Integer(q.get_num())) % p_, p_);
    long den = norm(to_long(Integer(q.get_den())) % p_, p_);
    if (den == 0) throw DivisionByZeroError("rational denominator vanishes mod p");
    return with(num) * with(den).inv();
  }
  PrimeFieldScalar omega_pow_like(long j) const {
    return with(pow_mod(omega_, ((j % k_) + k_) % k_, p_));
  }
  int root_order() const { return static_cast<int>(k_); }

  std::string str() const { return std::to_string(v_); }

 private:
  PrimeFieldScalar with(long v) const {
    PrimeFieldScalar r = *this;
    r.v_ = v;
    return r;
  }
  void check_same(const PrimeFieldScalar& o) const {
    if (p_ != o.p_ || k_ != o.k_) throw Error("mixed prime-field backends");
  }
  static void check_params(long p, long k) {
    if (p <= 3) throw UnsupportedError("prime-field backend requires p > 3");
    if (k >= 1 && (p - 1) % k != 0)
      throw UnsupportedError("prime-field backend requires k | p-1");
  }
  static long norm(long v, long p) { return ((v % p) + p) % p; }
  static long pow_mod(long b, long e, long p) {
    long r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % p);
      b = static_cast<long>((static_cast<__int128>(b) * b) % p);
      e >>= 1;
    }
    return r;
  }
  static long find_omega(long p, long k) {
    if (k == 1) return 1;
    for (long a = 2; a < p; ++a) {
      long cand = pow_mod(a, (p - 1) / k, p);
      if (cand == 1) continue;
      // order of cand divides k; accept only order exactly k
      bool exact = true;
      for (long d = 1; d < k; ++d) {
        if (k % d == 0 && pow_mod(cand, d, p) == 1) {
          exact = false;
          break;
        }
      }
      if (exact) return cand;
    }
    throw UnsupportedError("no element of order k in F_p");
  }

  long v_, p_, k_, omega_;
};

}  // namespace potentsum
