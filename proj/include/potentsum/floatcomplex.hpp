#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "potentsum/scalar_text.hpp"

namespace potentsum {

// Approximate backend: double-precision complex numbers with a k-th root of
// unity attached. Equality is tolerance-based, |a-b| <= eps * max(1,|a|,|b|),
// with one global eps shared by every operation.
class FloatComplex {
 public:
  FloatComplex() : v_(0.0, 0.0), k_(1) {}
  FloatComplex(std::complex<double> v, int k) : v_(v), k_(k) {}

  static double& tolerance() {
    static double eps = 1e-9;
    return eps;
  }

  static FloatComplex zero(int k) { return FloatComplex({0.0, 0.0}, k); }
  static FloatComplex one(int k) { return FloatComplex({1.0, 0.0}, k); }
  static FloatComplex omega_power(int k, long j) {
    double arg = 2.0 * std::numbers::pi * static_cast<double>(((j % k) + k) % k) / k;
    return FloatComplex(std::polar(1.0, arg), k);
  }

  std::complex<double> value() const { return v_; }
  int k() const { return k_; }

  bool is_zero() const { return std::abs(v_) <= tolerance(); }
  bool is_one() const { return *this == one(k_); }

  FloatComplex operator-() const { return {-v_, k_}; }
  FloatComplex& operator+=(const FloatComplex& o) {
    v_ += o.v_;
    return *this;
  }
  FloatComplex& operator-=(const FloatComplex& o) {
    v_ -= o.v_;
    return *this;
  }
  friend FloatComplex operator+(FloatComplex a, const FloatComplex& b) { return a += b; }
  friend FloatComplex operator-(FloatComplex a, const FloatComplex& b) { return a -= b; }
  friend FloatComplex operator*(const FloatComplex& a, const FloatComplex& b) {
    return {a.v_ * b.v_, a.k_};
  }
  friend FloatComplex operator/(const FloatComplex& a, const FloatComplex& b) {
    return a * b.inv();
  }
  friend bool operator==(const FloatComplex& a, const FloatComplex& b) {
    double scale = std::max({1.0, std::abs(a.v_), std::abs(b.v_)});
    return std::abs(a.v_ - b.v_) <= tolerance() * scale;
  }
  friend bool operator!=(const FloatComplex& a, const FloatComplex& b) { return !(a == b); }

  FloatComplex inv() const {
    if (is_zero()) throw DivisionByZeroError("inverse of (approximately) zero");
    return {1.0 / v_, k_};
  }
  FloatComplex conj() const { return {std::conj(v_), k_}; }

  static constexpr bool approximate = true;
  FloatComplex zero_like() const { return zero(k_); }
  FloatComplex one_like() const { return one(k_); }
  FloatComplex from_int_like(long v) const {
    return {std::complex<double>(static_cast<double>(v), 0.0), k_};
  }
  FloatComplex from_rational_like(const Rational& q) const {
    return {std::complex<double>(q.get_d(), 0.0), k_};
  }
  FloatComplex omega_pow_like(long j) const { return omega_power(k_, j); }
  int root_order() const { return k_; }

  std::string str() const {
    std::ostringstream out;
    out.precision(15);
    out << v_.real();
    if (v_.imag() != 0.0) out << (v_.imag() < 0 ? "-" : "+") << std::abs(v_.imag()) << "i";
    return out.str();
  }

  static FloatComplex parse(int k, const std::string& text) {
    FloatComplex r = zero(k);
    for (const auto& [coeff, power] : parse_power_terms(text)) {
      FloatComplex t = omega_power(k, power);
      r += FloatComplex(t.v_ * coeff.get_d(), k);
    }
    return r;
  }

 private:
  std::complex<double> v_;
  int k_;
};

}  // namespace potentsum
