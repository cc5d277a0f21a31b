#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace potentsum {

// Exact arbitrary-precision scalars. mpq_class keeps values reduced with a
// positive denominator as long as arithmetic goes through its operators; the
// helpers below are the few places where raw numerator/denominator access
// needs an explicit canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct SingularError : Error {
  using Error::Error;
};
struct DivisionByZeroError : Error {
  using Error::Error;
};
struct NotPotentError : Error {
  using Error::Error;
};
struct InfeasibleError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZeroError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error("integer out of machine range: " + z.get_str());
  return z.get_si();
}

// "p", "-p/q", and decimal literals like "2.5" (parsed exactly).
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace potentsum
