#include "potentsum/scalar_text.hpp"

#include <cctype>
#include <sstream>

namespace potentsum {

Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal, kept exact: "2.5" -> 5/2
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParseError("bad decimal literal: " + text);
    try {
      Integer num(digits);
      Integer den(1);
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      return make_rational(num, den);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad decimal literal: " + text);
    }
  }

  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(s), 1);
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + text);
  }
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return s[i];
  }
};

bool is_number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

std::string read_number(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  bool seen_slash = false;
  while (c.i < c.s.size()) {
    char ch = c.s[c.i];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      ++c.i;
    } else if (ch == '/' && !seen_slash) {
      seen_slash = true;
      ++c.i;
    } else if (std::isspace(static_cast<unsigned char>(ch)) && seen_slash &&
               c.i + 1 < c.s.size()) {
      // allow "3 / 4"
      size_t j = c.i;
      while (j < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[j]))) ++j;
      if (j < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[j]))) {
        c.i = j;
      } else {
        break;
      }
    } else {
      break;
    }
  }
  if (c.i == start) throw ParseError("expected number in scalar: " + c.s);
  return c.s.substr(start, c.i - start);
}

long read_exponent(Cursor& c) {
  c.skip_ws();
  bool neg = false;
  if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) {
    neg = c.s[c.i] == '-';
    ++c.i;
  }
  c.skip_ws();
  if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    throw ParseError("expected exponent after '^' in scalar: " + c.s);
  long v = 0;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
    v = v * 10 + (c.s[c.i] - '0');
    if (v > 1'000'000) throw ParseError("exponent too large in scalar: " + c.s);
    ++c.i;
  }
  return neg ? -v : v;
}

}  // namespace

std::vector<std::pair<Rational, long>> parse_power_terms(const std::string& text) {
  std::vector<std::pair<Rational, long>> terms;
  Cursor c{text};
  if (c.done()) throw ParseError("empty scalar literal");
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    c.skip_ws();
    if (c.s[c.i] == '+' || c.s[c.i] == '-') {
      sign = c.s[c.i] == '-' ? -1 : 1;
      ++c.i;
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms: " + text);
    }
    first = false;
    c.skip_ws();
    if (c.i >= c.s.size()) throw ParseError("dangling sign in scalar: " + text);

    Rational coeff(1);
    bool have_coeff = false;
    if (is_number_start(c.s[c.i])) {
      coeff = parse_rational(read_number(c));
      have_coeff = true;
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == '*') {
        ++c.i;
        c.skip_ws();
      }
    }
    long power = 0;
    if (c.i < c.s.size() && (c.s[c.i] == 'w' || c.s[c.i] == 'W')) {
      ++c.i;
      power = 1;
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == '^') {
        ++c.i;
        power = read_exponent(c);
      }
    } else if (!have_coeff) {
      throw ParseError("expected term in scalar: " + text);
    }
    if (sign < 0) coeff = -coeff;
    terms.emplace_back(coeff, power);
  }
  return terms;
}

std::string format_power_terms(const std::vector<Rational>& coeffs_by_power) {
  std::ostringstream out;
  bool any = false;
  for (size_t j = 0; j < coeffs_by_power.size(); ++j) {
    const Rational& c = coeffs_by_power[j];
    if (c == 0) continue;
    if (!any) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    Rational a = rational_abs(c);
    if (j == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << "*";
      out << "w";
      if (j > 1) out << "^" << j;
    }
    any = true;
  }
  if (!any) return "0";
  return out.str();
}

}  // namespace potentsum
