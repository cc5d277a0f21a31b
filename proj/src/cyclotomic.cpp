#include "potentsum/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "potentsum/scalar_text.hpp"

namespace potentsum {

namespace {

// ----- dense polynomial helpers (ascending coefficients) -----

template <class T>
void poly_trim(std::vector<T>& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials; divisor must be monic here.
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  poly_trim(num);
  if (den.back() != 1) throw Error("poly_div_exact: divisor not monic");
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  if (dn < dd) throw Error("poly_div_exact: degree underflow");
  std::vector<Integer> quot(dn - dd + 1, Integer(0));
  for (int i = dn; i >= dd; --i) {
    Integer c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const Integer& c : num)
    if (c != 0) throw Error("poly_div_exact: nonzero remainder");
  return quot;
}

// ----- rational polynomial helpers for the extended Euclid -----

using QPoly = std::vector<Rational>;

int qdeg(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

QPoly qsub_scaled(QPoly a, const QPoly& b, const Rational& c, int shift) {
  // a -= c * x^shift * b
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
  return a;
}

// (quotient, remainder) over Q[x]
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  int db = qdeg(b);
  if (db < 0) throw DivisionByZeroError("polynomial division by zero");
  QPoly q(std::max<size_t>(1, a.size()), Rational(0));
  int da = qdeg(a);
  while (da >= db) {
    Rational c = a[da] / b[db];
    q[da - db] = c;
    a = qsub_scaled(std::move(a), b, c, da - db);
    da = qdeg(a);
  }
  return {q, a};
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int k) {
  if (k < 1) throw Error("cyclotomic_polynomial: k must be >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<Integer>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  std::function<const std::vector<Integer>&(int)> compute = [&](int m) -> const std::vector<Integer>& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    if (m == 1) {
      return cache.emplace(1, std::vector<Integer>{Integer(-1), Integer(1)}).first->second;
    }
    std::vector<Integer> num(m + 1, Integer(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      num = poly_div_exact(std::move(num), compute(d));
    }
    return cache.emplace(m, std::move(num)).first->second;
  };
  return compute(k);
}

// ----- CycloField -----

CycloField::CycloField(int k) : k_(k) {
  modulus_ = cyclotomic_polynomial(k);
  degree_ = static_cast<int>(modulus_.size()) - 1;
  int top = std::max(k_ - 1, 2 * degree_ - 2);
  top = std::max(top, 0);
  residues_.reserve(top + 1);
  std::vector<Integer> cur(degree_, Integer(0));
  cur[0] = 1;
  residues_.push_back(cur);
  for (int m = 1; m <= top; ++m) {
    std::vector<Integer> next(degree_, Integer(0));
    for (int i = 0; i + 1 < degree_; ++i) next[i + 1] = cur[i];
    Integer lead = cur.empty() ? Integer(0) : cur[degree_ - 1];
    if (lead != 0) {
      // x^degree == -(modulus - x^degree)
      for (int i = 0; i < degree_; ++i) next[i] -= lead * modulus_[i];
    }
    residues_.push_back(next);
    cur = residues_.back();
  }
}

std::shared_ptr<const CycloField> CycloField::get(int k) {
  if (k < 1) throw Error("CycloField: k must be >= 1");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(k);
  if (it != registry.end()) return it->second;
  auto field = std::shared_ptr<const CycloField>(new CycloField(k));
  registry.emplace(k, field);
  return field;
}

const std::vector<Integer>& CycloField::power_residue(int m) const {
  if (m < 0 || m > max_power()) throw Error("power_residue: exponent out of cached range");
  return residues_[m];
}

// ----- CycloNum -----

CycloNum::CycloNum(CycloFieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != field_->degree())
    throw Error("CycloNum: coefficient vector must have length phi(k)");
}

CycloNum CycloNum::from_int(const CycloFieldPtr& f, long v) {
  CycloNum r(f);
  r.coeffs_[0] = v;
  return r;
}

CycloNum CycloNum::from_rational(const CycloFieldPtr& f, const Rational& q) {
  CycloNum r(f);
  r.coeffs_[0] = q;
  return r;
}

CycloNum CycloNum::omega_power(const CycloFieldPtr& f, long j) {
  long k = f->k();
  long m = ((j % k) + k) % k;
  CycloNum r(f);
  const auto& res = f->power_residue(static_cast<int>(m));
  for (int i = 0; i < f->degree(); ++i) r.coeffs_[i] = res[i];
  return r;
}

void CycloNum::require_same_field(const CycloNum& o) const {
  if (field_.get() != o.field_.get())
    throw Error("mixed cyclotomic fields: Q(zeta_" + std::to_string(k()) + ") vs Q(zeta_" +
                std::to_string(o.k()) + ")");
}

bool CycloNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNum::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CycloNum::rational_part() const {
  if (!is_rational()) throw Error("rational_part of a non-rational cyclotomic number");
  return coeffs_[0];
}

CycloNum CycloNum::operator-() const {
  CycloNum r(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  require_same_field(o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  require_same_field(o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  a.require_same_field(b);
  const auto& f = a.field_;
  int d = f->degree();
  std::vector<Rational> conv(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coeffs_[j] == 0) continue;
      conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  CycloNum r(f);
  for (int i = 0; i < d; ++i) r.coeffs_[i] = conv[i];
  for (int m = d; m < 2 * d - 1; ++m) {
    if (conv[m] == 0) continue;
    const auto& res = f->power_residue(m);
    for (int i = 0; i < d; ++i) r.coeffs_[i] += conv[m] * res[i];
  }
  return r;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  a.require_same_field(b);
  return a.coeffs_ == b.coeffs_;
}

CycloNum CycloNum::scaled(const Rational& q) const {
  CycloNum r(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * q;
  return r;
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero in Q(zeta_" + std::to_string(k()) + ")");
  int d = field_->degree();
  QPoly a(coeffs_);
  QPoly phi(d + 1);
  for (int i = 0; i <= d; ++i) phi[i] = Rational(field_->modulus()[i]);

  // extended Euclid: u*a + v*phi = gcd; gcd is a nonzero constant since phi is
  // irreducible and a != 0 has degree < d.
  QPoly r0 = phi, r1 = a;
  QPoly u0{Rational(0)}, u1{Rational(1)};
  while (qdeg(r1) > 0) {
    auto [q, r2] = qdivmod(r0, r1);
    QPoly u2 = u0;
    // u2 = u0 - q*u1
    {
      int dq = qdeg(q);
      for (int i = 0; i <= dq; ++i) {
        if (q[i] == 0) continue;
        u2 = qsub_scaled(std::move(u2), u1, q[i], i);
      }
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (qdeg(r1) != 0) throw Error("cyclotomic inverse: unexpected gcd degree");
  Rational g = r1[qdeg(r1)];
  CycloNum out(field_);
  for (int i = 0; i < d && i < static_cast<int>(u1.size()); ++i) out.coeffs_[i] = u1[i] / g;
  return out;
}

CycloNum CycloNum::conj() const {
  int d = field_->degree();
  long kk = k();
  CycloNum r(field_);
  for (int i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    long m = ((kk - i) % kk + kk) % kk;
    const auto& res = field_->power_residue(static_cast<int>(m));
    for (int t = 0; t < d; ++t) r.coeffs_[t] += coeffs_[i] * Rational(res[t]);
  }
  return r;
}

CycloNum CycloNum::embed_into(const CycloFieldPtr& target) const {
  long L = target->k();
  long kk = k();
  if (L % kk != 0) throw Error("embed_into: target order must be a multiple of the source order");
  long step = L / kk;
  CycloNum r(target);
  for (int i = 0; i < field_->degree(); ++i) {
    if (coeffs_[i] == 0) continue;
    long m = (step * i) % L;
    const auto& res = target->power_residue(static_cast<int>(m));
    for (int t = 0; t < target->degree(); ++t) r.coeffs_[t] += coeffs_[i] * Rational(res[t]);
  }
  return r;
}

std::string CycloNum::str() const { return format_power_terms(coeffs_); }

CycloNum CycloNum::parse(const CycloFieldPtr& f, const std::string& text) {
  CycloNum r(f);
  for (const auto& [coeff, power] : parse_power_terms(text)) {
    r += omega_power(f, power).scaled(coeff);
  }
  return r;
}

}  // namespace potentsum
