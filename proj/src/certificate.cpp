#include "potentsum/certificate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace potentsum {

CycloNum TraceCertificate::value_in(const CycloFieldPtr& field) const {
  if (field->k() % k != 0)
    throw Error("certificate root order does not divide the field order");
  long step = field->k() / k;
  CycloNum v(field);
  for (int j = 0; j < k; ++j) {
    if (coeffs[j] == 0) continue;
    v += CycloNum::omega_power(field, step * j).scaled(Rational(coeffs[j]));
  }
  return v;
}

std::string TraceCertificate::str() const {
  std::ostringstream out;
  bool any = false;
  for (int j = 0; j < k; ++j) {
    if (coeffs[j] == 0) continue;
    if (any) out << " + ";
    if (j == 0) {
      out << coeffs[j];
    } else {
      if (coeffs[j] != 1) out << coeffs[j] << "*";
      out << "x";
      if (j > 1) out << "^" << j;
    }
    any = true;
  }
  if (!any) return "0";
  return out.str();
}

Rational SignedCertificate::min_abs() const {
  if (coeffs.empty()) return Rational(0);
  Rational m = rational_abs(coeffs.begin()->second);
  for (const auto& [_, c] : coeffs) m = std::min(m, rational_abs(c));
  return m;
}

CycloNum SignedCertificate::value_in(const CycloFieldPtr& field) const {
  if (field->k() % k != 0)
    throw Error("certificate root order does not divide the field order");
  long step = field->k() / k;
  CycloNum v(field);
  for (const auto& [j, c] : coeffs) v += CycloNum::omega_power(field, step * j).scaled(c);
  return v;
}

TraceCertificate extract_certificate_from_potent(const Matrix<CycloNum>& e, int k) {
  e.require_square("extract_certificate_from_potent");
  if (k < 1) throw Error("extract_certificate_from_potent: k must be >= 1");
  if (!is_kpotent(e, static_cast<unsigned long>(k) + 1))
    throw NotPotentError("matrix is not (k+1)-potent");

  auto field = e.proto().field();
  if (field->k() % k != 0)
    throw Error("matrix backend lacks a k-th root of unity for the requested k");
  long step = field->k() / k;
  int n = e.rows();
  Matrix<CycloNum> id = Matrix<CycloNum>::identity(n, e.proto());

  // eigenvalue set {omega^0..omega^{k-1}, 0}
  std::vector<CycloNum> lambdas;
  for (int j = 0; j < k; ++j) lambdas.push_back(CycloNum::omega_power(field, step * j));
  lambdas.push_back(CycloNum(field));

  TraceCertificate cert;
  cert.k = k;
  cert.coeffs.assign(k, 0);
  for (int j = 0; j < k; ++j) {
    Matrix<CycloNum> proj = id;
    for (size_t i = 0; i < lambdas.size(); ++i) {
      if (static_cast<int>(i) == j) continue;
      CycloNum denom = lambdas[j] - lambdas[i];
      Matrix<CycloNum> factor = e - id.scaled(lambdas[i]);
      proj = matmul(proj, factor).scaled(denom.inv());
    }
    cert.coeffs[j] = rank(proj);
  }
  return cert;
}

namespace {

std::vector<long> canonical_integer_coords(const CycloNum& t) {
  std::vector<long> coords;
  coords.reserve(t.coeffs().size());
  for (const Rational& c : t.coeffs()) {
    if (!is_integer(c))
      throw InfeasibleError("trace is not in the Z-span of the power basis (coordinate " +
                            c.get_str() + ")");
    coords.push_back(to_long(Integer(c.get_num())));
  }
  return coords;
}

}  // namespace

TraceCertificate find_certificate(const CycloNum& t, int k, long r,
                                  const CertificateSearchOptions& opts) {
  if (k < 1) throw Error("find_certificate: k must be >= 1");
  if (t.k() != k) throw Error("find_certificate: trace lives in a different field");
  auto field = t.field();
  int d = field->degree();
  std::vector<long> tau = canonical_integer_coords(t);
  long budget = opts.budget;
  if (budget < 0) budget = 0;

  // residue rows for x^m, m = d..k-1 (head adjustment per unit of tail coord)
  std::vector<std::vector<long>> res;
  for (int m = d; m < k; ++m) {
    std::vector<long> row(d);
    for (int i = 0; i < d; ++i) row[i] = to_long(field->power_residue(m)[i]);
    res.push_back(std::move(row));
  }

  std::vector<long> best;
  long best_f1 = -1;
  std::vector<long> tail(std::max(0, k - d), 0);

  auto consider = [&](long tail_sum) {
    std::vector<long> head(tau);
    for (int m = 0; m < k - d; ++m) {
      if (tail[m] == 0) continue;
      for (int i = 0; i < d; ++i) head[i] -= tail[m] * res[m][i];
    }
    long total = tail_sum;
    for (int i = 0; i < d; ++i) {
      if (head[i] < 0) return;
      total += head[i];
    }
    if (total < r || total > budget) return;
    std::vector<long> full(head);
    full.insert(full.end(), tail.begin(), tail.end());
    if (opts.max_groups >= 0) {
      int g = 0;
      for (long c : full)
        if (c != 0) ++g;
      if (g > opts.max_groups) return;
    }
    if (best_f1 < 0 || total < best_f1 || (total == best_f1 && full < best)) {
      best_f1 = total;
      best = std::move(full);
    }
  };

  std::function<void(int, long)> dfs = [&](int pos, long used) {
    if (pos == k - d) {
      consider(used);
      return;
    }
    for (long v = 0; used + v <= budget; ++v) {
      tail[pos] = v;
      dfs(pos + 1, used + v);
    }
    tail[pos] = 0;
  };
  dfs(0, 0);

  if (best_f1 < 0)
    throw InfeasibleError("no nonnegative certificate with F(1) in [" + std::to_string(r) +
                          ", " + std::to_string(budget) + "]");
  TraceCertificate cert;
  cert.k = k;
  cert.coeffs = std::move(best);
  return cert;
}

MultiRootCheck verify_multiroot(const MultiRootCertificate& cert, const CycloNum& t, long r) {
  if (cert.a0 < 0) return {false, "a0 is negative"};
  if (cert.bands.empty() && cert.a0 == 0 && !t.is_zero())
    return {false, "empty certificate for nonzero trace"};

  long big = 1;
  for (const auto& band : cert.bands) {
    if (band.beta < 2) return {false, "root order must be >= 2"};
    if (static_cast<int>(band.coeffs.size()) != band.beta)
      return {false, "band coefficient vector must have length beta"};
    if (band.coeffs[0] != 0) return {false, "band has a nonzero constant term"};
    bool nonzero = false;
    for (long c : band.coeffs) {
      if (c < 0) return {false, "band has a negative coefficient"};
      if (c != 0) nonzero = true;
    }
    if (!nonzero) return {false, "band is identically zero"};
    big = std::lcm(big, static_cast<long>(band.beta));
  }
  for (size_t i = 0; i < cert.bands.size(); ++i)
    for (size_t j = i + 1; j < cert.bands.size(); ++j)
      if (cert.bands[i].beta == cert.bands[j].beta) return {false, "duplicate root order"};

  big = std::lcm(big, static_cast<long>(t.k()));
  auto common = CycloField::get(static_cast<int>(big));
  CycloNum total = CycloNum::from_int(common, cert.a0);
  for (const auto& band : cert.bands) {
    TraceCertificate f;
    f.k = band.beta;
    f.coeffs = band.coeffs;
    total += f.value_in(common);
  }
  if (total != t.embed_into(common)) return {false, "trace mismatch"};
  if (cert.total_f1() < r) return {false, "rank bound violated: F(1) < rank"};
  return {true, ""};
}

SignedCertificate find_signed_certificate(const CycloNum& t, int k, const Rational& r) {
  if (t.k() != k) throw Error("find_signed_certificate: trace lives in a different field");
  SignedCertificate cert;
  cert.k = k;
  const auto& coords = t.coeffs();
  for (size_t j = 0; j < coords.size(); ++j)
    if (coords[j] != 0) cert.coeffs[static_cast<long>(j)] = coords[j];

  if (cert.module() >= r && !cert.coeffs.empty()) return cert;
  if (k < 2) throw InfeasibleError("no signed certificate: field has no vanishing power sum");

  // shift all k coordinates by mu, using 1 + w + ... + w^{k-1} = 0
  for (long mu = 1; mu <= 4 * (to_long(Integer(r.get_num())) / to_long(Integer(r.get_den())) + k + 2);
       ++mu) {
    SignedCertificate shifted;
    shifted.k = k;
    bool ok = true;
    Rational mod(0);
    for (long j = 0; j < k; ++j) {
      Rational c = (j < static_cast<long>(coords.size()) ? coords[j] : Rational(0)) + mu;
      if (c == 0) {
        ok = false;
        break;
      }
      shifted.coeffs[j] = c;
      mod += rational_abs(c);
    }
    if (ok && mod >= r) return shifted;
  }
  throw InfeasibleError("no signed certificate found within the shift budget");
}

}  // namespace potentsum
