// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Tolerances are exactness-based; the two timed criteria carry
// their wall-clock budgets in the pass condition.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "potentsum/colfinite.hpp"
#include "potentsum/decompose.hpp"
#include "potentsum/json_io.hpp"
#include "../tests/test_util.hpp"

using namespace potentsum;
using testutil::Rng;
using CMat = Matrix<CycloNum>;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PlantedInstance {
  CMat a;
  TraceCertificate cert;
  long rank_planted;
};

// random potent-sum instance built from a planted certificate
PlantedInstance plant_potent_sum(Rng& rng, int k, int n) {
  auto f = CycloField::get(k);
  int max_groups = std::min({k, n, 3});
  int g = 1 + static_cast<int>(rng() % max_groups);
  std::vector<int> powers(k);
  std::iota(powers.begin(), powers.end(), 0);
  for (int i = k - 1; i > 0; --i) std::swap(powers[i], powers[rng() % (i + 1)]);
  powers.resize(g);
  std::sort(powers.begin(), powers.end());

  TraceCertificate cert;
  cert.k = k;
  cert.coeffs.assign(k, 0);
  long f1 = 0;
  for (int j : powers) {
    long c = 1 + static_cast<long>(rng() % 3);
    if (f1 + c > 12) c = 1;
    cert.coeffs[j] = c;
    f1 += c;
  }

  long r = g + (f1 > g ? static_cast<long>(rng() % (std::min<long>(n, f1) - g + 1)) : 0);
  r = std::min<long>(r, n);

  // allocate r slots over the groups (1 each, extras capped by the coefficient)
  std::vector<long> alloc(powers.size(), 1);
  long extra = r - g;
  while (extra > 0) {
    bool moved = false;
    for (size_t t = 0; t < powers.size() && extra > 0; ++t) {
      if (alloc[t] < cert.coeffs[powers[t]]) {
        ++alloc[t];
        --extra;
        moved = true;
      }
    }
    if (!moved) break;
  }
  r -= extra;  // in case some capacity was unavailable

  CMat d = CMat::zeros(n, n, CycloNum(f));
  int slot = 0;
  for (size_t t = 0; t < powers.size(); ++t) {
    long total = cert.coeffs[powers[t]];
    long parts = alloc[t];
    long q = total / parts, s = total % parts;
    for (long p = 0; p < parts; ++p) {
      long value = p < s ? q + 1 : q;
      d.at(slot, slot) = CycloNum::omega_power(f, powers[t]).scaled(Rational(value));
      ++slot;
    }
  }
  for (int i = slot; i < n; ++i)
    for (int j = 0; j < slot; ++j)
      if (rng() % 2) d.at(i, j) = testutil::random_cyclo(rng, f, 2);

  CMat s = testutil::random_invertible(rng, f, n);
  return {conjugate_by(s, d), cert, static_cast<long>(slot)};
}

bool criterion1(std::string& detail) {
  auto start = Clock::now();
  Rng rng(1001);
  int done = 0;
  for (int it = 0; it < 200; ++it) {
    int k = 2 + it % 5;
    int n = 2 + static_cast<int>(rng() % 7);
    PlantedInstance inst = plant_potent_sum(rng, k, n);
    auto dec = decompose_potent_sum(inst.a, k, inst.cert);
    if (static_cast<long>(dec.summands.size()) != inst.cert.f1()) {
      detail = "summand count != F(1) at instance " + std::to_string(it);
      return false;
    }
    CMat sum = CMat::zeros(n, n, inst.a.proto());
    for (const auto& s : dec.summands) {
      if (!is_kpotent(s.matrix, static_cast<unsigned long>(k) + 1)) {
        detail = "non-potent summand at instance " + std::to_string(it);
        return false;
      }
      if (rank(s.matrix) > 1) {
        detail = "summand rank > 1 at instance " + std::to_string(it);
        return false;
      }
      sum += s.matrix;
    }
    if (sum != inst.a) {
      detail = "sum mismatch at instance " + std::to_string(it);
      return false;
    }
    ++done;
  }
  double t = elapsed(start);
  detail = std::to_string(done) + " instances in " + std::to_string(t) + " s";
  return t <= 60.0;
}

bool criterion2(std::string& detail) {
  Rng rng(1002);
  for (int it = 0; it < 200; ++it) {
    int k = 2 + it % 5;
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 6);
    CMat sum = CMat::zeros(n, n, CycloNum(f));
    std::vector<long> total(k, 0);
    for (int c = 0; c < m; ++c) {
      CMat e = testutil::random_potent(rng, f, n, k);
      TraceCertificate cert = extract_certificate_from_potent(e, k);
      for (int j = 0; j < k; ++j) total[j] += cert.coeffs[j];
      sum += e;
    }
    TraceCertificate f_sum;
    f_sum.k = k;
    f_sum.coeffs = total;
    if (f_sum.value_in(f) != sum.trace()) {
      detail = "F(omega) != trace at instance " + std::to_string(it);
      return false;
    }
    if (f_sum.f1() < rank(sum)) {
      detail = "F(1) < rank at instance " + std::to_string(it);
      return false;
    }
  }
  detail = "200 instances";
  return true;
}

bool criterion3(std::string& detail) {
  Rng rng(1003);
  const std::pair<int, int> orders[] = {{2, 3}, {2, 4}, {3, 4}};
  for (int it = 0; it < 50; ++it) {
    auto [b1, b2] = orders[it % 3];
    int big = std::lcm(b1, b2);
    auto f = CycloField::get(big);
    MultiRootCertificate cert;
    cert.a0 = static_cast<long>(rng() % 3);
    MultiRootBand band1{b1, std::vector<long>(b1, 0)};
    MultiRootBand band2{b2, std::vector<long>(b2, 0)};
    band1.coeffs[1 + static_cast<int>(rng() % (b1 - 1))] = 1 + static_cast<long>(rng() % 2);
    band2.coeffs[1 + static_cast<int>(rng() % (b2 - 1))] = 1 + static_cast<long>(rng() % 2);
    cert.bands = {band1, band2};

    // one diagonal slot per nonzero certificate group, junk below
    std::vector<CycloNum> slot_values;
    if (cert.a0 > 0) slot_values.push_back(CycloNum::from_int(f, cert.a0));
    for (const auto& band : cert.bands) {
      long step = big / band.beta;
      for (int j = 1; j < band.beta; ++j)
        if (band.coeffs[j] > 0)
          slot_values.push_back(
              CycloNum::omega_power(f, step * j).scaled(Rational(band.coeffs[j])));
    }
    int n = std::max<int>(4, static_cast<int>(slot_values.size())) + static_cast<int>(rng() % 2);
    CMat d = CMat::zeros(n, n, CycloNum(f));
    for (size_t i = 0; i < slot_values.size(); ++i)
      d.at(static_cast<int>(i), static_cast<int>(i)) = slot_values[i];
    for (size_t i = slot_values.size(); i < static_cast<size_t>(n); ++i)
      if (rng() % 2)
        d.at(static_cast<int>(i), 0) = testutil::random_cyclo(rng, f, 2);
    CMat a = conjugate_by(testutil::random_invertible(rng, f, n), d);

    auto dec = decompose_multiroot_sum(a, cert);
    CMat sum = CMat::zeros(n, n, a.proto());
    for (const auto& s : dec.summands) {
      if (!is_kpotent(s.matrix, s.order)) {
        detail = "band summand not potent of its order at instance " + std::to_string(it);
        return false;
      }
      bool order_ok = s.order == 2 || s.order == static_cast<unsigned long>(b1) + 1 ||
                      s.order == static_cast<unsigned long>(b2) + 1;
      if (!order_ok) {
        detail = "unexpected summand order at instance " + std::to_string(it);
        return false;
      }
      sum += s.matrix;
    }
    if (sum != a) {
      detail = "sum mismatch at instance " + std::to_string(it);
      return false;
    }
  }
  detail = "50 instances";
  return true;
}

bool criterion4(std::string& detail) {
  auto f3 = CycloField::get(3);
  Rng rng(1004);

  // ex1: trace 4 - 6w + 10w^2, rank 3, coefficients (4, -6, 10)
  {
    CMat b = CMat::zeros(3, 3, CycloNum(f3));
    b.at(0, 0) = CycloNum::from_int(f3, 4);
    b.at(1, 1) = CycloNum::omega_power(f3, 1).scaled(Rational(-6));
    b.at(2, 2) = CycloNum::omega_power(f3, 2).scaled(Rational(10));
    b.at(1, 0) = CycloNum::from_int(f3, 3);
    b.at(2, 0) = CycloNum::omega_power(f3, 1);
    CMat a = conjugate_by(testutil::random_invertible(rng, f3, 3), b);
    SignedCertificate cert;
    cert.k = 3;
    cert.coeffs[0] = 4;
    cert.coeffs[1] = -6;
    cert.coeffs[2] = 10;
    auto dec = decompose_linear_combination(a, cert);
    if (dec.summands.size() != 3) {
      detail = "ex1: expected 3 summands";
      return false;
    }
    bool coeffs_ok = dec.summands[0].coefficient == CycloNum::from_int(f3, 4) &&
                     dec.summands[1].coefficient == CycloNum::from_int(f3, -6) &&
                     dec.summands[2].coefficient == CycloNum::from_int(f3, 10);
    if (!coeffs_ok) {
      detail = "ex1: coefficients differ from (4, -6, 10)";
      return false;
    }
    if (!is_kpotent(dec.summands[0].matrix, 2) || !is_kpotent(dec.summands[1].matrix, 4) ||
        !is_kpotent(dec.summands[2].matrix, 4)) {
      detail = "ex1: base kinds wrong (want idempotent + two 4-potent)";
      return false;
    }
    CMat sum = CMat::zeros(3, 3, a.proto());
    for (const auto& s : dec.summands) sum += s.contribution();
    if (sum != a) {
      detail = "ex1: reconstruction failed";
      return false;
    }
  }

  // ex2: trace 4 - 9/2 w + 25/4 w^2 with rational coefficients
  {
    CMat b = CMat::zeros(3, 3, CycloNum(f3));
    b.at(0, 0) = CycloNum::from_int(f3, 4);
    b.at(1, 1) = CycloNum::omega_power(f3, 1).scaled(Rational(-9, 2));
    b.at(2, 2) = CycloNum::omega_power(f3, 2).scaled(Rational(25, 4));
    b.at(2, 1) = CycloNum::from_int(f3, 5);
    CMat a = conjugate_by(testutil::random_invertible(rng, f3, 3), b);
    SignedCertificate cert;
    cert.k = 3;
    cert.coeffs[0] = 4;
    cert.coeffs[1] = Rational(-9, 2);
    cert.coeffs[2] = Rational(25, 4);
    auto dec = decompose_linear_combination(a, cert);
    if (dec.summands.size() != 3 ||
        dec.summands[1].coefficient != CycloNum::from_rational(f3, Rational(-9, 2)) ||
        dec.summands[2].coefficient != CycloNum::from_rational(f3, Rational(25, 4))) {
      detail = "ex2: coefficients differ from (4, -9/2, 25/4)";
      return false;
    }
    if (!is_kpotent(dec.summands[0].matrix, 2) || !is_kpotent(dec.summands[1].matrix, 4) ||
        !is_kpotent(dec.summands[2].matrix, 4)) {
      detail = "ex2: base kinds wrong";
      return false;
    }
    CMat sum = CMat::zeros(3, 3, a.proto());
    for (const auto& s : dec.summands) sum += s.contribution();
    if (sum != a) {
      detail = "ex2: reconstruction failed";
      return false;
    }
  }
  detail = "ex1 and ex2 golden cases";
  return true;
}

bool criterion5(std::string& detail) {
  Rng rng(1005);
  // 100 random order-k matrices -> k-potent projections
  for (int it = 0; it < 100; ++it) {
    int k = 2 + it % 7;  // k <= 8
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 3);
    CMat a = testutil::random_order_k(rng, f, n, k);
    CMat b = potent_from_order(a, k);
    if (matpow(b, k) != b) {
      detail = "potent_from_order failed at instance " + std::to_string(it);
      return false;
    }
  }
  // 100 random k-potent matrices -> order-k matrices
  for (int it = 0; it < 100; ++it) {
    int k = 3 + it % 6;  // 3..8
    int big = std::lcm(k, k - 1);
    auto f = CycloField::get(big);
    int n = 2 + static_cast<int>(rng() % 2);
    CMat d = CMat::zeros(n, n, CycloNum(f));
    for (int i = 0; i < n; ++i) {
      long pick = static_cast<long>(rng() % k);
      if (pick > 0) d.at(i, i) = CycloNum::omega_power(f, (big / (k - 1)) * (pick - 1));
    }
    CMat a = conjugate_by(testutil::random_invertible(rng, f, n), d);
    CMat id = CMat::identity(n, CycloNum(f));
    CMat b1 = order_from_potent(a, k, OrderVariant::RootMinusOne);
    if (matpow(b1, k) != id) {
      detail = "eq1 output not of order k at instance " + std::to_string(it);
      return false;
    }
    if (k % 2 == 0) {
      CMat b2 = order_from_potent(a, k, OrderVariant::OnePlusRoot);
      if (matpow(b2, k) != id) {
        detail = "eq2 output not of order k at instance " + std::to_string(it);
        return false;
      }
    }
  }
  // scalar identities
  for (int k = 2; k <= 8; ++k) {
    auto f = CycloField::get(k);
    CycloNum w = CycloNum::omega_power(f, 1);
    if (!order_poly_binomial(w - CycloNum::one(f), static_cast<unsigned long>(k)).is_zero()) {
      detail = "eq1 identity failed at k=" + std::to_string(k);
      return false;
    }
  }
  for (int k : {4, 6, 8}) {  // omega != -1 needed; k=2 is the documented exception
    auto f = CycloField::get(k);
    CycloNum w = CycloNum::omega_power(f, 1);
    if (!order_poly_alternating(CycloNum::one(f) + w, static_cast<unsigned long>(k)).is_zero()) {
      detail = "eq2 identity failed at k=" + std::to_string(k);
      return false;
    }
  }
  detail = "100 + 100 conversions, both order-conversion identities";
  return true;
}

bool criterion6(std::string& detail) {
  Rng rng(1006);
  for (int it = 0; it < 50; ++it) {
    int k = 2 * (1 + it % 3);  // 2, 4, 6
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 3);
    CycloNum w = CycloNum::omega_power(f, 1);
    CMat id = CMat::identity(n, CycloNum(f));

    // planted: sum of order-k blocks 2E - wI plus a multiple of wI
    int e_count = 1 + static_cast<int>(rng() % 3);
    CMat a = CMat::zeros(n, n, CycloNum(f));
    for (int e = 0; e < e_count; ++e) {
      int pos = 1 + static_cast<int>(rng() % n);
      std::vector<CycloNum> above(pos - 1, CycloNum(f));
      std::vector<CycloNum> below(n - pos, CycloNum(f));
      for (auto& v : above)
        if (rng() % 2) v = testutil::random_cyclo(rng, f, 2);
      for (auto& v : below)
        if (rng() % 2) v = testutil::random_cyclo(rng, f, 2);
      CMat blk = single_column_potent(f, n, pos, w, above, below);
      a += blk.scaled(CycloNum::from_int(f, 2)) - id.scaled(w);
    }
    long shift = static_cast<long>(rng() % 5) - 2;
    a += id.scaled(w).scaled(Rational(shift));

    auto dec = decompose_finite_order(a, k);
    CMat sum = CMat::zeros(n, n, CycloNum(f));
    for (const auto& s : dec.summands) {
      if (matpow(s.matrix, static_cast<unsigned long>(k)) != id) {
        detail = "summand k-th power != I at instance " + std::to_string(it);
        return false;
      }
      sum += s.matrix;
    }
    if (sum != a) {
      detail = "sum mismatch at instance " + std::to_string(it);
      return false;
    }
  }
  // infeasibility (integrality of G) must be reported, never silently violated
  {
    auto f2 = CycloField::get(2);
    CMat bad = CMat::zeros(2, 2, CycloNum(f2));
    bad.at(0, 0) = CycloNum::omega_power(f2, 1);
    try {
      decompose_finite_order(bad, 2);
      detail = "infeasible instance was not reported";
      return false;
    } catch (const InfeasibleError&) {
    }
  }
  detail = "50 instances + reported infeasibility";
  return true;
}

bool criterion7(std::string& detail) {
  for (int k : {2, 4, 6}) {
    auto f = CycloField::get(k);
    for (int n = 1; n <= 5; ++n) {
      auto dec = identity_decomposition(f, n);
      if (static_cast<long>(dec.summands.size()) != static_cast<long>(n) * (k - 1)) {
        detail = "count != n(k-1) for k=" + std::to_string(k) + ", n=" + std::to_string(n);
        return false;
      }
      CMat sum = CMat::zeros(n, n, CycloNum(f));
      for (const auto& s : dec.summands) {
        if (!is_kpotent(s.matrix, static_cast<unsigned long>(k) + 1)) {
          detail = "non-potent identity summand";
          return false;
        }
        sum += s.matrix;
      }
      if (sum != CMat::identity(n, CycloNum(f))) {
        detail = "sum != I for k=" + std::to_string(k) + ", n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "k in {2,4,6}, n <= 5";
  return true;
}

Json family_spec(const std::string& which, int k) {
  if (which == "const-diag") return Json{{"family", "diagonal"}, {"k", k}, {"value", "7"}};
  if (which == "band1")
    return Json{{"family", "banded"},
                {"k", k},
                {"band", Json{{"0", Json::array({"5*w", "2"})},
                              {"1", Json::array({"1", "w"})},
                              {"-1", "1"}}}};
  if (which == "band2")
    return Json{{"family", "banded"},
                {"k", k},
                {"band", Json{{"0", "3*w"},
                              {"1", "w"},
                              {"2", Json::array({"1", "0"})},
                              {"-1", Json::array({"2", "1"})},
                              {"-2", "1"}}}};
  // staircase schedules
  std::string sched = which.substr(6);
  return Json{{"family", "staircase"},
              {"k", k},
              {"schedule", sched},
              {"diag", "4*w"},
              {"fill", Json::array({"1", "w"})}};
}

bool criterion8(std::string& detail) {
  auto start = Clock::now();
  const std::vector<std::string> families = {"const-diag", "band1",        "band2",
                                             "stair-m",    "stair-m+1", "stair-2ceil(m/2)"};
  for (int k : {2, 3, 4}) {
    for (const auto& name : families) {
      auto a = exact_family_from_json(family_spec(name, k));
      auto dec = decompose14(a);
      if (dec.summands.size() > 14) {
        detail = name + " k=" + std::to_string(k) + ": more than 14 summands";
        return false;
      }
      // entrywise reconstruction once at the largest truncation covers all N
      long big = 64;
      CMat target = truncate(dec.target, big, false).block;
      CMat sum = CMat::zeros(static_cast<int>(big), static_cast<int>(big), a.proto());
      for (const auto& s : dec.summands) sum += truncate(s, big, false).block;
      if (sum != target) {
        detail = name + " k=" + std::to_string(k) + ": reconstruction failed at N=64";
        return false;
      }
      for (long n : {8L, 16L, 32L, 64L}) {
        for (const auto& s : dec.summands) {
          auto view = truncate(s, n, true);
          if (!is_kpotent(view.block, static_cast<unsigned long>(k) + 1)) {
            detail = name + " k=" + std::to_string(k) + ": " + s.provenance() +
                     " not potent at N'=" + std::to_string(view.actual);
            return false;
          }
        }
      }
    }
  }
  double t = elapsed(start);
  detail = "18 family/k pairs, N in {8,16,32,64}, " + std::to_string(t) + " s";
  return t <= 120.0;
}

bool criterion9(std::string& detail) {
  auto f3 = CycloField::get(3);
  CycloNum w = CycloNum::omega_power(f3, 1);
  LazyMatrix<CycloNum> a(
      CycloNum(f3),
      [f3](long i, long j) {
        if (i == j) return CycloNum::from_int(f3, 6);
        if (j == i + 1 || i == j + 1) return CycloNum::one(f3);
        return CycloNum(f3);
      },
      [](long j) { return j + 1; }, StructureTag::General);
  auto split = split_upper_lower_diag(a);
  size_t upper = decompose_upper_2omega(split.t1).size();
  size_t lower = decompose_lower_3omega(split.t2).size();
  size_t diag = decompose_diagonal(split.d).size();
  (void)w;
  if (upper > 4) {
    detail = "upper path emitted " + std::to_string(upper) + " > 4";
    return false;
  }
  if (lower > 6) {
    detail = "lower path emitted " + std::to_string(lower) + " > 6";
    return false;
  }
  if (diag != 4) {
    detail = "diagonal path emitted " + std::to_string(diag) + " != 4";
    return false;
  }
  detail = "upper " + std::to_string(upper) + " <= 4, lower " + std::to_string(lower) +
           " <= 6, diagonal " + std::to_string(diag) + " = 4";
  return true;
}

bool criterion10(std::string& detail) {
  Rng rng(1010);
  int discrepancies = 0;
  // 15 rank-1 counted instances
  for (int it = 0; it < 15; ++it) {
    int k = 3 + it % 3;  // 3, 4, 5
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 3);
    long alpha = 4 + static_cast<long>(rng() % 6);
    int j = k > 2 ? 2 + static_cast<int>(rng() % (k - 2)) : 1;  // 1 < j < k
    CMat d = CMat::zeros(n, n, CycloNum(f));
    d.at(0, 0) = CycloNum::omega_power(f, j).scaled(Rational(alpha));
    CMat a = conjugate_by(testutil::random_invertible(rng, f, n), d);
    auto dec = decompose_rank1(a, k);
    CMat sum = CMat::zeros(n, n, a.proto());
    for (const auto& s : dec.summands) {
      if (!is_kpotent(s.matrix, static_cast<unsigned long>(k) + 1)) {
        detail = "rank1: non-potent summand at instance " + std::to_string(it);
        return false;
      }
      sum += s.matrix;
    }
    if (sum != a) {
      detail = "rank1: reconstruction failed at instance " + std::to_string(it);
      return false;
    }
    for (const auto& c : dec.counts)
      if (!c.matches()) ++discrepancies;
  }
  // 15 full-trace counted instances
  for (int it = 0; it < 15; ++it) {
    int k = 2 + it % 2;  // 2, 3
    auto f = CycloField::get(k);
    int n = k + 1 + static_cast<int>(rng() % 2);
    std::vector<long> alphas(k);
    CMat d = CMat::zeros(n, n, CycloNum(f));
    for (int i = 0; i < k; ++i) {
      alphas[i] = 4 + static_cast<long>(rng() % 4);
      d.at(i, i) = CycloNum::omega_power(f, i).scaled(Rational(alphas[i]));
    }
    if (rng() % 2) d.at(k, 0) = testutil::random_cyclo(rng, f, 2);
    CMat a = conjugate_by(testutil::random_invertible(rng, f, n), d);
    auto dec = decompose_counted_general(a, alphas);
    CMat sum = CMat::zeros(n, n, a.proto());
    for (const auto& s : dec.summands) {
      if (!is_kpotent(s.matrix, static_cast<unsigned long>(k) + 1)) {
        detail = "counted: non-potent summand at instance " + std::to_string(it);
        return false;
      }
      sum += s.matrix;
    }
    if (sum != a) {
      detail = "counted: reconstruction failed at instance " + std::to_string(it);
      return false;
    }
    for (const auto& c : dec.counts)
      if (!c.matches()) ++discrepancies;
  }
  detail = "30 instances verified; " + std::to_string(discrepancies) +
           " count-formula discrepancies flagged (expected, not a failure)";
  return true;
}

bool criterion11(std::string& detail) {
  Rng rng(1011);
  // conjugation invariance of potency: 500 cases
  for (int it = 0; it < 500; ++it) {
    int k = 2 + it % 4;
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 3);
    CMat e = testutil::random_potent(rng, f, n, k);
    CMat s = testutil::random_invertible(rng, f, n);
    if (!is_kpotent(conjugate_by(s, e), static_cast<unsigned long>(k) + 1)) {
      detail = "conjugation broke potency at case " + std::to_string(it);
      return false;
    }
  }
  // certificate round-trip on diagonal potents: 200 cases
  for (int it = 0; it < 200; ++it) {
    int k = 2 + it % 5;
    auto f = CycloField::get(k);
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<long> mult(k, 0);
    CMat d = CMat::zeros(n, n, CycloNum(f));
    for (int i = 0; i < n; ++i) {
      long pick = static_cast<long>(rng() % (k + 1));
      if (pick == k) continue;
      ++mult[pick];
      d.at(i, i) = CycloNum::omega_power(f, pick);
    }
    if (extract_certificate_from_potent(d, k).coeffs != mult) {
      detail = "certificate round-trip failed at case " + std::to_string(it);
      return false;
    }
  }
  // field axioms in Q(zeta_k), k <= 12: 10^4 triples
  int triples = 0;
  for (int k = 2; k <= 12; ++k) {
    auto f = CycloField::get(k);
    for (int it = 0; it < 910; ++it) {
      CycloNum a = testutil::random_cyclo(rng, f, 4);
      CycloNum b = testutil::random_cyclo(rng, f, 4);
      CycloNum c = testutil::random_cyclo(rng, f, 4);
      if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c ||
          (a + b) + c != a + (b + c)) {
        detail = "field axiom failed in Q(zeta_" + std::to_string(k) + ")";
        return false;
      }
      if (!a.is_zero() && a * a.inv() != CycloNum::one(f)) {
        detail = "inverse axiom failed in Q(zeta_" + std::to_string(k) + ")";
        return false;
      }
      ++triples;
    }
  }
  detail = "500 conjugations, 200 round-trips, " + std::to_string(triples) + " field triples";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Potent-sum construction (planted certificates)", criterion1},
      {2, "Potent-sum necessity (extracted certificates)", criterion2},
      {3, "Multiroot decompositions", criterion3},
      {4, "Examples ex1/ex2 golden linear combinations", criterion4},
      {5, "Order conversions and scalar identities", criterion5},
      {6, "Order-k decompositions (even k)", criterion6},
      {7, "Identity decomposition into n(k-1) summands", criterion7},
      {8, "Column-finite pipeline on parametric families", criterion8},
      {9, "Sub-counts of the column-finite paths", criterion9},
      {10, "Counted constructions with flagged count formulas", criterion10},
      {11, "Property suites (conjugation, round-trip, axioms)", criterion11},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    auto start = Clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double t = elapsed(start);
    std::printf("[%s] %2d. %s -- %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                detail.c_str(), t);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
