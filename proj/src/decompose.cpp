#include "potentsum/decompose.hpp"

#include <algorithm>
#include <cstdlib>

namespace potentsum {

namespace {

using CMatrix = Matrix<CycloNum>;
using CVec = std::vector<CycloNum>;

CMatrix column_matrix(int n, int col, const CVec& x, const CycloNum& proto) {
  CMatrix m = CMatrix::zeros(n, n, proto);
  for (int i = 0; i < n; ++i) m.at(i, col) = x[i];
  return m;
}

CMatrix single_entry(int n, int i, int j, const CycloNum& v) {
  CMatrix m = CMatrix::zeros(n, n, v);
  m.at(i, j) = v;
  return m;
}

// place a 2x2 matrix at rows/cols (p, q)
CMatrix embed_2x2(int n, int p, int q, const CMatrix& blk, const CycloNum& proto) {
  CMatrix m = CMatrix::zeros(n, n, proto);
  m.at(p, p) = blk.at(0, 0);
  m.at(p, q) = blk.at(0, 1);
  m.at(q, p) = blk.at(1, 0);
  m.at(q, q) = blk.at(1, 1);
  return m;
}

CVec mat_vec(const CMatrix& m, const CVec& v) {
  CVec out(m.rows(), m.proto());
  for (int i = 0; i < m.rows(); ++i) {
    CycloNum acc = m.proto();
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).is_zero() || v[j].is_zero()) continue;
      acc += m.at(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

bool vectors_dependent(const CVec& u, const CVec& v) {
  int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}

bool all_equal_to(const CVec& v, const CycloNum& c, size_t from = 0) {
  for (size_t i = from; i < v.size(); ++i)
    if (v[i] != c) return false;
  return true;
}

// if `diag` is a power of omega, return the exponent
std::optional<int> root_exponent(const CycloFieldPtr& field, const CycloNum& diag) {
  for (int j = 0; j < field->k(); ++j)
    if (diag == CycloNum::omega_power(field, j)) return j;
  return std::nullopt;
}

}  // namespace

// ---------- single_column_potent ----------

Matrix<CycloNum> single_column_potent(const CycloFieldPtr& field, int n, int position,
                              const CycloNum& diag, const std::vector<CycloNum>& above,
                              const std::vector<CycloNum>& below) {
  if (n < 1 || position < 1 || position > n)
    throw DimensionError("single_column_potent: position out of range");
  if (static_cast<int>(above.size()) != position - 1 ||
      static_cast<int>(below.size()) != n - position)
    throw DimensionError("single_column_potent: above/below sizes must fill the column");
  if (!root_exponent(field, diag))
    throw Error("single_column_potent: diagonal entry is not a k-th root of unity");
  CMatrix m = CMatrix::zeros(n, n, CycloNum(field));
  int p = position - 1;
  for (int i = 0; i < p; ++i) m.at(i, p) = above[i];
  m.at(p, p) = diag;
  for (int i = p + 1; i < n; ++i) m.at(i, p) = below[i - p - 1];
  return m;
}

// ---------- identity decomposition (sign-paired diagonal blocks) ----------

Decomposition<CycloNum> identity_decomposition(const CycloFieldPtr& field, int n, long alpha) {
  int k = field->k();
  if (k < 2 || k % 2 != 0)
    throw UnsupportedError("identity decomposition requires even k (the sign pairing needs it)");
  if (n < 1 || alpha < 1) throw DimensionError("identity_decomposition: n, alpha must be >= 1");

  Decomposition<CycloNum> dec;
  CycloNum proto(field);
  dec.target = CMatrix::identity(n, proto).scaled(CycloNum::from_int(field, alpha));
  dec.mode = DecompositionMode::Sum;
  for (long rep = 0; rep < alpha; ++rep) {
    for (int i = 1; i < k; ++i) {
      CycloNum v = -CycloNum::omega_power(field, i);
      for (int j = 0; j < n; ++j) {
        Summand<CycloNum> s;
        s.matrix = single_entry(n, j, j, v);
        s.kind = SummandKind::Potent;
        s.order = static_cast<unsigned long>(k) + 1;
        s.provenance = "identity-sum";
        dec.summands.push_back(std::move(s));
      }
    }
  }
  verify_decomposition(dec);
  if (!dec.verified) throw Error("identity_decomposition: internal verification failed");
  return dec;
}

// ---------- Fillmore similarity ----------

namespace {

// candidate first basis vectors: e_0..e_{s-1}, then e_a + e_b
std::vector<CVec> fillmore_candidates(int s, const CycloNum& proto) {
  std::vector<CVec> out;
  for (int i = 0; i < s; ++i) {
    CVec v(s, proto);
    v[i] = proto.one_like();
    out.push_back(std::move(v));
  }
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) {
      CVec v(s, proto);
      v[a] = proto.one_like();
      v[b] = proto.one_like();
      out.push_back(std::move(v));
    }
  return out;
}

// basis [v, (W - d0 I)v, greedy standard extension rotated by rot], or nullopt
std::optional<CMatrix> fillmore_basis(const CMatrix& w, const CycloNum& d0, const CVec& v,
                                      int rot) {
  int s = w.rows();
  const CycloNum proto = w.proto();
  CVec w2 = mat_vec(w, v);
  for (int i = 0; i < s; ++i) w2[i] -= d0 * v[i];

  std::vector<CVec> cols{v, w2};
  for (int t = 0; t < s && static_cast<int>(cols.size()) < s; ++t) {
    int idx = (t + rot) % s;
    CVec e(s, proto);
    e[idx] = proto.one_like();
    CMatrix test(s, static_cast<int>(cols.size()) + 1, proto);
    for (size_t c = 0; c < cols.size(); ++c)
      for (int i = 0; i < s; ++i) test.at(i, static_cast<int>(c)) = cols[c][i];
    for (int i = 0; i < s; ++i) test.at(i, static_cast<int>(cols.size())) = e[i];
    if (rank(test) == static_cast<int>(cols.size()) + 1) cols.push_back(std::move(e));
  }
  if (static_cast<int>(cols.size()) != s) return std::nullopt;
  CMatrix p(s, s, proto);
  for (int c = 0; c < s; ++c)
    for (int i = 0; i < s; ++i) p.at(i, c) = cols[c][i];
  return p;
}

}  // namespace

Matrix<CycloNum> fillmore_diagonalize(const Matrix<CycloNum>& b, const std::vector<CycloNum>& d) {
  b.require_square("fillmore_diagonalize");
  int n = b.rows();
  if (static_cast<int>(d.size()) != n)
    throw DimensionError("fillmore_diagonalize: diagonal length mismatch");
  CycloNum sum = b.proto();
  for (const auto& x : d) sum += x;
  if (sum != b.trace())
    throw InfeasibleError("fillmore_diagonalize: prescribed diagonal does not sum to the trace");

  if (n > 1 && b.is_scalar_matrix() && !all_equal_to(d, b.at(0, 0)))
    throw InfeasibleError(
        "fillmore_diagonalize: scalar matrix is similar only to itself (inconsistent "
        "prescription)");

  // The induction may have to reorder the prescription: peeling a value that
  // exhausts the trailing block's rank dead-ends when nonzero values remain
  // (rank-1 B with d = (tr, x, -x, ...)). Values are processed in a feasible
  // order and the requested order is restored by a permutation similarity.
  CMatrix m = b;
  CMatrix acc = CMatrix::identity(n, b.proto());
  std::vector<int> pending(n);  // original slots not yet placed
  for (int i = 0; i < n; ++i) pending[i] = i;
  std::vector<int> placed;  // placed[t] = original slot handled at step t

  for (int i = 0; i < n; ++i) {
    int s = n - i;
    CMatrix w = m.submatrix(i, i, s, s);
    if (s == 1) {
      if (w.at(0, 0) != d[pending[0]])
        throw Error("fillmore_diagonalize: trace bookkeeping failed");
      placed.push_back(pending[0]);
      pending.clear();
      break;
    }
    if (w.is_scalar_matrix()) {
      bool all_match = true;
      for (int slot : pending)
        if (d[slot] != w.at(0, 0)) all_match = false;
      if (all_match) {
        for (int slot : pending) placed.push_back(slot);
        pending.clear();
        break;
      }
      throw Error("fillmore_diagonalize: trailing scalar block cannot take the remaining "
                  "prescription");
    }

    // candidate prescription values: distinct values of the pending slots
    std::vector<int> value_reps;
    for (size_t t = 0; t < pending.size(); ++t) {
      bool seen = false;
      for (int rep : value_reps)
        if (d[rep] == d[pending[t]]) seen = true;
      if (!seen) value_reps.push_back(pending[t]);
    }

    std::optional<CMatrix> accepted;
    int accepted_slot = -1;
    std::optional<CMatrix> fallback;
    int fallback_slot = -1;
    for (int rep : value_reps) {
      const CycloNum& d0 = d[rep];
      for (const CVec& v : fillmore_candidates(s, b.proto())) {
        CVec wv = mat_vec(w, v);
        if (vectors_dependent(wv, v)) continue;
        for (int rot = 0; rot < s && !accepted; ++rot) {
          auto p = fillmore_basis(w, d0, v, rot);
          if (!p) continue;
          if (!fallback) {
            fallback = p;
            fallback_slot = rep;
          }
          if (s - 1 >= 2) {
            CMatrix wp = matmul(matmul(inverse(*p), w), *p);
            CMatrix trailing = wp.submatrix(1, 1, s - 1, s - 1);
            if (trailing.is_scalar_matrix()) {
              bool rest_const = true;
              for (int slot : pending)
                if (slot != rep && d[slot] != trailing.at(0, 0)) rest_const = false;
              if (!rest_const) continue;  // lookahead: avoid the dead end
            }
          }
          accepted = p;
          accepted_slot = rep;
        }
        if (accepted) break;
      }
      if (accepted) break;
    }
    if (!accepted) {
      accepted = fallback;
      accepted_slot = fallback_slot;
    }
    if (!accepted) throw Error("fillmore_diagonalize: no independent direction found");

    placed.push_back(accepted_slot);
    pending.erase(std::find(pending.begin(), pending.end(), accepted_slot));

    CMatrix l = CMatrix::identity(n, b.proto());
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c) l.at(i + r, i + c) = accepted->at(r, c);
    m = matmul(matmul(inverse(l), m), l);
    acc = matmul(acc, l);
  }

  // permutation similarity restoring the requested slot order:
  // step t produced d[placed[t]] at position t; send it to position placed[t]
  CMatrix perm = CMatrix::zeros(n, n, b.proto());
  for (int t = 0; t < n; ++t) perm.at(placed[t], t) = b.proto().one_like();
  CMatrix out = matmul(perm, inverse(acc));

  CMatrix check = matmul(matmul(out, b), inverse(out));
  for (int i = 0; i < n; ++i)
    if (check.at(i, i) != d[i]) throw Error("fillmore_diagonalize: prescription not achieved");
  return out;
}

// ---------- shared column-splitting engine ----------

namespace {

struct Slot {
  long copies = 1;          // summand multiplicity (sum mode)
  CycloNum base_diag;       // unit root on the base matrix diagonal
  CycloNum coefficient;     // slot weight; slot diagonal value = coefficient * base_diag
  unsigned long potency;    // base^potency = base
  std::string provenance;
};

struct ScalarBlockSignal {
  CycloNum value;
};

std::vector<Summand<CycloNum>> run_column_split(const Matrix<CycloNum>& a,
                                                const std::vector<Slot>& slots, bool lincomb) {
  int n = a.rows();
  int lead = static_cast<int>(slots.size());
  auto kb = kernel_block_form(a, lead);
  CMatrix a1 = kb.block.submatrix(0, 0, lead, lead);

  CVec dvals;
  dvals.reserve(lead);
  for (const Slot& s : slots) dvals.push_back(s.coefficient * s.base_diag);

  CMatrix t = CMatrix::identity(lead, a.proto());
  if (lead == 1) {
    if (a1.at(0, 0) != dvals[0]) throw Error("column split: 1x1 trace mismatch");
  } else if (a1.is_scalar_matrix()) {
    if (!all_equal_to(dvals, a1.at(0, 0))) throw ScalarBlockSignal{a1.at(0, 0)};
    // prescription already achieved by the scalar block itself
  } else {
    t = fillmore_diagonalize(a1, dvals);
  }

  CMatrix l = CMatrix::identity(n, a.proto());
  for (int r = 0; r < lead; ++r)
    for (int c = 0; c < lead; ++c) l.at(r, c) = t.at(r, c);
  CMatrix linv = inverse(l);
  CMatrix c2 = matmul(matmul(l, kb.block), linv);
  CMatrix wsim = matmul(kb.sim, linv);
  CMatrix winv = matmul(l, inverse(kb.sim));

  std::vector<Summand<CycloNum>> out;
  for (int s = 0; s < lead; ++s) {
    const Slot& slot = slots[s];
    CVec x = c2.column(s);
    CycloNum inv_coeff = slot.coefficient.inv();
    for (auto& e : x) e = e * inv_coeff;
    CMatrix base = column_matrix(n, s, x, a.proto());
    if (base.at(s, s) != slot.base_diag)
      throw Error("column split: base diagonal is not the prescribed root");
    CMatrix conj = matmul(matmul(wsim, base), winv);
    if (lincomb) {
      Summand<CycloNum> sm;
      sm.matrix = std::move(conj);
      sm.kind = SummandKind::ScalarMultiple;
      sm.order = slot.potency;
      sm.coefficient = slot.coefficient;
      sm.provenance = slot.provenance;
      out.push_back(std::move(sm));
    } else {
      for (long c = 0; c < slot.copies; ++c) {
        Summand<CycloNum> sm;
        sm.matrix = conj;
        sm.kind = SummandKind::Potent;
        sm.order = slot.potency;
        sm.provenance = slot.provenance;
        out.push_back(std::move(sm));
      }
    }
  }
  return out;
}

struct Group {
  long amount = 0;          // a_j (sum mode); 1 (lincomb, weight kept separately)
  CycloNum base_diag;
  CycloNum weight;          // full coefficient of the group (lincomb)
  unsigned long potency = 2;
  std::string provenance;
  long allocated = 1;
};

// distribute `lead` slots over the groups: one each, then greedily by
// remaining capacity (sum mode) or largest |weight| (lincomb)
void allocate_slots(std::vector<Group>& groups, int lead, bool lincomb) {
  int g = static_cast<int>(groups.size());
  long rem = lead - g;
  for (auto& gr : groups) gr.allocated = 1;
  while (rem > 0) {
    int best = -1;
    if (lincomb) {
      Rational best_score(-1);
      for (int i = 0; i < g; ++i) {
        Rational score = groups[i].weight.is_rational()
                             ? rational_abs(groups[i].weight.rational_part())
                             : Rational(1);
        score /= groups[i].allocated;
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
    } else {
      long best_cap = 0;
      for (int i = 0; i < g; ++i) {
        long cap = groups[i].amount - groups[i].allocated;
        if (cap > best_cap) {
          best_cap = cap;
          best = i;
        }
      }
    }
    if (best < 0) throw InfeasibleError("cannot allocate diagonal slots (capacity exhausted)");
    ++groups[best].allocated;
    --rem;
  }
}

// split a_j into `parts` positive integers, as equal as possible, larger first
std::vector<long> equal_split(long amount, long parts) {
  std::vector<long> out;
  long q = amount / parts, s = amount % parts;
  for (long i = 0; i < s; ++i) out.push_back(q + 1);
  for (long i = s; i < parts; ++i) out.push_back(q);
  return out;
}

std::vector<Slot> slots_from_groups(const std::vector<Group>& groups, bool lincomb) {
  std::vector<Slot> slots;
  for (const Group& gr : groups) {
    if (lincomb) {
      Rational w = gr.weight.rational_part();
      for (long i = 0; i < gr.allocated; ++i) {
        Slot s;
        s.copies = 1;
        s.base_diag = gr.base_diag;
        s.coefficient = gr.base_diag.from_rational_like(w / gr.allocated);
        s.potency = gr.potency;
        s.provenance = gr.provenance;
        slots.push_back(std::move(s));
      }
    } else {
      for (long part : equal_split(gr.amount, gr.allocated)) {
        Slot s;
        s.copies = part;
        s.base_diag = gr.base_diag;
        s.coefficient = gr.base_diag.from_int_like(part);
        s.potency = gr.potency;
        s.provenance = gr.provenance;
        slots.push_back(std::move(s));
      }
    }
  }
  return slots;
}

Decomposition<CycloNum> column_split_over_leads(const Matrix<CycloNum>& a,
                                                std::vector<Group> groups, long total_f1,
                                                int min_lead, bool lincomb,
                                                DecompositionMode mode) {
  int n = a.rows();
  int g = static_cast<int>(groups.size());
  int lead_lo = std::max(min_lead, g);
  long lead_hi = lincomb ? n : std::min<long>(n, total_f1);
  std::string last_reason = "certificate needs more diagonal slots than the dimension";
  for (int lead = lead_lo; lead <= lead_hi; ++lead) {
    allocate_slots(groups, lead, lincomb);
    auto slots = slots_from_groups(groups, lincomb);
    try {
      Decomposition<CycloNum> dec;
      dec.target = a;
      dec.mode = mode;
      dec.summands = run_column_split(a, slots, lincomb);
      return dec;
    } catch (const ScalarBlockSignal& sig) {
      last_reason = "leading block is the scalar " + sig.value.str() +
                    " and cannot take the prescribed slot diagonal";
      continue;  // widen the block and retry
    }
  }
  throw InfeasibleError("construction infeasible: " + last_reason);
}

}  // namespace

// ---------- potent sums via trace certificates ----------

Decomposition<CycloNum> decompose_potent_sum(const Matrix<CycloNum>& a, int k,
                                           std::optional<TraceCertificate> cert,
                                           const PotentSumOptions& opts) {
  a.require_square("decompose_potent_sum");
  if (k < 1) throw Error("decompose_potent_sum: k must be >= 1");
  auto field = a.proto().field();
  if (field->k() % k != 0)
    throw Error("decompose_potent_sum: backend lacks a k-th root of unity");
  long step = field->k() / k;
  int n = a.rows();
  long r = rank(a);
  CycloNum t = a.trace();

  if (cert) {
    if (cert->k != k || static_cast<int>(cert->coeffs.size()) != k)
      throw Error("decompose_potent_sum: certificate has the wrong root order");
    for (long c : cert->coeffs)
      if (c < 0) throw Error("decompose_potent_sum: certificate has negative coefficients");
    if (cert->value_in(field) != t)
      throw InfeasibleError("certificate does not evaluate to the trace");
    if (cert->f1() < r) throw InfeasibleError("certificate violates F(1) >= rank(A)");
  } else {
    if (field->k() != k)
      throw Error("decompose_potent_sum: certificate search needs the backend order to equal k");
    CertificateSearchOptions copts;
    copts.budget = std::max(opts.budget, r);
    copts.max_groups = n;
    cert = find_certificate(t, k, r, copts);
  }

  Decomposition<CycloNum> dec;
  if (cert->f1() == 0) {
    // empty decomposition: only valid for the zero matrix
    if (r != 0) throw InfeasibleError("empty certificate for a nonzero matrix");
    dec.target = a;
    dec.mode = DecompositionMode::Sum;
    dec.certificate = cert;
    verify_decomposition(dec);
    return dec;
  }

  std::vector<Group> groups;
  for (int j = 0; j < k; ++j) {
    if (cert->coeffs[j] == 0) continue;
    Group g;
    g.amount = cert->coeffs[j];
    g.base_diag = CycloNum::omega_power(field, step * j);
    g.potency = static_cast<unsigned long>(k) + 1;
    g.provenance = "potent-sum/column-split";
    groups.push_back(std::move(g));
  }

  dec = column_split_over_leads(a, std::move(groups), cert->f1(), static_cast<int>(r), false,
                                DecompositionMode::Sum);
  dec.certificate = cert;
  verify_decomposition(dec);
  if (!dec.verified) throw Error("decompose_potent_sum: internal verification failed");
  return dec;
}

// ---------- multi-root potent sums ----------

Decomposition<CycloNum> decompose_multiroot_sum(const Matrix<CycloNum>& a,
                                           const MultiRootCertificate& cert) {
  a.require_square("decompose_multiroot_sum");
  auto field = a.proto().field();
  long r = rank(a);
  CycloNum t = a.trace();

  MultiRootCheck check = verify_multiroot(cert, t, r);
  if (!check.valid) throw InfeasibleError("multiroot certificate invalid: " + check.reason);
  for (const auto& band : cert.bands)
    if (field->k() % band.beta != 0)
      throw Error("decompose_multiroot_sum: backend lacks a root of order " +
                  std::to_string(band.beta));

  std::vector<Group> groups;
  long total = cert.a0;
  if (cert.a0 > 0) {
    Group g;
    g.amount = cert.a0;
    g.base_diag = CycloNum::one(field);
    g.potency = 2;  // idempotent block
    g.provenance = "multiroot/band-0";
    groups.push_back(std::move(g));
  }
  for (size_t bi = 0; bi < cert.bands.size(); ++bi) {
    const auto& band = cert.bands[bi];
    long step = field->k() / band.beta;
    for (int j = 1; j < band.beta; ++j) {
      if (band.coeffs[j] == 0) continue;
      Group g;
      g.amount = band.coeffs[j];
      g.base_diag = CycloNum::omega_power(field, step * j);
      g.potency = static_cast<unsigned long>(band.beta) + 1;
      g.provenance = "multiroot/band-" + std::to_string(bi + 1);
      groups.push_back(std::move(g));
      total += band.coeffs[j];
    }
  }
  if (groups.empty()) {
    if (r != 0) throw InfeasibleError("empty multiroot certificate for a nonzero matrix");
    Decomposition<CycloNum> dec;
    dec.target = a;
    dec.mode = DecompositionMode::Sum;
    verify_decomposition(dec);
    return dec;
  }

  Decomposition<CycloNum> dec = column_split_over_leads(a, std::move(groups), total,
                                                        static_cast<int>(r), false,
                                                        DecompositionMode::Sum);
  verify_decomposition(dec);
  if (!dec.verified) throw Error("decompose_multiroot_sum: internal verification failed");
  return dec;
}

// ---------- linear combinations ----------

Decomposition<CycloNum> decompose_linear_combination(const Matrix<CycloNum>& a,
                                                     const SignedCertificate& cert) {
  a.require_square("decompose_linear_combination");
  auto field = a.proto().field();
  int k = cert.k;
  if (field->k() % k != 0)
    throw Error("decompose_linear_combination: backend lacks a k-th root of unity");
  long step = field->k() / k;
  long r = rank(a);
  CycloNum t = a.trace();

  if (cert.coeffs.empty()) {
    if (r != 0) throw InfeasibleError("empty signed certificate for a nonzero matrix");
    Decomposition<CycloNum> dec;
    dec.target = a;
    dec.mode = DecompositionMode::LinearCombination;
    verify_decomposition(dec);
    return dec;
  }
  for (const auto& [j, c] : cert.coeffs) {
    if (c == 0) throw Error("signed certificate stores a zero coefficient");
    if (j < 0 || j >= k) throw Error("signed certificate power out of range");
  }
  if (cert.value_in(field) != t)
    throw InfeasibleError("signed certificate does not evaluate to the trace");
  if (cert.module() < r)
    throw InfeasibleError("signed certificate violates |F| >= rank(A)");

  std::vector<Group> groups;
  for (const auto& [j, c] : cert.coeffs) {
    Group g;
    g.amount = 1;
    g.base_diag = CycloNum::omega_power(field, step * j);
    g.weight = CycloNum::from_rational(field, c);
    g.potency = static_cast<unsigned long>(k) + 1;
    g.provenance = "lincomb/column";
    groups.push_back(std::move(g));
  }

  Decomposition<CycloNum> dec = column_split_over_leads(a, std::move(groups), 0,
                                                        static_cast<int>(r), true,
                                                        DecompositionMode::LinearCombination);
  verify_decomposition(dec);
  if (!dec.verified)
    throw Error("decompose_linear_combination: internal verification failed");
  return dec;
}

// ---------- finite-order decompositions (k even) ----------

Decomposition<CycloNum> decompose_finite_order(const Matrix<CycloNum>& a, int k, long m_budget) {
  a.require_square("decompose_finite_order");
  auto field = a.proto().field();
  if (field->k() != k) throw Error("decompose_finite_order: backend order must equal k");
  if (k < 2 || k % 2 != 0) throw UnsupportedError("decompose_finite_order requires even k");
  int n = a.rows();
  CycloNum t = a.trace();
  CycloNum w = CycloNum::omega_power(field, 1);

  // every building block B = 2E - wI needs E with diagonal exactly w, so the
  // shifted matrix S must have trace g*w for an integer g
  CycloNum ratio = t * w.inv();
  if (!ratio.is_rational() || !is_integer(ratio.rational_part()))
    throw InfeasibleError(
        "trace is not an integer multiple of omega; the order-k construction needs tr(A) in "
        "Z*omega");
  long c = to_long(Integer(ratio.rational_part().get_num()));

  // smallest m >= 2 - c/n with c + m*n even (so G = ((c+mn)/2) x is integral)
  auto ceil_div = [](long x, long y) { return x / y + (x % y != 0 && x > 0 ? 1 : 0); };
  long m = ceil_div(2 * n - c, n);
  long scanned = 0;
  while ((c + m * n) % 2 != 0) {
    ++m;
    if (++scanned > m_budget)
      throw InfeasibleError("no parity-compatible shift m found (G would not be integral)");
  }
  long g = (c + m * n) / 2;

  CMatrix id = CMatrix::identity(n, a.proto());
  CMatrix s = (a + id.scaled(w).scaled(Rational(m))).scaled(Rational(1, 2));
  if (s.trace() != CycloNum::omega_power(field, 1).scaled(Rational(g)))
    throw Error("decompose_finite_order: shifted trace bookkeeping failed");

  TraceCertificate gcert;
  gcert.k = k;
  gcert.coeffs.assign(k, 0);
  gcert.coeffs[1] = g;

  Decomposition<CycloNum> inner = decompose_potent_sum(s, k, gcert);

  Decomposition<CycloNum> dec;
  dec.target = a;
  dec.mode = DecompositionMode::Sum;
  dec.certificate = gcert;
  for (const auto& e : inner.summands) {
    Summand<CycloNum> b;
    b.matrix = e.matrix.scaled(a.proto().from_int_like(2)) - id.scaled(w);
    b.kind = SummandKind::FiniteOrder;
    b.order = static_cast<unsigned long>(k);
    b.provenance = "order-k/converted";
    dec.summands.push_back(std::move(b));
  }
  long residual = g - m;
  CycloNum sign_w = residual >= 0 ? w : -w;
  for (long i = 0; i < std::labs(residual); ++i) {
    Summand<CycloNum> s2;
    s2.matrix = id.scaled(sign_w);
    s2.kind = SummandKind::FiniteOrder;
    s2.order = static_cast<unsigned long>(k);
    s2.provenance = "order-k/residual";
    dec.summands.push_back(std::move(s2));
  }
  verify_decomposition(dec);
  if (!dec.verified) throw Error("decompose_finite_order: internal verification failed");
  return dec;
}

// ---------- counted constructions ----------

namespace {

long gamma_formula(long alpha) {
  return alpha % 2 == 0 ? (alpha - 2) / 2 : (alpha - 3) / 2 + 3;
}

struct CountedSlot {
  long alpha = 4;
  CycloNum root;
  unsigned long potency = 2;
  std::string label;
};

// pure two-position splitting of alpha_e * root at (p, q), alpha_e even >= 2
void emit_even_case(std::vector<Summand<CycloNum>>& out, int n, int p, int q, long alpha_e,
                    const CycloNum& root, unsigned long potency, const std::string& prov) {
  long beta = (alpha_e - 2) / 2;
  for (long i = 0; i < beta; ++i) {
    Summand<CycloNum> s1{single_entry(n, p, p, root), SummandKind::Potent, potency, {}, prov};
    Summand<CycloNum> s2{single_entry(n, q, q, root), SummandKind::Potent, potency, {}, prov};
    out.push_back(std::move(s1));
    out.push_back(std::move(s2));
  }
  CycloNum x = root.from_int_like(alpha_e - beta) * root;
  auto [bm, cm] = potent_split_pair(x, root);
  out.push_back({embed_2x2(n, p, q, bm, root.zero_like()), SummandKind::Potent, potency, {},
                 prov + "/pair-split"});
  out.push_back({embed_2x2(n, p, q, cm, root.zero_like()), SummandKind::Potent, potency, {},
                 prov + "/pair-split"});
}

// full single-position splitting of alpha * root at (p, q); alpha >= 2
void emit_rank1_pieces(std::vector<Summand<CycloNum>>& out, int n, int p, int q, long alpha,
                       const CycloNum& root, unsigned long potency, const std::string& prov) {
  if (alpha % 2 == 0) {
    emit_even_case(out, n, p, q, alpha, root, potency, prov);
  } else {
    out.push_back({single_entry(n, p, p, root), SummandKind::Potent, potency, {}, prov + "/peel"});
    emit_even_case(out, n, p, q, alpha - 1, root, potency, prov);
  }
}

Decomposition<CycloNum> counted_engine(const Matrix<CycloNum>& a,
                                       const std::vector<CountedSlot>& slots,
                                       std::vector<CountReport> reports) {
  a.require_square("counted decomposition");
  int n = a.rows();
  if (n < 2) throw DimensionError("counted decomposition requires n >= 2");
  int lead = static_cast<int>(slots.size());
  long r = rank(a);
  if (r != lead)
    throw InfeasibleError("rank(A) must equal the number of prescribed trace slots (" +
                          std::to_string(lead) + "), got " + std::to_string(r));

  auto kb = kernel_block_form(a, lead);
  CMatrix a1 = kb.block.submatrix(0, 0, lead, lead);
  CVec dvals;
  for (const auto& s : slots) dvals.push_back(s.root.from_int_like(s.alpha) * s.root);

  CMatrix t = CMatrix::identity(lead, a.proto());
  if (lead == 1) {
    if (a1.at(0, 0) != dvals[0]) throw Error("counted: 1x1 trace mismatch");
  } else if (a1.is_scalar_matrix()) {
    if (!all_equal_to(dvals, a1.at(0, 0)))
      throw InfeasibleError("counted: leading block is scalar and cannot take the slot diagonal");
  } else {
    t = fillmore_diagonalize(a1, dvals);
  }
  CMatrix l = CMatrix::identity(n, a.proto());
  for (int rr = 0; rr < lead; ++rr)
    for (int cc = 0; cc < lead; ++cc) l.at(rr, cc) = t.at(rr, cc);
  CMatrix linv = inverse(l);
  CMatrix c2 = matmul(matmul(l, kb.block), linv);
  CMatrix wsim = matmul(kb.sim, linv);
  CMatrix winv = matmul(l, inverse(kb.sim));

  std::vector<Summand<CycloNum>> block_summands;
  for (int i = 0; i < lead; ++i) {
    const CountedSlot& slot = slots[i];
    int q = (i + 1) % n;
    // one single-column summand absorbs the off-diagonal residue with unit weight
    CVec x = c2.column(i);
    x[i] = slot.root;
    block_summands.push_back({column_matrix(n, i, x, a.proto()), SummandKind::Potent,
                              slot.potency, {}, slot.label + "/absorber"});
    emit_rank1_pieces(block_summands, n, i, q, slot.alpha - 1, slot.root, slot.potency,
                      slot.label);
  }

  Decomposition<CycloNum> dec;
  dec.target = a;
  dec.mode = DecompositionMode::Sum;
  for (auto& s : block_summands) {
    s.matrix = matmul(matmul(wsim, s.matrix), winv);
    dec.summands.push_back(std::move(s));
  }
  dec.counts = std::move(reports);
  for (auto& rep : dec.counts)
    if (rep.constructed == 0) rep.constructed = static_cast<long>(dec.summands.size());
  verify_decomposition(dec);
  if (!dec.verified) throw Error("counted decomposition: internal verification failed");
  return dec;
}

}  // namespace

Decomposition<CycloNum> decompose_rank1(const Matrix<CycloNum>& a, int k) {
  a.require_square("decompose_rank1");
  auto field = a.proto().field();
  if (field->k() != k) throw Error("decompose_rank1: backend order must equal k");
  int n = a.rows();
  if (n < 2) throw DimensionError("decompose_rank1 requires n >= 2");
  if (rank(a) != 1) throw InfeasibleError("decompose_rank1: rank(A) must be 1");
  CycloNum t = a.trace();

  long alpha = 0;
  int j = -1;
  for (int jj = 1; jj < k; ++jj) {
    CycloNum q = t * CycloNum::omega_power(field, -jj);
    if (q.is_rational() && is_integer(q.rational_part())) {
      long v = to_long(Integer(q.rational_part().get_num()));
      if (v > 3) {
        alpha = v;
        j = jj;
        break;
      }
    }
  }
  if (j < 0)
    throw InfeasibleError(
        "decompose_rank1: trace must be alpha * omega^j with integer alpha > 3 and 1 <= j < k");
  CycloNum root = CycloNum::omega_power(field, j);

  // rank-1 with nonzero trace: any nonzero column is a t-eigenvector
  int col = -1;
  for (int c = 0; c < n && col < 0; ++c)
    for (int i = 0; i < n; ++i)
      if (!a.at(i, c).is_zero()) {
        col = c;
        break;
      }
  CVec u = a.column(col);
  auto kernel = kernel_basis(a);
  CMatrix s(n, n, a.proto());
  for (int i = 0; i < n; ++i) s.at(i, 0) = u[i];
  for (size_t c = 0; c < kernel.size(); ++c)
    for (int i = 0; i < n; ++i) s.at(i, static_cast<int>(c) + 1) = kernel[c][i];
  CMatrix sinv = inverse(s);
  CMatrix d = matmul(matmul(sinv, a), s);
  CVec expected(n, a.proto());
  expected[0] = root.from_int_like(alpha) * root;
  if (d != column_matrix(n, 0, expected, a.proto()))
    throw Error("decompose_rank1: diagonalization failed");

  std::vector<Summand<CycloNum>> pieces;
  emit_rank1_pieces(pieces, n, 0, 1, alpha, root, static_cast<unsigned long>(k) + 1, "rank1");

  Decomposition<CycloNum> dec;
  dec.target = a;
  dec.mode = DecompositionMode::Sum;
  for (auto& p : pieces) {
    p.matrix = matmul(matmul(s, p.matrix), sinv);
    dec.summands.push_back(std::move(p));
  }
  CountReport rep;
  rep.label = "rank1";
  rep.constructed = static_cast<long>(dec.summands.size());
  rep.claimed = alpha % 2 == 0 ? (alpha - 2) / 2 + 2 : (alpha - 3) / 2 + 3;
  rep.formula = alpha % 2 == 0 ? "(alpha-2)/2 + 2" : "(alpha-3)/2 + 3";
  dec.counts.push_back(rep);
  verify_decomposition(dec);
  if (!dec.verified) throw Error("decompose_rank1: internal verification failed");
  return dec;
}

Decomposition<CycloNum> decompose_counted_general(const Matrix<CycloNum>& a,
                                                  const std::vector<long>& alphas) {
  auto field = a.proto().field();
  int k = field->k();
  if (static_cast<int>(alphas.size()) != k)
    throw Error("decompose_counted_general: need one coefficient per power 0..k-1");

  CycloNum t(field);
  std::vector<CountedSlot> slots;
  long gamma_sum = 0;
  int zeros = 0;
  for (int i = 0; i < k; ++i) {
    if (alphas[i] == 0) {
      ++zeros;
      continue;
    }
    if (alphas[i] <= 3)
      throw InfeasibleError("decompose_counted_general: every nonzero coefficient must be > 3");
    CountedSlot s;
    s.alpha = alphas[i];
    s.root = CycloNum::omega_power(field, i);
    s.potency = static_cast<unsigned long>(k) + 1;
    s.label = "counted/slot-" + std::to_string(i);
    gamma_sum += gamma_formula(alphas[i]);
    t += s.root.from_int_like(alphas[i]) * s.root;
    slots.push_back(std::move(s));
  }
  if (t != a.trace())
    throw InfeasibleError("decompose_counted_general: coefficients do not sum to the trace");

  CountReport rep;
  rep.label = zeros == 0 ? "counted" : "counted-sparse";
  if (zeros == 0) {
    rep.claimed = (gamma_sum + 2) * k;
    rep.formula = "(sum gamma_i + 2) * k";
  } else {
    rep.claimed = gamma_sum * (k - zeros);
    rep.formula = "sum_{alpha_i != 0} gamma_i * (k - j)";
  }
  return counted_engine(a, slots, {rep});
}

Decomposition<CycloNum> decompose_counted_multiroot(const Matrix<CycloNum>& a, long a0,
                                                    const std::vector<MultiRootBand>& bands) {
  auto field = a.proto().field();
  if (a0 <= 3) throw InfeasibleError("decompose_counted_multiroot: a0 must be > 3");

  std::vector<CountedSlot> slots;
  CycloNum t = CycloNum::from_int(field, a0);
  {
    CountedSlot s;
    s.alpha = a0;
    s.root = CycloNum::one(field);
    s.potency = 2;
    s.label = "counted-multiroot/band-0";
    slots.push_back(std::move(s));
  }
  long gamma_total = gamma_formula(a0);
  for (size_t bi = 0; bi < bands.size(); ++bi) {
    const auto& band = bands[bi];
    if (field->k() % band.beta != 0)
      throw Error("decompose_counted_multiroot: backend lacks a root of order " +
                  std::to_string(band.beta));
    long step = field->k() / band.beta;
    if (static_cast<int>(band.coeffs.size()) != band.beta || band.coeffs[0] != 0)
      throw Error("decompose_counted_multiroot: malformed band");
    for (int j = 1; j < band.beta; ++j) {
      if (band.coeffs[j] <= 3)
        throw InfeasibleError("decompose_counted_multiroot: every band coefficient must be > 3");
      CountedSlot s;
      s.alpha = band.coeffs[j];
      s.root = CycloNum::omega_power(field, step * j);
      s.potency = static_cast<unsigned long>(band.beta) + 1;
      s.label = "counted-multiroot/band-" + std::to_string(bi + 1);
      gamma_total += gamma_formula(band.coeffs[j]) + 2;
      t += s.root.from_int_like(band.coeffs[j]) * s.root;
      slots.push_back(std::move(s));
    }
  }
  if (t != a.trace())
    throw InfeasibleError("decompose_counted_multiroot: certificate does not sum to the trace");

  CountReport rep;
  rep.label = "counted-multiroot";
  rep.claimed = gamma_total * static_cast<long>(slots.size());
  rep.formula = "{gamma_0 + sum (gamma_ij + 2)} * rank(A)";
  return counted_engine(a, slots, {rep});
}

}  // namespace potentsum
