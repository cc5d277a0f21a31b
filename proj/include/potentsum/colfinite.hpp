#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "potentsum/matrix.hpp"

namespace potentsum {

// ---------- lazy column-finite N x N matrices ----------

enum class StructureTag { Upper, Lower, Diagonal, General };

namespace lazydetail {

template <class S>
struct MemoCache {
  std::mutex mu;
  std::map<std::pair<long, long>, S> entries;
};

// checkpointed sequential scan; recomputed in stripes on cache miss
template <class State>
class StripeScan {
 public:
  StripeScan(State first, std::function<State(const State&, long)> step, long stripe = 1024)
      : step_(std::move(step)), stripe_(stripe) {
    checkpoints_.push_back(std::move(first));  // state at row 1
  }

  State at(long n) const {
    std::lock_guard<std::mutex> lock(mu_);
    long have = static_cast<long>(checkpoints_.size()) - 1;  // highest checkpointed stripe
    long want = (n - 1) / stripe_;
    State cur = checkpoints_[std::min(have, want)];
    long row = std::min(have, want) * stripe_ + 1;
    while (row < n) {
      cur = step_(cur, row);  // state(row+1) from state(row)
      ++row;
      if ((row - 1) % stripe_ == 0 && (row - 1) / stripe_ == have + 1) {
        checkpoints_.push_back(cur);
        ++have;
      }
    }
    return cur;
  }

 private:
  std::function<State(const State&, long)> step_;
  long stripe_;
  mutable std::mutex mu_;
  mutable std::vector<State> checkpoints_;
};

}  // namespace lazydetail

// Column-finite matrix given by an entry generator (1-based indices), a
// per-column support bound s(j) with entry(i,j) = 0 for i > s(j), a structure
// tag, and the block-boundary schedule used for boundary-safe truncation.
template <class S>
class LazyMatrix {
 public:
  using Gen = std::function<S(long, long)>;
  using Support = std::function<long(long)>;
  using Boundary = std::function<long(long)>;

  LazyMatrix() = default;
  LazyMatrix(S proto, Gen gen, Support support, StructureTag tag,
             std::string provenance = "", Boundary boundary = nullptr)
      : proto_(std::move(proto)),
        gen_(std::move(gen)),
        support_(std::move(support)),
        tag_(tag),
        provenance_(std::move(provenance)),
        boundary_(std::move(boundary)) {}

  S entry(long i, long j) const {
    if (i < 1 || j < 1) throw DimensionError("LazyMatrix: indices are 1-based");
    if (memo_) {
      {
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->entries.find({i, j});
        if (it != memo_->entries.end()) return it->second;
      }
      S v = gen_(i, j);
      std::lock_guard<std::mutex> lock(memo_->mu);
      return memo_->entries.emplace(std::pair{i, j}, std::move(v)).first->second;
    }
    return gen_(i, j);
  }

  long col_support(long j) const { return support_ ? support_(j) : j; }
  StructureTag tag() const { return tag_; }
  const std::string& provenance() const { return provenance_; }
  const S& proto() const { return proto_; }

  // smallest boundary-safe truncation size >= n
  long next_boundary(long n) const { return boundary_ ? boundary_(n) : n; }

  LazyMatrix memoized() const {
    LazyMatrix copy = *this;
    copy.memo_ = std::make_shared<lazydetail::MemoCache<S>>();
    return copy;
  }

  LazyMatrix with_provenance(std::string p) const {
    LazyMatrix copy = *this;
    copy.provenance_ = std::move(p);
    return copy;
  }

 private:
  S proto_{};
  Gen gen_;
  Support support_;
  StructureTag tag_ = StructureTag::General;
  std::string provenance_;
  Boundary boundary_;
  std::shared_ptr<lazydetail::MemoCache<S>> memo_;
};

template <class S>
struct TruncatedView {
  long requested = 0;
  long actual = 0;
  Matrix<S> block;
  bool boundary_safe = false;
};

template <class S>
TruncatedView<S> truncate(const LazyMatrix<S>& m, long n, bool boundary_safe = false) {
  TruncatedView<S> view;
  view.requested = n;
  view.actual = boundary_safe ? m.next_boundary(n) : n;
  view.boundary_safe = boundary_safe;
  view.block = Matrix<S>(static_cast<int>(view.actual), static_cast<int>(view.actual),
                         m.proto().zero_like());
  for (long i = 1; i <= view.actual; ++i)
    for (long j = 1; j <= view.actual; ++j)
      view.block.at(static_cast<int>(i - 1), static_cast<int>(j - 1)) = m.entry(i, j);
  return view;
}

template <class S>
LazyMatrix<S> lazy_zero(const S& proto) {
  return LazyMatrix<S>(
      proto.zero_like(), [z = proto.zero_like()](long, long) { return z; },
      [](long) { return 0L; }, StructureTag::Diagonal);
}

template <class S>
LazyMatrix<S> lazy_sub(const LazyMatrix<S>& a, const LazyMatrix<S>& b, StructureTag tag) {
  auto sup_a = [a](long j) { return a.col_support(j); };
  auto sup_b = [b](long j) { return b.col_support(j); };
  return LazyMatrix<S>(
      a.proto(), [a, b](long i, long j) { return a.entry(i, j) - b.entry(i, j); },
      [sup_a, sup_b](long j) { return std::max(sup_a(j), sup_b(j)); }, tag);
}

// ---------- split A = t1 + t2 + d (upper 2w, lower 3w, diagonal -5w) ----------

template <class S>
struct UpperLowerDiagSplit {
  LazyMatrix<S> t1;  // upper, diagonal 2w
  LazyMatrix<S> t2;  // lower column-finite, diagonal 3w
  LazyMatrix<S> d;   // diagonal, entries a_ii - 5w
};

template <class S>
UpperLowerDiagSplit<S> split_upper_lower_diag(const LazyMatrix<S>& a) {
  const S w = a.proto().omega_pow_like(1);
  const S two_w = w + w;
  const S three_w = two_w + w;
  const S five_w = two_w + three_w;
  UpperLowerDiagSplit<S> out;
  out.t1 = LazyMatrix<S>(
      a.proto(),
      [a, two_w](long i, long j) {
        if (i == j) return two_w;
        if (i < j) return a.entry(i, j);
        return a.proto().zero_like();
      },
      [](long j) { return j; }, StructureTag::Upper, "split/t1");
  out.t2 = LazyMatrix<S>(
      a.proto(),
      [a, three_w](long i, long j) {
        if (i == j) return three_w;
        if (i > j) return a.entry(i, j);
        return a.proto().zero_like();
      },
      [a](long j) { return std::max(j, a.col_support(j)); }, StructureTag::Lower, "split/t2");
  out.d = LazyMatrix<S>(
      a.proto(),
      [a, five_w](long i, long j) {
        if (i == j) return a.entry(i, i) - five_w;
        return a.proto().zero_like();
      },
      [](long j) { return j; }, StructureTag::Diagonal, "split/d");
  return out;
}

// ---------- conjugator to the bidiagonal form ----------

// Upper unitriangular S (and its inverse) solving S t = b S column by column,
// where t is upper with constant diagonal w and nowhere-zero superdiagonal,
// and b is the bidiagonal matrix keeping t's superdiagonal. Entries are
// memoized; each depends on finitely many t entries.
template <class S>
class BidiagonalConjugator {
 public:
  explicit BidiagonalConjugator(LazyMatrix<S> t) : t_(std::move(t).memoized()) {
    cache_ = std::make_shared<State>();
  }

  S superdiag(long n) const {
    S v = t_.entry(n, n + 1);
    if (v.is_zero())
      throw Error("conjugator_to_bidiagonal: zero superdiagonal entry at row " +
                  std::to_string(n));
    return v;
  }

  S sim(long n, long m) const {  // S_{n,m}
    if (n > m) return t_.proto().zero_like();
    if (n == m) return t_.proto().one_like();
    if (n == 1) return t_.proto().zero_like();
    std::pair<long, long> key{n, m};
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->sim.find(key);
      if (it != cache_->sim.end()) return it->second;
    }
    // t_{n-1,n} S_{n,m} = sum_{p=n-1}^{m-1} S_{n-1,p} t_{p,m}
    S acc = t_.proto().zero_like();
    for (long p = n - 1; p <= m - 1; ++p) {
      S sp = sim(n - 1, p);
      if (sp.is_zero()) continue;
      S tpm = t_.entry(p, m);
      if (tpm.is_zero()) continue;
      acc += sp * tpm;
    }
    S v = acc / superdiag(n - 1);
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->sim.emplace(key, std::move(v)).first->second;
  }

  S sim_inv(long n, long m) const {  // (S^{-1})_{n,m}
    if (n > m) return t_.proto().zero_like();
    if (n == m) return t_.proto().one_like();
    std::pair<long, long> key{n, m};
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->inv.find(key);
      if (it != cache_->inv.end()) return it->second;
    }
    S acc = t_.proto().zero_like();
    for (long p = n + 1; p <= m; ++p) {
      S sp = sim(n, p);
      if (sp.is_zero()) continue;
      acc += sp * sim_inv(p, m);
    }
    S v = -acc;
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->inv.emplace(key, std::move(v)).first->second;
  }

  LazyMatrix<S> sim_lazy() const {
    auto self = *this;
    return LazyMatrix<S>(
        t_.proto(), [self](long i, long j) { return self.sim(i, j); },
        [](long j) { return j; }, StructureTag::Upper, "bidiagonal/conjugator");
  }

  // S^{-1} u S for a matrix u whose row p holds entries only at (p,p), (p,p+1)
  LazyMatrix<S> conjugate_row_pair(std::function<S(long)> diag, std::function<S(long)> sup,
                                   std::string provenance) const {
    auto self = *this;
    return LazyMatrix<S>(
        t_.proto(),
        [self, diag, sup](long i, long j) {
          S acc = self.t_.proto().zero_like();
          for (long p = i; p <= j; ++p) {
            S left = self.sim_inv(i, p);
            if (left.is_zero()) continue;
            S middle = self.sim(p, j) * diag(p);
            if (p + 1 <= j) middle += self.sim(p + 1, j) * sup(p);
            acc += left * middle;
          }
          return acc;
        },
        [](long j) { return j; }, StructureTag::Upper, std::move(provenance));
  }

 private:
  struct State {
    std::mutex mu;
    std::map<std::pair<long, long>, S> sim, inv;
  };
  LazyMatrix<S> t_;
  std::shared_ptr<State> cache_;
};

template <class S>
LazyMatrix<S> conjugator_to_bidiagonal(const LazyMatrix<S>& t) {
  return BidiagonalConjugator<S>(t).sim_lazy();
}

// ---------- upper path: diagonal 2w, at most 4 summands ----------

// the paper split of t1 into t1' (diagonal w, nowhere-zero superdiagonal) and
// the bidiagonal remainder t2' = t1 - t1'
template <class S>
std::pair<LazyMatrix<S>, LazyMatrix<S>> upper_paper_split(const LazyMatrix<S>& t1) {
  const S w = t1.proto().omega_pow_like(1);
  LazyMatrix<S> t1p(
      t1.proto(),
      [t1, w](long i, long j) {
        if (i == j) return w;
        if (j == i + 1) {
          S v = t1.entry(i, j);
          return v.is_zero() ? w : v;
        }
        if (j > i + 1) return t1.entry(i, j);
        return t1.proto().zero_like();
      },
      [](long j) { return j; }, StructureTag::Upper, "upper/t1'");
  LazyMatrix<S> t2p(
      t1.proto(),
      [t1, w](long i, long j) {
        if (i == j) return w;
        if (j == i + 1) {
          S v = t1.entry(i, j);
          return v.is_zero() ? -w : t1.proto().zero_like();
        }
        return t1.proto().zero_like();
      },
      [](long j) { return j; }, StructureTag::Upper, "upper/t2'");
  return {t1p, t2p};
}

// v' activity scan on the bidiagonal t2': row 1 is active; the row after an
// active row with nonzero superdiagonal moves to v''.
template <class S>
std::function<bool(long)> vprime_active_scan(const LazyMatrix<S>& t2p) {
  auto scan = std::make_shared<lazydetail::StripeScan<bool>>(
      true,
      [t2p](const bool& active, long row) {
        if (!active) return true;
        return t2p.entry(row, row + 1).is_zero();
      });
  return [scan](long n) { return scan->at(n); };
}

template <class S>
std::vector<LazyMatrix<S>> decompose_upper_2omega(const LazyMatrix<S>& t1) {
  auto [t1p, t2p_] = upper_paper_split(t1);
  const LazyMatrix<S> t2p = t2p_;
  const S w = t1.proto().omega_pow_like(1);
  BidiagonalConjugator<S> conj(t1p);

  // the bidiagonal target b = w e + sum t'_{n,n+1} e_{n,n+1}, written u + u'
  auto bsup = [conj](long n) { return conj.superdiag(n); };
  auto odd_diag = [w, z = w.zero_like()](long p) { return p % 2 == 1 ? w : z; };
  auto even_diag = [w, z = w.zero_like()](long p) { return p % 2 == 0 ? w : z; };
  auto odd_sup = [bsup, z = w.zero_like()](long p) { return p % 2 == 1 ? bsup(p) : z; };
  auto even_sup = [bsup, z = w.zero_like()](long p) { return p % 2 == 0 ? bsup(p) : z; };

  LazyMatrix<S> u = conj.conjugate_row_pair(odd_diag, odd_sup, "upper/u");
  LazyMatrix<S> up = conj.conjugate_row_pair(even_diag, even_sup, "upper/u'");

  auto active = vprime_active_scan(t2p);
  LazyMatrix<S> vp(
      t1.proto(),
      [t2p, active](long i, long j) {
        if (j != i && j != i + 1) return t2p.proto().zero_like();
        if (!active(i)) return t2p.proto().zero_like();
        return t2p.entry(i, j);
      },
      [](long j) { return j; }, StructureTag::Upper, "upper/v'");
  LazyMatrix<S> vpp(
      t1.proto(),
      [t2p, active](long i, long j) {
        if (j != i && j != i + 1) return t2p.proto().zero_like();
        if (active(i)) return t2p.proto().zero_like();
        return t2p.entry(i, j);
      },
      [](long j) { return j; }, StructureTag::Upper, "upper/v''");
  return {u, up, vp, vpp};
}

// ---------- finite reference implementation of Prop 3.1 / Cor 3.1 ----------

// Dense n x n upper triangular block with diagonal 2w -> 4 potent summands.
// This serial/dense routine doubles as the oracle for the lazy path and
// handles the staircase blocks of Prop 3.2.
template <class S>
std::vector<Matrix<S>> decompose_upper_2omega_dense(const Matrix<S>& t) {
  t.require_square("decompose_upper_2omega_dense");
  int n = t.rows();
  const S w = t.proto().omega_pow_like(1);
  const S zero = t.proto();

  Matrix<S> t1p = Matrix<S>::zeros(n, n, zero);
  Matrix<S> t2p = Matrix<S>::zeros(n, n, zero);
  for (int i = 0; i < n; ++i) {
    t1p.at(i, i) = w;
    t2p.at(i, i) = w;
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1) {
        if (t.at(i, j).is_zero()) {
          t1p.at(i, j) = w;
          t2p.at(i, j) = -w;
        } else {
          t1p.at(i, j) = t.at(i, j);
        }
      } else {
        t1p.at(i, j) = t.at(i, j);
      }
    }
  }

  // finite conjugator: unitriangular s with s t1p = b s
  Matrix<S> sim = Matrix<S>::identity(n, zero);
  for (int m = 1; m < n; ++m) {
    for (int row = 1; row <= m; ++row) {
      // t1p_{row-1,row} s_{row,m} = sum_{p=row-1}^{m-1} s_{row-1,p} t1p_{p,m}
      if (row == m) continue;  // diagonal stays 1 (consistency is automatic)
      S acc = zero;
      for (int p = row - 1; p <= m - 1; ++p) acc += sim.at(row - 1, p) * t1p.at(p, m);
      sim.at(row, m) = acc / t1p.at(row - 1, row);
    }
  }
  Matrix<S> sim_inv = inverse(sim);

  Matrix<S> u = Matrix<S>::zeros(n, n, zero);
  Matrix<S> up = Matrix<S>::zeros(n, n, zero);
  for (int p = 0; p < n; ++p) {
    bool odd = (p + 1) % 2 == 1;
    Matrix<S>& dst = odd ? u : up;
    dst.at(p, p) = w;
    if (p + 1 < n) dst.at(p, p + 1) = t1p.at(p, p + 1);
  }
  u = matmul(matmul(sim_inv, u), sim);
  up = matmul(matmul(sim_inv, up), sim);

  Matrix<S> vp = Matrix<S>::zeros(n, n, zero);
  Matrix<S> vpp = Matrix<S>::zeros(n, n, zero);
  bool active = true;
  for (int i = 0; i < n; ++i) {
    Matrix<S>& dst = active ? vp : vpp;
    dst.at(i, i) = t2p.at(i, i);
    if (i + 1 < n) dst.at(i, i + 1) = t2p.at(i, i + 1);
    bool next_active = active ? (i + 1 >= n || t2p.at(i, i + 1).is_zero()) : true;
    active = next_active;
  }
  return {u, up, vp, vpp};
}

// ---------- lower path: column-finite, diagonal 3w, at most 6 summands ----------

// staircase profile and derived block boundaries of a lower matrix
template <class S>
class StaircaseProfile {
 public:
  explicit StaircaseProfile(LazyMatrix<S> t) : t_(std::move(t)) {
    state_ = std::make_shared<State>();
  }

  long l(long m) const {  // max row with a nonzero entry in column m
    for (long i = t_.col_support(m); i > m; --i)
      if (!t_.entry(i, m).is_zero()) return i;
    if (t_.entry(m, m).is_zero())
      throw Error("staircase profile: zero diagonal entry (is char(F) | 3?)");
    return m;
  }

  long l_prime(long m) const {  // nondecreasing hull, l'_m = max(l'_{m-1}, l_m)
    std::lock_guard<std::mutex> lock(state_->mu);
    while (static_cast<long>(state_->lp.size()) < m) {
      long next = l(static_cast<long>(state_->lp.size()) + 1);
      if (!state_->lp.empty()) next = std::max(next, state_->lp.back());
      state_->lp.push_back(next);
    }
    return state_->lp[m - 1];
  }

  // block boundaries b_0 = 0 < b_1 < ... with b_{s+1} = l'(b_s + 1)
  long boundary(long s) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    if (state_->bounds.empty()) state_->bounds.push_back(0);
    while (static_cast<long>(state_->bounds.size()) <= s) {
      long prev = state_->bounds.back();
      long next = l_prime_nolock(prev + 1);
      if (next <= prev) throw Error("staircase profile: boundaries not increasing");
      state_->bounds.push_back(next);
    }
    return state_->bounds[s];
  }

  // 1-based block index containing row/column i
  long block_of(long i) const {
    long s = 1;
    while (boundary(s) < i) ++s;
    return s;
  }

  // smallest block boundary >= n
  long next_block_end(long n) const {
    long s = 1;
    while (boundary(s) < n) ++s;
    return boundary(s);
  }

 private:
  long l_prime_nolock(long m) const {
    while (static_cast<long>(state_->lp.size()) < m) {
      long next = l(static_cast<long>(state_->lp.size()) + 1);
      if (!state_->lp.empty()) next = std::max(next, state_->lp.back());
      state_->lp.push_back(next);
    }
    return state_->lp[m - 1];
  }
  struct State {
    std::mutex mu;
    std::vector<long> lp;
    std::vector<long> bounds;
  };
  LazyMatrix<S> t_;
  std::shared_ptr<State> state_;
};

template <class S>
std::vector<LazyMatrix<S>> decompose_lower_3omega(const LazyMatrix<S>& t2) {
  const S w = t2.proto().omega_pow_like(1);
  const S two_w = w + w;
  auto profile = std::make_shared<StaircaseProfile<S>>(t2.memoized());
  LazyMatrix<S> t2m = t2.memoized();

  // u: block diagonal, diagonal 2w, interior strict-lower entries of t2
  LazyMatrix<S> u(
      t2.proto(),
      [t2m, profile, two_w](long i, long j) {
        if (i == j) return two_w;
        if (i > j && profile->block_of(i) == profile->block_of(j)) return t2m.entry(i, j);
        return t2m.proto().zero_like();
      },
      [profile](long j) { return profile->boundary(profile->block_of(j)); },
      StructureTag::General, "lower/u",
      [profile](long n) { return profile->next_block_end(n); });

  // per-block dense decomposition of u via Cor 3.1 (transpose to the upper case)
  struct BlockCache {
    std::mutex mu;
    std::map<long, std::vector<Matrix<S>>> blocks;
  };
  auto cache = std::make_shared<BlockCache>();
  auto block_summand = [t2m, profile, cache, two_w](long which, long i, long j) -> S {
    long bi = profile->block_of(i);
    if (profile->block_of(j) != bi) return t2m.proto().zero_like();
    long lo = profile->boundary(bi - 1) + 1;
    long hi = profile->boundary(bi);
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->blocks.find(bi);
      if (it != cache->blocks.end())
        return it->second[which].at(static_cast<int>(i - lo), static_cast<int>(j - lo));
    }
    int sz = static_cast<int>(hi - lo + 1);
    Matrix<S> blk = Matrix<S>::zeros(sz, sz, t2m.proto().zero_like());
    for (int r = 0; r < sz; ++r) {
      blk.at(r, r) = two_w;
      for (int c = 0; c < r; ++c) blk.at(r, c) = t2m.entry(lo + r, lo + c);
    }
    // lower block: transpose, run the upper routine, transpose back
    auto parts = decompose_upper_2omega_dense(blk.transpose());
    for (auto& p : parts) p = p.transpose();
    std::lock_guard<std::mutex> lock(cache->mu);
    auto [it, _] = cache->blocks.emplace(bi, std::move(parts));
    return it->second[which].at(static_cast<int>(i - lo), static_cast<int>(j - lo));
  };

  std::vector<LazyMatrix<S>> out;
  for (long which = 0; which < 4; ++which) {
    out.emplace_back(
        t2.proto(), [block_summand, which](long i, long j) { return block_summand(which, i, j); },
        [profile](long j) { return profile->boundary(profile->block_of(j)); },
        StructureTag::General, "lower/u-part" + std::to_string(which + 1),
        [profile](long n) { return profile->next_block_end(n); });
  }

  // v = t2 - u: diagonal w plus the risers between consecutive blocks;
  // v' takes odd blocks (diagonal w and the riser below), v'' the even ones
  auto riser = [t2m, profile](long i, long j) -> S {
    long bi = profile->block_of(i), bj = profile->block_of(j);
    if (i > j && bi == bj + 1) return t2m.entry(i, j);
    return t2m.proto().zero_like();
  };
  auto vpart = [profile, riser, w](bool odd) {
    return [profile, riser, w, odd](long i, long j) -> S {
      if (i == j) {
        bool is_odd = profile->block_of(i) % 2 == 1;
        return is_odd == odd ? w : w.zero_like();
      }
      long bj = profile->block_of(j);
      bool from_odd = bj % 2 == 1;
      if (from_odd == odd) return riser(i, j);
      return w.zero_like();
    };
  };
  auto v_support = [t2m](long j) { return t2m.col_support(j); };
  // v' pairs blocks (1,2), (3,4), ...: safe at even-block ends; v'' has the
  // leading block alone and pairs (2,3), (4,5), ...: safe at odd-block ends
  auto v_boundary_odd = [profile](long n) {
    long s = 2;
    while (profile->boundary(s) < n) s += 2;
    return profile->boundary(s);
  };
  auto v_boundary_even = [profile](long n) {
    long s = 1;
    while (profile->boundary(s) < n) s += 2;
    return profile->boundary(s);
  };
  out.emplace_back(t2.proto(), vpart(true), v_support, StructureTag::General, "lower/v'",
                   v_boundary_odd);
  out.emplace_back(t2.proto(), vpart(false), v_support, StructureTag::General, "lower/v''",
                   v_boundary_even);
  return out;
}

// ---------- diagonal path: exactly 4 summands ----------

template <class S>
std::vector<LazyMatrix<S>> decompose_diagonal(const LazyMatrix<S>& d) {
  const S w = d.proto().omega_pow_like(1);
  const S two_w = w + w;
  const S half = d.proto().from_rational_like(Rational(1, 2));

  // alternating recurrence for the X/Y diagonals
  using XY = std::pair<S, S>;
  auto scan = std::make_shared<lazydetail::StripeScan<XY>>(
      XY{d.entry(1, 1), d.proto().zero_like()},
      [d, two_w](const XY& cur, long row) -> XY {
        long next = row + 1;
        if (next % 2 == 0) {
          S x = two_w - cur.first;
          return {x, d.entry(next, next) - x};
        }
        S y = two_w - cur.second;
        return {d.entry(next, next) - y, y};
      });

  // X: 2x2 pair blocks on (2s-1, 2s); Y: offset by one, leading 1x1 zero
  auto pair_entry = [w](const S& a, long i, long j, long lo, bool first) -> S {
    // potent pair on rows/cols (lo, lo+1) with parameter a
    long r = i - lo, c = j - lo;
    if (first) {  // B = [[a, -a], [a-w, w-a]]
      if (r == 0 && c == 0) return a;
      if (r == 0 && c == 1) return -a;
      if (r == 1 && c == 0) return a - w;
      return w - a;
    }
    if (r == 0) return a;  // C = [[a, a], [w-a, w-a]]
    return w - a;
  };

  auto xgen = [scan, pair_entry, half](bool first) {
    return [scan, pair_entry, half, first](long i, long j) -> S {
      long lo_i = i % 2 == 1 ? i : i - 1;
      long lo_j = j % 2 == 1 ? j : j - 1;
      if (lo_i != lo_j) return half.zero_like();
      S x = scan->at(lo_i).first;
      return pair_entry(x * half, i, j, lo_i, first);
    };
  };
  auto ygen = [scan, pair_entry, half](bool first) {
    return [scan, pair_entry, half, first](long i, long j) -> S {
      if (i == 1 || j == 1) return half.zero_like();  // leading 1x1 zero block
      long lo_i = i % 2 == 0 ? i : i - 1;
      long lo_j = j % 2 == 0 ? j : j - 1;
      if (lo_i != lo_j) return half.zero_like();
      S y = scan->at(lo_i).second;
      return pair_entry(y * half, i, j, lo_i, first);
    };
  };
  auto sup_x = [](long j) { return j % 2 == 1 ? j + 1 : j; };
  auto sup_y = [](long j) { return j == 1 ? 1 : (j % 2 == 0 ? j + 1 : j); };
  auto bound_x = [](long n) { return n % 2 == 0 ? n : n + 1; };
  auto bound_y = [](long n) { return n % 2 == 1 ? n : n + 1; };

  std::vector<LazyMatrix<S>> out;
  out.emplace_back(d.proto(), xgen(true), sup_x, StructureTag::General, "diagonal/X-B", bound_x);
  out.emplace_back(d.proto(), xgen(false), sup_x, StructureTag::General, "diagonal/X-C", bound_x);
  out.emplace_back(d.proto(), ygen(true), sup_y, StructureTag::General, "diagonal/Y-B", bound_y);
  out.emplace_back(d.proto(), ygen(false), sup_y, StructureTag::General, "diagonal/Y-C", bound_y);
  return out;
}

// ---------- full pipeline: at most 14 summands ----------

template <class S>
struct LazyDecomposition {
  LazyMatrix<S> target;
  std::vector<LazyMatrix<S>> summands;
};

template <class S>
LazyDecomposition<S> decompose14(const LazyMatrix<S>& a) {
  LazyDecomposition<S> out;
  out.target = a.memoized();
  auto split = split_upper_lower_diag(out.target);
  for (auto& s : decompose_upper_2omega(split.t1)) out.summands.push_back(s);
  for (auto& s : decompose_lower_3omega(split.t2)) out.summands.push_back(s);
  for (auto& s : decompose_diagonal(split.d)) out.summands.push_back(s);
  return out;
}

}  // namespace potentsum
