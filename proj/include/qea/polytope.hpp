#pragma once

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qea/states.hpp"

namespace qea {

namespace linalg {

using Vec = std::vector<mpq_class>;  // coefficients..., rhs at the back

/// In-place reduced row echelon form over the first `nvars` columns.
/// Returns false when a row reduces to 0 = c with c != 0.
inline bool rref(std::vector<Vec>& rows, int nvars, std::vector<int>& pivot_cols) {
  pivot_cols.clear();
  size_t r = 0;
  for (int c = 0; c < nvars && r < rows.size(); ++c) {
    size_t pr = r;
    while (pr < rows.size() && rows[pr][c] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    mpq_class pv = rows[r][c];
    for (auto& v : rows[r]) v /= pv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c];
      for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows.size(); ++i)
    if (rows[i].back() != 0) return false;
  return true;
}

/// Solve a square system; nullopt when singular.
inline std::optional<Vec> solve_square(std::vector<Vec> m) {
  const int d = static_cast<int>(m.size());
  for (int c = 0; c < d; ++c) {
    int pr = -1;
    for (int i = c; i < d; ++i)
      if (m[i][c] != 0) { pr = i; break; }
    if (pr < 0) return std::nullopt;
    std::swap(m[c], m[pr]);
    mpq_class pv = m[c][c];
    for (auto& v : m[c]) v /= pv;
    for (int i = 0; i < d; ++i) {
      if (i == c || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (int j = 0; j <= d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  Vec t(d);
  for (int i = 0; i < d; ++i) t[i] = m[i][d];
  return t;
}

}  // namespace linalg

/// Branch signature of the piecewise-linearization: each element is pinned
/// to the lower (s <= 1/2) or upper (s >= 1/2) leg of the q/d laws; both
/// legs include the boundary. `free` marks elements whose leg is forced by
/// the constants (the bounds 0 and 1).
enum class BranchLeg : int8_t { low = 0, high = 1, free_pinned = 2 };

struct BranchPolytope {
  std::vector<BranchLeg> signature;
  std::vector<linalg::Vec> equalities;    // a . v = b
  std::vector<linalg::Vec> inequalities;  // a . v <= b
};

/// The full linear system of one branch: normalization, additivity on every
/// defined sum, per-element leg equalities, bounds and the leg inequality.
inline BranchPolytope build_branch_polytope(const FiniteQEffectAlgebra& a,
                                            const std::vector<BranchLeg>& sig) {
  const auto& b = a.base;
  const int n = b.n;
  BranchPolytope bp;
  bp.signature = sig;
  auto row = [&]() { return linalg::Vec(n + 1, 0); };

  auto eq = [&](linalg::Vec v) { bp.equalities.push_back(std::move(v)); };
  auto le = [&](linalg::Vec v) { bp.inequalities.push_back(std::move(v)); };

  {
    auto r = row();
    r[b.zero] = 1;
    eq(std::move(r));
    r = row();
    r[b.one] = 1;
    r[n] = 1;
    eq(std::move(r));
  }
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      int z = b.sum_at(x, y);
      if (z < 0) continue;
      auto r = row();
      r[x] += 1;
      r[y] += 1;
      r[z] -= 1;
      eq(std::move(r));
    }
  const mpq_class half(1, 2);
  for (int e = 0; e < n; ++e) {
    {
      auto r = row();
      r[e] = -1;
      le(std::move(r));  // 0 <= s(e)
      r = row();
      r[e] = 1;
      r[n] = 1;
      le(std::move(r));  // s(e) <= 1
    }
    BranchLeg leg = sig[e];
    if (leg == BranchLeg::free_pinned) leg = (e == b.one) ? BranchLeg::high : BranchLeg::low;
    if (leg == BranchLeg::low) {
      auto r = row();
      r[e] = 1;
      r[n] = half;
      le(std::move(r));  // s(e) <= 1/2
      r = row();
      r[a.q(e)] += 1;
      r[e] -= 2;
      eq(std::move(r));  // s(q(e)) = 2 s(e)
      r = row();
      r[a.d(e)] += 1;
      eq(std::move(r));  // s(d(e)) = 0
    } else {
      auto r = row();
      r[e] = -1;
      r[n] = -half;
      le(std::move(r));  // s(e) >= 1/2
      r = row();
      r[a.q(e)] += 1;
      r[n] = 1;
      eq(std::move(r));  // s(q(e)) = 1
      r = row();
      r[a.d(e)] += 1;
      r[e] -= 2;
      r[n] = -1;
      eq(std::move(r));  // s(d(e)) = 2 s(e) - 1
    }
  }
  return bp;
}

struct ExtremeStateOptions {
  int carrier_cap = 16;
  unsigned long long combination_guard = 4000000ULL;
};

struct ExtremeStateResult {
  bool refused = false;
  std::string refusal;
  StateSet set;                 // provenance = extreme, certified q-states
  long branches = 0;            // order-compatible signatures scanned
  long feasible_branches = 0;
  long raw_vertices = 0;        // before dedup
  long rejected_by_certification = 0;
};

namespace detail {

/// Vertices of one branch polytope, appended to `sink` keyed by value vector.
inline void branch_vertices(const FiniteQEffectAlgebra& alg, const BranchPolytope& bp,
                            const ExtremeStateOptions& opt, bool& guard_hit,
                            std::map<linalg::Vec, bool>& sink, long& raw, bool& feasible) {
  const int n = alg.n();
  feasible = false;
  auto eqs = bp.equalities;
  std::vector<int> piv;
  if (!linalg::rref(eqs, n, piv)) return;
  std::vector<bool> is_pivot(n, false);
  std::vector<int> free_cols;
  for (int c : piv) is_pivot[c] = true;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  const int d = static_cast<int>(free_cols.size());

  // v = p0 + P t  with one parameter per free column.
  linalg::Vec p0(n, 0);
  std::vector<linalg::Vec> P(n, linalg::Vec(d, 0));
  for (int j = 0; j < d; ++j) P[free_cols[j]][j] = 1;
  for (size_t i = 0; i < piv.size(); ++i) {
    p0[piv[i]] = eqs[i][n];
    for (int j = 0; j < d; ++j) P[piv[i]][j] = -eqs[i][free_cols[j]];
  }

  // Substitute, simplify, dedup (parallel rows keep the tightest rhs).
  std::map<linalg::Vec, mpq_class> rowmap;
  for (const auto& r : bp.inequalities) {
    linalg::Vec a(d, 0);
    mpq_class bb = r[n];
    for (int c = 0; c < n; ++c) {
      if (r[c] == 0) continue;
      bb -= r[c] * p0[c];
      for (int j = 0; j < d; ++j) a[j] += r[c] * P[c][j];
    }
    int first = -1;
    for (int j = 0; j < d; ++j)
      if (a[j] != 0) { first = j; break; }
    if (first < 0) {
      if (bb < 0) return;  // branch infeasible
      continue;
    }
    mpq_class scale = abs(a[first]);
    for (auto& v : a) v /= scale;
    bb /= scale;
    auto it = rowmap.find(a);
    if (it == rowmap.end()) rowmap.emplace(std::move(a), std::move(bb));
    else if (bb < it->second) it->second = bb;
  }
  std::vector<std::pair<linalg::Vec, mpq_class>> rows(rowmap.begin(), rowmap.end());
  const int m = static_cast<int>(rows.size());

  auto push_vertex = [&](const linalg::Vec& t) {
    linalg::Vec v(n);
    for (int c = 0; c < n; ++c) {
      v[c] = p0[c];
      for (int j = 0; j < d; ++j) v[c] += P[c][j] * t[j];
    }
    ++raw;
    sink.emplace(std::move(v), true);
  };
  auto feasible_at = [&](const linalg::Vec& t) {
    for (const auto& [a, bb] : rows) {
      mpq_class s = 0;
      for (int j = 0; j < d; ++j) s += a[j] * t[j];
      if (s > bb) return false;
    }
    return true;
  };

  if (d == 0) {
    linalg::Vec t;
    if (feasible_at(t)) {
      feasible = true;
      push_vertex(t);
    }
    return;
  }
  if (m < d) return;  // unbounded directions cannot happen, but no vertex either

  unsigned long long combos = 1;
  for (int i = 0; i < d; ++i) {
    combos = combos * static_cast<unsigned long long>(m - i) / (i + 1);
    if (combos > opt.combination_guard) { guard_hit = true; return; }
  }

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<linalg::Vec> sys(d, linalg::Vec(d + 1));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) sys[i][j] = rows[idx[i]].first[j];
      sys[i][d] = rows[idx[i]].second;
    }
    if (auto t = linalg::solve_square(std::move(sys)); t && feasible_at(*t)) {
      feasible = true;
      push_vertex(*t);
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == m - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace detail

/// Finite certificate for the q-state space: branch signatures compatible
/// with the induced order (the low set must be a down-set) are enumerated,
/// each branch polytope is vertex-enumerated exactly, and every vertex is
/// re-certified symbolically as a q-state before inclusion. The result is
/// the set of all branch-polytope vertices; it contains every extreme point
/// of the q-state space.
inline ExtremeStateResult enumerate_extreme_q_states(const FiniteQEffectAlgebra& alg,
                                                     const ExtremeStateOptions& opt = {}) {
  ExtremeStateResult res;
  res.set.provenance = StateProvenance::extreme;
  const auto& b = alg.base;
  const int n = b.n;
  if (n > opt.carrier_cap) {
    res.refused = true;
    res.refusal = "carrier of " + std::to_string(n) + " elements exceeds cap " +
                  std::to_string(opt.carrier_cap);
    return res;
  }

  // Linear extension: sorting by down-set size orders x before y when x < y.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (b.le(y, x)) ++below[x];
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return below[x] < below[y]; });

  std::map<linalg::Vec, bool> sink;
  bool guard_hit = false;
  std::vector<BranchLeg> sig(n, BranchLeg::free_pinned);

  auto run_leaf = [&]() {
    ++res.branches;
    BranchPolytope bp = build_branch_polytope(alg, sig);
    bool feasible = false;
    detail::branch_vertices(alg, bp, opt, guard_hit, sink, res.raw_vertices, feasible);
    if (feasible) ++res.feasible_branches;
  };

  // DFS over elements in extension order; `low` requires every strictly
  // smaller element to be low already (down-set pruning).
  auto dfs = [&](auto&& self, int pos) -> void {
    if (guard_hit) return;
    if (pos == n) {
      run_leaf();
      return;
    }
    int e = order[pos];
    if (e == b.zero || e == b.one) {
      sig[e] = BranchLeg::free_pinned;  // forced by s(0)=0, s(1)=1
      self(self, pos + 1);
      return;
    }
    bool low_ok = true;
    for (int p = 0; p < pos && low_ok; ++p) {
      int x = order[p];
      if (x != b.zero && b.le(x, e) && sig[x] == BranchLeg::high) low_ok = false;
    }
    if (low_ok) {
      sig[e] = BranchLeg::low;
      self(self, pos + 1);
    }
    sig[e] = BranchLeg::high;
    self(self, pos + 1);
    sig[e] = BranchLeg::free_pinned;
  };
  dfs(dfs, 0);

  if (guard_hit) {
    res.refused = true;
    res.refusal = "vertex enumeration exceeded the basis-combination guard";
    return res;
  }

  for (const auto& [vec, _] : sink) {
    StateVector s;
    s.values.reserve(n);
    bool in_range = true;
    for (const auto& v : vec) {
      auto u = UnitRational::try_from(v);
      if (!u) { in_range = false; break; }
      s.values.push_back(*u);
    }
    if (!in_range) { ++res.rejected_by_certification; continue; }
    classify_state(alg, s);
    if (s.q_state != TriState::yes) { ++res.rejected_by_certification; continue; }
    res.set.members.push_back(std::move(s));
  }
  return res;
}

}  // namespace qea
