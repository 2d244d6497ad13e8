#pragma once

#include <numeric>

#include "qea/effect_algebra.hpp"

namespace qea {

/// Effect algebra with total unary maps q and d. Construction only checks
/// totality; (Q1)-(Q5) are a separate, reportable verdict so that defective
/// q/d tables can still be loaded, printed and analysed.
struct FiniteQEffectAlgebra {
  FiniteEffectAlgebra base;
  std::vector<int> qmap, dmap;
  bool mv_by_construction = false;  // set by chain/product builders

  int n() const { return base.n; }
  int q(int x) const { return qmap[x]; }
  int d(int x) const { return dmap[x]; }
};

inline FiniteQEffectAlgebra finalize_q_algebra(const RawAlgebra& raw,
                                               const ValidationOptions& opt = {}) {
  FiniteQEffectAlgebra qa;
  qa.base = finalize_effect_algebra(raw, opt);
  ValidationReport rep;
  auto t = detail::index_raw(raw, rep);
  if (!t || t->qmap.empty() || t->dmap.empty()) {
    rep.structural.push_back({"structural", "q/d maps missing or not total"});
    throw InvalidAlgebra(rep);
  }
  qa.qmap = t->qmap;
  qa.dmap = t->dmap;
  return qa;
}

/// (Q1)-(Q5) verdict with witnesses. Requires a validated base algebra.
inline ValidationReport validate_q_axioms(const FiniteQEffectAlgebra& a,
                                          const ValidationOptions& opt = {}) {
  ValidationReport rep;
  const auto& b = a.base;
  const int n = b.n;
  if (static_cast<int>(a.qmap.size()) != n || static_cast<int>(a.dmap.size()) != n) {
    rep.structural.push_back({"structural", "q/d maps not total"});
    return rep;
  }
  auto nm = [&](int i) { return b.elements[i]; };

  for (int x = 0; x < n; ++x)
    if (a.d(b.supp[x]) != b.supp[a.q(x)])
      rep.violations.push_back({"Q1", "d(" + nm(x) + "') != q(" + nm(x) + ")'"});

  if (a.d(b.zero) != b.zero || a.q(b.zero) != b.zero)
    rep.violations.push_back({"Q2", "d(0)=" + nm(a.d(b.zero)) + ", q(0)=" + nm(a.q(b.zero))});

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (b.le(x, y) && !b.le(a.d(x), a.d(y)))
        rep.violations.push_back(
            {"Q3", nm(x) + " <= " + nm(y) + " but d(" + nm(x) + ")=" + nm(a.d(x)) +
                       " !<= d(" + nm(y) + ")=" + nm(a.d(y))});

  for (int x = 0; x < n; ++x)
    if (b.le(b.supp[x], x)) {
      auto p = partial_prod(b, x, x);
      if (!p || *p != a.d(x))
        rep.violations.push_back({"Q4", nm(x) + "." + nm(x) + " != d(" + nm(x) + ")"});
    }

  // (Q5): z <= x, z <= y, y' <= x  =>  d(z) <= x.y
  auto q5_triple = [&](int z, int x, int y) {
    if (!b.le(z, x) || !b.le(z, y) || !b.le(b.supp[y], x)) return;
    auto p = partial_prod(b, x, y);
    if (!p)
      rep.violations.push_back({"Q5", "product " + nm(x) + "." + nm(y) + " undefined"});
    else if (!b.le(a.d(z), *p))
      rep.violations.push_back({"Q5", "d(" + nm(z) + ") !<= " + nm(x) + "." + nm(y) +
                                          " = " + nm(*p) + " (z=" + nm(z) + ")"});
  };
  if (n <= opt.exhaustive_cubic_cap) {
    for (int z = 0; z < n; ++z)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) q5_triple(z, x, y);
  } else {
    rep.q5_exhaustive = false;
    std::mt19937_64 rng(opt.seed + 0x9e3779b9u);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (uint64_t i = 0; i < opt.cubic_samples; ++i) q5_triple(pick(rng), pick(rng), pick(rng));
  }
  return rep;
}

/// E^op = (E; ., d, q, 1, 0): sums become products, q and d swap, bounds swap.
inline FiniteQEffectAlgebra dual(const FiniteQEffectAlgebra& a) {
  const auto& b = a.base;
  FiniteQEffectAlgebra out;
  out.base.name = b.name.empty() ? "" : b.name + "^op";
  out.base.elements = b.elements;
  out.base.n = b.n;
  out.base.zero = b.one;
  out.base.one = b.zero;
  out.base.sum.assign(static_cast<size_t>(b.n) * b.n, -1);
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (auto p = partial_prod(b, x, y))
        out.base.sum[static_cast<size_t>(x) * b.n + y] = *p;
  out.base.leq = BitMatrix(b.n);
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (b.le(y, x)) out.base.leq.set(x, y);
  out.base.supp = b.supp;
  out.qmap = a.dmap;
  out.dmap = a.qmap;
  return out;
}

struct PowerOptions {
  long long element_cap = 1000000;   // refusal threshold on |M|^|T|
  long long table_cap = 4096;        // dense-table materialization guard
};

struct PowerCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string tuple_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + ")";
}

}  // namespace detail

/// Direct product of two q-effect algebras, all operations componentwise.
inline FiniteQEffectAlgebra direct_product(const FiniteQEffectAlgebra& A,
                                           const FiniteQEffectAlgebra& B) {
  const auto &a = A.base, &b = B.base;
  FiniteQEffectAlgebra out;
  out.base.name = a.name + "x" + b.name;
  const int n = a.n * b.n;
  out.base.n = n;
  out.base.elements.reserve(n);
  auto code = [&](int i, int j) { return i * b.n + j; };
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j)
      out.base.elements.push_back(detail::tuple_name({a.elements[i], b.elements[j]}));
  out.base.zero = code(a.zero, b.zero);
  out.base.one = code(a.one, b.one);
  out.base.sum.assign(static_cast<size_t>(n) * n, -1);
  out.base.leq = BitMatrix(n);
  out.base.supp.assign(n, -1);
  out.qmap.resize(n);
  out.dmap.resize(n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) {
      int x = code(i, j);
      out.base.supp[x] = code(a.supp[i], b.supp[j]);
      out.qmap[x] = code(A.q(i), B.q(j));
      out.dmap[x] = code(A.d(i), B.d(j));
      for (int k = 0; k < a.n; ++k)
        for (int l = 0; l < b.n; ++l) {
          int y = code(k, l);
          int si = a.sum_at(i, k), sj = b.sum_at(j, l);
          if (si >= 0 && sj >= 0) out.base.sum[static_cast<size_t>(x) * n + y] = code(si, sj);
          if (a.le(i, k) && b.le(j, l)) out.base.leq.set(x, y);
        }
    }
  out.mv_by_construction = A.mv_by_construction && B.mv_by_construction;
  return out;
}

/// Direct power M^T with componentwise operations; o and j are the constant
/// bottom/top vectors. Refuses above the configured caps.
inline FiniteQEffectAlgebra direct_power(const FiniteQEffectAlgebra& M, int t,
                                         const PowerOptions& opt = {}) {
  if (t < 1) throw std::invalid_argument("direct_power: index set must be non-void");
  const auto& b = M.base;
  long long n = 1;
  for (int i = 0; i < t; ++i) {
    n *= b.n;
    if (n > opt.element_cap)
      throw PowerCapExceeded("direct power exceeds element cap (" +
                             std::to_string(opt.element_cap) + " elements)");
  }
  if (n > opt.table_cap)
    throw PowerCapExceeded(
        "direct power of " + std::to_string(n) +
        " elements exceeds the dense-table cap; use the canonical operators' lazy mode");

  const int N = static_cast<int>(n);
  std::vector<std::vector<int>> tup(N, std::vector<int>(t));
  for (int e = 0; e < N; ++e) {
    int rem = e;
    for (int i = t - 1; i >= 0; --i) {
      tup[e][i] = rem % b.n;
      rem /= b.n;
    }
  }
  FiniteQEffectAlgebra out;
  out.base.name = b.name + "^" + std::to_string(t);
  out.base.n = N;
  out.base.elements.reserve(N);
  for (int e = 0; e < N; ++e) {
    std::vector<std::string> parts(t);
    for (int i = 0; i < t; ++i) parts[i] = b.elements[tup[e][i]];
    out.base.elements.push_back(detail::tuple_name(parts));
  }
  auto encode = [&](const std::vector<int>& v) {
    int e = 0;
    for (int i = 0; i < t; ++i) e = e * b.n + v[i];
    return e;
  };
  std::vector<int> acc(t);
  out.base.zero = encode(std::vector<int>(t, b.zero));
  out.base.one = encode(std::vector<int>(t, b.one));
  out.base.sum.assign(static_cast<size_t>(N) * N, -1);
  out.base.leq = BitMatrix(N);
  out.base.supp.assign(N, -1);
  out.qmap.resize(N);
  out.dmap.resize(N);
  for (int x = 0; x < N; ++x) {
    for (int i = 0; i < t; ++i) acc[i] = b.supp[tup[x][i]];
    out.base.supp[x] = encode(acc);
    for (int i = 0; i < t; ++i) acc[i] = M.q(tup[x][i]);
    out.qmap[x] = encode(acc);
    for (int i = 0; i < t; ++i) acc[i] = M.d(tup[x][i]);
    out.dmap[x] = encode(acc);
    for (int y = 0; y < N; ++y) {
      bool le = true, def = true;
      for (int i = 0; i < t; ++i) {
        le = le && b.le(tup[x][i], tup[y][i]);
        int s = b.sum_at(tup[x][i], tup[y][i]);
        if (s < 0) def = false;
        acc[i] = s;
      }
      if (le) out.base.leq.set(x, y);
      if (def) out.base.sum[static_cast<size_t>(x) * N + y] = encode(acc);
    }
  }
  out.mv_by_construction = M.mv_by_construction;
  return out;
}

// ---------------------------------------------------------------------------
// Morphism checks

enum class MapKind { poset, effect, q_effect };

struct MorphismVerdict {
  bool is_morphism = false;
  bool is_order_reflecting = false;
  std::string witness;
};

inline MorphismVerdict check_effect_morphism(const FiniteEffectAlgebra& src,
                                             const FiniteEffectAlgebra& dst,
                                             const std::vector<int>& f) {
  MorphismVerdict v;
  v.is_morphism = true;
  if (f[src.zero] != dst.zero || f[src.one] != dst.one) {
    v.is_morphism = false;
    v.witness = "bounds not preserved";
  }
  for (int x = 0; x < src.n && v.is_morphism; ++x)
    for (int y = 0; y < src.n; ++y) {
      int z = src.sum_at(x, y);
      if (z < 0) continue;
      if (dst.sum_at(f[x], f[y]) != f[z]) {
        v.is_morphism = false;
        v.witness = "sum not preserved at (" + src.elements[x] + "," + src.elements[y] + ")";
        break;
      }
    }
  v.is_order_reflecting = is_order_reflecting_map(src.poset(), dst.poset(), f);
  return v;
}

inline MorphismVerdict check_q_morphism(const FiniteQEffectAlgebra& src,
                                        const FiniteQEffectAlgebra& dst,
                                        const std::vector<int>& f) {
  MorphismVerdict v = check_effect_morphism(src.base, dst.base, f);
  if (!v.is_morphism) return v;
  for (int x = 0; x < src.n(); ++x) {
    if (f[src.q(x)] != dst.q(f[x])) {
      v.is_morphism = false;
      v.witness = "q not preserved at " + src.base.elements[x];
      return v;
    }
    if (f[src.d(x)] != dst.d(f[x])) {
      v.is_morphism = false;
      v.witness = "d not preserved at " + src.base.elements[x];
      return v;
    }
  }
  return v;
}

inline MorphismVerdict check_poset_morphism(const FinitePoset& src, const FinitePoset& dst,
                                            const std::vector<int>& f) {
  MorphismVerdict v;
  v.is_morphism = is_monotone(src, dst, f);
  if (!v.is_morphism) v.witness = "not monotone";
  v.is_order_reflecting = is_order_reflecting_map(src, dst, f);
  return v;
}

}  // namespace qea
