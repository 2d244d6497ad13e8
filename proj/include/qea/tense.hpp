#pragma once

#include <random>

#include "qea/galois.hpp"
#include "qea/report.hpp"

namespace qea {

/// Frame (S, T, R) with R as an |S| x |T| boolean matrix. A time frame has
/// S = T.
struct Frame {
  std::vector<std::string> S, T;
  BitMatrix R;

  bool is_time_frame() const { return S == T; }

  bool reflexive() const {
    if (!is_time_frame()) return false;
    for (size_t i = 0; i < S.size(); ++i)
      if (!R.get(static_cast<int>(i), static_cast<int>(i))) return false;
    return true;
  }
  bool symmetric() const {
    if (!is_time_frame()) return false;
    for (size_t i = 0; i < S.size(); ++i)
      for (size_t j = 0; j < S.size(); ++j)
        if (R.get(i, j) != R.get(j, i)) return false;
    return true;
  }
  bool transitive() const {
    if (!is_time_frame()) return false;
    const int n = static_cast<int>(S.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (R.get(i, j))
          for (int k = 0; k < n; ++k)
            if (R.get(j, k) && !R.get(i, k)) return false;
    return true;
  }
};

inline Frame time_frame(std::vector<std::string> s, const std::vector<std::pair<int, int>>& rel) {
  Frame f;
  f.T = s;
  f.S = std::move(s);
  f.R = BitMatrix(static_cast<int>(f.S.size()), static_cast<int>(f.T.size()));
  for (auto [i, j] : rel) f.R.set(i, j);
  return f;
}

/// Rank structure of a linearly ordered algebra: by_rank[k] is the element
/// of height k. Empty when the algebra is not a chain.
struct ChainInfo {
  std::vector<int> by_rank;
  std::vector<int> rank;
};

inline std::optional<ChainInfo> chain_info(const FiniteQEffectAlgebra& a) {
  const auto& b = a.base;
  ChainInfo ci;
  ci.by_rank.resize(b.n);
  ci.rank.assign(b.n, 0);
  for (int x = 0; x < b.n; ++x) {
    int below = 0;
    for (int y = 0; y < b.n; ++y) {
      if (!b.le(x, y) && !b.le(y, x)) return std::nullopt;
      if (b.le(y, x) && y != x) ++below;
    }
    ci.rank[x] = below;
    ci.by_rank[below] = x;
  }
  return ci;
}

// ---------------------------------------------------------------------------
// q-tense operators on one algebra

/// Operators G, H with derived P = ' o H o ' and F = ' o G o '. Certified
/// when (P,G) and (F,H) are Galois q-connections; (T1)-(T5) are also checked
/// explicitly and their agreement with the certification is asserted.
struct TenseStructure {
  FiniteQEffectAlgebra algebra;
  std::vector<int> G, H, P, F;
  bool certified = false;
  VerificationReport report;
};

inline TenseStructure check_tense_operators(const FiniteQEffectAlgebra& alg,
                                            const std::vector<int>& G,
                                            const std::vector<int>& H) {
  TenseStructure ts;
  ts.algebra = alg;
  ts.G = G;
  ts.H = H;
  const auto& b = ts.algebra.base;
  const int n = b.n;
  ts.report.subject = b.name.empty() ? "tense structure" : "tense structure on " + b.name;
  ts.P.resize(n);
  ts.F.resize(n);
  for (int x = 0; x < n; ++x) {
    ts.P[x] = b.supp[H[b.supp[x]]];
    ts.F[x] = b.supp[G[b.supp[x]]];
  }

  FinitePoset pos = b.poset();
  GaloisPair pg{pos, pos, ts.P, ts.G, TriState::unchecked, TriState::unchecked};
  GaloisPair fh{pos, pos, ts.F, ts.H, TriState::unchecked, TriState::unchecked};
  auto cpg = check_galois_connection(pg);
  auto cfh = check_galois_connection(fh);
  auto qpg = check_galois_q_connection(ts.algebra, ts.algebra, pg);
  auto qfh = check_galois_q_connection(ts.algebra, ts.algebra, fh);
  ts.report.add("(P,G) Galois connection", cpg.pass(), cpg.witness);
  ts.report.add("(P,G) q-connection", qpg.pass(), qpg.witness);
  ts.report.add("(F,H) Galois connection", cfh.pass(), cfh.witness);
  ts.report.add("(F,H) q-connection", qfh.pass(), qfh.witness);

  bool t1 = (G[b.one] == b.one && H[b.one] == b.one);
  ts.report.add("(T1) G(1)=H(1)=1", t1);
  bool t2 = is_monotone(pos, pos, G) && is_monotone(pos, pos, H);
  ts.report.add("(T2) monotone", t2);
  bool t3 = true;
  std::string w3;
  for (int x = 0; x < n; ++x) {
    if (!b.le(x, G[ts.P[x]])) { t3 = false; w3 = "x !<= GP(x) at " + b.elements[x]; break; }
    if (!b.le(x, H[ts.F[x]])) { t3 = false; w3 = "x !<= HF(x) at " + b.elements[x]; break; }
  }
  ts.report.add("(T3) x <= GP(x), x <= HF(x)", t3, w3);
  bool t4 = true, t5 = true;
  std::string w4, w5;
  for (int x = 0; x < n; ++x) {
    if (G[alg.q(x)] != alg.q(G[x]) || H[alg.q(x)] != alg.q(H[x])) {
      if (t4) w4 = "at " + b.elements[x];
      t4 = false;
    }
    if (G[alg.d(x)] != alg.d(G[x]) || H[alg.d(x)] != alg.d(H[x])) {
      if (t5) w5 = "at " + b.elements[x];
      t5 = false;
    }
  }
  ts.report.add("(T4) q transported", t4, w4);
  ts.report.add("(T5) d transported", t5, w5);

  bool from_connections = cpg.pass() && qpg.pass() && cfh.pass() && qfh.pass();
  bool explicit_axioms = t1 && t2 && t3 && t4 && t5;
  // The axioms are consequences of the certification; both routes must agree
  // in the certified direction.
  ts.report.add("axioms follow from certification", !from_connections || explicit_axioms);
  ts.certified = from_connections;
  if (!ts.certified && ts.report.verdict == Verdict::certified)
    ts.report.verdict = Verdict::violated;
  return ts;
}

// ---------------------------------------------------------------------------
// Canonical construction over a finite chain

struct CanonicalOptions {
  long long exhaustive_cap = 2000;  // largest |M|^|T| certified exhaustively
  int sample_count = 1000;
  unsigned seed = 1;
  PowerOptions power;
};

/// Lazy power-vector operators for a chain M and a frame: elements of M^T
/// are vectors of chain ranks.
struct CanonicalOperators {
  ChainInfo chain;
  int levels = 0;  // |M|
  Frame frame;

  // G*(p)(s) = meet of p over R-successors of s (empty meet = top).
  std::vector<int> Gstar(const std::vector<int>& p) const {
    std::vector<int> out(frame.S.size(), levels - 1);
    for (size_t s = 0; s < frame.S.size(); ++s)
      for (size_t t = 0; t < frame.T.size(); ++t)
        if (frame.R.get(static_cast<int>(s), static_cast<int>(t)))
          out[s] = std::min(out[s], p[t]);
    return out;
  }
  // P*(q)(t) = join of q over R-predecessors of t (empty join = bottom).
  std::vector<int> Pstar(const std::vector<int>& q) const {
    std::vector<int> out(frame.T.size(), 0);
    for (size_t t = 0; t < frame.T.size(); ++t)
      for (size_t s = 0; s < frame.S.size(); ++s)
        if (frame.R.get(static_cast<int>(s), static_cast<int>(t)))
          out[t] = std::max(out[t], q[s]);
    return out;
  }
};

struct CanonicalConnection {
  Frame frame;
  bool exhaustive = true;  // false when certification was sampled
  // Materialized mode only:
  std::optional<FiniteQEffectAlgebra> MS, MT;  // M^S and M^T
  std::optional<GaloisPair> pair;              // f = P*: M^S -> M^T, g = G*
  CanonicalOperators ops;
  VerificationReport report;
};

namespace detail {

inline long long ipow_capped(long long base, int e, long long cap) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    v *= base;
    if (v > cap) return cap + 1;
  }
  return v;
}

/// Decode power-algebra element index into rank vector (names are built in
/// mixed-radix order by direct_power, most significant coordinate first).
inline std::vector<int> decode_ranks(int idx, int t, int m, const ChainInfo& ci) {
  std::vector<int> v(t);
  for (int i = t - 1; i >= 0; --i) {
    v[i] = ci.rank[idx % m];
    idx /= m;
  }
  return v;
}

inline int encode_ranks(const std::vector<int>& v, int m, const ChainInfo& ci) {
  int idx = 0;
  for (int r : v) idx = idx * m + ci.by_rank[r];
  return idx;
}

inline std::vector<std::vector<int>> sample_vectors(int len, int levels,
                                                    const CanonicalOptions& opt) {
  std::vector<std::vector<int>> out;
  // Constant vectors plus all one-coordinate bumps from both bounds.
  for (int v = 0; v < levels; ++v) out.push_back(std::vector<int>(len, v));
  for (int i = 0; i < len; ++i)
    for (int v = 0; v < levels; ++v) {
      std::vector<int> lo(len, 0), hi(len, levels - 1);
      lo[i] = v;
      hi[i] = v;
      out.push_back(lo);
      out.push_back(hi);
    }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(0, levels - 1);
  for (int k = 0; k < opt.sample_count; ++k) {
    std::vector<int> v(len);
    for (auto& x : v) x = pick(rng);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Canonical Galois q-connection (P*, G*) induced by a frame and a finite
/// linearly ordered q-effect algebra. Small powers are materialized and the
/// certification is exhaustive; larger powers are certified on sampled
/// vectors and the report says so.
inline CanonicalConnection canonical_connection(const FiniteQEffectAlgebra& M,
                                                const Frame& frame,
                                                const CanonicalOptions& opt = {}) {
  CanonicalConnection cc;
  cc.frame = frame;
  cc.report.subject = "canonical connection over " + M.base.name;
  auto ci = chain_info(M);
  if (!ci) {
    cc.report.inapplicable("the algebra is not linearly ordered");
    return cc;
  }
  if (frame.S.empty() || frame.T.empty()) {
    cc.report.inapplicable("frame index sets must be non-void");
    return cc;
  }
  cc.ops.chain = *ci;
  cc.ops.levels = M.n();
  cc.ops.frame = frame;

  const int ns = static_cast<int>(frame.S.size()), nt = static_cast<int>(frame.T.size());
  long long size_s = detail::ipow_capped(M.n(), ns, opt.exhaustive_cap);
  long long size_t_ = detail::ipow_capped(M.n(), nt, opt.exhaustive_cap);
  cc.exhaustive = size_s <= opt.exhaustive_cap && size_t_ <= opt.exhaustive_cap &&
                  size_s <= opt.power.table_cap && size_t_ <= opt.power.table_cap;

  if (cc.exhaustive) {
    cc.MS = direct_power(M, ns, opt.power);
    cc.MT = direct_power(M, nt, opt.power);
    GaloisPair p;
    p.A = cc.MS->base.poset();
    p.B = cc.MT->base.poset();
    const int m = M.n();
    p.f.resize(cc.MS->n());
    p.g.resize(cc.MT->n());
    for (int e = 0; e < cc.MS->n(); ++e)
      p.f[e] = detail::encode_ranks(cc.ops.Pstar(detail::decode_ranks(e, ns, m, *ci)), m, *ci);
    for (int e = 0; e < cc.MT->n(); ++e)
      p.g[e] = detail::encode_ranks(cc.ops.Gstar(detail::decode_ranks(e, nt, m, *ci)), m, *ci);
    auto con = check_galois_connection(p);
    cc.report.add("Galois connection (exhaustive)", con.pass(), con.witness);
    cc.report.add("three characterizations agree", con.agree);
    auto qc = check_galois_q_connection(*cc.MS, *cc.MT, p);
    cc.report.add("(GQ1)", qc.gq1, qc.witness);
    cc.report.add("(GQ2)", qc.gq2, qc.witness);
    cc.pair = std::move(p);
    return cc;
  }

  // Sampled certification on characteristic-style and random vectors.
  auto qs = detail::sample_vectors(ns, M.n(), opt);
  auto ps = detail::sample_vectors(nt, M.n(), opt);
  bool adj = true, gq1 = true, gq2 = true;
  auto leq_vec = [](const std::vector<int>& x, const std::vector<int>& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  std::vector<std::vector<int>> pq(qs.size()), gp(ps.size());
  for (size_t i = 0; i < qs.size(); ++i) pq[i] = cc.ops.Pstar(qs[i]);
  for (size_t j = 0; j < ps.size(); ++j) gp[j] = cc.ops.Gstar(ps[j]);
  for (size_t i = 0; i < qs.size() && adj; ++i)
    for (size_t j = 0; j < ps.size(); ++j)
      if (leq_vec(pq[i], ps[j]) != leq_vec(qs[i], gp[j])) { adj = false; break; }
  auto qd_vec = [&](const std::vector<int>& v, bool use_q) {
    std::vector<int> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      int el = ci->by_rank[v[i]];
      out[i] = ci->rank[use_q ? M.q(el) : M.d(el)];
    }
    return out;
  };
  for (const auto& q : qs) {
    if (cc.ops.Pstar(qd_vec(q, true)) != qd_vec(cc.ops.Pstar(q), true)) gq1 = false;
    if (cc.ops.Pstar(qd_vec(q, false)) != qd_vec(cc.ops.Pstar(q), false)) gq1 = false;
  }
  for (const auto& p : ps) {
    if (cc.ops.Gstar(qd_vec(p, true)) != qd_vec(cc.ops.Gstar(p), true)) gq2 = false;
    if (cc.ops.Gstar(qd_vec(p, false)) != qd_vec(cc.ops.Gstar(p), false)) gq2 = false;
  }
  cc.report.add("Galois connection (sampled, " + std::to_string(qs.size()) + "x" +
                    std::to_string(ps.size()) + " pairs)", adj);
  cc.report.add("(GQ1) sampled", gq1);
  cc.report.add("(GQ2) sampled", gq2);
  return cc;
}

struct CanonicalTense {
  Frame frame;
  bool exhaustive = true;
  std::optional<TenseStructure> structure;  // materialized mode
  VerificationReport report;
};

/// Canonical tense q-effect algebra (M^S, G*, H*) of a time frame: G* meets
/// over R-successors, H* over R-predecessors. Also asserts the relation-
/// property corollaries: (i) reflexive R gives interior/closure inequalities,
/// (ii) symmetric R gives G*=H*, P*=F*, (iii) transitive R gives the
/// iteration inequalities.
inline CanonicalTense canonical_tense(const FiniteQEffectAlgebra& M, const Frame& frame,
                                      const CanonicalOptions& opt = {}) {
  CanonicalTense ct;
  ct.frame = frame;
  ct.report.subject = "canonical tense structure over " + M.base.name;
  if (!frame.is_time_frame()) {
    ct.report.inapplicable("a time frame (S = T) is required");
    return ct;
  }
  auto ci = chain_info(M);
  if (!ci) {
    ct.report.inapplicable("the algebra is not linearly ordered");
    return ct;
  }
  const int ns = static_cast<int>(frame.S.size());
  const int m = M.n();
  long long size = detail::ipow_capped(m, ns, opt.exhaustive_cap);
  ct.exhaustive = size <= opt.exhaustive_cap && size <= opt.power.table_cap;

  Frame conv = frame;
  conv.R = frame.R.transposed();
  CanonicalOperators gops{*ci, m, frame};
  CanonicalOperators hops{*ci, m, conv};

  if (!ct.exhaustive) {
    auto cc1 = canonical_connection(M, frame, opt);
    auto cc2 = canonical_connection(M, conv, opt);
    ct.report.add("(P*,G*) sampled certification", cc1.report.all_ok());
    ct.report.add("(F*,H*) sampled certification", cc2.report.all_ok());
    auto ps = detail::sample_vectors(ns, m, opt);
    bool pf_dual = true;
    for (const auto& p : ps) {
      std::vector<int> pc(p.size());
      for (size_t i = 0; i < p.size(); ++i) pc[i] = m - 1 - p[i];
      auto lhs = hops.Gstar(pc);
      for (auto& v : lhs) v = m - 1 - v;
      if (lhs != gops.Pstar(p)) { pf_dual = false; break; }
    }
    ct.report.add("P* = ' o H* o ' (sampled)", pf_dual);
    return ct;
  }

  auto MS = direct_power(M, ns, opt.power);
  const int N = MS.n();
  std::vector<int> G(N), H(N);
  for (int e = 0; e < N; ++e) {
    auto v = detail::decode_ranks(e, ns, m, *ci);
    G[e] = detail::encode_ranks(gops.Gstar(v), m, *ci);
    H[e] = detail::encode_ranks(hops.Gstar(v), m, *ci);
  }
  ct.structure = check_tense_operators(MS, G, H);
  ct.report = ct.structure->report;
  ct.report.subject = "canonical tense structure over " + M.base.name + "^" + std::to_string(ns);

  // P* and F* must equal the supplement-conjugates exactly; this is how the
  // tense structure derived them, so check the canonical formulas instead.
  bool pf_exact = true;
  for (int e = 0; e < N && pf_exact; ++e) {
    auto v = detail::decode_ranks(e, ns, m, *ci);
    if (ct.structure->P[e] != detail::encode_ranks(gops.Pstar(v), m, *ci)) pf_exact = false;
    if (ct.structure->F[e] != detail::encode_ranks(hops.Pstar(v), m, *ci)) pf_exact = false;
  }
  ct.report.add("P*, F* match join formulas", pf_exact);

  const auto& b = MS.base;
  if (frame.reflexive()) {
    bool ok = true;
    for (int e = 0; e < N && ok; ++e)
      ok = b.le(G[e], e) && b.le(H[e], e) && b.le(e, ct.structure->P[e]) &&
           b.le(e, ct.structure->F[e]);
    ct.report.add("(i) reflexive relation inequalities", ok);
  }
  if (frame.symmetric()) {
    bool ok = G == H && ct.structure->P == ct.structure->F;
    ct.report.add("(ii) symmetric relation: G*=H*, P*=F*", ok);
  }
  if (frame.transitive()) {
    bool ok = true;
    for (int e = 0; e < N && ok; ++e)
      ok = b.le(G[e], G[G[e]]) && b.le(H[e], H[H[e]]) &&
           b.le(ct.structure->P[ct.structure->P[e]], ct.structure->P[e]) &&
           b.le(ct.structure->F[ct.structure->F[e]], ct.structure->F[e]);
    ct.report.add("(iii) transitive relation inequalities", ok);
  }
  ct.structure->report = ct.report;
  return ct;
}

}  // namespace qea
