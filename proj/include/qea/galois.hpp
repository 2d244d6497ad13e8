#pragma once

#include <string>
#include <vector>

#include "qea/poset.hpp"
#include "qea/qeffect.hpp"
#include "qea/report.hpp"
#include "qea/terms.hpp"

namespace qea {

/// Candidate adjoint pair between two finite posets: f: A -> B on the left,
/// g: B -> A on the right. Certification flags are filled by the checks.
struct GaloisPair {
  FinitePoset A, B;
  std::vector<int> f, g;
  TriState connection = TriState::unchecked;
  TriState q_connection = TriState::unchecked;
};

struct ConnectionReport {
  // The three equivalent characterizations, each evaluated independently.
  bool adjunction = false;    // f(a) <= b  iff  a <= g(b)
  bool unit_counit = false;   // monotone, id <= g.f, f.g <= id
  bool sup_inf = false;       // g(b) = max{x | f(x) <= b}, f(a) = min{y | a <= g(y)}
  bool agree = false;
  std::string witness;

  bool pass() const { return adjunction; }
};

/// Evaluates all three conditions of the Galois-connection characterization
/// and reports whether the verdicts coincide. Condition (3) asks for the
/// bound set to attain a maximum/minimum rather than assuming completeness.
inline ConnectionReport check_galois_connection(GaloisPair& p) {
  ConnectionReport rep;
  const int na = p.A.size(), nb = p.B.size();

  rep.adjunction = true;
  for (int a = 0; a < na && rep.adjunction; ++a)
    for (int b = 0; b < nb; ++b)
      if (p.B.le(p.f[a], b) != p.A.le(a, p.g[b])) {
        rep.adjunction = false;
        rep.witness = "adjunction fails at (" + p.A.names[a] + ", " + p.B.names[b] + ")";
        break;
      }

  rep.unit_counit = is_monotone(p.A, p.B, p.f) && is_monotone(p.B, p.A, p.g);
  if (rep.unit_counit)
    for (int a = 0; a < na; ++a)
      if (!p.A.le(a, p.g[p.f[a]])) { rep.unit_counit = false; break; }
  if (rep.unit_counit)
    for (int b = 0; b < nb; ++b)
      if (!p.B.le(p.f[p.g[b]], b)) { rep.unit_counit = false; break; }

  rep.sup_inf = true;
  auto cond3_fail = [&](const std::string& w) {
    rep.sup_inf = false;
    if (rep.witness.empty()) rep.witness = w;
  };
  for (int b = 0; b < nb && rep.sup_inf; ++b) {
    // g(b) must be the maximum of {x | f(x) <= b}.
    if (!p.B.le(p.f[p.g[b]], b))
      cond3_fail("g(" + p.B.names[b] + ") is not in {x | f(x) <= " + p.B.names[b] + "}");
    for (int x = 0; x < na && rep.sup_inf; ++x)
      if (p.B.le(p.f[x], b) && !p.A.le(x, p.g[b]))
        cond3_fail("{x | f(x) <= " + p.B.names[b] + "} has no maximum at g");
  }
  for (int a = 0; a < na && rep.sup_inf; ++a) {
    if (!p.A.le(a, p.g[p.f[a]]))
      cond3_fail("f(" + p.A.names[a] + ") is not in {y | " + p.A.names[a] + " <= g(y)}");
    for (int y = 0; y < nb && rep.sup_inf; ++y)
      if (p.A.le(a, p.g[y]) && !p.B.le(p.f[a], y))
        cond3_fail("{y | " + p.A.names[a] + " <= g(y)} has no minimum at f");
  }

  rep.agree = (rep.adjunction == rep.unit_counit) && (rep.adjunction == rep.sup_inf);
  p.connection = rep.adjunction ? TriState::yes : TriState::no;
  if (p.connection != TriState::yes) p.q_connection = TriState::no;
  return rep;
}

/// The powerset adjunction of a relation R between two finite sets:
///   f_R(X) = { b | some x in X has x R b }
///   g_R(Y) = { a | every b with a R b lies in Y }.
inline GaloisPair powerset_galois(const std::vector<std::string>& A,
                                  const std::vector<std::string>& B, const BitMatrix& R) {
  GaloisPair p;
  p.A = powerset_poset(A);
  p.B = powerset_poset(B);
  const int ka = static_cast<int>(A.size()), kb = static_cast<int>(B.size());
  p.f.resize(1 << ka);
  p.g.resize(1 << kb);
  for (int X = 0; X < (1 << ka); ++X) {
    int img = 0;
    for (int x = 0; x < ka; ++x)
      if (X >> x & 1)
        for (int b = 0; b < kb; ++b)
          if (R.get(x, b)) img |= 1 << b;
    p.f[X] = img;
  }
  for (int Y = 0; Y < (1 << kb); ++Y) {
    int img = 0;
    for (int a = 0; a < ka; ++a) {
      bool all_in = true;
      for (int b = 0; b < kb && all_in; ++b)
        if (R.get(a, b) && !(Y >> b & 1)) all_in = false;
      if (all_in) img |= 1 << a;
    }
    p.g[Y] = img;
  }
  check_galois_connection(p);
  return p;
}

struct QConnectionReport {
  bool gq1 = false;  // f transports q and d
  bool gq2 = false;  // g transports q and d
  std::string witness;
  bool pass() const { return gq1 && gq2; }
};

/// (GQ1)+(GQ2) on a certified connection between two q-effect algebras.
inline QConnectionReport check_galois_q_connection(const FiniteQEffectAlgebra& EA,
                                                   const FiniteQEffectAlgebra& EB,
                                                   GaloisPair& p) {
  QConnectionReport rep;
  if (p.connection == TriState::unchecked) check_galois_connection(p);
  if (p.connection != TriState::yes) {
    rep.witness = "pair is not a Galois connection";
    p.q_connection = TriState::no;
    return rep;
  }
  rep.gq1 = true;
  for (int x = 0; x < EA.n(); ++x) {
    if (p.f[EA.q(x)] != EB.q(p.f[x]) || p.f[EA.d(x)] != EB.d(p.f[x])) {
      rep.gq1 = false;
      rep.witness = "(GQ1) fails at " + EA.base.elements[x];
      break;
    }
  }
  rep.gq2 = true;
  for (int y = 0; y < EB.n(); ++y) {
    if (p.g[EB.q(y)] != EA.q(p.g[y]) || p.g[EB.d(y)] != EA.d(p.g[y])) {
      rep.gq2 = false;
      if (rep.witness.empty()) rep.witness = "(GQ2) fails at " + EB.base.elements[y];
      break;
    }
  }
  p.q_connection = (rep.gq1 && rep.gq2) ? TriState::yes : TriState::no;
  return rep;
}

/// The supplement-conjugated pair (g-bar, f-bar) of a Galois q-connection
/// (f, g): g-bar = '1 o g o '2 becomes the left adjoint, f-bar = '2 o f o '1
/// the right one. The returned pair is re-certified.
inline GaloisPair bar_maps(const FiniteQEffectAlgebra& EA, const FiniteQEffectAlgebra& EB,
                           const GaloisPair& p) {
  GaloisPair out;
  out.A = p.B;
  out.B = p.A;
  out.f.resize(EB.n());
  out.g.resize(EA.n());
  for (int y = 0; y < EB.n(); ++y) out.f[y] = EA.base.supp[p.g[EB.base.supp[y]]];
  for (int x = 0; x < EA.n(); ++x) out.g[x] = EB.base.supp[p.f[EA.base.supp[x]]];
  check_galois_connection(out);
  check_galois_q_connection(EB, EA, out);
  return out;
}

struct RgrfReport {
  bool applicable = true;
  std::string why;
  bool lhs = false;          // s.g <= t pointwise on E2
  bool rhs = false;          // s <= t.f pointwise on E1
  bool equivalence = false;  // lhs == rhs
  bool bar_clauses_checked = false;
  bool bar1 = false, bar2 = false;  // t <= s.g-bar resp. t.f-bar <= s
  bool bar_equivalences = false;
};

/// Transfer lemma for a Galois q-connection (f,g) and order-preserving maps
/// s: E1 -> E3, t: E2 -> E3. When s and t are effect morphisms the two
/// supplement-conjugated clauses are verified as well.
inline RgrfReport verify_rgrf_transfer(const FiniteQEffectAlgebra& E1,
                                       const FiniteQEffectAlgebra& E2,
                                       const FiniteQEffectAlgebra& E3, const GaloisPair& p,
                                       const std::vector<int>& s, const std::vector<int>& t) {
  RgrfReport rep;
  auto p1 = E1.base.poset(), p2 = E2.base.poset(), p3 = E3.base.poset();
  if (!is_monotone(p1, p3, s) || !is_monotone(p2, p3, t)) {
    rep.applicable = false;
    rep.why = "s and t must be order-preserving";
    return rep;
  }
  rep.lhs = true;
  for (int x = 0; x < E2.n(); ++x)
    if (!E3.base.le(s[p.g[x]], t[x])) { rep.lhs = false; break; }
  rep.rhs = true;
  for (int y = 0; y < E1.n(); ++y)
    if (!E3.base.le(s[y], t[p.f[y]])) { rep.rhs = false; break; }
  rep.equivalence = (rep.lhs == rep.rhs);

  bool s_morph = check_effect_morphism(E1.base, E3.base, s).is_morphism;
  bool t_morph = check_effect_morphism(E2.base, E3.base, t).is_morphism;
  if (s_morph && t_morph) {
    rep.bar_clauses_checked = true;
    auto gbar = [&](int z) { return E1.base.supp[p.g[E2.base.supp[z]]]; };
    auto fbar = [&](int w) { return E2.base.supp[p.f[E1.base.supp[w]]]; };
    rep.bar1 = true;
    for (int z = 0; z < E2.n(); ++z)
      if (!E3.base.le(t[z], s[gbar(z)])) { rep.bar1 = false; break; }
    rep.bar2 = true;
    for (int w = 0; w < E1.n(); ++w)
      if (!E3.base.le(t[fbar(w)], s[w])) { rep.bar2 = false; break; }
    rep.bar_equivalences = (rep.lhs == rep.bar1) && (rep.rhs == rep.bar2);
  }
  return rep;
}

struct TermCommutationResult {
  bool applicable = true;
  std::string why;
  bool commutes = false;
  std::string witness;
};

/// t_r(f(x)) = f(t_r(x)) for a map satisfying (GQ1), exhaustively over the
/// source carrier.
inline TermCommutationResult verify_term_commutation(const FiniteQEffectAlgebra& EA,
                                                     const FiniteQEffectAlgebra& EB,
                                                     const std::vector<int>& f,
                                                     const UnitRational& r) {
  TermCommutationResult res;
  for (int x = 0; x < EA.n(); ++x)
    if (f[EA.q(x)] != EB.q(f[x]) || f[EA.d(x)] != EB.d(f[x])) {
      res.applicable = false;
      res.why = "(GQ1) fails at " + EA.base.elements[x];
      return res;
    }
  CloneTerm t = threshold_term(r);
  res.commutes = true;
  for (int x = 0; x < EA.n(); ++x) {
    int lhs = eval_term(t, EB, f[x]);
    int rhs = f[eval_term(t, EA, x)];
    if (lhs != rhs) {
      res.commutes = false;
      res.witness = EA.base.elements[x];
      break;
    }
  }
  return res;
}

}  // namespace qea
