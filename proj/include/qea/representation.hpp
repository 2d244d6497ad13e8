#pragma once

#include "qea/polytope.hpp"
#include "qea/states.hpp"
#include "qea/tense.hpp"

namespace qea {

/// The induced map into the power of the unit interval indexed by a state
/// set: image[x][i] = s_i(x).
struct Embedding {
  std::vector<std::vector<UnitRational>> image;
  bool order_reflecting = false;
};

inline Embedding build_embedding(const FiniteQEffectAlgebra& a, const StateSet& states) {
  if (states.members.empty()) throw std::invalid_argument("build_embedding: empty state set");
  Embedding e;
  e.image.assign(a.n(), std::vector<UnitRational>(states.members.size()));
  for (int x = 0; x < a.n(); ++x)
    for (size_t i = 0; i < states.members.size(); ++i)
      e.image[x][i] = states.members[i].at(x);
  e.order_reflecting = check_order_reflecting(a, states).reflecting;
  return e;
}

struct SynthesizedFrame {
  Frame frame;
  std::string generator;
};

/// R_g between state sets: s R t iff s(g(x)) <= t(x) for every x. Exact
/// rational comparisons, deterministic.
inline SynthesizedFrame synthesize_frame(const StateSet& S, const StateSet& T,
                                         const std::vector<int>& g,
                                         const std::string& generator_name = "g") {
  SynthesizedFrame out;
  out.generator = generator_name;
  const int ns = static_cast<int>(S.members.size());
  const int nt = static_cast<int>(T.members.size());
  out.frame.S.resize(ns);
  out.frame.T.resize(nt);
  for (int i = 0; i < ns; ++i) out.frame.S[i] = "s" + std::to_string(i);
  for (int j = 0; j < nt; ++j) out.frame.T[j] = "t" + std::to_string(j);
  out.frame.R = BitMatrix(ns, nt);
  const size_t n2 = g.size();  // |E2|
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      bool rel = true;
      for (size_t x = 0; x < n2 && rel; ++x)
        if (S.members[i].at(g[x]) > T.members[j].at(static_cast<int>(x))) rel = false;
      if (rel) out.frame.R.set(i, j);
    }
  return out;
}

/// State composed with a map: (s o g)(x) = s(g(x)).
inline StateVector compose_state(const StateVector& s, const std::vector<int>& g) {
  StateVector out;
  out.values.reserve(g.size());
  for (int gx : g) out.values.push_back(s.at(gx));
  return out;
}

struct RepresentationReport {
  VerificationReport report;
  Frame relation;
  bool diagram_exact = false;
  std::vector<std::string> residuals;
  // A residual with all hypotheses certified can only mean the finite state
  // set is too small, never that the theorem failed.
  bool truncation_candidate = false;
};

namespace detail {

inline bool all_jp_q_states(const FiniteQEffectAlgebra& a, const StateSet& set,
                            std::string& why) {
  for (size_t i = 0; i < set.members.size(); ++i) {
    if (check_state(a, set.members[i]).q_state != TriState::yes) {
      why = "member " + std::to_string(i) + " is not a q-state";
      return false;
    }
    if (check_semi_state(a, set.members[i], SemiLevel::jauch_piron).jauch_piron != TriState::yes) {
      why = "member " + std::to_string(i) + " is not Jauch-Piron";
      return false;
    }
  }
  return true;
}

inline bool all_q_states(const FiniteQEffectAlgebra& a, const StateSet& set, std::string& why) {
  for (size_t i = 0; i < set.members.size(); ++i)
    if (check_state(a, set.members[i]).q_state != TriState::yes) {
      why = "member " + std::to_string(i) + " is not a q-state";
      return false;
    }
  return true;
}

/// min{ t(x) : s R t }, the canonical meet over the synthesized frame; the
/// empty meet is 1.
inline UnitRational row_min(const StateSet& T, const BitMatrix& R, int srow, int x) {
  UnitRational out = unit_one();
  for (size_t j = 0; j < T.members.size(); ++j)
    if (R.get(srow, static_cast<int>(j)) && T.members[j].at(x) < out) out = T.members[j].at(x);
  return out;
}

inline UnitRational col_max(const StateSet& S, const BitMatrix& R, int tcol, int y) {
  UnitRational out = unit_zero();
  for (size_t i = 0; i < S.members.size(); ++i)
    if (R.get(static_cast<int>(i), tcol) && S.members[i].at(y) > out) out = S.members[i].at(y);
  return out;
}

}  // namespace detail

/// Representation of the right adjoint: i(g(x)) = G*(i(x)) over the frame
/// (S, T, R_g), elementwise and exact. Also re-derives the proof step that
/// every s o g is a Jauch-Piron q-semi-state.
inline RepresentationReport verify_representation_g(const FiniteQEffectAlgebra& E1,
                                                    const FiniteQEffectAlgebra& E2,
                                                    GaloisPair pair, const StateSet& S,
                                                    const StateSet& T) {
  RepresentationReport rep;
  rep.report.subject = "representation of g";
  auto con = check_galois_connection(pair);
  auto qc = check_galois_q_connection(E1, E2, pair);  // pair.f: E1 -> E2, pair.g: E2 -> E1
  if (!con.pass() || !qc.pass()) {
    rep.report.inapplicable("(f,g) is not a Galois q-connection: " +
                            (con.pass() ? qc.witness : con.witness));
    return rep;
  }
  std::string why;
  if (!detail::all_jp_q_states(E1, S, why)) {
    rep.report.inapplicable("S: " + why);
    return rep;
  }
  if (!check_order_reflecting(E1, S).reflecting) {
    rep.report.inapplicable("S is not order reflecting");
    return rep;
  }
  if (!detail::all_q_states(E2, T, why)) {
    rep.report.inapplicable("T: " + why);
    return rep;
  }
  rep.report.add("hypotheses", true);

  auto sf = synthesize_frame(S, T, pair.g, "g");
  rep.relation = sf.frame;

  bool comp_jp = true;
  std::string comp_why;
  for (size_t i = 0; i < S.members.size() && comp_jp; ++i) {
    StateVector sg = compose_state(S.members[i], pair.g);
    auto k = check_semi_state(E2, sg, SemiLevel::jauch_piron);
    if (k.jauch_piron != TriState::yes) {
      comp_jp = false;
      comp_why = "s" + std::to_string(i) + " o g: " + (k.witnesses.empty() ? "" : k.witnesses[0]);
    }
  }
  rep.report.add("s o g Jauch-Piron q-semi-states", comp_jp, comp_why);

  rep.diagram_exact = true;
  for (size_t i = 0; i < S.members.size(); ++i)
    for (int x = 0; x < E2.n(); ++x) {
      UnitRational lhs = S.members[i].at(pair.g[x]);
      UnitRational rhs = detail::row_min(T, sf.frame.R, static_cast<int>(i), x);
      if (lhs != rhs) {
        rep.diagram_exact = false;
        rep.residuals.push_back("s" + std::to_string(i) + ", x=" + E2.base.elements[x] +
                                ": s(g(x))=" + lhs.str() + " vs meet=" + rhs.str());
      }
    }
  rep.report.add("i(g(x)) = G*(i(x))", rep.diagram_exact,
                 rep.diagram_exact ? "" : rep.residuals.front());
  if (!rep.diagram_exact) {
    rep.truncation_candidate = true;
    rep.report.verdict = Verdict::partial;
    rep.report.witnesses.push_back(
        "state-set may be incomplete: hypotheses certified but the meet is strict");
  }
  return rep;
}

/// Representation of both adjoints: the g-square as above plus
/// i(f(y)) = P*(i(y)) with P* as column joins over R_g, and the
/// supplement-conjugate route R_fbar = converse of R_g.
inline RepresentationReport verify_representation_pair(const FiniteQEffectAlgebra& E1,
                                                       const FiniteQEffectAlgebra& E2,
                                                       const GaloisPair& pair,
                                                       const StateSet& S, const StateSet& T) {
  RepresentationReport rep = verify_representation_g(E1, E2, pair, S, T);
  rep.report.subject = "representation of (f,g)";
  if (rep.report.verdict == Verdict::inapplicable) return rep;
  std::string why;
  if (!detail::all_jp_q_states(E2, T, why)) {
    rep.report.inapplicable("T: " + why);
    return rep;
  }
  if (!check_order_reflecting(E2, T).reflecting) {
    rep.report.inapplicable("T is not order reflecting");
    return rep;
  }

  bool fsquare = true;
  std::string fwitness;
  for (size_t j = 0; j < T.members.size() && fsquare; ++j)
    for (int y = 0; y < E1.n(); ++y) {
      UnitRational lhs = T.members[j].at(pair.f[y]);
      UnitRational rhs = detail::col_max(S, rep.relation.R, static_cast<int>(j), y);
      if (lhs != rhs) {
        fsquare = false;
        fwitness = "t" + std::to_string(j) + ", y=" + E1.base.elements[y] + ": t(f(y))=" +
                   lhs.str() + " vs join=" + rhs.str();
        rep.residuals.push_back(fwitness);
        break;
      }
    }
  rep.report.add("i(f(y)) = P*(i(y))", fsquare, fwitness);

  // R_fbar, synthesized from the conjugated left adjoint, equals (R_g)^{-1}.
  std::vector<int> fbar(E1.n());
  for (int w = 0; w < E1.n(); ++w) fbar[w] = E2.base.supp[pair.f[E1.base.supp[w]]];
  auto rf = synthesize_frame(T, S, fbar, "fbar");
  bool conv = rf.frame.R == rep.relation.R.transposed();
  rep.report.add("R_fbar = converse of R_g", conv);

  // H*(q')(t) = P*(q)(t)' re-verified on the embedded vectors.
  bool hp = true;
  for (size_t j = 0; j < T.members.size() && hp; ++j)
    for (int y = 0; y < E1.n(); ++y) {
      UnitRational mn = unit_one();
      for (size_t i = 0; i < S.members.size(); ++i)
        if (rep.relation.R.get(static_cast<int>(i), static_cast<int>(j))) {
          UnitRational c = one_minus(S.members[i].at(y));
          if (c < mn) mn = c;
        }
      if (mn != one_minus(detail::col_max(S, rep.relation.R, static_cast<int>(j), y))) {
        hp = false;
        break;
      }
    }
  rep.report.add("H*(q') = P*(q)'", hp);

  if (!fsquare && rep.report.verdict == Verdict::certified) {
    rep.truncation_candidate = true;
    rep.report.verdict = Verdict::partial;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// MV morphisms and the tense representation pipeline

/// All morphisms of a finite MV-classified algebra into the standard algebra
/// on [0,1]. Each atom generates a maximal chain 0 < a < 2a < ... < m.a; the
/// evaluation x -> max{k : k.a <= x}/m is the morphism attached to that
/// factor. Every candidate is re-certified as a Jauch-Piron q-state; on MV
/// input nothing is dropped.
inline StateSet enumerate_mv_morphisms(const FiniteQEffectAlgebra& a) {
  const auto& b = a.base;
  if (!a.mv_by_construction && !classify(b).is_mv)
    throw std::invalid_argument("enumerate_mv_morphisms requires an MV-classified algebra");
  StateSet out;
  out.provenance = StateProvenance::morphisms;

  std::vector<int> atoms;
  for (int x = 0; x < b.n; ++x) {
    if (x == b.zero) continue;
    bool minimal = true;
    for (int y = 0; y < b.n && minimal; ++y)
      if (y != b.zero && y != x && b.le(y, x)) minimal = false;
    if (minimal) atoms.push_back(x);
  }
  for (int atom : atoms) {
    std::vector<int> multiples{b.zero, atom};  // k.a at index k
    while (true) {
      int next = b.sum_at(multiples.back(), atom);
      if (next < 0) break;
      multiples.push_back(next);
    }
    const long m = static_cast<long>(multiples.size()) - 1;
    StateVector s;
    s.values.reserve(b.n);
    for (int x = 0; x < b.n; ++x) {
      long k = 0;
      for (long i = m; i >= 1; --i)
        if (b.le(multiples[i], x)) { k = i; break; }
      s.values.push_back(UnitRational::of(k, m));
    }
    classify_state(a, s);
    if (s.q_state != TriState::yes || s.jauch_piron != TriState::yes) continue;
    bool dup = false;
    for (const auto& existing : out.members)
      if (existing == s) { dup = true; break; }
    if (!dup) out.members.push_back(std::move(s));
  }
  return out;
}

/// Definition-(c) certificate: "every q-state is Jauch-Piron". Outright yes
/// only on MV input; otherwise the extreme states are checked and the
/// verdict is an explicitly partial certificate.
struct JpAlgebraCertificate {
  TriState verdict = TriState::unchecked;
  bool partial = false;
  std::string note;
};

inline JpAlgebraCertificate jp_algebra_certificate(const FiniteQEffectAlgebra& a,
                                                   const StateSet& extreme) {
  JpAlgebraCertificate c;
  if (a.mv_by_construction || classify(a.base).is_mv) {
    c.verdict = TriState::yes;
    c.note = "MV-classified: every state satisfies the common lower bound law";
    return c;
  }
  c.partial = true;
  for (const auto& s : extreme.members)
    if (check_semi_state(a, s, SemiLevel::jauch_piron).jauch_piron != TriState::yes) {
      c.verdict = TriState::no;
      c.note = "an extreme q-state is not Jauch-Piron";
      return c;
    }
  c.verdict = TriState::yes;
  c.note = "extreme q-states checked only; not a certificate for the full state space";
  return c;
}

struct TenseRepresentationReport {
  VerificationReport report;
  StateSet states;           // the state set used, named in the report
  Frame relation;            // synthesized R_G
  bool diagram_exact = false;
  std::vector<std::string> residuals;
};

/// Pipeline of the tense representation: certify (G,H), enumerate Jauch-
/// Piron q-states, gate on order reflection, synthesize R_G, and check both
/// embedding squares i(G(x)) = G*(i(x)) and i(H(x)) = H*(i(x)) exactly.
inline TenseRepresentationReport verify_tense_representation(
    const FiniteQEffectAlgebra& alg, const std::vector<int>& G, const std::vector<int>& H,
    const ExtremeStateOptions& opt = {}) {
  TenseRepresentationReport rep;
  rep.report.subject = "tense representation on " + alg.base.name;

  TenseStructure ts = check_tense_operators(alg, G, H);
  rep.report.add("q-tense certification", ts.certified);
  if (!ts.certified) {
    rep.report.inapplicable("(G,H) failed q-tense certification: axiom-violation");
    return rep;
  }

  if (alg.mv_by_construction || classify(alg.base).is_mv) {
    rep.states = enumerate_mv_morphisms(alg);
    rep.report.add("state set: MV morphisms", true,
                   std::to_string(rep.states.members.size()) + " morphisms");
  } else {
    auto ex = enumerate_extreme_q_states(alg, opt);
    if (ex.refused) {
      rep.report.inapplicable("state enumeration refused: " + ex.refusal);
      return rep;
    }
    rep.states.provenance = StateProvenance::extreme;
    for (auto& s : ex.set.members)
      if (check_semi_state(alg, s, SemiLevel::jauch_piron).jauch_piron == TriState::yes)
        rep.states.members.push_back(std::move(s));
    rep.report.add("state set: Jauch-Piron extreme q-states", true,
                   std::to_string(rep.states.members.size()) + " states");
  }
  if (rep.states.members.empty()) {
    rep.report.inapplicable("hypothesis unmet: no Jauch-Piron q-states available");
    return rep;
  }
  if (!check_order_reflecting(alg, rep.states).reflecting) {
    rep.report.inapplicable("hypothesis unmet: state set is not order reflecting");
    return rep;
  }
  rep.report.add("order-reflection gate", true);

  auto sf = synthesize_frame(rep.states, rep.states, G, "G");
  rep.relation = sf.frame;
  BitMatrix conv = sf.frame.R.transposed();

  rep.diagram_exact = true;
  for (size_t i = 0; i < rep.states.members.size(); ++i)
    for (int x = 0; x < alg.n(); ++x) {
      UnitRational lg = rep.states.members[i].at(G[x]);
      UnitRational rg = detail::row_min(rep.states, sf.frame.R, static_cast<int>(i), x);
      if (lg != rg) {
        rep.diagram_exact = false;
        rep.residuals.push_back("G square: s" + std::to_string(i) + ", x=" +
                                alg.base.elements[x] + ": " + lg.str() + " vs " + rg.str());
      }
      UnitRational lh = rep.states.members[i].at(H[x]);
      UnitRational rh = detail::row_min(rep.states, conv, static_cast<int>(i), x);
      if (lh != rh) {
        rep.diagram_exact = false;
        rep.residuals.push_back("H square: s" + std::to_string(i) + ", x=" +
                                alg.base.elements[x] + ": " + lh.str() + " vs " + rh.str());
      }
    }
  rep.report.add("i(G(x))=G*(i(x)) and i(H(x))=H*(i(x))", rep.diagram_exact,
                 rep.diagram_exact || rep.residuals.empty() ? "" : rep.residuals.front());
  if (!rep.diagram_exact && rep.report.verdict != Verdict::inapplicable) {
    rep.report.verdict = Verdict::partial;
    rep.report.witnesses.push_back("truncation-candidate: hypotheses certified, residual remains");
  }
  return rep;
}

}  // namespace qea
