#include <catch2/catch_amalgamated.hpp>

#include "qea/catalog.hpp"
#include "qea/representation.hpp"

using namespace qea;

namespace {

GaloisPair identity_pair(const FinitePoset& p) {
  std::vector<int> id(p.size());
  std::iota(id.begin(), id.end(), 0);
  return {p, p, id, id, TriState::unchecked, TriState::unchecked};
}

/// Match every enumerated state to the power coordinate it evaluates.
std::vector<int> coordinate_of_states(const FiniteQEffectAlgebra& power, int arity, int m,
                                      const ChainInfo& ci, const StateSet& states) {
  std::vector<int> out;
  for (const auto& s : states.members) {
    int found = -1;
    for (int c = 0; c < arity && found < 0; ++c) {
      bool match = true;
      for (int e = 0; e < power.n() && match; ++e) {
        auto v = detail::decode_ranks(e, arity, m, ci);
        if (s.at(e) != UnitRational::of(v[c], m - 1)) match = false;
      }
      if (match) found = c;
    }
    REQUIRE(found >= 0);
    out.push_back(found);
  }
  return out;
}

}  // namespace

TEST_CASE("embeddings") {
  auto L3 = lukasiewicz_chain(3);
  auto single = enumerate_extreme_q_states(L3).set;
  auto e = build_embedding(L3, single);
  CHECK(e.order_reflecting);
  for (int x = 0; x < 3; ++x) CHECK(e.image[x][0] == UnitRational::of(x, 2));
  CHECK(e.image[L3.base.one] == std::vector<UnitRational>{unit_one()});

  auto b2 = boolean_cube(2);
  auto coords = enumerate_mv_morphisms(b2);
  auto e2 = build_embedding(b2, coords);
  CHECK(e2.order_reflecting);
  // image of each element is its own 0/1 pair, up to state order
  for (int x = 0; x < b2.n(); ++x) {
    int ones = 0;
    for (const auto& v : e2.image[x]) ones += v.is_one();
    int expected = 0;
    for (const auto& s : coords.members) expected += s.at(x).is_one();
    CHECK(ones == expected);
  }
  CHECK_THROWS_AS(build_embedding(L3, StateSet{}), std::invalid_argument);
}

TEST_CASE("frame synthesis") {
  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);
  std::vector<int> id(sq.n());
  std::iota(id.begin(), id.end(), 0);

  SECTION("identity generator yields a reflexive relation") {
    auto sf = synthesize_frame(coords, coords, id, "id");
    for (size_t i = 0; i < coords.members.size(); ++i)
      CHECK(sf.frame.R.get(static_cast<int>(i), static_cast<int>(i)));
  }
  SECTION("constant-one generator relates nothing on a chain") {
    auto L3 = lukasiewicz_chain(3);
    auto st = enumerate_extreme_q_states(L3).set;
    std::vector<int> const_one(3, L3.base.one);
    auto sf = synthesize_frame(st, st, const_one, "const1");
    // s(1) = 1 <= t(x) fails at x = 0 for the only state, so R is empty.
    CHECK_FALSE(sf.frame.R.get(0, 0));
  }
}

TEST_CASE("representation of g for the identity pair") {
  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);
  auto rep = verify_representation_g(sq, sq, identity_pair(sq.base.poset()), coords, coords);
  CHECK(rep.report.verdict == Verdict::certified);
  CHECK(rep.diagram_exact);
  CHECK(rep.residuals.empty());
}

TEST_CASE("representation of g for a canonical pair") {
  auto L3 = lukasiewicz_chain(3);
  Frame fr;
  fr.S = {"1", "2"};
  fr.T = {"1", "2"};
  fr.R = BitMatrix(2, 2);
  fr.R.set(0, 0);
  fr.R.set(1, 0);
  fr.R.set(1, 1);
  auto cc = canonical_connection(L3, fr);
  REQUIRE(cc.pair.has_value());
  auto S = enumerate_mv_morphisms(*cc.MS);
  auto T = enumerate_mv_morphisms(*cc.MT);
  auto rep = verify_representation_g(*cc.MS, *cc.MT, *cc.pair, S, T);
  CHECK(rep.report.verdict == Verdict::certified);
  CHECK(rep.diagram_exact);
}

TEST_CASE("truncated target state set is flagged as partial, not falsified") {
  auto L3 = lukasiewicz_chain(3);
  auto S = enumerate_extreme_q_states(L3).set;
  StateSet T_empty;
  T_empty.provenance = StateProvenance::user;
  auto rep = verify_representation_g(L3, L3, identity_pair(L3.base.poset()), S, T_empty);
  CHECK(rep.report.verdict == Verdict::partial);
  CHECK(rep.truncation_candidate);
  CHECK_FALSE(rep.diagram_exact);
}

TEST_CASE("representation of both adjoints") {
  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);
  SECTION("identity pair") {
    auto rep = verify_representation_pair(sq, sq, identity_pair(sq.base.poset()), coords, coords);
    CHECK(rep.report.verdict == Verdict::certified);
    CHECK(rep.diagram_exact);
  }
  SECTION("canonical pair round trip") {
    Frame fr = time_frame({"1", "2"}, {{0, 0}, {0, 1}});
    auto cc = canonical_connection(lukasiewicz_chain(3), fr);
    REQUIRE(cc.pair.has_value());
    auto S = enumerate_mv_morphisms(*cc.MS);
    auto T = enumerate_mv_morphisms(*cc.MT);
    auto rep = verify_representation_pair(*cc.MS, *cc.MT, *cc.pair, S, T);
    CHECK(rep.report.verdict == Verdict::certified);
    CHECK(rep.diagram_exact);
    bool conv_line = false;
    for (const auto& l : rep.report.lines)
      if (l.name == "R_fbar = converse of R_g") {
        conv_line = true;
        CHECK(l.ok);
      }
    CHECK(conv_line);
  }
}

TEST_CASE("MV morphism enumeration") {
  for (int n : {2, 3, 5, 7}) {
    auto ms = enumerate_mv_morphisms(lukasiewicz_chain(n));
    REQUIRE(ms.members.size() == 1);
    for (int x = 0; x < n; ++x) CHECK(ms.members[0].at(x) == UnitRational::of(x, n - 1));
  }
  auto l23 = direct_product(lukasiewicz_chain(2), lukasiewicz_chain(3));
  CHECK(enumerate_mv_morphisms(l23).members.size() == 2);
  CHECK(enumerate_mv_morphisms(boolean_cube(2)).members.size() == 2);
  CHECK(enumerate_mv_morphisms(boolean_cube(3)).members.size() == 3);
  CHECK(enumerate_mv_morphisms(direct_power(lukasiewicz_chain(3), 3)).members.size() == 3);
  CHECK_THROWS_AS(enumerate_mv_morphisms(mo2()), std::invalid_argument);

  // Morphisms into the unit interval coincide with the extreme q-states on
  // MV input, certifying both pipelines against each other.
  for (const auto& name : {"L4", "B2", "L2xL3", "D2"}) {
    auto a = bundled_algebra(name).value();
    auto ms = enumerate_mv_morphisms(a);
    auto ex = enumerate_extreme_q_states(a);
    REQUIRE(ms.members.size() == ex.set.members.size());
    for (const auto& m : ms.members) {
      bool found = false;
      for (const auto& e : ex.set.members)
        if (m == e) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("Jauch-Piron algebra certificates") {
  auto b2 = boolean_cube(2);
  auto cert = jp_algebra_certificate(b2, enumerate_extreme_q_states(b2).set);
  CHECK(cert.verdict == TriState::yes);
  CHECK_FALSE(cert.partial);

  auto m = mo2();
  auto cm = jp_algebra_certificate(m, enumerate_extreme_q_states(m).set);
  CHECK(cm.verdict == TriState::no);
  CHECK(cm.partial);
}

TEST_CASE("tense representation round trips") {
  SECTION("identity operators on the chain square") {
    auto sq = direct_power(lukasiewicz_chain(2), 2);
    std::vector<int> id(sq.n());
    std::iota(id.begin(), id.end(), 0);
    auto rep = verify_tense_representation(sq, id, id);
    CHECK(rep.report.verdict == Verdict::certified);
    CHECK(rep.diagram_exact);
    for (size_t i = 0; i < rep.states.members.size(); ++i)
      CHECK(rep.relation.R.get(static_cast<int>(i), static_cast<int>(i)));
  }
  SECTION("canonical operators on the Boolean cube recover the frame") {
    Frame fr = time_frame({"1", "2", "3"}, {{0, 1}, {1, 1}, {2, 0}, {2, 2}});
    auto ct = canonical_tense(lukasiewicz_chain(2), fr);
    REQUIRE(ct.structure.has_value());
    auto& alg = ct.structure->algebra;
    auto rep = verify_tense_representation(alg, ct.structure->G, ct.structure->H);
    REQUIRE(rep.report.verdict == Verdict::certified);
    CHECK(rep.diagram_exact);

    auto ci = chain_info(lukasiewicz_chain(2)).value();
    auto perm = coordinate_of_states(alg, 3, 2, ci, rep.states);
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = 0; j < perm.size(); ++j)
        CHECK(rep.relation.R.get(static_cast<int>(i), static_cast<int>(j)) ==
              fr.R.get(perm[i], perm[j]));
  }
  SECTION("fig1 has no states, so the pipeline reports the unmet hypothesis") {
    auto f1 = fig1();
    std::vector<int> id(f1.n());
    std::iota(id.begin(), id.end(), 0);
    auto rep = verify_tense_representation(f1, id, id);
    CHECK(rep.report.verdict == Verdict::inapplicable);
  }
}

TEST_CASE("composition with the right adjoint is Jauch-Piron") {
  Frame fr = time_frame({"1", "2", "3"}, {{0, 1}, {1, 2}, {0, 0}});
  auto cc = canonical_connection(lukasiewicz_chain(3), fr);
  REQUIRE(cc.pair.has_value());
  auto S = enumerate_mv_morphisms(*cc.MS);
  for (const auto& s : S.members) {
    auto sg = compose_state(s, cc.pair->g);
    CHECK(check_semi_state(*cc.MT, sg, SemiLevel::jauch_piron).jauch_piron == TriState::yes);
  }
}
