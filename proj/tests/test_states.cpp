#include <catch2/catch_amalgamated.hpp>

#include "qea/catalog.hpp"
#include "qea/polytope.hpp"
#include "qea/representation.hpp"
#include "qea/states.hpp"

using namespace qea;

namespace {

int el(const FiniteEffectAlgebra& a, const std::string& name) {
  int i = a.index_of(name);
  REQUIRE(i >= 0);
  return i;
}

StateVector from_strings(const FiniteEffectAlgebra& a,
                         const std::vector<std::pair<std::string, std::string>>& vals) {
  StateVector s;
  s.values.assign(a.n, unit_zero());
  for (const auto& [e, v] : vals) s.values[el(a, e)] = UnitRational::parse(v).value();
  return s;
}

/// The generated q-semi-state family used by the property tests: all
/// extreme q-states, meets of every subset, and the constant 1.
std::vector<StateVector> generated_semistates(const FiniteQEffectAlgebra& a) {
  auto ex = enumerate_extreme_q_states(a);
  REQUIRE_FALSE(ex.refused);
  std::vector<StateVector> out = ex.set.members;
  const size_t k = ex.set.members.size();
  for (size_t mask = 3; k >= 2 && mask < (size_t{1} << k); ++mask) {
    std::vector<StateVector> sub;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) sub.push_back(ex.set.members[i]);
    if (sub.size() >= 2) out.push_back(meet_semistates(a, sub).value);
  }
  out.push_back(constant_one_state(a.n()));
  return out;
}

}  // namespace

TEST_CASE("identity valuation on the three-element chain is a q-state") {
  auto L3 = lukasiewicz_chain(3);
  StateVector s = from_strings(L3.base, {{"0", "0"}, {"1/2", "1/2"}, {"1", "1"}});
  auto k = check_state(L3, s);
  CHECK(k.state == TriState::yes);
  CHECK(k.q_state == TriState::yes);
}

TEST_CASE("fig1 valuation with s(a)+s(c) breaking additivity") {
  auto f1 = fig1();
  StateVector s = from_strings(
      f1.base, {{"0", "0"},  {"a", "5/6"},  {"b", "1/6"},  {"c", "5/6"},
                {"ab", "1"}, {"2b", "1/3"}, {"3b", "1/2"}, {"4b", "2/3"},
                {"5b", "5/6"}, {"bc", "1"},   {"1", "1"}});
  auto k = check_state(f1, s);
  CHECK(k.state == TriState::no);  // a+c = 5b forces 5/6+5/6 = 5/6
}

TEST_CASE("constant maps") {
  auto L3 = lukasiewicz_chain(3);
  StateVector one = constant_one_state(3);
  auto k = check_state(L3, one);
  CHECK(k.state == TriState::no);  // s(0) != 0
  auto semi = check_semi_state(L3, one, SemiLevel::strong);
  CHECK(semi.q_semi == TriState::yes);
  CHECK(semi.strong == TriState::yes);
  CHECK(check_semi_state(L3, one, SemiLevel::jauch_piron).jauch_piron == TriState::yes);
}

TEST_CASE("every q-state is a q-semi-state") {
  for (const auto& name : {"L2", "L3", "L5", "B2", "MO2", "L2xL3", "D2"}) {
    auto a = bundled_algebra(name).value();
    for (const auto& s : enumerate_extreme_q_states(a).set.members) {
      auto k = check_semi_state(a, s, SemiLevel::q_semi);
      CHECK(k.q_semi == TriState::yes);
    }
  }
}

TEST_CASE("q-states on MV algebras are Jauch-Piron") {
  for (const auto& name : {"L2", "L4", "B2", "B3", "L2xL3", "D2"}) {
    auto a = bundled_algebra(name).value();
    for (const auto& s : enumerate_extreme_q_states(a).set.members)
      CHECK(check_semi_state(a, s, SemiLevel::jauch_piron).jauch_piron == TriState::yes);
  }
}

TEST_CASE("MO2 q-states are not Jauch-Piron but order reflection still holds") {
  auto m = mo2();
  auto ex = enumerate_extreme_q_states(m);
  REQUIRE(ex.set.members.size() == 4);
  for (const auto& s : ex.set.members)
    CHECK(check_semi_state(m, s, SemiLevel::jauch_piron).jauch_piron == TriState::no);
  CHECK(check_order_reflecting(m, ex.set).reflecting);
}

TEST_CASE("derived q-state identities") {
  for (const auto& name : {"L3", "L6", "B2", "MO2", "L2xL3"}) {
    auto a = bundled_algebra(name).value();
    for (const auto& s : enumerate_extreme_q_states(a).set.members) {
      for (int x = 0; x < a.n(); ++x) {
        CHECK(s.at(supplement(a.base, x)) == one_minus(s.at(x)));
        for (int y = 0; y < a.n(); ++y)
          if (a.base.le(x, y)) CHECK(s.at(x) <= s.at(y));
      }
    }
  }
}

TEST_CASE("pointwise meets of q-semi-states stay q-semi-states") {
  auto L3 = lukasiewicz_chain(3);
  auto sq = direct_power(L3, 2);
  auto states = enumerate_mv_morphisms(sq);
  REQUIRE(states.members.size() == 2);
  auto meet = meet_semistates(sq, states.members);
  CHECK_FALSE(meet.empty_input);
  CHECK(check_semi_state(sq, meet.value, SemiLevel::q_semi).q_semi == TriState::yes);
  int e = el(sq.base, "(1,1/2)");
  CHECK(meet.value.at(e) == UnitRational::of(1, 2));

  auto single = meet_semistates(sq, {states.members[0]});
  CHECK(single.value == states.members[0]);

  auto empty = meet_semistates(sq, {});
  CHECK(empty.empty_input);
  CHECK(empty.value == constant_one_state(sq.n()));
}

TEST_CASE("meet closure over the generated family everywhere") {
  for (const auto& name : {"L4", "B2", "MO2", "L2xL3", "D2"}) {
    auto a = bundled_algebra(name).value();
    for (const auto& t : generated_semistates(a))
      CHECK(check_semi_state(a, t, SemiLevel::q_semi).q_semi == TriState::yes);
  }
}

TEST_CASE("chain joins of q-semi-states") {
  auto L5 = lukasiewicz_chain(5);
  auto ex = enumerate_extreme_q_states(L5);
  REQUIRE(ex.set.members.size() == 1);
  StateVector id = ex.set.members[0];
  StateVector one = constant_one_state(L5.n());
  auto join = join_chain_semistates(L5, {id, one});
  CHECK(join == one);
  CHECK(check_semi_state(L5, join, SemiLevel::q_semi).q_semi == TriState::yes);
  CHECK_THROWS_AS(join_chain_semistates(L5, {}), std::invalid_argument);

  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);
  CHECK_THROWS_AS(join_chain_semistates(sq, coords.members), std::invalid_argument);
}

TEST_CASE("Jauch-Piron implies strong on all generated vectors") {
  for (const auto& name : {"L3", "L6", "B2", "MO2", "L2xL3"}) {
    auto a = bundled_algebra(name).value();
    StateSet set;
    set.members = generated_semistates(a);
    auto res = verify_jp_implies_strong(a, set);
    CHECK(res.ok);
  }
  StateSet empty;
  CHECK(verify_jp_implies_strong(lukasiewicz_chain(3), empty).ok);
}

TEST_CASE("unit-set comparison lemma on generated pairs") {
  for (const auto& name : {"L4", "B2", "L2xL3", "MO2"}) {
    auto a = bundled_algebra(name).value();
    auto fam = generated_semistates(a);
    for (const auto& t : fam)
      for (const auto& s : fam) {
        bool le = compare_by_unit_sets(a, t, s);
        CHECK(le == pointwise_le(t, s));
        // The lemma: pointwise order coincides with the unit-set condition.
        CHECK(pointwise_le(t, s) == unit_set_condition(t, s));
      }
  }
}

TEST_CASE("unit-set comparison refuses non-semi-states") {
  auto L3 = lukasiewicz_chain(3);
  StateVector bad = from_strings(L3.base, {{"0", "1"}, {"1/2", "0"}, {"1", "1"}});
  StateVector one = constant_one_state(3);
  CHECK_THROWS_AS(compare_by_unit_sets(L3, bad, one), std::invalid_argument);
}

TEST_CASE("order reflection of state sets") {
  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);
  REQUIRE(coords.members.size() == 2);
  CHECK(check_order_reflecting(sq, coords).reflecting);

  StateSet first_only;
  first_only.members = {coords.members[0]};
  auto res = check_order_reflecting(sq, first_only);
  CHECK_FALSE(res.reflecting);
  // The witness pair differs only in the coordinate the dropped state saw.
  CHECK(coords.members[0].at(res.witness.first) <= coords.members[0].at(res.witness.second));
  CHECK(coords.members[1].at(res.witness.first) > coords.members[1].at(res.witness.second));
}

TEST_CASE("infimum decomposition") {
  auto sq = direct_power(lukasiewicz_chain(3), 2);
  auto coords = enumerate_mv_morphisms(sq);

  SECTION("every member decomposes trivially") {
    for (const auto& s : coords.members) {
      auto rep = verify_infimum_decomposition(sq, coords, s);
      REQUIRE(rep.applicable);
      CHECK(rep.equal);
      CHECK(rep.st_size >= 1);
    }
  }
  SECTION("meets of members decompose") {
    auto meet = meet_semistates(sq, coords.members);
    auto rep = verify_infimum_decomposition(sq, coords, meet.value);
    REQUIRE(rep.applicable);
    CHECK(rep.equal);
    CHECK(rep.st_size == 2);
  }
  SECTION("t(0) != 0 forces the constant one via the empty meet") {
    StateVector one = constant_one_state(sq.n());
    auto rep = verify_infimum_decomposition(sq, coords, one);
    REQUIRE(rep.applicable);
    CHECK(rep.equal);
    CHECK(rep.st_size == 0);
    CHECK(rep.st_empty_constant_one);
  }
  SECTION("hypothesis failures are inapplicable, not violations") {
    StateSet truncated;
    truncated.members = {coords.members[0]};
    auto rep = verify_infimum_decomposition(sq, truncated, coords.members[0]);
    CHECK_FALSE(rep.applicable);
  }
}

TEST_CASE("superadditivity of Jauch-Piron q-semi-states with t(0)=0") {
  auto b2 = boolean_cube(2);
  auto coords = enumerate_mv_morphisms(b2);
  auto meet = meet_semistates(b2, coords.members);
  REQUIRE(meet.value.at(b2.base.zero).is_zero());
  CHECK(verify_superadditivity(b2, meet.value).ok);
  for (const auto& s : coords.members) CHECK(verify_superadditivity(b2, s).ok);

  auto sq = direct_power(lukasiewicz_chain(3), 2);
  for (const auto& t : generated_semistates(sq)) {
    if (!t.at(sq.base.zero).is_zero()) continue;
    if (check_semi_state(sq, t, SemiLevel::jauch_piron).jauch_piron != TriState::yes) continue;
    CHECK(verify_superadditivity(sq, t).ok);
  }
}
