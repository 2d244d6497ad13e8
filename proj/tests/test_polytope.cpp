#include <catch2/catch_amalgamated.hpp>

#include "oracle_grid.hpp"
#include "qea/catalog.hpp"
#include "qea/polytope.hpp"

using namespace qea;

namespace {

std::vector<std::vector<mpq_class>> raw_vectors(const ExtremeStateResult& r) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& s : r.set.members) {
    std::vector<mpq_class> v;
    v.reserve(s.values.size());
    for (const auto& u : s.values) v.push_back(u.raw());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST_CASE("chains have exactly the scale valuation") {
  for (int n : {2, 3, 4, 5, 6}) {
    auto chain = lukasiewicz_chain(n);
    auto ex = enumerate_extreme_q_states(chain);
    REQUIRE_FALSE(ex.refused);
    REQUIRE(ex.set.members.size() == 1);
    for (int x = 0; x < chain.n(); ++x)
      CHECK(ex.set.members[0].at(x) == UnitRational::of(x, n - 1));
  }
}

TEST_CASE("the square of the two-chain has the two characters") {
  auto b2 = boolean_cube(2);
  auto ex = enumerate_extreme_q_states(b2);
  REQUIRE(ex.set.members.size() == 2);
  for (const auto& s : ex.set.members)
    for (int x = 0; x < b2.n(); ++x) CHECK((s.at(x).is_zero() || s.at(x).is_one()));
}

TEST_CASE("MO2 has four characters, fig1 has no q-states at all") {
  CHECK(enumerate_extreme_q_states(mo2()).set.members.size() == 4);
  // The fig1 q/d table forces s(b)=1/6 along the chain while pinning
  // s(a), s(c) to {0,1}; together with s(a)+s(c)=s(5b)=5/6 this is
  // unsatisfiable, so the q-state space is empty.
  auto f1 = enumerate_extreme_q_states(fig1());
  CHECK_FALSE(f1.refused);
  CHECK(f1.set.members.empty());
}

TEST_CASE("every enumerated vertex is re-certified as a q-state") {
  for (const auto& name : {"L3", "L5", "B2", "B3", "MO2", "L2xL3", "D2"}) {
    auto a = bundled_algebra(name).value();
    auto ex = enumerate_extreme_q_states(a);
    REQUIRE_FALSE(ex.refused);
    CHECK(ex.rejected_by_certification == 0);
    for (const auto& s : ex.set.members) {
      CHECK(s.q_state == TriState::yes);
      CHECK(check_state(a, s).q_state == TriState::yes);
    }
  }
}

TEST_CASE("carrier cap refusal") {
  ExtremeStateOptions opt;
  opt.carrier_cap = 8;
  auto big = direct_power(lukasiewicz_chain(3), 2);  // 9 elements
  auto ex = enumerate_extreme_q_states(big, opt);
  CHECK(ex.refused);
  CHECK_FALSE(ex.refusal.empty());
}

TEST_CASE("grid-search oracle agrees with the exact pipeline") {
  // The oracle brute-forces all 2^(n-2) signatures with no order pruning,
  // scans a dyadic grid, and polishes candidates through their active sets.
  for (const auto& name : {"L2", "L3", "L4", "L5", "L6", "B1", "B2", "MO2", "L2xL3", "D1", "D2"}) {
    INFO(name);
    auto a = bundled_algebra(name).value();
    REQUIRE(a.n() <= 6);
    auto lp = raw_vectors(enumerate_extreme_q_states(a));
    auto grid = oracle::all_branch_vertices(a);
    REQUIRE(lp.size() == grid.size());
    for (size_t i = 0; i < lp.size(); ++i) CHECK(lp[i] == grid[i]);
  }
}

namespace {

/// Two complement pairs a+a=1, b+b=1 glued at the bounds: a valid q-effect
/// algebra (q = 1, d = 0 on the middle layer) that is a lattice but not MV.
FiniteQEffectAlgebra horizontal_sum() {
  RawAlgebra raw;
  raw.name = "HS";
  raw.elements = {"0", "a", "b", "1"};
  raw.zero = "0";
  raw.one = "1";
  for (const auto& e : raw.elements) raw.sums.push_back({"0", e, e});
  raw.sums.push_back({"a", "a", "1"});
  raw.sums.push_back({"b", "b", "1"});
  raw.qmap = {{"0", "0"}, {"a", "1"}, {"b", "1"}, {"1", "1"}};
  raw.dmap = {{"0", "0"}, {"a", "0"}, {"b", "0"}, {"1", "1"}};
  return finalize_q_algebra(raw);
}

}  // namespace

TEST_CASE("glued complement pairs have one half-valued q-state") {
  auto hs = horizontal_sum();
  REQUIRE(validate_q_axioms(hs).pass());
  auto c = classify(hs.base);
  CHECK(c.is_lattice);
  CHECK_FALSE(c.is_mv);

  auto ex = enumerate_extreme_q_states(hs);
  REQUIRE(ex.set.members.size() == 1);
  const auto& s = ex.set.members[0];
  CHECK(s.at(hs.base.index_of("a")) == UnitRational::of(1, 2));
  CHECK(s.at(hs.base.index_of("b")) == UnitRational::of(1, 2));

  auto grid = oracle::all_branch_vertices(hs);
  REQUIRE(grid.size() == 1);
  for (int x = 0; x < hs.n(); ++x) CHECK(grid[0][x] == s.at(x).raw());

  // The singleton set cannot reflect the order: a and b are incomparable
  // yet share every state value.
  auto orr = check_order_reflecting(hs, ex.set);
  CHECK_FALSE(orr.reflecting);
}

TEST_CASE("cube character counts grow with the dimension") {
  CHECK(enumerate_extreme_q_states(boolean_cube(3)).set.members.size() == 3);
  CHECK(enumerate_extreme_q_states(boolean_cube(4)).set.members.size() == 4);
  CHECK(enumerate_extreme_q_states(dyadic_chain(3)).set.members.size() == 1);
  CHECK(enumerate_extreme_q_states(lukasiewicz_chain(7)).set.members.size() == 1);
}

TEST_CASE("branch polytope construction matches the signature") {
  auto L3 = lukasiewicz_chain(3);
  std::vector<BranchLeg> sig(3, BranchLeg::free_pinned);
  sig[L3.base.index_of("1/2")] = BranchLeg::low;
  auto bp = build_branch_polytope(L3, sig);
  CHECK(bp.equalities.size() >= 4);
  CHECK(bp.inequalities.size() >= 6);
}
