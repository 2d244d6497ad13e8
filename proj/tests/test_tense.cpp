#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qea/catalog.hpp"
#include "qea/tense.hpp"

using namespace qea;

TEST_CASE("frames and relation properties") {
  Frame fr = time_frame({"a", "b"}, {{0, 0}, {1, 1}, {0, 1}});
  CHECK(fr.is_time_frame());
  CHECK(fr.reflexive());
  CHECK_FALSE(fr.symmetric());
  CHECK(fr.transitive());
}

TEST_CASE("chain detection") {
  CHECK(chain_info(lukasiewicz_chain(7)).has_value());
  CHECK(chain_info(dyadic_chain(2)).has_value());
  CHECK_FALSE(chain_info(mo2()).has_value());
  CHECK_FALSE(chain_info(boolean_cube(2)).has_value());
  auto ci = chain_info(lukasiewicz_chain(4)).value();
  for (int r = 0; r < 4; ++r) CHECK(ci.rank[ci.by_rank[r]] == r);
}

TEST_CASE("identity operators are q-tense") {
  for (const auto& name : {"L3", "MO2", "L2xL3"}) {
    auto a = bundled_algebra(name).value();
    std::vector<int> id(a.n());
    std::iota(id.begin(), id.end(), 0);
    auto ts = check_tense_operators(a, id, id);
    CHECK(ts.certified);
    CHECK(ts.report.all_ok());
    CHECK(ts.P == id);
    CHECK(ts.F == id);
  }
}

TEST_CASE("constant-one operators are the empty-relation tense pair") {
  // G = H = 1 arises canonically from the empty time frame; it certifies.
  auto L3 = lukasiewicz_chain(3);
  auto sq = direct_power(L3, 2);
  std::vector<int> const_one(sq.n(), sq.base.one);
  auto ts = check_tense_operators(sq, const_one, const_one);
  CHECK(ts.certified);

  Frame empty = time_frame({"1", "2"}, {});
  auto ct = canonical_tense(L3, empty);
  REQUIRE(ct.structure.has_value());
  CHECK(ct.structure->certified);
  CHECK(ct.structure->G == const_one);
  CHECK(ct.structure->H == const_one);
  for (int e = 0; e < sq.n(); ++e) {
    CHECK(ct.structure->P[e] == sq.base.zero);
    CHECK(ct.structure->F[e] == sq.base.zero);
  }
}

TEST_CASE("broken operators are refused with witnesses") {
  auto L3 = lukasiewicz_chain(3);
  auto sq = direct_power(L3, 2);
  std::vector<int> id(sq.n());
  std::iota(id.begin(), id.end(), 0);
  std::vector<int> swapq = id;
  swapq[sq.base.index_of("(1/2,1/2)")] = sq.base.index_of("(0,0)");  // not monotone
  auto ts = check_tense_operators(sq, swapq, id);
  CHECK_FALSE(ts.certified);
  CHECK(ts.report.verdict == Verdict::violated);
}

TEST_CASE("canonical connection formulas") {
  auto L5 = lukasiewicz_chain(5);
  auto ci = chain_info(L5).value();

  SECTION("full relation takes global minima") {
    Frame fr = time_frame({"1", "2", "3"}, {});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) fr.R.set(i, j);
    CanonicalOperators ops{ci, 5, fr};
    std::vector<int> p{3, 1, 4};
    auto g = ops.Gstar(p);
    for (int s = 0; s < 3; ++s) CHECK(g[s] == 1);
  }
  SECTION("empty relation gives constant bounds") {
    Frame fr = time_frame({"1", "2"}, {});
    CanonicalOperators ops{ci, 5, fr};
    std::vector<int> p{2, 3};
    auto g = ops.Gstar(p);
    auto q = ops.Pstar(p);
    CHECK(g == std::vector<int>{4, 4});
    CHECK(q == std::vector<int>{0, 0});
  }
  SECTION("two-point mixed relation") {
    Frame fr = time_frame({"1", "2"}, {{0, 0}, {0, 1}, {1, 1}});
    CanonicalOperators ops{ci, 5, fr};
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        auto g = ops.Gstar({a, b});
        CHECK(g[0] == std::min(a, b));
        CHECK(g[1] == b);
      }
  }
}

TEST_CASE("canonical construction rejects non-linear algebras") {
  Frame fr = time_frame({"1"}, {{0, 0}});
  auto cc = canonical_connection(mo2(), fr);
  CHECK(cc.report.verdict == Verdict::inapplicable);
  auto ct = canonical_tense(boolean_cube(2), fr);
  CHECK(ct.report.verdict == Verdict::inapplicable);
}

TEST_CASE("canonical tense structures over seeded random frames") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    int ns = 1 + static_cast<int>(rng() % 3);
    std::vector<std::string> names;
    for (int i = 0; i < ns; ++i) names.push_back(std::to_string(i));
    Frame fr;
    fr.S = fr.T = names;
    fr.R = BitMatrix(ns, ns);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        if (rng() & 1) fr.R.set(i, j);
    auto ct = canonical_tense(lukasiewicz_chain(3), fr);
    REQUIRE(ct.structure.has_value());
    CHECK(ct.structure->certified);
    CHECK(ct.report.all_ok());
  }
}

TEST_CASE("relation-property corollaries hold for canonical operators") {
  // identity relation: everything is the identity
  auto L3 = lukasiewicz_chain(3);
  Frame id3 = time_frame({"1", "2", "3"}, {{0, 0}, {1, 1}, {2, 2}});
  auto ct = canonical_tense(L3, id3);
  REQUIRE(ct.structure.has_value());
  std::vector<int> ident(ct.structure->algebra.n());
  std::iota(ident.begin(), ident.end(), 0);
  CHECK(ct.structure->G == ident);
  CHECK(ct.structure->H == ident);
  CHECK(ct.structure->P == ident);
  CHECK(ct.structure->F == ident);

  // full relation: G* is the constant global minimum
  Frame full = time_frame({"1", "2", "3"}, {});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) full.R.set(i, j);
  auto ctf = canonical_tense(L3, full);
  REQUIRE(ctf.structure.has_value());
  CHECK(ctf.report.all_ok());  // includes (i)-(iii): full is refl/sym/trans

  // reflexive-transitive random relation on four points over L5
  Frame rt = time_frame({"1", "2", "3", "4"},
                        {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  REQUIRE(rt.reflexive());
  REQUIRE(rt.transitive());
  auto ctr = canonical_tense(lukasiewicz_chain(5), rt);
  REQUIRE(ctr.structure.has_value());
  CHECK(ctr.report.all_ok());
}

TEST_CASE("sampled certification above the exhaustive cap") {
  Frame fr = time_frame({"1", "2", "3", "4", "5"},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 1}});
  CanonicalOptions opt;
  opt.sample_count = 200;
  auto ct = canonical_tense(lukasiewicz_chain(5), fr, opt);  // 5^5 = 3125 > 2000
  CHECK_FALSE(ct.exhaustive);
  CHECK_FALSE(ct.structure.has_value());
  CHECK(ct.report.all_ok());

  auto cc = canonical_connection(lukasiewicz_chain(5), fr, opt);
  CHECK_FALSE(cc.exhaustive);
  CHECK(cc.report.all_ok());
}

TEST_CASE("tense report carries the axiom breakdown") {
  Frame fr = time_frame({"1", "2"}, {{0, 1}});
  auto ct = canonical_tense(lukasiewicz_chain(3), fr);
  REQUIRE(ct.structure.has_value());
  std::vector<std::string> expected{"(T1)", "(T2)", "(T3)", "(T4)", "(T5)"};
  for (const auto& prefix : expected) {
    bool found = false;
    for (const auto& line : ct.report.lines)
      if (line.name.rfind(prefix, 0) == 0 && line.ok) found = true;
    CHECK(found);
  }
}
