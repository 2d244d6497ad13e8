#pragma once

#include <array>
#include <map>

#include "qea/qeffect.hpp"
#include "qea/rational.hpp"

namespace qea {

/// Uniform chain 0 < 1/m < ... < 1 with truncated doubling/halving, the
/// common shape of Lukasiewicz chains (m = n-1) and dyadic grids (m = 2^k).
inline RawAlgebra raw_uniform_chain(int m, const std::string& name) {
  if (m < 1) throw std::invalid_argument("chain needs at least two elements");
  RawAlgebra raw;
  raw.name = name;
  std::vector<std::string> lv(m + 1);
  for (int i = 0; i <= m; ++i) lv[i] = UnitRational::of(i, m).str();
  raw.elements = lv;
  raw.zero = lv[0];
  raw.one = lv[m];
  for (int i = 0; i <= m; ++i)
    for (int j = i; j <= m; ++j)
      if (i + j <= m) raw.sums.push_back({lv[i], lv[j], lv[i + j]});
  for (int i = 0; i <= m; ++i) {
    raw.qmap.push_back({lv[i], lv[std::min(2 * i, m)]});
    raw.dmap.push_back({lv[i], lv[std::max(2 * i - m, 0)]});
  }
  return raw;
}

inline RawAlgebra raw_lukasiewicz_chain(int n) {
  return raw_uniform_chain(n - 1, "L" + std::to_string(n));
}

inline RawAlgebra raw_dyadic_chain(int k) {
  return raw_uniform_chain(1 << k, "D" + std::to_string(k));
}

/// The diamond MO2: two incomparable complement pairs under 0 and 1.
/// A lattice effect algebra that is neither MV nor RDP.
inline RawAlgebra raw_mo2() {
  RawAlgebra raw;
  raw.name = "MO2";
  raw.elements = {"0", "a", "a'", "b", "b'", "1"};
  raw.zero = "0";
  raw.one = "1";
  for (const auto& e : raw.elements) raw.sums.push_back({"0", e, e});
  raw.sums.push_back({"a", "a'", "1"});
  raw.sums.push_back({"b", "b'", "1"});
  for (const auto& e : raw.elements) {
    raw.qmap.push_back({e, e});
    raw.dmap.push_back({e, e});
  }
  return raw;
}

/// The 11-element algebra of the running example: a sub-effect-algebra of
/// [0,1]^2 on sixths, with its fixed q/d table. "ab" and "bc" stand for
/// the elements a+b and b+c.
inline RawAlgebra raw_fig1() {
  RawAlgebra raw;
  raw.name = "fig1";
  const std::array<std::pair<int, int>, 11> coord = {{
      {0, 0}, {5, 0}, {1, 1}, {0, 5}, {6, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {1, 6}, {6, 6}}};
  const std::array<std::string, 11> nm = {"0", "a",  "b",  "c",  "ab", "2b",
                                          "3b", "4b", "5b", "bc", "1"};
  raw.elements.assign(nm.begin(), nm.end());
  raw.zero = "0";
  raw.one = "1";
  auto find = [&](int u, int v) -> int {
    for (size_t i = 0; i < coord.size(); ++i)
      if (coord[i].first == u && coord[i].second == v) return static_cast<int>(i);
    return -1;
  };
  for (size_t i = 0; i < coord.size(); ++i)
    for (size_t j = i; j < coord.size(); ++j) {
      int k = find(coord[i].first + coord[j].first, coord[i].second + coord[j].second);
      if (k >= 0) raw.sums.push_back({nm[i], nm[j], nm[static_cast<size_t>(k)]});
    }
  const std::array<std::string, 11> qv = {"0", "a",  "2b", "c",  "ab", "4b",
                                          "1", "1",  "1",  "bc", "1"};
  const std::array<std::string, 11> dv = {"0", "a",  "0",  "c",  "ab", "0",
                                          "0", "2b", "4b", "bc", "1"};
  for (size_t i = 0; i < nm.size(); ++i) {
    raw.qmap.push_back({nm[i], qv[i]});
    raw.dmap.push_back({nm[i], dv[i]});
  }
  return raw;
}

inline FiniteQEffectAlgebra lukasiewicz_chain(int n) {
  auto a = finalize_q_algebra(raw_lukasiewicz_chain(n));
  a.mv_by_construction = true;
  return a;
}

inline FiniteQEffectAlgebra dyadic_chain(int k) {
  auto a = finalize_q_algebra(raw_dyadic_chain(k));
  a.mv_by_construction = true;
  return a;
}

inline FiniteQEffectAlgebra mo2() { return finalize_q_algebra(raw_mo2()); }

inline FiniteQEffectAlgebra fig1() { return finalize_q_algebra(raw_fig1()); }

inline FiniteQEffectAlgebra boolean_cube(int k) {
  auto c = direct_power(lukasiewicz_chain(2), k);
  c.base.name = "B" + std::to_string(k);
  return c;
}

/// Serialize an algebra back to loader form (one entry per unordered pair).
inline RawAlgebra to_raw(const FiniteQEffectAlgebra& a) {
  RawAlgebra raw;
  const auto& b = a.base;
  raw.name = b.name;
  raw.elements = b.elements;
  raw.zero = b.elements[b.zero];
  raw.one = b.elements[b.one];
  for (int x = 0; x < b.n; ++x)
    for (int y = x; y < b.n; ++y)
      if (int z = b.sum_at(x, y); z >= 0)
        raw.sums.push_back({b.elements[x], b.elements[y], b.elements[z]});
  for (int x = 0; x < b.n; ++x) {
    raw.qmap.push_back({b.elements[x], b.elements[a.q(x)]});
    raw.dmap.push_back({b.elements[x], b.elements[a.d(x)]});
  }
  return raw;
}

struct BundledExample {
  std::string name;
  std::string description;
  RawAlgebra raw;
};

/// The shipped corpus: the running example, Lukasiewicz chains, Boolean
/// cubes, a chain product, the non-RDP diamond, and dyadic grid chains.
inline std::vector<BundledExample> bundled_examples() {
  std::vector<BundledExample> out;
  out.push_back({"fig1", "11-element q-effect algebra over [0,1]^2; not lattice ordered",
                 raw_fig1()});
  for (int n = 2; n <= 7; ++n)
    out.push_back({"L" + std::to_string(n), "Lukasiewicz chain with " + std::to_string(n) + " elements",
                   raw_lukasiewicz_chain(n)});
  for (int k = 1; k <= 4; ++k)
    out.push_back({"B" + std::to_string(k), "Boolean cube 2^" + std::to_string(k),
                   to_raw(boolean_cube(k))});
  {
    auto p = direct_product(lukasiewicz_chain(2), lukasiewicz_chain(3));
    p.base.name = "L2xL3";
    out.push_back({"L2xL3", "product of the 2- and 3-element chains", to_raw(p)});
  }
  out.push_back({"MO2", "diamond effect algebra; lattice but neither MV nor RDP", raw_mo2()});
  for (int k = 1; k <= 3; ++k)
    out.push_back({"D" + std::to_string(k),
                   "dyadic grid chain with denominator 2^" + std::to_string(k), raw_dyadic_chain(k)});
  return out;
}

/// Lookup by bundled name ("L5", "fig1", "B3", ...); products and powers
/// rebuilt with their construction provenance.
inline std::optional<FiniteQEffectAlgebra> bundled_algebra(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "MO2") return mo2();
  if (name == "L2xL3") {
    auto p = direct_product(lukasiewicz_chain(2), lukasiewicz_chain(3));
    p.base.name = "L2xL3";
    return p;
  }
  if (name.size() >= 2 && (name[0] == 'L' || name[0] == 'D' || name[0] == 'B')) {
    int k = 0;
    for (size_t i = 1; i < name.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      k = k * 10 + (name[i] - '0');
    }
    if (name[0] == 'L' && k >= 2 && k <= 64) return lukasiewicz_chain(k);
    if (name[0] == 'D' && k >= 1 && k <= 6) return dyadic_chain(k);
    if (name[0] == 'B' && k >= 1 && k <= 6) return boolean_cube(k);
  }
  return std::nullopt;
}

}  // namespace qea
