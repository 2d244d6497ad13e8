#pragma once

#include <set>

#include "qea/effect_algebra.hpp"

namespace qea {

enum class IdealFlavor : uint8_t { ideal, filter };

/// Down-closed subset closed under defined sums (ideal), or its dual
/// up-closed subset closed under defined products (filter).
struct IdealOrFilter {
  std::vector<bool> members;
  IdealFlavor flavor = IdealFlavor::ideal;

  bool contains(int x) const { return members[x]; }
  std::vector<int> element_list() const {
    std::vector<int> out;
    for (size_t i = 0; i < members.size(); ++i)
      if (members[i]) out.push_back(static_cast<int>(i));
    return out;
  }
};

namespace detail {

inline void close_ideal(const FiniteEffectAlgebra& a, std::vector<bool>& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < a.n; ++x) {
      if (s[x]) continue;
      bool add = false;
      for (int y = 0; y < a.n && !add; ++y) {
        if (!s[y]) continue;
        if (a.le(x, y)) add = true;
      }
      if (!add)
        for (int y = 0; y < a.n && !add; ++y) {
          if (!s[y]) continue;
          for (int z = 0; z < a.n; ++z)
            if (s[z] && a.sum_at(y, z) == x) { add = true; break; }
        }
      if (add) { s[x] = true; changed = true; }
    }
  }
}

inline void close_filter(const FiniteEffectAlgebra& a, std::vector<bool>& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < a.n; ++x) {
      if (s[x]) continue;
      bool add = false;
      for (int y = 0; y < a.n && !add; ++y) {
        if (!s[y]) continue;
        if (a.le(y, x)) add = true;
      }
      if (!add)
        for (int y = 0; y < a.n && !add; ++y) {
          if (!s[y]) continue;
          for (int z = 0; z < a.n; ++z)
            if (s[z]) {
              auto p = partial_prod(a, y, z);
              if (p && *p == x) { add = true; break; }
            }
        }
      if (add) { s[x] = true; changed = true; }
    }
  }
}

}  // namespace detail

inline IdealOrFilter generated_ideal(const FiniteEffectAlgebra& a, const std::vector<int>& seed) {
  IdealOrFilter out;
  out.members.assign(a.n, false);
  out.members[a.zero] = true;
  for (int x : seed) out.members[x] = true;
  detail::close_ideal(a, out.members);
  return out;
}

inline IdealOrFilter generated_filter(const FiniteEffectAlgebra& a, const std::vector<int>& seed) {
  IdealOrFilter out;
  out.flavor = IdealFlavor::filter;
  out.members.assign(a.n, false);
  out.members[a.one] = true;
  for (int x : seed) out.members[x] = true;
  detail::close_filter(a, out.members);
  return out;
}

/// All ideals, by closure of generator extensions; complete because every
/// ideal is reached by adding its elements one at a time.
inline std::vector<IdealOrFilter> enumerate_ideals(const FiniteEffectAlgebra& a,
                                                   size_t guard = 100000) {
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> frontier;
  frontier.push_back(generated_ideal(a, {}).members);
  seen.insert(frontier.back());
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (int x = 0; x < a.n; ++x) {
      if (cur[x]) continue;
      auto ext = cur;
      ext[x] = true;
      detail::close_ideal(a, ext);
      if (seen.insert(ext).second) {
        if (seen.size() > guard) throw std::runtime_error("enumerate_ideals: too many ideals");
        frontier.push_back(std::move(ext));
      }
    }
  }
  std::vector<IdealOrFilter> out;
  for (const auto& m : seen) out.push_back({m, IdealFlavor::ideal});
  return out;
}

struct RdpResult {
  bool holds = true;
  std::array<int, 3> witness{-1, -1, -1};  // x <= y1+y2 with no decomposition
};

/// Riesz decomposition property by exhaustive search.
inline RdpResult check_rdp(const FiniteEffectAlgebra& a) {
  for (int y1 = 0; y1 < a.n; ++y1)
    for (int y2 = 0; y2 < a.n; ++y2) {
      int s = a.sum_at(y1, y2);
      if (s < 0) continue;
      for (int x = 0; x < a.n; ++x) {
        if (!a.le(x, s)) continue;
        bool found = false;
        for (int x1 = 0; x1 < a.n && !found; ++x1) {
          if (!a.le(x1, y1)) continue;
          for (int x2 = 0; x2 < a.n; ++x2)
            if (a.le(x2, y2) && a.sum_at(x1, x2) == x) { found = true; break; }
        }
        if (!found) return {false, {x, y1, y2}};
      }
    }
  return {};
}

struct RieszResult {
  bool holds = true;
  std::string witness;
};

inline RieszResult check_riesz(const FiniteEffectAlgebra& alg, const IdealOrFilter& ideal) {
  for (int x = 0; x < alg.n; ++x) {
    if (!ideal.contains(x)) continue;
    for (int a = 0; a < alg.n; ++a)
      for (int b = 0; b < alg.n; ++b) {
        int s = alg.sum_at(a, b);
        if (s < 0 || !alg.le(x, s)) continue;
        bool found = false;
        for (int a1 = 0; a1 < alg.n && !found; ++a1) {
          if (!ideal.contains(a1) || !alg.le(a1, a)) continue;
          for (int b1 = 0; b1 < alg.n; ++b1)
            if (ideal.contains(b1) && alg.le(b1, b) && alg.sum_at(a1, b1) == x) {
              found = true;
              break;
            }
        }
        if (!found)
          return {false, alg.elements[x] + " <= " + alg.elements[a] + "+" + alg.elements[b]};
      }
  }
  return {};
}

struct QuotientAlgebra {
  FiniteEffectAlgebra algebra;     // classes as elements, named by least member
  std::vector<int> class_of;       // original element -> class index
};

/// Quotient by the congruence a ~ b iff a-x = b-y for some x,y in I.
/// Requires RDP (which makes every ideal Riesz and ~ a congruence).
inline QuotientAlgebra quotient(const FiniteEffectAlgebra& a, const IdealOrFilter& ideal) {
  if (!check_rdp(a).holds)
    throw std::invalid_argument("quotient requires the Riesz decomposition property");

  // D[x] = { x - u : u in I, u <= x }; x ~ y iff the sets meet.
  std::vector<std::vector<bool>> drops(a.n, std::vector<bool>(a.n, false));
  for (int x = 0; x < a.n; ++x)
    for (int u = 0; u < a.n; ++u) {
      if (!ideal.contains(u)) continue;
      if (auto dd = partial_diff(a, u, x)) drops[x][*dd] = true;
    }
  auto related = [&](int x, int y) {
    for (int k = 0; k < a.n; ++k)
      if (drops[x][k] && drops[y][k]) return true;
    return false;
  };
  std::vector<int> cls(a.n, -1);
  std::vector<int> reps;
  for (int x = 0; x < a.n; ++x) {
    for (size_t c = 0; c < reps.size(); ++c)
      if (related(x, reps[c])) { cls[x] = static_cast<int>(c); break; }
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  // ~ must be a genuine congruence: equivalence plus well-defined sums.
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (related(x, y) != (cls[x] == cls[y]))
        throw std::logic_error("quotient relation failed to be transitive");

  const int k = static_cast<int>(reps.size());
  RawAlgebra raw;
  raw.name = a.name + "/I";
  std::vector<std::string> names(k);
  for (int c = 0; c < k; ++c) {
    std::string least;
    for (int x = 0; x < a.n; ++x)
      if (cls[x] == c && (least.empty() || a.elements[x] < least)) least = a.elements[x];
    names[c] = "[" + least + "]";
  }
  raw.elements = names;
  raw.zero = names[cls[a.zero]];
  raw.one = names[cls[a.one]];
  std::vector<std::vector<int>> csum(k, std::vector<int>(k, -1));
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      int z = a.sum_at(x, y);
      if (z < 0) continue;
      int& slot = csum[cls[x]][cls[y]];
      if (slot >= 0 && slot != cls[z])
        throw std::logic_error("quotient sum is not well defined; ideal is not Riesz");
      slot = cls[z];
    }
  for (int c1 = 0; c1 < k; ++c1)
    for (int c2 = c1; c2 < k; ++c2)
      if (csum[c1][c2] >= 0) raw.sums.push_back({names[c1], names[c2], names[csum[c1][c2]]});
  QuotientAlgebra out;
  out.algebra = finalize_effect_algebra(raw);
  // finalize may reorder nothing, but class indices must match element order
  out.class_of.resize(a.n);
  for (int x = 0; x < a.n; ++x) out.class_of[x] = out.algebra.index_of(names[cls[x]]);
  return out;
}

}  // namespace qea
