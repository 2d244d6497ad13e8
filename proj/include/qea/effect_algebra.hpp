#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qea/poset.hpp"

namespace qea {

/// Loader-level description of an algebra: names, distinguished elements,
/// one sum entry per (possibly unordered) pair, optional q/d tables.
struct RawAlgebra {
  std::string name;
  std::vector<std::string> elements;
  std::string zero, one;
  std::vector<std::array<std::string, 3>> sums;               // x + y = z
  std::vector<std::pair<std::string, std::string>> qmap;      // x -> y
  std::vector<std::pair<std::string, std::string>> dmap;

  bool has_q() const { return !qmap.empty() || !dmap.empty(); }
};

struct Violation {
  std::string axiom;    // "E1".."E4", "Q1".."Q5", "structural", "order"
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> structural;  // reported before any axiom checking
  std::vector<Violation> violations;
  bool e2_exhaustive = true;   // false when the associativity scan was sampled
  bool q5_exhaustive = true;

  bool structural_ok() const { return structural.empty(); }
  bool pass() const { return structural.empty() && violations.empty(); }

  std::string summary() const {
    if (pass()) return "pass";
    std::ostringstream os;
    for (const auto& v : structural) os << "[structural] " << v.witness << "\n";
    for (const auto& v : violations) os << "[" << v.axiom << "] " << v.witness << "\n";
    return os.str();
  }
};

struct ValidationOptions {
  int exhaustive_cubic_cap = 64;   // carrier cap for the E2/Q5 triple scans
  uint64_t cubic_samples = 200000; // seeded sample count above the cap
  unsigned seed = 1;
};

struct InvalidAlgebra : std::runtime_error {
  explicit InvalidAlgebra(ValidationReport r)
      : std::runtime_error("invalid algebra:\n" + r.summary()), report(std::move(r)) {}
  ValidationReport report;
};

/// Validated finite effect algebra. Immutable after construction; the sum
/// table is dense with -1 marking undefined entries, and the induced order
/// and supplements are precomputed.
struct FiniteEffectAlgebra {
  std::string name;
  std::vector<std::string> elements;
  int n = 0;
  int zero = -1, one = -1;
  std::vector<int32_t> sum;   // n*n, -1 = undefined
  BitMatrix leq;
  std::vector<int> supp;

  int sum_at(int x, int y) const { return sum[static_cast<size_t>(x) * n + y]; }
  bool defined(int x, int y) const { return sum_at(x, y) >= 0; }
  bool le(int x, int y) const { return leq.get(x, y); }

  int index_of(const std::string& s) const {
    for (int i = 0; i < n; ++i)
      if (elements[i] == s) return i;
    return -1;
  }

  FinitePoset poset() const {
    FinitePoset p;
    p.names = elements;
    p.leq = leq;
    p.bottom = zero;
    p.top = one;
    return p;
  }
};

namespace detail {

struct IndexedTable {
  std::vector<std::string> elements;
  int n = 0, zero = -1, one = -1;
  std::vector<int32_t> sum;
  std::vector<int> qmap, dmap;  // empty when absent

  int at(int x, int y) const { return sum[static_cast<size_t>(x) * n + y]; }
};

/// Name resolution plus commutative closure of the sum table.
/// Structural problems go into `rep.structural`; conflicting mirrored
/// entries are E1 violations on the closed table.
inline std::optional<IndexedTable> index_raw(const RawAlgebra& raw, ValidationReport& rep) {
  IndexedTable t;
  t.elements = raw.elements;
  t.n = static_cast<int>(t.elements.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < t.n; ++i) {
    if (!idx.emplace(t.elements[i], i).second)
      rep.structural.push_back({"structural", "duplicate element identifier '" + t.elements[i] + "'"});
  }
  if (t.n == 0) rep.structural.push_back({"structural", "empty carrier"});
  auto resolve = [&](const std::string& s) {
    auto it = idx.find(s);
    return it == idx.end() ? -1 : it->second;
  };
  t.zero = resolve(raw.zero);
  t.one = resolve(raw.one);
  if (t.zero < 0) rep.structural.push_back({"structural", "zero element '" + raw.zero + "' not declared"});
  if (t.one < 0) rep.structural.push_back({"structural", "one element '" + raw.one + "' not declared"});
  if (t.zero >= 0 && t.zero == t.one)
    rep.structural.push_back({"structural", "zero and one coincide"});
  if (!rep.structural_ok()) return std::nullopt;

  t.sum.assign(static_cast<size_t>(t.n) * t.n, -1);
  auto put = [&](int x, int y, int z) {
    int32_t& slot = t.sum[static_cast<size_t>(x) * t.n + y];
    if (slot >= 0 && slot != z) {
      rep.violations.push_back({"E1", "conflicting entries for " + t.elements[x] + "+" +
                                          t.elements[y] + ": " + t.elements[slot] + " vs " +
                                          t.elements[z]});
      return;
    }
    slot = z;
  };
  for (const auto& [xs, ys, zs] : raw.sums) {
    int x = resolve(xs), y = resolve(ys), z = resolve(zs);
    if (x < 0 || y < 0 || z < 0) {
      rep.structural.push_back(
          {"structural", "sum entry references undeclared element: " + xs + "+" + ys + "=" + zs});
      continue;
    }
    put(x, y, z);
    put(y, x, z);
  }
  auto fill_map = [&](const std::vector<std::pair<std::string, std::string>>& entries,
                      std::vector<int>& out, const char* label) {
    if (entries.empty()) return;
    out.assign(t.n, -1);
    for (const auto& [xs, ys] : entries) {
      int x = resolve(xs), y = resolve(ys);
      if (x < 0 || y < 0) {
        rep.structural.push_back({"structural", std::string(label) + " entry references undeclared element: " +
                                                    xs + "->" + ys});
        continue;
      }
      out[x] = y;
    }
    for (int i = 0; i < t.n; ++i)
      if (out[i] < 0)
        rep.structural.push_back(
            {"structural", std::string(label) + " map not total: missing " + t.elements[i]});
  };
  fill_map(raw.qmap, t.qmap, "q");
  fill_map(raw.dmap, t.dmap, "d");
  if (!rep.structural_ok()) return std::nullopt;
  return t;
}

inline BitMatrix order_from_table(const IndexedTable& t) {
  BitMatrix leq(t.n);
  for (int x = 0; x < t.n; ++x)
    for (int z = 0; z < t.n; ++z) {
      int y = t.at(x, z);
      if (y >= 0) leq.set(x, y);
    }
  return leq;
}

inline void check_axioms(const IndexedTable& t, ValidationReport& rep, const ValidationOptions& opt) {
  const int n = t.n;
  auto nm = [&](int i) { return t.elements[i]; };

  // (E1) on the closed table.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.at(x, y) != t.at(y, x))
        rep.violations.push_back({"E1", nm(x) + "+" + nm(y) + " != " + nm(y) + "+" + nm(x)});

  // (E2): y+z and x+(y+z) defined  =>  x+y, (x+y)+z defined and equal.
  auto e2_triple = [&](int x, int y, int z) {
    int yz = t.at(y, z);
    if (yz < 0) return;
    int xyz = t.at(x, yz);
    if (xyz < 0) return;
    int xy = t.at(x, y);
    if (xy < 0 || t.at(xy, z) != xyz)
      rep.violations.push_back({"E2", "(" + nm(x) + "," + nm(y) + "," + nm(z) + ")"});
  };
  if (n <= opt.exhaustive_cubic_cap) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) e2_triple(x, y, z);
  } else {
    rep.e2_exhaustive = false;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (uint64_t i = 0; i < opt.cubic_samples; ++i) e2_triple(pick(rng), pick(rng), pick(rng));
  }

  // (E3) unique supplement.
  for (int x = 0; x < n; ++x) {
    int found = -1;
    bool unique = true;
    for (int y = 0; y < n; ++y)
      if (t.at(x, y) == t.one) {
        if (found >= 0) unique = false;
        found = y;
      }
    if (found < 0)
      rep.violations.push_back({"E3", "no supplement for " + nm(x)});
    else if (!unique)
      rep.violations.push_back({"E3", "supplement of " + nm(x) + " not unique"});
  }

  // (E4) x+1 defined => x = 0.
  for (int x = 0; x < n; ++x)
    if (x != t.zero && t.at(x, t.one) >= 0)
      rep.violations.push_back({"E4", nm(x) + "+1 is defined"});

  if (!rep.violations.empty()) return;

  // Induced relation must be a bounded partial order (a consequence of the
  // axioms; asserted because the E2 scan may have been sampled).
  FinitePoset p;
  p.names = t.elements;
  p.leq = order_from_table(t);
  if (auto chk = validate_poset(p); !chk.ok)
    rep.violations.push_back({"order", chk.why});
  else if (p.bottom != t.zero || p.top != t.one)
    rep.violations.push_back({"order", "induced order is not bounded by zero and one"});
}

}  // namespace detail

/// Axiom report for a raw sum table; never throws. Structural errors
/// (duplicate identifiers, zero = one, unresolved names) preempt the
/// axiom scan.
inline ValidationReport validate_effect_axioms(const RawAlgebra& raw,
                                               const ValidationOptions& opt = {}) {
  ValidationReport rep;
  auto t = detail::index_raw(raw, rep);
  if (t) detail::check_axioms(*t, rep, opt);
  return rep;
}

/// Builds a validated algebra; throws InvalidAlgebra when validation fails.
inline FiniteEffectAlgebra finalize_effect_algebra(const RawAlgebra& raw,
                                                   const ValidationOptions& opt = {}) {
  ValidationReport rep;
  auto t = detail::index_raw(raw, rep);
  if (t) detail::check_axioms(*t, rep, opt);
  if (!rep.pass()) throw InvalidAlgebra(rep);
  FiniteEffectAlgebra a;
  a.name = raw.name;
  a.elements = t->elements;
  a.n = t->n;
  a.zero = t->zero;
  a.one = t->one;
  a.sum = t->sum;
  a.leq = detail::order_from_table(*t);
  a.supp.assign(a.n, -1);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.sum_at(x, y) == a.one) a.supp[x] = y;
  return a;
}

/// Boolean element x element table of the induced order.
using OrderRelation = BitMatrix;

/// The induced order x <= y iff x+z = y for some z.
inline OrderRelation derive_order(const FiniteEffectAlgebra& a) { return a.leq; }

inline int supplement(const FiniteEffectAlgebra& a, int x) { return a.supp[x]; }

/// y - x, defined iff x <= y; the witness z with x+z=y is unique.
inline std::optional<int> partial_diff(const FiniteEffectAlgebra& a, int x, int y) {
  if (!a.le(x, y)) return std::nullopt;
  int found = -1;
  for (int z = 0; z < a.n; ++z)
    if (a.sum_at(x, z) == y) {
      if (found >= 0 && found != z) throw std::logic_error("difference not unique; table invalid");
      found = z;
    }
  if (found < 0) return std::nullopt;
  return found;
}

/// x . y = (x' + y')', defined iff x' <= y.
inline std::optional<int> partial_prod(const FiniteEffectAlgebra& a, int x, int y) {
  if (!a.le(a.supp[x], y)) return std::nullopt;
  int s = a.sum_at(a.supp[x], a.supp[y]);
  if (s < 0) return std::nullopt;
  return a.supp[s];
}

struct Classification {
  bool is_lattice = false;
  bool is_mv = false;
  bool is_linear = false;
  std::pair<int, int> no_join_witness{-1, -1};
  std::pair<int, int> no_meet_witness{-1, -1};
  std::pair<int, int> mv_witness{-1, -1};  // meet-zero pair with x !<= y'
};

inline Classification classify(const FiniteEffectAlgebra& a) {
  Classification c;
  FinitePoset p = a.poset();
  c.is_lattice = true;
  c.is_mv = true;
  for (int x = 0; x < a.n; ++x)
    for (int y = x + 1; y < a.n; ++y) {
      auto m = poset_meet(p, x, y);
      auto j = poset_join(p, x, y);
      if (!m && c.no_meet_witness.first < 0) c.no_meet_witness = {x, y};
      if (!j && c.no_join_witness.first < 0) c.no_join_witness = {x, y};
      if (!m || !j) c.is_lattice = false;
    }
  if (!c.is_lattice) {
    c.is_mv = false;
  } else {
    for (int x = 0; x < a.n && c.is_mv; ++x)
      for (int y = 0; y < a.n && c.is_mv; ++y) {
        auto m = poset_meet(p, x, y);
        if (m && *m == a.zero && !a.le(x, a.supp[y])) {
          c.is_mv = false;
          c.mv_witness = {x, y};
        }
      }
  }
  c.is_linear = true;
  for (int x = 0; x < a.n && c.is_linear; ++x)
    for (int y = 0; y < a.n; ++y)
      if (!a.le(x, y) && !a.le(y, x)) {
        c.is_linear = false;
        break;
      }
  return c;
}

}  // namespace qea
