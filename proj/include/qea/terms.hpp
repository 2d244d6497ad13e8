#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qea/qeffect.hpp"
#include "qea/rational.hpp"

namespace qea {

/// Term of the clone generated by q and d. Stored as the composition
/// sequence, outermost first; serialized "q.d" for q o d (apply d, then q).
struct CloneTerm {
  enum Op : uint8_t { Q, D };
  std::vector<Op> ops;

  bool empty() const { return ops.empty(); }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < ops.size(); ++i) {
      if (i) s += ".";
      s += (ops[i] == Q ? "q" : "d");
    }
    return s;
  }

  static std::optional<CloneTerm> parse(std::string_view s) {
    CloneTerm t;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 'q') t.ops.push_back(Q);
      else if (s[i] == 'd') t.ops.push_back(D);
      else return std::nullopt;
      if (i + 1 < s.size()) {
        if (s[i + 1] != '.') return std::nullopt;
        ++i;
      }
    }
    if (t.ops.empty()) return std::nullopt;
    return t;
  }
};

/// mu_m = d composed with itself m times; mu_1 = d.
inline CloneTerm mu(int m) {
  if (m < 1) throw std::invalid_argument("mu: index must be >= 1");
  CloneTerm t;
  t.ops.assign(m, CloneTerm::D);
  return t;
}

/// Threshold term t_r for dyadic r in (0,1): t_r(x) = 1 iff r <= x on the
/// standard algebra. Built from the binary expansion of r: t_{1/2} = q,
/// then t_r = t_{2r} o q when r < 1/2 and t_r = t_{2r-1} o d when r > 1/2.
/// verify_threshold certifies the construction on a full dyadic grid.
inline CloneTerm threshold_term(const UnitRational& r) {
  if (r.is_zero() || r.is_one())
    throw std::invalid_argument("threshold_term: r must lie strictly inside (0,1)");
  if (!r.is_dyadic())
    throw std::invalid_argument("threshold_term: r must be dyadic, got " + r.str());
  CloneTerm t;
  mpq_class v = r.raw();
  const mpq_class half(1, 2);
  // Ops are discovered innermost-first; storage is outermost-first.
  while (v != half) {
    if (v < half) {
      t.ops.push_back(CloneTerm::Q);
      v = 2 * v;
    } else {
      t.ops.push_back(CloneTerm::D);
      v = 2 * v - 1;
    }
  }
  t.ops.push_back(CloneTerm::Q);
  std::reverse(t.ops.begin(), t.ops.end());
  return t;
}

inline UnitRational eval_std(const CloneTerm& t, UnitRational x) {
  for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it)
    x = (*it == CloneTerm::Q) ? std_q(x) : std_d(x);
  return x;
}

/// Right-to-left application of the algebra's own q/d maps.
inline int eval_term(const CloneTerm& t, const FiniteQEffectAlgebra& a, int x) {
  for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it)
    x = (*it == CloneTerm::Q) ? a.q(x) : a.d(x);
  return x;
}

struct ThresholdReport {
  bool pass = true;
  long checks = 0;
  std::string witness;
};

/// Exhaustive grid oracle for the threshold law at resolution 2^-k:
/// for every dyadic r = i/2^k in (0,1) and x = j/2^k,
///   t_r(x) = 1  iff  r <= x,
/// and whenever t_r(x) != 1 also x < r (the contrapositive form).
inline ThresholdReport verify_threshold(int k) {
  if (k < 1 || k > 12) throw std::invalid_argument("verify_threshold: need 1 <= k <= 12");
  ThresholdReport rep;
  const long den = 1L << k;
  for (long i = 1; i < den; ++i) {
    UnitRational r = UnitRational::of(i, den);
    CloneTerm t = threshold_term(r);
    for (long j = 0; j <= den; ++j) {
      UnitRational x = UnitRational::of(j, den);
      UnitRational v = eval_std(t, x);
      bool is_one = v.is_one();
      bool le = (r <= x);
      ++rep.checks;
      if (is_one != le || (!is_one && !(x < r))) {
        rep.pass = false;
        if (rep.witness.empty())
          rep.witness = "r=" + r.str() + " x=" + x.str() + " t_r(x)=" + v.str();
      }
    }
  }
  return rep;
}

struct ObindResult {
  bool precondition_ok = true;
  bool holds = false;
  std::string detail;
};

/// mu_k(h) <= h_1 . ... . h_{2^k}, with the factor list padded by 1 up to
/// 2^k entries. Preconditions: h <= h_j for all j and the iterated product
/// exists; violations are reported, not thrown.
inline ObindResult verify_obind(const FiniteQEffectAlgebra& a, int h,
                                std::vector<int> hs, int k) {
  ObindResult res;
  if (k < 1 || hs.empty()) {
    res.precondition_ok = false;
    res.detail = "need k >= 1 and at least one factor";
    return res;
  }
  const long want = 1L << k;
  if (static_cast<long>(hs.size()) > want) {
    res.precondition_ok = false;
    res.detail = "more than 2^k factors";
    return res;
  }
  for (int hj : hs)
    if (!a.base.le(h, hj)) {
      res.precondition_ok = false;
      res.detail = "h !<= " + a.base.elements[hj];
      return res;
    }
  hs.resize(want, a.base.one);
  int acc = hs[0];
  for (size_t i = 1; i < hs.size(); ++i) {
    auto p = partial_prod(a.base, acc, hs[i]);
    if (!p) {
      res.precondition_ok = false;
      res.detail = "iterated product undefined at factor " + std::to_string(i);
      return res;
    }
    acc = *p;
  }
  int lhs = eval_term(mu(k), a, h);
  res.holds = a.base.le(lhs, acc);
  if (!res.holds)
    res.detail = "mu_k(h)=" + a.base.elements[lhs] + " !<= product=" + a.base.elements[acc];
  return res;
}

}  // namespace qea
