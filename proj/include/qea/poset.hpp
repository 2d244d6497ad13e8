#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qea {

/// Boolean matrix packed into 64-bit words, row major. Square when used as
/// an order relation, rectangular when used as a frame relation.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n) : BitMatrix(n, n) {}
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
        bits_(static_cast<size_t>(rows) * words_per_row_, 0) {}

  int size() const { return rows_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int i, int j) const {
    return (bits_[static_cast<size_t>(i) * words_per_row_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(int i, int j, bool v = true) {
    uint64_t& w = bits_[static_cast<size_t>(i) * words_per_row_ + j / 64];
    uint64_t m = uint64_t{1} << (j % 64);
    if (v) w |= m; else w &= ~m;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (get(i, j)) t.set(j, i);
    return t;
  }

  /// row(i) subset-of row(j), i.e. every bit set in i is set in j.
  bool row_subset(int i, int j) const {
    const uint64_t* a = &bits_[static_cast<size_t>(i) * words_per_row_];
    const uint64_t* b = &bits_[static_cast<size_t>(j) * words_per_row_];
    for (int w = 0; w < words_per_row_; ++w)
      if (a[w] & ~b[w]) return false;
    return true;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  int words_per_row_ = 0;
  std::vector<uint64_t> bits_;
};

/// Finite bounded poset: named carrier plus the full order relation.
struct FinitePoset {
  std::vector<std::string> names;
  BitMatrix leq;
  int bottom = -1;  // -1 when the poset has no least element
  int top = -1;

  int size() const { return static_cast<int>(names.size()); }
  bool le(int a, int b) const { return leq.get(a, b); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }
};

struct PosetCheck {
  bool ok = true;
  std::string why;
};

/// Reflexivity, antisymmetry, transitivity; locates bottom/top if present.
inline PosetCheck validate_poset(FinitePoset& p) {
  const int n = p.size();
  for (int i = 0; i < n; ++i)
    if (!p.le(i, i)) return {false, "not reflexive at " + p.names[i]};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && p.le(i, j) && p.le(j, i))
        return {false, "antisymmetry fails on (" + p.names[i] + ", " + p.names[j] + ")"};
      if (p.le(i, j) && !p.leq.row_subset(j, i))
        return {false, "transitivity fails through " + p.names[i] + " <= " + p.names[j]};
    }
  p.bottom = p.top = -1;
  for (int i = 0; i < n; ++i) {
    bool bot = true, top = true;
    for (int j = 0; j < n; ++j) {
      bot = bot && p.le(i, j);
      top = top && p.le(j, i);
    }
    if (bot) p.bottom = i;
    if (top) p.top = i;
  }
  return {};
}

/// Greatest lower bound if it exists; "does not exist" is a plain outcome.
inline std::optional<int> poset_meet(const FinitePoset& p, int a, int b) {
  const int n = p.size();
  int cand = -1;
  for (int z = 0; z < n; ++z) {
    if (!p.le(z, a) || !p.le(z, b)) continue;
    if (cand < 0 || p.le(cand, z)) cand = z;
  }
  if (cand < 0) return std::nullopt;
  for (int z = 0; z < n; ++z)
    if (p.le(z, a) && p.le(z, b) && !p.le(z, cand)) return std::nullopt;
  return cand;
}

inline std::optional<int> poset_join(const FinitePoset& p, int a, int b) {
  const int n = p.size();
  int cand = -1;
  for (int z = 0; z < n; ++z) {
    if (!p.le(a, z) || !p.le(b, z)) continue;
    if (cand < 0 || p.le(z, cand)) cand = z;
  }
  if (cand < 0) return std::nullopt;
  for (int z = 0; z < n; ++z)
    if (p.le(a, z) && p.le(b, z) && !p.le(cand, z)) return std::nullopt;
  return cand;
}

inline bool is_monotone(const FinitePoset& src, const FinitePoset& dst, const std::vector<int>& f) {
  const int n = src.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (src.le(a, b) && !dst.le(f[a], f[b])) return false;
  return true;
}

inline bool is_order_reflecting_map(const FinitePoset& src, const FinitePoset& dst,
                                    const std::vector<int>& f) {
  const int n = src.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (dst.le(f[a], f[b]) && !src.le(a, b)) return false;
  return true;
}

struct FamilyReflectionResult {
  bool reflecting = false;
  bool conditions_agree = true;       // observation (i) <=> (ii), checked on both routes
  std::vector<std::vector<int>> product_map;  // h(a) = (h_t(a))_t
  std::pair<int, int> witness{-1, -1};        // a,b with all h_t(a) <= h_t(b) but a !<= b
  std::string note;
};

/// Order-reflecting family of poset morphisms with common source.
/// Route (i) quantifies over the family; route (ii) compares the induced
/// tuples in the product order. Both are evaluated and must agree.
inline FamilyReflectionResult check_order_reflecting_family(
    const FinitePoset& src, const FinitePoset& dst, const std::vector<std::vector<int>>& maps) {
  FamilyReflectionResult out;
  const int n = src.size();
  out.product_map.assign(n, std::vector<int>(maps.size()));
  for (int a = 0; a < n; ++a)
    for (size_t t = 0; t < maps.size(); ++t) out.product_map[a][t] = maps[t][a];

  if (maps.empty()) {
    // Vacuously all tuples compare, so reflection forces every a <= b.
    bool all_comparable = true;
    for (int a = 0; a < n && all_comparable; ++a)
      for (int b = 0; b < n && all_comparable; ++b)
        if (!src.le(a, b)) { all_comparable = false; out.witness = {a, b}; }
    out.reflecting = all_comparable;
    out.note = "empty family: reflecting only on a one-point source";
    return out;
  }

  auto route_i = [&](int a, int b) {
    for (const auto& f : maps)
      if (!dst.le(f[a], f[b])) return false;
    return true;
  };
  auto route_ii = [&](int a, int b) {
    for (size_t t = 0; t < maps.size(); ++t)
      if (!dst.le(out.product_map[a][t], out.product_map[b][t])) return false;
    return true;
  };

  out.reflecting = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool dom_i = route_i(a, b), dom_ii = route_ii(a, b);
      if (dom_i != dom_ii) out.conditions_agree = false;
      if (dom_i && !src.le(a, b)) {
        if (out.reflecting) out.witness = {a, b};
        out.reflecting = false;
      }
    }
  return out;
}

/// Poset of all subsets of a finite set, ordered by inclusion.
/// Element i is the subset with bitmask i over `base`.
inline FinitePoset powerset_poset(const std::vector<std::string>& base) {
  if (base.size() > 20) throw std::invalid_argument("powerset_poset: base too large");
  const int n = 1 << base.size();
  FinitePoset p;
  p.names.reserve(n);
  for (int m = 0; m < n; ++m) {
    std::string s = "{";
    bool first = true;
    for (size_t k = 0; k < base.size(); ++k)
      if (m >> k & 1) {
        if (!first) s += ",";
        s += base[k];
        first = false;
      }
    s += "}";
    p.names.push_back(std::move(s));
  }
  p.leq = BitMatrix(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((x & ~y) == 0) p.leq.set(x, y);
  p.bottom = 0;
  p.top = n - 1;
  return p;
}

}  // namespace qea
