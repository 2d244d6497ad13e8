#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qea {

/// Exact rational confined to [0,1]. Value domain of all states and of the
/// standard q-effect algebra on the unit interval. Backed by GMP, always
/// stored in lowest terms.
class UnitRational {
 public:
  UnitRational() : v_(0) {}

  static UnitRational of(long num, long den) {
    if (den == 0) throw std::invalid_argument("UnitRational: zero denominator");
    mpq_class v(num, den);
    v.canonicalize();
    return from(v);
  }

  static UnitRational from(mpq_class v) {
    v.canonicalize();
    if (v < 0 || v > 1)
      throw std::invalid_argument("UnitRational: value outside [0,1]: " + v.get_str());
    return UnitRational(std::move(v));
  }

  static std::optional<UnitRational> try_from(mpq_class v) {
    v.canonicalize();
    if (v < 0 || v > 1) return std::nullopt;
    return UnitRational(std::move(v));
  }

  /// Accepts "p/q" or a bare integer "p".
  static std::optional<UnitRational> parse(std::string_view s);

  const mpq_class& raw() const { return v_; }
  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  /// True iff the denominator is a power of two.
  bool is_dyadic() const {
    mpz_class d = v_.get_den();
    return mpz_scan1(d.get_mpz_t(), 0) == mpz_sizeinbase(d.get_mpz_t(), 2) - 1;
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_str();
  }

  friend bool operator==(const UnitRational& a, const UnitRational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const UnitRational& a, const UnitRational& b) { return a.v_ != b.v_; }
  friend bool operator<(const UnitRational& a, const UnitRational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const UnitRational& a, const UnitRational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const UnitRational& a, const UnitRational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const UnitRational& a, const UnitRational& b) { return a.v_ >= b.v_; }

 private:
  explicit UnitRational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline std::optional<UnitRational> UnitRational::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string t(s);
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) return std::nullopt;
  try {
    mpq_class v(t);
    if (v.get_den() == 0) return std::nullopt;  // "p/0" parses but must not canonicalize
    v.canonicalize();
    return try_from(v);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

inline UnitRational unit_zero() { return UnitRational(); }
inline UnitRational unit_one() { return UnitRational::of(1, 1); }

inline UnitRational one_minus(const UnitRational& x) {
  return UnitRational::from(1 - x.raw());
}

/// Truncated sum x (+) y = min(x+y, 1).
inline UnitRational oplus(const UnitRational& x, const UnitRational& y) {
  mpq_class s = x.raw() + y.raw();
  if (s > 1) s = 1;
  return UnitRational::from(s);
}

/// Dual product x (.) y = max(x+y-1, 0).
inline UnitRational odot(const UnitRational& x, const UnitRational& y) {
  mpq_class s = x.raw() + y.raw() - 1;
  if (s < 0) s = 0;
  return UnitRational::from(s);
}

/// q on the standard algebra: q(x) = x (+) x = min(2x, 1).
inline UnitRational std_q(const UnitRational& x) { return oplus(x, x); }

/// d on the standard algebra: d(x) = x (.) x = max(2x-1, 0).
inline UnitRational std_d(const UnitRational& x) { return odot(x, x); }

/// Partial sum of the unit-interval effect algebra: defined iff x+y <= 1.
inline std::optional<UnitRational> unit_partial_sum(const UnitRational& x,
                                                    const UnitRational& y) {
  mpq_class s = x.raw() + y.raw();
  if (s > 1) return std::nullopt;
  return UnitRational::from(s);
}

}  // namespace qea
