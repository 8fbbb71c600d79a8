#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace carnot {

/// Exact rational scalar. Thin value wrapper around GMP's mpq_class so that
/// every arithmetic operator returns a plain value (gmpxx expression
/// templates do not mix well with Eigen).
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}                  // NOLINT: implicit by design
  Rat(long n) : v_(n) {}                 // NOLINT
  Rat(long long n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rat(int num, int den) : v_(num, den) { v_.canonicalize(); }
  Rat(long num, long den) : v_(num, den) { v_.canonicalize(); }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
  static Rat parse(const std::string& s);

  const mpq_class& raw() const { return v_; }
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { Rat r; r.v_ = -a.v_; return r; }
  friend Rat operator+(const Rat& a) { return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend Rat abs(const Rat& a) { Rat r; r.v_ = ::abs(a.v_); return r; }

  /// Exact integer power, n >= 0.
  friend Rat pow_int(const Rat& a, long n);

  friend std::ostream& operator<<(std::ostream& os, const Rat& a);

  /// Canonical "p/q" (or "p" for integers) text form.
  std::string str() const;

 private:
  mpq_class v_;
};

inline double to_double(const Rat& r) { return r.to_double(); }
inline double to_double(double x) { return x; }

/// Correctly rounded conversion into a floating scalar; long double keeps
/// the extra mantissa bits (numerator and denominator convert exactly for
/// the magnitudes this library produces).
template <class S>
S rat_to(const Rat& r) {
  if constexpr (sizeof(S) > sizeof(double)) {
    return static_cast<S>(r.raw().get_num().get_d()) /
           static_cast<S>(r.raw().get_den().get_d());
  } else {
    return static_cast<S>(r.to_double());
  }
}

/// Scalar-mode helpers used by code templated over Rat / double.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat from_rat(const Rat& r) { return r; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_rat(const Rat& r) { return r.to_double(); }
};

template <>
struct scalar_traits<long double> {
  static constexpr bool exact = false;
  static long double from_rat(const Rat& r) {
    return static_cast<long double>(r.to_double());
  }
};

inline double to_double(long double x) { return static_cast<double>(x); }

}  // namespace carnot
