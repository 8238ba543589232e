#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace heatlab {

/// Exact p/q with q > 0 and gcd(p, q) = 1. Overflow throws std::overflow_error.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  static Rational parse(const std::string& text);  // "3", "-1/2", "0.05"

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Finite sum  sum_k r_k * pi^(-k/2). Universal constants are single terms.
class PiRational {
 public:
  PiRational() = default;
  PiRational(Rational r, int pi_power = 0);

  static PiRational rpi() { return PiRational(Rational(1), 1); }  // 1/sqrt(pi)

  bool is_zero() const { return terms_.empty(); }
  double to_double() const;
  std::string str() const;
  const std::map<int, Rational>& terms() const { return terms_; }

  /// Single-term accessors; throw if the value is a genuine sum.
  Rational rational_part() const;
  int pi_power() const;

  PiRational& operator+=(const PiRational& o);
  PiRational& operator-=(const PiRational& o);
  friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
  friend PiRational operator-(PiRational a, const PiRational& b) { return a -= b; }
  friend PiRational operator-(const PiRational& a) { return PiRational() - a; }
  friend PiRational operator*(const PiRational& a, const PiRational& b);
  friend bool operator==(const PiRational& a, const PiRational& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PiRational& a, const PiRational& b) { return !(a == b); }

 private:
  void prune();
  std::map<int, Rational> terms_;
};

using UniversalConstant = PiRational;

}  // namespace heatlab
