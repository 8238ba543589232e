#include "heatlab/rational.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace heatlab {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Rational Rational::parse(const std::string& text) {
  // whole-string integer; stoll alone would accept "12abc"
  auto integer = [&](const std::string& s, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw std::invalid_argument("malformed rational literal '" + text + "'");
    for (size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed rational literal '" + text + "'");
    try {
      return static_cast<std::int64_t>(std::stoll(s));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("rational literal out of range '" + text + "'");
    }
  };
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t den = integer(text.substr(slash + 1), false);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(integer(text.substr(0, slash), true), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(integer(text, true));
  const std::string frac = text.substr(dot + 1);
  if (!frac.empty()) integer(frac, false);
  std::int64_t den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den = checked_mul(den, 10);
  std::string whole = text.substr(0, dot);
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  return Rational(integer(whole + frac, true), den);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t l = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t n1 = g1 ? a.num_ / g1 : 0, d2 = g1 ? b.den_ / g1 : b.den_;
  const std::int64_t n2 = g2 ? b.num_ / g2 : 0, d1 = g2 ? a.den_ / g2 : a.den_;
  return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

PiRational::PiRational(Rational r, int pi_power) {
  if (!r.is_zero()) terms_[pi_power] = r;
}

void PiRational::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

double PiRational::to_double() const {
  double v = 0.0;
  for (const auto& [k, r] : terms_) v += r.to_double() * std::pow(std::numbers::pi, -0.5 * k);
  return v;
}

std::string PiRational::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, r] : terms_) {
    if (!s.empty()) s += " + ";
    s += r.str();
    if (k == 1) s += "/sqrt(pi)";
    else if (k != 0) s += "*pi^(" + std::to_string(-k) + "/2)";
  }
  return s;
}

Rational PiRational::rational_part() const {
  if (terms_.size() > 1) throw std::logic_error("not a single-term constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int PiRational::pi_power() const {
  if (terms_.size() > 1) throw std::logic_error("not a single-term constant");
  return terms_.empty() ? 0 : terms_.begin()->first;
}

PiRational& PiRational::operator+=(const PiRational& o) {
  for (const auto& [k, r] : o.terms_) terms_[k] = terms_[k] + r;
  prune();
  return *this;
}

PiRational& PiRational::operator-=(const PiRational& o) {
  for (const auto& [k, r] : o.terms_) terms_[k] = terms_[k] - r;
  prune();
  return *this;
}

PiRational operator*(const PiRational& a, const PiRational& b) {
  PiRational c;
  for (const auto& [ka, ra] : a.terms_)
    for (const auto& [kb, rb] : b.terms_) c.terms_[ka + kb] = c.terms_[ka + kb] + ra * rb;
  c.prune();
  return c;
}

}  // namespace heatlab
