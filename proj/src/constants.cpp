#include "heatlab/constants.hpp"

#include "heatlab/error.hpp"

#include <cctype>
#include <stdexcept>

namespace heatlab {

const ConstantTable& ConstantTable::published() {
  static const ConstantTable table = [] {
    ConstantTable t;
    auto q = [](std::int64_t p, std::int64_t d = 1) { return PiRational(Rational(p, d)); };

    t.set("a1", PiRational(Rational(-1), 1));
    t.set("a2", PiRational(Rational(1), 1));
    t.set("a3", q(1, 8));
    t.set("a4", q(1, 8));
    t.set("a5", q(-1, 8));
    t.set("a6", q(-1, 8));
    t.set("a7", q(1, 2));
    t.set("a8", q(1, 2));
    t.set("a9", q(-1, 2));
    t.set("a10", q(1, 2));
    t.set("a11", q(-1, 4));
    t.set("a12", q(-1, 4));

    const std::pair<int, PiRational> b3[] = {
        {20, q(4)},     {21, q(-4)},    {22, q(-1)},   {23, q(-1)},    {24, q(4)},    {25, q(4)},
        {26, q(-2)},    {27, q(2)},     {28, q(-2)},   {29, q(-2)},    {30, q(-1)},   {31, q(1)},
        {32, q(1)},     {33, q(-1)},    {34, q(1)},    {35, q(0)},     {36, q(0)},    {37, q(-1, 2)},
        {38, q(0)},     {39, q(1, 2)},  {40, q(0)},    {41, q(1, 2)},  {42, q(0)},    {43, q(1, 2)},
        {44, q(0)},     {45, q(-1, 2)}, {46, q(1)},    {47, q(-1)},    {48, q(0)},    {49, q(1)},
        {50, q(1)},     {51, q(1)},     {52, q(1)},    {53, q(-1)},    {54, q(0)},    {55, q(0)},
        {56, q(0)},     {57, q(1, 2)},  {58, q(1, 2)}, {59, q(-1, 2)},
    };
    for (const auto& [i, v] : b3) t.set("a" + std::to_string(i), v);

    for (int i : {1, 2, 3, 5}) t.set("b" + std::to_string(i), q(0));
    t.set("b4", q(1));
    t.set("b6", q(1));
    t.set("b7", q(1));
    for (int i = 10; i <= 16; ++i) t.set("b" + std::to_string(i), q(0));
    return t;
  }();
  return table;
}

void ConstantTable::set(const std::string& name, const UniversalConstant& value) {
  table_[name] = value;
  values_[name] = value.to_double();
}

const UniversalConstant& ConstantTable::exact(const std::string& name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw std::out_of_range("unknown universal constant '" + name + "'");
  return it->second;
}

double ConstantTable::operator[](const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw std::out_of_range("unknown universal constant '" + name + "'");
  return it->second;
}

std::vector<std::string> ConstantTable::names() const {
  // numeric order: a1..a12, a20..a59, b1..
  std::vector<std::string> out;
  for (char prefix : {'a', 'b'})
    for (int i = 1; i < 100; ++i) {
      std::string n = std::string(1, prefix) + std::to_string(i);
      if (contains(n)) out.push_back(n);
    }
  return out;
}

std::vector<std::string> ConstantTable::nonzero_names() const {
  std::vector<std::string> out;
  for (const auto& n : names())
    if (!exact(n).is_zero()) out.push_back(n);
  return out;
}

ConstantTable ConstantTable::scaled(const std::string& name, const Rational& factor) const {
  ConstantTable t = *this;
  t.set(name, exact(name) * PiRational(factor));
  return t;
}

ConstantTable ConstantTable::shifted(const std::string& name, const Rational& delta) const {
  ConstantTable t = *this;
  t.set(name, exact(name) + PiRational(delta));
  return t;
}

ConstantTable ConstantTable::mutated(const std::string& spec) const {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon + 2 > spec.size())
    throw ConfigError("mutate", "expected NAME:+DELTA or NAME:*FACTOR, got '" + spec + "'");
  const std::string name = spec.substr(0, colon);
  if (!contains(name)) throw ConfigError("mutate", "unknown constant '" + name + "'");
  const char op = spec[colon + 1];
  try {
    if (op == '*') return scaled(name, Rational::parse(spec.substr(colon + 2)));
    if (op == '+' || op == '-') return shifted(name, Rational::parse(spec.substr(colon + 1 + (op == '+'))));
  } catch (const std::invalid_argument&) {
  }
  throw ConfigError("mutate", "cannot parse mutation '" + spec + "'");
}

// ---------------------------------------------------------------------------
// relation parser

namespace {

class RelationParser {
 public:
  RelationParser(const std::string& text, const ConstantTable& table) : s_(text), table_(table) {}

  PiRational expression() {
    PiRational acc = term();
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

 private:
  PiRational term() {
    skip();
    bool negate = false;
    while (peek() == '-' || peek() == '+') {
      negate ^= (peek() == '-');
      ++pos_;
      skip();
    }
    PiRational acc = factor();
    for (;;) {
      skip();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return negate ? -acc : acc;
  }

  PiRational factor() {
    skip();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      PiRational v = expression();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t num = integer();
      std::int64_t den = 1;
      if (peek() == '/') {
        ++pos_;
        den = integer();
      }
      return PiRational(Rational(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek()))) name += s_[pos_++];
      if (name == "rpi") return PiRational::rpi();
      if (!table_.contains(name)) fail("unknown constant '" + name + "'");
      return table_.exact(name);
    }
    fail("unexpected character");
    return {};
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("relation '" + s_ + "' at " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  const ConstantTable& table_;
  size_t pos_ = 0;
};

}  // namespace

RelationResult evaluate_relation(const std::string& text, const ConstantTable& table, const std::string& group) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("relation '" + text + "' has no '='");
  const std::string left = text.substr(0, eq), right = text.substr(eq + 1);
  RelationParser lp(left, table), rp(right, table);
  RelationResult r;
  r.group = group;
  r.text = text;
  r.lhs = lp.expression();
  if (!lp.done()) throw std::invalid_argument("trailing input in '" + left + "'");
  r.rhs = rp.expression();
  if (!rp.done()) throw std::invalid_argument("trailing input in '" + right + "'");
  r.holds = (r.lhs == r.rhs);
  return r;
}

const std::vector<std::pair<std::string, std::string>>& relation_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      // reversing the roles of phi and rho
      {"adjoint", "a5=a6"},
      {"adjoint", "a7-a9=1"},
      {"adjoint", "a8=a10"},
      // doubling, beta_1 and beta_2
      {"doubling", "2a1+2a2=0"},
      {"doubling", "2a1-2a2=-4rpi"},
      {"doubling", "2a3+2a4+2a5+2a6=0"},
      {"doubling", "2a3+2a4-2a5-2a6=1"},
      {"doubling", "2a7+2a8=2"},
      {"doubling", "2a7-2a8=0"},
      {"doubling", "2a9+2a10=0"},
      {"doubling", "2a9-2a10=-2"},
      {"doubling", "-4a11-4a12=2"},
      {"doubling", "2a11-2a12=0"},
      // phi = 1, U = 0
      {"harmonic", "a1+a2=0"},
      {"harmonic", "a3+a6=0"},
      {"harmonic", "a4+a5=0"},
      {"harmonic", "a9+a10=0"},
      // cylinder versus interval
      {"warped", "-2a3=a7+a9+a11"},
      {"warped", "-2a4=a11"},
      {"warped", "-2a5=a8+a12"},
      {"warped", "-2a6=a10+a12"},
      // doubling, beta_3
      {"doubling3", "2a20+2a21=0"},
      {"doubling3", "2a20-2a21=16"},
      {"doubling3", "2a24+2a25=16"},
      {"doubling3", "2a24-2a25=0"},
      {"doubling3", "2a26+2a27=0"},
      {"doubling3", "2a26-2a27=-8"},
      {"doubling3", "-4a28-4a29=16"},
      {"doubling3", "2a28-2a29=0"},
      {"doubling3", "a30+a31+a32+a33=0"},
      {"doubling3", "2a30+2a31-2a32-2a33=0"},
      {"doubling3", "a36+a37+a38+a39+2a40=0"},
      {"doubling3", "a36+a37+a38-a39-2a40=-1"},
      {"doubling3", "a41+a42+a43+a44+2a45=0"},
      {"doubling3", "a41+a42+a43-a44-2a45=2"},
      {"doubling3", "2a46+2a47+4a48=0"},
      {"doubling3", "2a46+2a47-4a48=0"},
      {"doubling3", "8a49+8a50=16"},
      {"doubling3", "2a49-2a50=0"},
      {"doubling3", "2a51+2a52+4a53=0"},
      {"doubling3", "2a51+2a52-4a53=8"},
      {"doubling3", "2a54+2a55+4a56=0"},
      {"doubling3", "2a54+2a55-4a56=0"},
      {"doubling3", "2a57+2a58+4a59=0"},
      {"doubling3", "2a57+2a58-4a59=4"},
      // phi = 1, U = 0, beta_3
      {"harmonic3", "a30+a32=0"},
      {"harmonic3", "a31+a33=0"},
      {"harmonic3", "a36+a40=0"},
      {"harmonic3", "a38+a40=0"},
      {"harmonic3", "a37+a39=0"},
      {"harmonic3", "a41+a45=0"},
      {"harmonic3", "a43+a45=0"},
      {"harmonic3", "a42+a44=0"},
      {"harmonic3", "a51+a53=0"},
      {"harmonic3", "a52+a53=0"},
      {"harmonic3", "a54+a56=0"},
      {"harmonic3", "a55+a56=0"},
      {"harmonic3", "a57+a59=0"},
      {"harmonic3", "a58+a59=0"},
      // shifting E by a constant
      {"epsilon", "1/6*rpi*(-2a20+a51+a52)=a1"},
      {"epsilon", "a1=-rpi"},
      {"epsilon", "1/6*rpi*(-2a21+2a53)=a2"},
      {"epsilon", "a2=rpi"},
      // flat cylinder with first-order angular term
      {"separation", "0=2a22-a26+a34-a51"},
      {"separation", "0=a34-a52"},
      {"separation", "0=-2a22-2a34"},
      {"separation", "0=a23+a35-a53"},
      {"separation", "0=-2a23-a27-2a35"},
      {"divergence", "-a22-a23+a26+a51+a53=0"},
      {"divergence", "a22+a23+a27+a52+a53=0"},
      // cylinder over the interval, coefficients of monomials
      {"monomial", "-a57=-1/2a51"},
      {"monomial", "-a58=-1/2a52"},
      {"monomial", "-a59=-1/2a53"},
      {"monomial", "a36+a41-a57=1/4a24+1/2a28+1/4a49-1/4a51"},
      {"monomial", "a38+a43-a58=1/4a49-1/4a52"},
      {"monomial", "a37+a42=1/2a28+1/2a49"},
      {"monomial", "2a36=1/2a24+a28+1/2a49-1/2a51"},
      {"monomial", "2a38=1/2a49-1/2a52"},
      {"monomial", "a37=1/2a28+1/2a49"},
      {"monomial", "a40+a45-a59=1/4a29+1/4a50-1/4a53"},
      {"monomial", "a39+a44=1/4a25+1/2a29+1/2a50"},
      {"monomial", "2a40=1/2a29+1/2a50-1/2a53"},
      {"monomial", "a39=1/4a25+1/2a29+1/2a50"},
      {"monomial", "-a46=a28+a49"},
      {"monomial", "-a47=a49"},
      {"monomial", "-a48=1/2a29+a50"},
      {"monomial", "-a31=1/2a28"},
      {"monomial", "-a33=1/2a25+1/2a29"},
      // transmission
      {"transmission", "b1=0"},
      {"transmission", "b2=0"},
      {"transmission", "b3=0"},
      {"transmission", "b4=1"},
      {"transmission", "b5=0"},
      {"transmission", "b6=1"},
      {"transmission", "b6-b7=0"},
      {"transmission", "b10-b12=0"},
      {"transmission", "b11=0"},
      {"transmission", "b14=0"},
      {"transmission", "b15=0"},
      {"transmission", "b16=0"},
      {"transmission", "b10=b13"},
      {"transmission", "b12=b13"},
      {"transmission", "b10=0"},
      {"transmission", "b13=0"},
  };
  return catalog;
}

std::vector<RelationResult> verify_constant_relations(const ConstantTable& table) {
  std::vector<RelationResult> out;
  for (const auto& [group, text] : relation_catalog()) out.push_back(evaluate_relation(text, table, group));
  return out;
}

}  // namespace heatlab
