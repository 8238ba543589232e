#pragma once

// Universal constants of the transmittal (a_i) and transmission (b_i)
// heat content formulas, stored exactly, plus the linear relations they obey.

#include "heatlab/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace heatlab {

class ConstantTable {
 public:
  /// The published values: a1..a12, a20..a59, b1..b7, b10..b16.
  static const ConstantTable& published();

  bool contains(const std::string& name) const { return table_.count(name) != 0; }
  const UniversalConstant& exact(const std::string& name) const;
  double operator[](const std::string& name) const;
  std::vector<std::string> names() const;
  std::vector<std::string> nonzero_names() const;

  /// Copy with one constant multiplied by `factor` (exact).
  ConstantTable scaled(const std::string& name, const Rational& factor) const;
  /// Copy with one constant shifted by `delta` (exact, rational part only).
  ConstantTable shifted(const std::string& name, const Rational& delta) const;
  /// "a7:+0.1" shifts, "a7:*1.05" scales.
  ConstantTable mutated(const std::string& spec) const;

 private:
  void set(const std::string& name, const UniversalConstant& value);
  std::map<std::string, UniversalConstant> table_;
  std::map<std::string, double> values_;
};

struct RelationResult {
  std::string group;
  std::string text;
  PiRational lhs;
  PiRational rhs;
  bool holds = false;
};

/// Parses and evaluates "lhs=rhs" with integers, p/q literals, `rpi` (1/sqrt(pi)),
/// constant names, '*', '+', '-', and parentheses. Juxtaposition multiplies.
RelationResult evaluate_relation(const std::string& text, const ConstantTable& table,
                                 const std::string& group = {});

/// Every displayed relation among the constants, grouped by origin.
const std::vector<std::pair<std::string, std::string>>& relation_catalog();

std::vector<RelationResult> verify_constant_relations(const ConstantTable& table = ConstantTable::published());

}  // namespace heatlab
