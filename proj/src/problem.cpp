#include "heatlab/problem.hpp"

#include "heatlab/error.hpp"
#include "heatlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace heatlab {
namespace {

std::string component_name(BoundaryPoint p, int side_sign) {
  return std::string(p == BoundaryPoint::Start ? "0" : "1") + (side_sign > 0 ? "+" : "-");
}

/// Components a condition covers in a problem with `two_sided` sides.
std::vector<std::string> covered(const ConditionSpec& c, bool two_sided) {
  const std::string p = c.at.substr(0, 1);
  if (c.at.size() == 1) {
    if (c.is_interface()) return {p + "+", p + "-"};
    if (!two_sided) return {p + "+"};
    return {c.at};  // rejected by the caller
  }
  return {c.at};
}

struct AngularGrid {
  std::vector<std::vector<double>> points;  // one theta-vector per point
  std::vector<double> weights;
};

AngularGrid angular_grid(int d, const AngularMode& mode) {
  AngularGrid g;
  if (d == 0) {
    g.points.push_back({});
    g.weights.push_back(1.0);
    return g;
  }
  std::vector<QuadratureRule> rules;
  for (int a = 0; a < d; ++a) rules.push_back(periodic_rule(4 * std::abs(mode[static_cast<size_t>(a)]) + 4));
  if (d == 1) {
    for (size_t i = 0; i < rules[0].points.size(); ++i) {
      g.points.push_back({rules[0].points[i]});
      g.weights.push_back(rules[0].weights[i]);
    }
    return g;
  }
  for (size_t i = 0; i < rules[0].points.size(); ++i)
    for (size_t j = 0; j < rules[1].points.size(); ++j) {
      g.points.push_back({rules[0].points[i], rules[1].points[j]});
      g.weights.push_back(rules[0].weights[i] * rules[1].weights[j]);
    }
  return g;
}

SideJet side_jet(const Side& s, const DualLaplaceData& dual, const AngularMode& mode, BoundaryPoint p,
                 const std::vector<double>& theta) {
  const double r = boundary_coordinate(p);
  const double sigma = normal_sign(p);
  const PointJet jp = field_jet(s.phi, mode, r, theta);
  const PointJet jr = field_jet(s.rho, mode, r, theta);
  SideJet j;
  j.phi = jp.value;
  j.rho = jr.value;
  j.Dphi = apply_operator(s.op, jp, r);
  j.Dtrho = apply_operator(dual, jr, r);
  j.dnu_phi = sigma * radial_derivative(s.op, jp, r);
  j.dnu_rho = sigma * radial_derivative(dual, jr, r);
  for (int a = 0; a < s.op.geom.dim(); ++a) {
    j.dtan_phi.push_back(tangential_derivative(s.op, jp, r, a));
    j.dtan_rho.push_back(tangential_derivative(dual, jr, r, a));
  }
  j.E = s.op.E(r);
  j.geom = boundary_geometry(s.op.geom, p);
  return j;
}

}  // namespace

AngularMode Problem::effective_mode() const {
  AngularMode m = mode;
  m.resize(static_cast<size_t>(angular_dim()), 0);
  return m;
}

double Problem::angular_factor() const {
  double f = 1.0;
  for (int k : effective_mode()) f *= (k == 0 ? 2.0 * std::numbers::pi : std::numbers::pi);
  return f;
}

const ConditionSpec* Problem::condition_at(BoundaryPoint p, int side_sign) const {
  const std::string want = component_name(p, side_sign);
  for (const auto& c : conditions)
    for (const auto& name : covered(c, two_sided()))
      if (name == want) return &c;
  return nullptr;
}

void Problem::validate() const {
  if (sides.empty() || sides.size() > 2) throw ConfigError("sides", "expected one or two sides");
  const int d = angular_dim();
  for (size_t s = 0; s < sides.size(); ++s) {
    const Side& side = sides[s];
    side.op.validate();
    if (side.op.geom.dim() != d) throw PreconditionError("both sides need the same number of angular directions");
    if (static_cast<int>(side.phi.size()) != side.op.fiber_dim ||
        static_cast<int>(side.rho.size()) != side.op.fiber_dim)
      throw PreconditionError("phi and rho must have fiber_dim components on every side");
  }
  if (!mode.empty() && static_cast<int>(mode.size()) != d)
    throw PreconditionError("angular mode needs one entry per angular direction");
  const AngularMode m = effective_mode();
  const bool nonzero_mode = std::any_of(m.begin(), m.end(), [](int k) { return k != 0; });
  if (nonzero_mode)
    for (const auto& side : sides)
      if (side.op.has_angular_connection())
        throw PreconditionError("an angular connection requires the zero angular mode");

  std::set<std::string> required;
  for (BoundaryPoint p : {BoundaryPoint::Start, BoundaryPoint::End}) {
    required.insert(component_name(p, 1));
    if (two_sided()) required.insert(component_name(p, -1));
  }
  std::set<std::string> seen;
  for (size_t i = 0; i < conditions.size(); ++i) {
    const ConditionSpec& c = conditions[i];
    const std::string path = "conditions[" + std::to_string(i) + "]";
    if (c.at != "0" && c.at != "1" && c.at != "0+" && c.at != "1+" && c.at != "0-" && c.at != "1-")
      throw ConfigError(path + ".at", "unknown boundary component '" + c.at + "'");
    if (c.is_interface() && !two_sided())
      throw ConfigError(path, "an interface condition needs two sides");
    if (!c.is_interface() && c.at.size() == 1 && two_sided())
      throw ConfigError(path + ".at", "name the side, e.g. '" + c.at + "+'");
    if (c.is_interface() && c.at.size() != 1)
      throw ConfigError(path + ".at", "interfaces are named '0' or '1'");
    for (const auto& name : covered(c, two_sided())) {
      if (!required.count(name)) throw ConfigError(path + ".at", "no boundary component '" + name + "'");
      if (!seen.insert(name).second) throw ConfigError(path + ".at", "boundary component '" + name + "' has two conditions");
    }
    const int np = sides[0].op.fiber_dim;
    const int nm = two_sided() ? sides[1].op.fiber_dim : np;
    ConditionSpec normalized = c;
    if (!two_sided() && c.at.size() == 1) normalized.at = c.at + "+";
    try {
      normalized.validate(np, nm);
    } catch (const PreconditionError& e) {
      throw ConfigError(path, e.what());
    }
    if (c.is_interface()) validate_gluing(sides[0].op.geom, sides[1].op.geom, c.point());
  }
  for (const auto& name : required)
    if (!seen.count(name)) throw ConfigError("conditions", "no condition on boundary component '" + name + "'");
}

ProblemTraces build_traces(const Problem& problem) {
  problem.validate();
  const AngularMode mode = problem.effective_mode();
  const AngularGrid grid = angular_grid(problem.angular_dim(), mode);
  std::vector<DualLaplaceData> duals;
  for (const auto& s : problem.sides) duals.push_back(dualize(s.op));

  ProblemTraces out;
  for (const auto& c : problem.conditions) {
    const BoundaryPoint p = c.point();
    const double r = boundary_coordinate(p);
    const double area = problem.sides[0].op.geom.volume_density(r);
    for (size_t q = 0; q < grid.points.size(); ++q) {
      const auto& theta = grid.points[q];
      const double w = grid.weights[q];
      if (!c.is_interface()) {
        const size_t s = (c.at.size() == 2 && c.at[1] == '-') ? 1 : 0;
        BoundaryTrace t;
        t.kind = c.kind;
        t.side = side_jet(problem.sides[s], duals[s], mode, p, theta);
        t.S = c.S;
        t.weight = w * problem.sides[s].op.geom.volume_density(r);
        out.boundary.push_back(std::move(t));
        continue;
      }
      InterfaceTrace t;
      t.plus = side_jet(problem.sides[0], duals[0], mode, p, theta);
      t.minus = side_jet(problem.sides[1], duals[1], mode, p, theta);
      for (int a = 0; a < problem.angular_dim(); ++a) {
        const double scale = std::exp(-problem.sides[0].op.geom.warpings[static_cast<size_t>(a)](r));
        t.omega_a.push_back(scale * (problem.sides[0].op.omega_theta_at(a) - problem.sides[1].op.omega_theta_at(a)));
      }
      t.U = c.U;
      t.S_pp = c.S_pp;
      t.S_pm = c.S_pm;
      t.S_mp = c.S_mp;
      t.S_mm = c.S_mm;
      t.weight = w * area;
      (c.kind == ConditionKind::Transmittal ? out.transmittal : out.transmission).push_back(std::move(t));
    }
  }
  return out;
}

CoefficientSet beta_interior(const Problem& problem) {
  const AngularMode mode = problem.effective_mode();
  const AngularGrid grid = angular_grid(problem.angular_dim(), mode);
  const QuadratureRule rq = gauss_legendre(96);
  double phi_rho = 0.0, Dphi_rho = 0.0;
  for (const auto& s : problem.sides) {
    for (size_t i = 0; i < rq.points.size(); ++i) {
      const double r = rq.points[i];
      const double vol = rq.weights[i] * s.op.geom.volume_density(r);
      for (size_t q = 0; q < grid.points.size(); ++q) {
        const PointJet jp = field_jet(s.phi, mode, r, grid.points[q]);
        const PointJet jr = field_jet(s.rho, mode, r, grid.points[q]);
        const double w = vol * grid.weights[q];
        phi_rho += w * jp.value.dot(jr.value);
        Dphi_rho += w * apply_operator(s.op, jp, r).dot(jr.value);
      }
    }
  }
  return interior_set(phi_rho, Dphi_rho);
}

CoefficientSet evaluate(const Problem& problem, const ConstantTable& constants) {
  const ProblemTraces traces = build_traces(problem);
  CoefficientSet c = beta_interior(problem);
  if (!traces.boundary.empty()) c += beta_dr(traces.boundary);
  if (!traces.transmittal.empty()) c += beta_b1(traces.transmittal, constants);
  if (!traces.transmission.empty()) c += beta_b2(traces.transmission, constants);
  return c;
}

Problem dual_problem(const Problem& problem) {
  Problem d = problem;
  for (auto& s : d.sides) {
    s.op = dualize(s.op);
    std::swap(s.phi, s.rho);
  }
  for (auto& c : d.conditions) c = dual_condition(c);
  return d;
}

Problem shift_endomorphism(const Problem& problem, double eps) {
  Problem p = problem;
  for (auto& s : p.sides)
    s.op.E += PolyMatrix::constant(eps * Eigen::MatrixXd::Identity(s.op.fiber_dim, s.op.fiber_dim));
  return p;
}

}  // namespace heatlab
