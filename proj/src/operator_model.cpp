#include "heatlab/operator_model.hpp"

#include "heatlab/error.hpp"

#include <cmath>

namespace heatlab {

LaplaceData LaplaceData::scalar_laplacian(WarpedGeometry geom, int fiber_dim) {
  LaplaceData op;
  op.fiber_dim = fiber_dim;
  op.geom = std::move(geom);
  op.omega_r = PolyMatrix::zero(fiber_dim);
  op.E = PolyMatrix::zero(fiber_dim);
  return op;
}

Eigen::MatrixXd LaplaceData::omega_theta_at(int a) const {
  if (a < static_cast<int>(omega_theta.size())) return omega_theta[static_cast<size_t>(a)];
  return Eigen::MatrixXd::Zero(fiber_dim, fiber_dim);
}

bool LaplaceData::has_angular_connection() const {
  for (const auto& w : omega_theta)
    if (w.size() && w.cwiseAbs().maxCoeff() != 0.0) return true;
  return false;
}

void LaplaceData::validate() const {
  geom.validate();
  if (fiber_dim < 1) throw PreconditionError("fiber dimension must be positive");
  if (omega_r.dim() != fiber_dim || E.dim() != fiber_dim)
    throw PreconditionError("omega_r and E must be fiber_dim x fiber_dim");
  if (!omega_theta.empty() && static_cast<int>(omega_theta.size()) != geom.dim())
    throw PreconditionError("omega_theta needs one entry per angular direction");
  for (size_t a = 0; a < omega_theta.size(); ++a) {
    if (omega_theta[a].rows() != fiber_dim || omega_theta[a].cols() != fiber_dim)
      throw PreconditionError("omega_theta entries must be fiber_dim x fiber_dim");
    if (omega_theta[a].cwiseAbs().maxCoeff() != 0.0 && !geom.warpings[a].is_zero())
      throw PreconditionError("an angular connection requires an unwarped direction");
  }
}

LaplaceData symbol_to_natural(const SymbolData& symbol, const WarpedGeometry& geom, int n) {
  if (symbol.A_r.dim() != n || symbol.B.dim() != n)
    throw PreconditionError("symbol coefficients do not match the fiber dimension");
  if (!symbol.A_theta.empty() && static_cast<int>(symbol.A_theta.size()) != geom.dim())
    throw PreconditionError("A_theta needs one entry per angular direction");

  const Poly Fr = geom.total_warping().derivative();
  LaplaceData op;
  op.fiber_dim = n;
  op.geom = geom;
  // omega_r = (A^r + g^{us} Gamma_us^r)/2 and g^{aa} Gamma_aa^r = -f_a'
  op.omega_r = 0.5 * (symbol.A_r - PolyMatrix::scalar(Fr, n));
  PolyMatrix E = symbol.B - op.omega_r.derivative() - op.omega_r * op.omega_r - Fr * op.omega_r;
  for (size_t a = 0; a < symbol.A_theta.size(); ++a) {
    const Eigen::MatrixXd& A = symbol.A_theta[a];
    if (A.rows() != n || A.cols() != n) throw PreconditionError("A_theta entries must be n x n");
    if (A.cwiseAbs().maxCoeff() == 0.0) {
      op.omega_theta.push_back(Eigen::MatrixXd::Zero(n, n));
      continue;
    }
    if (!geom.warpings[a].is_zero())
      throw PreconditionError("angular first-order terms are supported only on unwarped directions");
    const Eigen::MatrixXd w = 0.5 * A;
    op.omega_theta.push_back(w);
    E -= PolyMatrix::constant(w * w);
  }
  op.E = E;
  return op;
}

SymbolData natural_to_symbol(const LaplaceData& op) {
  const int n = op.fiber_dim;
  const Poly Fr = op.geom.total_warping().derivative();
  SymbolData s;
  s.A_r = 2.0 * op.omega_r + PolyMatrix::scalar(Fr, n);
  s.B = op.E + op.omega_r.derivative() + op.omega_r * op.omega_r + Fr * op.omega_r;
  for (const auto& w : op.omega_theta) {
    s.A_theta.push_back(2.0 * w);
    s.B += PolyMatrix::constant(w * w);
  }
  return s;
}

DualLaplaceData dualize(const LaplaceData& op) {
  DualLaplaceData d = op;
  d.omega_r = -1.0 * op.omega_r.transpose();
  d.E = op.E.transpose();
  for (auto& w : d.omega_theta) w = -w.transpose().eval();
  return d;
}

PointJet field_jet(const FieldComponents& f, const AngularMode& mode, double r, const std::vector<double>& theta) {
  const int d = static_cast<int>(mode.size());
  double ang = 1.0;
  std::vector<double> c(static_cast<size_t>(d)), s(static_cast<size_t>(d));
  for (int a = 0; a < d; ++a) {
    const double th = a < static_cast<int>(theta.size()) ? theta[static_cast<size_t>(a)] : 0.0;
    c[static_cast<size_t>(a)] = std::cos(mode[static_cast<size_t>(a)] * th);
    s[static_cast<size_t>(a)] = std::sin(mode[static_cast<size_t>(a)] * th);
    ang *= c[static_cast<size_t>(a)];
  }
  const Eigen::VectorXd v = evaluate(f, r);
  PointJet j;
  j.value = ang * v;
  j.dr = ang * evaluate(derivative(f, 1), r);
  j.drr = ang * evaluate(derivative(f, 2), r);
  for (int a = 0; a < d; ++a) {
    const double k = mode[static_cast<size_t>(a)];
    double others = 1.0;
    for (int b = 0; b < d; ++b)
      if (b != a) others *= c[static_cast<size_t>(b)];
    j.dth.push_back(-k * s[static_cast<size_t>(a)] * others * v);
    j.dthth.push_back(-k * k * ang * v);
  }
  return j;
}

Eigen::VectorXd radial_derivative(const LaplaceData& op, const PointJet& jet, double r) {
  return jet.dr + op.omega_r(r) * jet.value;
}

Eigen::VectorXd tangential_derivative(const LaplaceData& op, const PointJet& jet, double r, int a) {
  const double scale = std::exp(-op.geom.warpings[static_cast<size_t>(a)](r));
  Eigen::VectorXd d = op.omega_theta_at(a) * jet.value;
  if (a < static_cast<int>(jet.dth.size())) d += jet.dth[static_cast<size_t>(a)];
  return scale * d;
}

Eigen::VectorXd apply_operator(const LaplaceData& op, const PointJet& jet, double r) {
  // Tr(nabla^2) u = (nabla_r u)' + omega_r nabla_r u + F' nabla_r u
  //               + sum_a e^{-2 f_a} (d_a^2 u + 2 omega_a d_a u + omega_a^2 u)
  const Eigen::MatrixXd w = op.omega_r(r);
  const Eigen::MatrixXd wr = op.omega_r.derivative()(r);
  const Eigen::VectorXd nr = jet.dr + w * jet.value;
  const Eigen::VectorXd nr_prime = jet.drr + wr * jet.value + w * jet.dr;
  const double Fr = op.geom.total_warping().derivative()(r);
  Eigen::VectorXd tr = nr_prime + w * nr + Fr * nr;
  for (int a = 0; a < op.geom.dim(); ++a) {
    const double g = std::exp(-2.0 * op.geom.warpings[static_cast<size_t>(a)](r));
    const Eigen::MatrixXd wa = op.omega_theta_at(a);
    Eigen::VectorXd t = wa * wa * jet.value;
    if (a < static_cast<int>(jet.dth.size()))
      t += jet.dthth[static_cast<size_t>(a)] + 2.0 * wa * jet.dth[static_cast<size_t>(a)];
    tr += g * t;
  }
  return -(tr + op.E(r) * jet.value);
}

std::string to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::Dirichlet: return "dirichlet";
    case ConditionKind::Robin: return "robin";
    case ConditionKind::Transmittal: return "transmittal";
    case ConditionKind::Transmission: return "transmission";
  }
  return "unknown";
}

BoundaryPoint ConditionSpec::point() const {
  if (at.empty() || (at[0] != '0' && at[0] != '1'))
    throw PreconditionError("unknown boundary component '" + at + "'");
  return at[0] == '0' ? BoundaryPoint::Start : BoundaryPoint::End;
}

int ConditionSpec::side_sign() const {
  if (at.size() == 1) return 0;
  if (at.size() == 2 && at[1] == '+') return 1;
  if (at.size() == 2 && at[1] == '-') return -1;
  throw PreconditionError("unknown boundary component '" + at + "'");
}

void ConditionSpec::validate(int n_plus, int n_minus) const {
  auto check = [](const Eigen::MatrixXd& m, int rows, int cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols)
      throw PreconditionError(std::string(name) + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
  };
  const int side = side_sign();
  switch (kind) {
    case ConditionKind::Dirichlet:
      if (side == 0) throw PreconditionError("Dirichlet conditions attach to one side's end, e.g. '0+'");
      break;
    case ConditionKind::Robin: {
      if (side == 0) throw PreconditionError("Robin conditions attach to one side's end, e.g. '0+'");
      const int n = side > 0 ? n_plus : n_minus;
      check(S, n, n, "S");
      break;
    }
    case ConditionKind::Transmittal:
      if (side != 0) throw PreconditionError("transmittal conditions attach to an interface '0' or '1'");
      if (n_plus != n_minus) throw PreconditionError("transmittal conditions need equal fiber dimensions");
      check(U, n_plus, n_plus, "U");
      break;
    case ConditionKind::Transmission:
      if (side != 0) throw PreconditionError("transmission conditions attach to an interface '0' or '1'");
      check(S_pp, n_plus, n_plus, "S_pp");
      check(S_pm, n_plus, n_minus, "S_pm");
      check(S_mp, n_minus, n_plus, "S_mp");
      check(S_mm, n_minus, n_minus, "S_mm");
      break;
  }
}

std::vector<Eigen::VectorXd> apply_condition(const ConditionSpec& cond, const SidedField& phi,
                                             const LaplaceData& plus, const LaplaceData* minus,
                                             const AngularMode& mode, const std::vector<double>& theta) {
  const BoundaryPoint p = cond.point();
  const double r = boundary_coordinate(p);
  const double sigma = normal_sign(p);
  const int side = cond.side_sign();
  if ((side <= 0) && minus == nullptr) throw PreconditionError("condition needs the minus side");
  cond.validate(plus.fiber_dim, minus ? minus->fiber_dim : plus.fiber_dim);

  auto trace = [&](const LaplaceData& op, const FieldComponents& f, Eigen::VectorXd& value, Eigen::VectorXd& dnu) {
    if (static_cast<int>(f.size()) != op.fiber_dim) throw PreconditionError("field dimension mismatch");
    const PointJet j = field_jet(f, mode, r, theta);
    value = j.value;
    dnu = sigma * radial_derivative(op, j, r);
  };

  Eigen::VectorXd vp, np, vm, nm;
  if (side >= 0) trace(plus, phi.plus, vp, np);
  if (side <= 0) trace(*minus, phi.minus, vm, nm);

  switch (cond.kind) {
    case ConditionKind::Dirichlet: return {side > 0 ? vp : vm};
    case ConditionKind::Robin: return {side > 0 ? Eigen::VectorXd(np + cond.S * vp) : Eigen::VectorXd(nm + cond.S * vm)};
    case ConditionKind::Transmittal: return {vp - vm, np + nm - cond.U * vp};
    case ConditionKind::Transmission:
      return {np + cond.S_pp * vp + cond.S_pm * vm, nm + cond.S_mm * vm + cond.S_mp * vp};
  }
  return {};
}

ConditionSpec transmission_from_physics(double K_plus, double K_minus, double H, const std::string& at) {
  if (!(K_plus > 0.0) || !(K_minus > 0.0)) throw PreconditionError("conductivities must be positive");
  if (!(H >= 0.0)) throw PreconditionError("surface conductivity must be nonnegative");
  // K+ dnu+ phi+ = H (phi+ - phi-) and K- dnu- phi- = -K+ dnu+ phi+
  ConditionSpec c;
  c.kind = ConditionKind::Transmission;
  c.at = at;
  c.S_pp = Eigen::MatrixXd::Constant(1, 1, -H / K_plus);
  c.S_pm = Eigen::MatrixXd::Constant(1, 1, H / K_plus);
  c.S_mm = Eigen::MatrixXd::Constant(1, 1, -H / K_minus);
  c.S_mp = Eigen::MatrixXd::Constant(1, 1, H / K_minus);
  return c;
}

ConditionSpec dual_condition(const ConditionSpec& cond) {
  ConditionSpec d = cond;
  switch (cond.kind) {
    case ConditionKind::Dirichlet: break;
    case ConditionKind::Robin: d.S = cond.S.transpose(); break;
    case ConditionKind::Transmittal: d.U = cond.U.transpose(); break;
    case ConditionKind::Transmission:
      d.S_pp = cond.S_pp.transpose();
      d.S_mm = cond.S_mm.transpose();
      d.S_pm = cond.S_mp.transpose();
      d.S_mp = cond.S_pm.transpose();
      break;
  }
  return d;
}

}  // namespace heatlab
