#include "heatlab/coefficients.hpp"

#include "heatlab/error.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace heatlab {
namespace {

const double kRootPi = std::sqrt(std::numbers::pi);

double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(b); }

/// Accumulates weighted invariants per label, then applies constants.
class TermAccumulator {
 public:
  void add(const std::string& label, int order, double value) {
    auto& slot = sums_[{order, label}];
    slot += value;
  }
  const std::map<std::pair<int, std::string>, double>& sums() const { return sums_; }

 private:
  std::map<std::pair<int, std::string>, double> sums_;
};

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

void check_side(const SideJet& s, int n, const char* which) {
  const std::string w = which;
  auto ok = [n](const Eigen::VectorXd& v) { return v.size() == n; };
  if (!ok(s.phi) || !ok(s.rho) || !ok(s.Dphi) || !ok(s.Dtrho) || !ok(s.dnu_phi) || !ok(s.dnu_rho))
    throw PreconditionError("incomplete trace on the " + w + " side");
  if (s.E.rows() != n || s.E.cols() != n) throw PreconditionError("missing endomorphism on the " + w + " side");
  if (s.dtan_phi.size() != s.dtan_rho.size()) throw PreconditionError("tangential derivatives mismatch");
}

/// Frobenius product L+ : L-, zero when either side is a point.
double frob(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.size() == 0 || b.size() == 0) return 0.0;
  return (a.array() * b.array()).sum();
}

}  // namespace

CoefficientSet& CoefficientSet::operator+=(const CoefficientSet& o) {
  for (int n = 0; n < 4; ++n) {
    beta[static_cast<size_t>(n)] += o.beta[static_cast<size_t>(n)];
    interior[static_cast<size_t>(n)] += o.interior[static_cast<size_t>(n)];
    boundary[static_cast<size_t>(n)] += o.boundary[static_cast<size_t>(n)];
  }
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

CoefficientSet interior_set(double phi_rho, double Dphi_rho) {
  CoefficientSet c;
  c.interior[0] = phi_rho;
  c.interior[2] = -Dphi_rho;
  c.beta = c.interior;
  c.terms.push_back({"interior.phi_rho", 0, phi_rho, phi_rho});
  c.terms.push_back({"interior.Dphi_rho", 2, Dphi_rho, -Dphi_rho});
  return c;
}

CoefficientSet beta_dr(const std::vector<BoundaryTrace>& traces) {
  TermAccumulator acc;
  for (const auto& t : traces) {
    const SideJet& s = t.side;
    const int n = static_cast<int>(s.phi.size());
    check_side(s, n, "boundary");
    const double w = t.weight;
    if (t.kind == ConditionKind::Dirichlet) {
      const double pr = dot(s.phi, s.rho);
      double tan = 0.0;
      for (size_t a = 0; a < s.dtan_phi.size(); ++a) tan += dot(s.dtan_phi[a], s.dtan_rho[a]);
      const double L2 = s.geom.L_trace * s.geom.L_trace;
      const double R_amam = -s.geom.R_amma_trace;
      acc.add("dirichlet.phi_rho", 1, w * pr);
      acc.add("dirichlet.L_phi_rho", 2, w * s.geom.L_trace * pr);
      acc.add("dirichlet.phi_drho", 2, w * dot(s.phi, s.dnu_rho));
      acc.add("dirichlet.Dphi_rho", 3, w * dot(s.Dphi, s.rho));
      acc.add("dirichlet.phi_Dtrho", 3, w * dot(s.phi, s.Dtrho));
      acc.add("dirichlet.tan", 3, w * tan);
      acc.add("dirichlet.E", 3, w * dot(s.E * s.phi, s.rho));
      acc.add("dirichlet.LL", 3, w * L2 * pr);
      acc.add("dirichlet.L2", 3, w * s.geom.L_norm2 * pr);
      acc.add("dirichlet.R", 3, w * R_amam * pr);
    } else if (t.kind == ConditionKind::Robin) {
      require(t.S.rows() == n && t.S.cols() == n, "Robin trace needs an n x n S");
      const Eigen::VectorXd Bphi = s.dnu_phi + t.S * s.phi;
      const Eigen::VectorXd Brho = s.dnu_rho + t.S.transpose() * s.rho;
      acc.add("robin.Bphi_rho", 2, w * dot(Bphi, s.rho));
      acc.add("robin.Bphi_Brho", 3, w * dot(Bphi, Brho));
    } else {
      throw PreconditionError("beta_dr accepts only Dirichlet or Robin traces");
    }
  }

  // multipliers of the Dirichlet/Robin formula
  const std::map<std::string, double> mult = {
      {"dirichlet.phi_rho", -2.0 / kRootPi},
      {"dirichlet.L_phi_rho", 0.5},
      {"dirichlet.phi_drho", -1.0},
      {"dirichlet.Dphi_rho", (-2.0 / kRootPi) * (-2.0 / 3.0)},
      {"dirichlet.phi_Dtrho", (-2.0 / kRootPi) * (-2.0 / 3.0)},
      {"dirichlet.tan", (-2.0 / kRootPi) * (1.0 / 3.0)},
      {"dirichlet.E", (-2.0 / kRootPi) * (-1.0 / 3.0)},
      {"dirichlet.LL", (-2.0 / kRootPi) * (1.0 / 12.0)},
      {"dirichlet.L2", (-2.0 / kRootPi) * (-1.0 / 6.0)},
      {"dirichlet.R", (-2.0 / kRootPi) * (1.0 / 6.0)},
      {"robin.Bphi_rho", 1.0},
      {"robin.Bphi_Brho", 4.0 / (3.0 * kRootPi)},
  };
  CoefficientSet c;
  for (const auto& [key, inv] : acc.sums()) {
    const double v = mult.at(key.second) * inv;
    c.boundary[static_cast<size_t>(key.first)] += v;
    c.terms.push_back({key.second, key.first, inv, v});
  }
  c.beta = c.boundary;
  return c;
}

CoefficientSet beta_b1(const std::vector<InterfaceTrace>& traces, const ConstantTable& a) {
  TermAccumulator acc;
  for (const auto& t : traces) {
    const SideJet& P = t.plus;
    const SideJet& M = t.minus;
    const int n = static_cast<int>(P.phi.size());
    check_side(P, n, "plus");
    check_side(M, n, "minus");
    require(t.U.rows() == n && t.U.cols() == n, "transmittal trace needs an n x n U");
    require(P.dtan_phi.size() == M.dtan_phi.size(), "sides disagree on tangential directions");
    require(t.omega_a.empty() || t.omega_a.size() == P.dtan_phi.size(), "omega_a has wrong length");
    const double w = t.weight;
    const Eigen::MatrixXd& U = t.U;

    const double pp = dot(P.phi, P.rho), mm = dot(M.phi, M.rho);
    const double pm = dot(P.phi, M.rho), mp = dot(M.phi, P.rho);
    const double Lp = P.geom.L_trace, Lm = M.geom.L_trace;

    // beta_1
    acc.add("a1", 1, w * (pp + mm));
    acc.add("a2", 1, w * (pm + mp));

    // beta_2
    acc.add("a3", 2, w * (pp * Lp + mm * Lm));
    acc.add("a4", 2, w * (pp * Lm + mm * Lp));
    acc.add("a5", 2, w * (pm * Lp + mp * Lm));
    acc.add("a6", 2, w * (pm * Lm + mp * Lp));
    acc.add("a7", 2, w * (dot(P.dnu_phi, P.rho) + dot(M.dnu_phi, M.rho)));
    acc.add("a8", 2, w * (dot(P.dnu_phi, M.rho) + dot(M.dnu_phi, P.rho)));
    acc.add("a9", 2, w * (dot(P.phi, P.dnu_rho) + dot(M.phi, M.dnu_rho)));
    acc.add("a10", 2, w * (dot(P.phi, M.dnu_rho) + dot(M.phi, P.dnu_rho)));
    acc.add("a11", 2, w * (dot(U * P.phi, P.rho) + dot(U * M.phi, M.rho)));
    acc.add("a12", 2, w * (dot(U * P.phi, M.rho) + dot(U * M.phi, P.rho)));

    // beta_3, before the 1/(6 sqrt(pi)) prefactor
    acc.add("a20", 3, w * (dot(P.Dphi, P.rho) + dot(P.phi, P.Dtrho) + dot(M.Dphi, M.rho) + dot(M.phi, M.Dtrho)));
    acc.add("a21", 3, w * (dot(P.Dphi, M.rho) + dot(P.phi, M.Dtrho) + dot(M.Dphi, P.rho) + dot(M.phi, P.Dtrho)));

    double a22 = 0.0, a23 = 0.0, a26 = 0.0, a27 = 0.0, a34 = 0.0, a35 = 0.0;
    for (size_t k = 0; k < P.dtan_phi.size(); ++k) {
      const Eigen::VectorXd& dPp = P.dtan_phi[k];
      const Eigen::VectorXd& dMp = M.dtan_phi[k];
      const Eigen::VectorXd& dPr = P.dtan_rho[k];
      const Eigen::VectorXd& dMr = M.dtan_rho[k];
      a26 += dot(dPp, dPr) + dot(dMp, dMr);
      a27 += dot(dPp, dMr) + dot(dMp, dPr);
      if (t.omega_a.empty()) continue;
      const Eigen::MatrixXd& om = t.omega_a[k];
      a22 += dot(om * dPp, P.rho) - dot(om * dMp, M.rho) - dot(om * P.phi, dPr) + dot(om * M.phi, dMr);
      a23 += dot(om * dPp, M.rho) - dot(om * dMp, P.rho) + dot(om * P.phi, dMr) - dot(om * M.phi, dPr);
      const Eigen::MatrixXd om2 = om * om;
      a34 += dot(om2 * P.phi, P.rho) + dot(om2 * M.phi, M.rho);
      a35 += dot(om2 * P.phi, M.rho) + dot(om2 * M.phi, P.rho);
    }
    acc.add("a22", 3, w * a22);
    acc.add("a23", 3, w * a23);
    acc.add("a24", 3, w * (dot(P.dnu_phi, P.dnu_rho) + dot(M.dnu_phi, M.dnu_rho)));
    acc.add("a25", 3, w * (dot(P.dnu_phi, M.dnu_rho) + dot(M.dnu_phi, P.dnu_rho)));
    acc.add("a26", 3, w * a26);
    acc.add("a27", 3, w * a27);

    // U d_nu(phi rho) = (U nabla_nu phi).rho + (U phi).nabla~_nu rho
    acc.add("a28", 3, w * (dot(U * P.dnu_phi, P.rho) + dot(U * P.phi, P.dnu_rho) +
                           dot(U * M.dnu_phi, M.rho) + dot(U * M.phi, M.dnu_rho)));
    acc.add("a29", 3, w * (dot(U * M.dnu_phi, P.rho) + dot(U * M.phi, P.dnu_rho) +
                           dot(U * P.dnu_phi, M.rho) + dot(U * P.phi, M.dnu_rho)));

    const double dP = dot(P.dnu_phi, P.rho) + dot(P.phi, P.dnu_rho);  // d_nu+(phi+ rho+)
    const double dM = dot(M.dnu_phi, M.rho) + dot(M.phi, M.dnu_rho);
    const double xP = dot(P.dnu_phi, M.rho) + dot(M.phi, P.dnu_rho);  // as printed for a32/a33
    const double xM = dot(M.dnu_phi, P.rho) + dot(P.phi, M.dnu_rho);
    acc.add("a30", 3, w * (Lp * dP + Lm * dM));
    acc.add("a31", 3, w * (Lm * dP + Lp * dM));
    acc.add("a32", 3, w * (Lp * xP + Lm * xM));
    acc.add("a33", 3, w * (Lm * xP + Lp * xM));
    acc.add("a34", 3, w * a34);
    acc.add("a35", 3, w * a35);

    const double cross = pm + mp;
    acc.add("a36", 3, w * (Lp * Lp * pp + Lm * Lm * mm));
    acc.add("a37", 3, w * (Lp * Lm * (pp + mm)));
    acc.add("a38", 3, w * (Lm * Lm * pp + Lp * Lp * mm));
    acc.add("a39", 3, w * (Lp * Lm * cross));
    acc.add("a40", 3, w * ((Lp * Lp + Lm * Lm) * cross));
    const double Np = P.geom.L_norm2, Nm = M.geom.L_norm2, Npm = frob(P.geom.L, M.geom.L);
    acc.add("a41", 3, w * (Np * pp + Nm * mm));
    acc.add("a42", 3, w * (Npm * (pp + mm)));
    acc.add("a43", 3, w * (Nm * pp + Np * mm));
    acc.add("a44", 3, w * (Npm * cross));
    acc.add("a45", 3, w * ((Np + Nm) * cross));

    const double Upp = dot(U * P.phi, P.rho), Umm = dot(U * M.phi, M.rho);
    const double Ucross = dot(U * P.phi, M.rho) + dot(U * M.phi, P.rho);
    acc.add("a46", 3, w * (Lp * Upp + Lm * Umm));
    acc.add("a47", 3, w * (Lm * Upp + Lp * Umm));
    acc.add("a48", 3, w * ((Lp + Lm) * Ucross));
    const Eigen::MatrixXd U2 = U * U;
    acc.add("a49", 3, w * (dot(U2 * P.phi, P.rho) + dot(U2 * M.phi, M.rho)));
    acc.add("a50", 3, w * (dot(U2 * P.phi, M.rho) + dot(U2 * M.phi, P.rho)));

    acc.add("a51", 3, w * (dot(P.E * P.phi, P.rho) + dot(M.E * M.phi, M.rho)));
    acc.add("a52", 3, w * (dot(M.E * P.phi, P.rho) + dot(P.E * M.phi, M.rho)));
    const Eigen::MatrixXd Es = P.E + M.E;
    acc.add("a53", 3, w * (dot(Es * P.phi, M.rho) + dot(Es * M.phi, P.rho)));

    const double Sp = P.geom.R_ijji, Sm = M.geom.R_ijji;
    acc.add("a54", 3, w * (Sp * pp + Sm * mm));
    acc.add("a55", 3, w * (Sm * pp + Sp * mm));
    acc.add("a56", 3, w * ((Sp + Sm) * cross));
    const double Rp = P.geom.R_amma_trace, Rm = M.geom.R_amma_trace;
    acc.add("a57", 3, w * (Rp * pp + Rm * mm));
    acc.add("a58", 3, w * (Rm * pp + Rp * mm));
    acc.add("a59", 3, w * ((Rp + Rm) * cross));
  }

  CoefficientSet c;
  const double pre3 = 1.0 / (6.0 * kRootPi);
  for (const auto& [key, inv] : acc.sums()) {
    const double v = (key.first == 3 ? pre3 : 1.0) * a[key.second] * inv;
    c.boundary[static_cast<size_t>(key.first)] += v;
    c.terms.push_back({key.second, key.first, inv, v});
  }
  c.beta = c.boundary;
  return c;
}

CoefficientSet beta_b2(const std::vector<InterfaceTrace>& traces, const ConstantTable& b) {
  TermAccumulator acc;
  for (const auto& t : traces) {
    const SideJet& P = t.plus;
    const SideJet& M = t.minus;
    const int np = static_cast<int>(P.phi.size()), nm = static_cast<int>(M.phi.size());
    check_side(P, np, "plus");
    check_side(M, nm, "minus");
    require(t.S_pp.rows() == np && t.S_pp.cols() == np, "S_pp has wrong shape");
    require(t.S_pm.rows() == np && t.S_pm.cols() == nm, "S_pm has wrong shape");
    require(t.S_mp.rows() == nm && t.S_mp.cols() == np, "S_mp has wrong shape");
    require(t.S_mm.rows() == nm && t.S_mm.cols() == nm, "S_mm has wrong shape");
    const double w = t.weight;
    const double pp = dot(P.phi, P.rho), mm = dot(M.phi, M.rho);
    const double Lp = P.geom.L_trace, Lm = M.geom.L_trace;

    acc.add("b1", 1, w * (pp + mm));
    acc.add("b2", 2, w * (pp * Lp + mm * Lm));
    acc.add("b3", 2, w * (pp * Lm + mm * Lp));
    acc.add("b4", 2, w * (dot(P.dnu_phi, P.rho) + dot(M.dnu_phi, M.rho)));
    acc.add("b5", 2, w * (dot(P.phi, P.dnu_rho) + dot(M.phi, M.dnu_rho)));
    acc.add("b6", 2, w * (dot(t.S_pp * P.phi, P.rho) + dot(t.S_mm * M.phi, M.rho)));
    acc.add("b7", 2, w * (dot(t.S_pm * M.phi, P.rho) + dot(t.S_mp * P.phi, M.rho)));

    // B2 phi . B~2 rho, with the dual blocks S~_pm = S_mp^T, S~_mp = S_pm^T
    const Eigen::VectorXd Bp = P.dnu_phi + t.S_pp * P.phi + t.S_pm * M.phi;
    const Eigen::VectorXd Bm = M.dnu_phi + t.S_mm * M.phi + t.S_mp * P.phi;
    const Eigen::VectorXd Bp_t = P.dnu_rho + t.S_pp.transpose() * P.rho + t.S_mp.transpose() * M.rho;
    const Eigen::VectorXd Bm_t = M.dnu_rho + t.S_mm.transpose() * M.rho + t.S_pm.transpose() * P.rho;
    acc.add("transmission.Bphi_Brho", 3, w * (dot(Bp, Bp_t) + dot(Bm, Bm_t)));

    acc.add("b10", 3, w * (dot(t.S_pm * t.S_mp * P.phi, P.rho) + dot(t.S_mp * t.S_pm * M.phi, M.rho)));
    acc.add("b11", 3, w * (dot(t.S_mm * t.S_mp * P.phi, M.rho) + dot(t.S_pp * t.S_pm * M.phi, P.rho)));
    acc.add("b12", 3, w * (dot(t.S_mp * t.S_pp * P.phi, M.rho) + dot(t.S_pm * t.S_mm * M.phi, P.rho)));
    acc.add("b13", 3, w * (dot(t.S_mp * P.dnu_phi, M.rho) + dot(t.S_pm * M.dnu_phi, P.rho)));
    acc.add("b14", 3, w * (dot(t.S_mp * P.phi, M.dnu_rho) + dot(t.S_pm * M.phi, P.dnu_rho)));
    acc.add("b15", 3, w * (Lp * dot(t.S_mp * P.phi, M.rho) + Lm * dot(t.S_pm * M.phi, P.rho)));
    acc.add("b16", 3, w * (Lm * dot(t.S_mp * P.phi, M.rho) + Lp * dot(t.S_pm * M.phi, P.rho)));
  }

  CoefficientSet c;
  for (const auto& [key, inv] : acc.sums()) {
    const double m = key.second == "transmission.Bphi_Brho" ? 4.0 / (3.0 * kRootPi) : b[key.second];
    const double v = m * inv;
    c.boundary[static_cast<size_t>(key.first)] += v;
    c.terms.push_back({key.second, key.first, inv, v});
  }
  c.beta = c.boundary;
  return c;
}

InterfaceTrace swap_sides(const InterfaceTrace& t) {
  InterfaceTrace s = t;
  std::swap(s.plus, s.minus);
  for (auto& om : s.omega_a) om = -om;
  s.S_pp = t.S_mm;
  s.S_mm = t.S_pp;
  s.S_pm = t.S_mp;
  s.S_mp = t.S_pm;
  return s;
}

InterfaceTrace adjoint_trace(const InterfaceTrace& t) {
  auto flip = [](const SideJet& j) {
    SideJet d = j;
    d.phi = j.rho;
    d.rho = j.phi;
    d.Dphi = j.Dtrho;
    d.Dtrho = j.Dphi;
    d.dnu_phi = j.dnu_rho;
    d.dnu_rho = j.dnu_phi;
    d.dtan_phi = j.dtan_rho;
    d.dtan_rho = j.dtan_phi;
    d.E = j.E.transpose();
    return d;
  };
  InterfaceTrace d = t;
  d.plus = flip(t.plus);
  d.minus = flip(t.minus);
  for (auto& om : d.omega_a) om = -om.transpose().eval();
  d.U = t.U.transpose();
  d.S_pp = t.S_pp.transpose();
  d.S_mm = t.S_mm.transpose();
  d.S_pm = t.S_mp.transpose();
  d.S_mp = t.S_pm.transpose();
  return d;
}

}  // namespace heatlab
