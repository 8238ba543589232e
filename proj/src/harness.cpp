#include "heatlab/harness.hpp"

#include "heatlab/error.hpp"
#include "heatlab/quadrature.hpp"
#include "heatlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heatlab {

double SeededRandom::uniform() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return 2.0 * static_cast<double>(z >> 11) * 0x1.0p-53 - 1.0;
}

int SeededRandom::integer(int lo, int hi) {
  const double u = 0.5 * (uniform() + 1.0);
  return std::min(hi, lo + static_cast<int>(u * (hi - lo + 1)));
}

namespace {

constexpr double kExact = 1e-10;    // evaluator identities (quadrature roundoff only)
constexpr double kMatched = 1e-8;   // solver identities on matched grids

Eigen::Matrix2d rotation_generator() {
  Eigen::Matrix2d J;
  J << 0.0, 1.0, -1.0, 0.0;
  return J;
}

Poly random_poly(SeededRandom& r, int deg) {
  std::vector<double> c(static_cast<size_t>(deg + 1));
  for (auto& x : c) x = r.uniform();
  return Poly(c);
}

FieldComponents random_field(SeededRandom& r, int n, int deg) {
  FieldComponents f;
  for (int i = 0; i < n; ++i) f.emplace_back(random_poly(r, deg));
  return f;
}

Eigen::MatrixXd random_matrix(SeededRandom& r, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = r.uniform();
  return m;
}

Eigen::MatrixXd random_symmetric(SeededRandom& r, int n) {
  const Eigen::MatrixXd a = random_matrix(r, n, n);
  return 0.5 * (a + a.transpose());
}

/// r (1 - r) q(r): vanishes at both ends.
Poly vanishing_warping(SeededRandom& r, double scale) {
  return Poly{0.0, scale, -scale} * (Poly::constant(1.0) + 0.5 * random_poly(r, 1));
}

/// Self-adjoint operator: symmetric E(r), antisymmetric omega_r when n = 2.
LaplaceData random_operator(SeededRandom& r, int n, WarpedGeometry geom) {
  LaplaceData op = LaplaceData::scalar_laplacian(std::move(geom), n);
  op.E = PolyMatrix::constant(random_symmetric(r, n)) + Poly{0.0, 1.0} * PolyMatrix::constant(random_symmetric(r, n));
  if (n == 2) op.omega_r = random_poly(r, 1) * PolyMatrix::constant(rotation_generator());
  return op;
}

FieldComponents combine(const FieldComponents& a, const FieldComponents& b, double sa, double sb) {
  FieldComponents out;
  for (size_t i = 0; i < a.size(); ++i) out.emplace_back(sa * a[i].poly() + sb * b[i].poly());
  return out;
}

ConditionSpec robin(const std::string& at, const Eigen::MatrixXd& S) {
  ConditionSpec c;
  c.kind = ConditionKind::Robin;
  c.at = at;
  c.S = S;
  return c;
}

ConditionSpec dirichlet(const std::string& at) {
  ConditionSpec c;
  c.kind = ConditionKind::Dirichlet;
  c.at = at;
  return c;
}

ConditionSpec transmittal(const std::string& at, const Eigen::MatrixXd& U) {
  ConditionSpec c;
  c.kind = ConditionKind::Transmittal;
  c.at = at;
  c.U = U;
  return c;
}

ConditionSpec transmission(const std::string& at, const Eigen::MatrixXd& pp, const Eigen::MatrixXd& pm,
                           const Eigen::MatrixXd& mp, const Eigen::MatrixXd& mm) {
  ConditionSpec c;
  c.kind = ConditionKind::Transmission;
  c.at = at;
  c.S_pp = pp;
  c.S_pm = pm;
  c.S_mp = mp;
  c.S_mm = mm;
  return c;
}

/// The same condition on another side's end ("1+" -> "1-").
ConditionSpec on_side(ConditionSpec c, char sign) {
  c.at = std::string(1, c.at[0]) + sign;
  return c;
}

struct Recorder {
  CheckOutcome& out;
  const HarnessOptions& opts;

  CoefficientSet eval(const Problem& p) {
    CoefficientSet c = evaluate(p, opts.constants);
    note(c);
    return c;
  }
  void note(const CoefficientSet& c) {
    for (const auto& t : c.terms)
      if (opts.constants.contains(t.label) && std::abs(t.invariant) > 1e-12) out.touched.insert(t.label);
  }
  void record(double err, double tol, const std::string& what, const Problem* p = nullptr) {
    out.worst = std::max(out.worst, err / tol);
    if (err <= tol) return;
    out.pass = false;
    std::string msg = what + ": discrepancy " + std::to_string(err) + " exceeds " + std::to_string(tol);
    if (p) msg += "; problem " + problem_to_json(*p).dump();
    out.failures.push_back(msg);
  }
  /// beta_n(a) = s * beta_n(b) for n = 0..3, relative to the larger magnitude.
  void same_coefficients(const CoefficientSet& a, const CoefficientSet& b, double s, const std::string& what,
                         const Problem* p) {
    for (size_t n = 0; n < 4; ++n) {
      const double x = a.beta[n], y = s * b.beta[n];
      const double scale = std::max({1.0, std::abs(x), std::abs(y)});
      record(std::abs(x - y) / scale, kExact, what + " beta_" + std::to_string(n), p);
    }
  }
};

double max_relative(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

std::vector<double> matched_times() { return geometric_times(0.01, 0.5, 8); }

HeatContentSamples run(const Problem& p, const HarnessOptions& opts, const std::vector<double>& times) {
  return simulate(p, Discretization::spectral(opts.degree), times);
}

}  // namespace

Problem reduced_problem(const Problem& warped) {
  for (int k : warped.effective_mode())
    if (k != 0) throw PreconditionError("the warped reduction needs the zero angular mode");
  Problem out = warped;
  out.mode.clear();
  std::vector<Poly> F;
  for (auto& s : out.sides) {
    const Poly Fs = s.op.geom.total_warping();
    F.push_back(Fs);
    const int n = s.op.fiber_dim;
    const Poly F1 = Fs.derivative();
    PolyMatrix shift = PolyMatrix::scalar(-0.25 * (F1 * F1) - 0.5 * Fs.derivative(2), n);
    for (int a = 0; a < s.op.geom.dim(); ++a) {
      const Eigen::MatrixXd om = s.op.omega_theta_at(a);
      if (om.isZero(0.0)) continue;
      if (!s.op.geom.warpings[static_cast<size_t>(a)].is_zero())
        throw PreconditionError("an angular connection needs an unwarped direction");
      shift -= PolyMatrix::constant(om * om);
    }
    s.op.omega_r += PolyMatrix::scalar(0.5 * F1, n);
    s.op.E += shift;
    s.op.omega_theta.clear();
    s.op.geom = WarpedGeometry::interval();
    for (auto& c : s.rho) c = RadialFn(c.poly(), c.exponent() + Fs);
  }
  // nabla_nu on the interval = nabla_nu on the warped side + sigma F'/2
  auto half = [&](size_t side, BoundaryPoint p) {
    return 0.5 * normal_sign(p) * F[side].derivative()(boundary_coordinate(p));
  };
  for (auto& c : out.conditions) {
    const BoundaryPoint p = c.point();
    switch (c.kind) {
      case ConditionKind::Dirichlet: break;
      case ConditionKind::Robin: {
        const size_t s = c.side_sign() < 0 ? 1 : 0;
        c.S -= half(s, p) * Eigen::MatrixXd::Identity(c.S.rows(), c.S.cols());
        break;
      }
      case ConditionKind::Transmittal:
        c.U += (half(0, p) + half(1, p)) * Eigen::MatrixXd::Identity(c.U.rows(), c.U.cols());
        break;
      case ConditionKind::Transmission:
        c.S_pp -= half(0, p) * Eigen::MatrixXd::Identity(c.S_pp.rows(), c.S_pp.cols());
        c.S_mm -= half(1, p) * Eigen::MatrixXd::Identity(c.S_mm.rows(), c.S_mm.cols());
        break;
    }
  }
  return out;
}

CheckOutcome check_doubling_b1(const HarnessOptions& opts, int cases) {
  CheckOutcome out;
  out.name = "doubling_b1";
  Recorder rec{out, opts};
  SeededRandom rng(opts.seed);
  const auto times = matched_times();
  for (int i = 0; i < cases; ++i) {
    const int n = 1 + (i % 2);
    WarpedGeometry geom;
    if (i % 3 == 2) geom.warpings.push_back(Poly{0.0, rng.uniform(), rng.uniform()});
    const LaplaceData op = random_operator(rng, n, geom);
    const Eigen::MatrixXd S = random_symmetric(rng, n);
    const ConditionSpec outer = (i % 4 == 3) ? dirichlet("1+") : robin("1+", random_symmetric(rng, n));

    FieldComponents phi_p = random_field(rng, n, 2), phi_m = random_field(rng, n, 2);
    FieldComponents rho_p = random_field(rng, n, 2), rho_m = random_field(rng, n, 2);
    std::string label = "case " + std::to_string(i);
    if (i == 0) {  // even phi, even rho: pure Robin branch
      phi_m = phi_p;
      rho_m = rho_p;
      label += " (even/even)";
    } else if (i == 1) {  // odd phi, even rho: cross terms cancel
      phi_m = combine(phi_p, phi_p, -1.0, 0.0);
      rho_m = rho_p;
      label += " (odd/even)";
    }

    Problem doubled;
    doubled.sides = {{op, phi_p, rho_p}, {op, phi_m, rho_m}};
    doubled.conditions = {transmittal("0", -2.0 * S), outer, on_side(outer, '-')};
    Problem odd;
    odd.sides = {{op, combine(phi_p, phi_m, 0.5, -0.5), combine(rho_p, rho_m, 0.5, -0.5)}};
    odd.conditions = {dirichlet("0+"), outer};
    Problem even;
    even.sides = {{op, combine(phi_p, phi_m, 0.5, 0.5), combine(rho_p, rho_m, 0.5, 0.5)}};
    even.conditions = {robin("0+", S), outer};

    const CoefficientSet cd = rec.eval(doubled), co = rec.eval(odd), ce = rec.eval(even);
    CoefficientSet sum = co;
    for (size_t k = 0; k < 4; ++k) sum.beta[k] = 2.0 * (co.beta[k] + ce.beta[k]);
    rec.same_coefficients(cd, sum, 1.0, label + " coefficients", &doubled);
    // sqrt(int |phi|^2 int |rho|^2) of the plus side normalizes the vanishing case
    Problem sq;
    sq.sides = {{op, phi_p, phi_p}};
    sq.conditions = {dirichlet("0+"), dirichlet("1+")};
    const double phi2 = beta_interior(sq).beta[0];
    sq.sides = {{op, rho_p, rho_p}};
    const double norm = std::sqrt(phi2 * beta_interior(sq).beta[0]);
    if (i == 1) {
      for (size_t k = 0; k < 4; ++k) rec.record(std::abs(cd.beta[k]) / norm, kExact, label + " vanishing beta_" + std::to_string(k), &doubled);
    }

    if (opts.solver_checks) {
      const auto bd = run(doubled, opts, times), bo = run(odd, opts, times), be = run(even, opts, times);
      std::vector<double> rhs;
      for (size_t k = 0; k < times.size(); ++k) rhs.push_back(2.0 * (bo.values[k] + be.values[k]));
      if (i == 1) {
        double worst = 0.0;
        for (double v : bd.values) worst = std::max(worst, std::abs(v));
        rec.record(worst / norm, kMatched, label + " samples vanish", &doubled);
      } else {
        rec.record(max_relative(bd.values, rhs), kMatched, label + " samples", &doubled);
      }
    }
    ++out.cases;
  }
  return out;
}

CheckOutcome check_epsilon_shift(const HarnessOptions& opts) {
  CheckOutcome out;
  out.name = "epsilon_shift";
  Recorder rec{out, opts};
  SeededRandom rng(opts.seed + 101);
  const double h = 1e-3;
  for (int family = 0; family < 4; ++family) {
    for (int rep = 0; rep < 2; ++rep) {
      const int n = 1 + rep;
      WarpedGeometry gp, gm;
      if (rep == 1) {
        const double c = rng.uniform();
        gp.warpings.push_back(Poly{0.0, c, rng.uniform()});
        gm.warpings.push_back(Poly{0.0, rng.uniform(), rng.uniform()});
      }
      Problem p;
      const Side plus{random_operator(rng, n, gp), random_field(rng, n, 2), random_field(rng, n, 2)};
      const Side minus{random_operator(rng, n, gm), random_field(rng, n, 2), random_field(rng, n, 2)};
      std::string label;
      switch (family) {
        case 0:
          label = "dirichlet";
          p.sides = {plus};
          p.conditions = {dirichlet("0+"), dirichlet("1+")};
          break;
        case 1:
          label = "robin";
          p.sides = {plus};
          p.conditions = {robin("0+", random_matrix(rng, n, n)), robin("1+", random_matrix(rng, n, n))};
          break;
        case 2:
          label = "transmittal";
          p.sides = {plus, minus};
          p.conditions = {transmittal("0", random_matrix(rng, n, n)), robin("1+", random_matrix(rng, n, n)),
                          dirichlet("1-")};
          break;
        default:
          label = "transmission";
          p.sides = {plus, minus};
          p.conditions = {transmission("0", random_matrix(rng, n, n), random_matrix(rng, n, n),
                                       random_matrix(rng, n, n), random_matrix(rng, n, n)),
                          dirichlet("1+"), robin("1-", random_matrix(rng, n, n))};
          break;
      }
      label += n == 1 ? " (flat, scalar)" : " (warped, rank 2)";
      const CoefficientSet c0 = rec.eval(p);
      const CoefficientSet cp = rec.eval(shift_endomorphism(p, h));
      const CoefficientSet cm = rec.eval(shift_endomorphism(p, -h));
      for (size_t k = 0; k < 4; ++k) {
        const double d = (cp.beta[k] - cm.beta[k]) / (2.0 * h);
        const double expect = k >= 2 ? c0.beta[k - 2] : 0.0;
        const double scale = std::max({1.0, std::abs(expect), std::abs(c0.beta[k])});
        rec.record(std::abs(d - expect) / scale, kMatched, label + " d beta_" + std::to_string(k) + "/d eps", &p);
      }
      ++out.cases;
    }
  }
  return out;
}

CheckOutcome check_warped_reduction(const HarnessOptions& opts) {
  CheckOutcome out;
  out.name = "warped_reduction";
  Recorder rec{out, opts};
  SeededRandom rng(opts.seed + 202);
  struct Spec {
    std::vector<Poly> fp, fm;
    double U0;
    std::string label;
  };
  std::vector<Spec> specs = {
      {{Poly{}}, {Poly{}}, 0.3, "flat"},
      {{Poly{0, 0, 1, -2, 1}}, {Poly{}}, 0.0, "d=1, f+=r^2(1-r)^2"},
      {{Poly{0, 0, 1, -2, 1}}, {Poly{}}, 0.5, "d=1, f+=r^2(1-r)^2, U0=0.5"},
      {{vanishing_warping(rng, 0.8)}, {vanishing_warping(rng, -0.5)}, rng.uniform(), "d=1, random"},
      {{vanishing_warping(rng, 0.7), vanishing_warping(rng, -0.4)},
       {vanishing_warping(rng, 0.3), vanishing_warping(rng, 0.6)},
       rng.uniform(),
       "d=2, random"},
  };
  const auto times = matched_times();
  for (const auto& sp : specs) {
    Problem M;
    for (const auto* f : {&sp.fp, &sp.fm}) {
      WarpedGeometry g;
      g.warpings = *f;
      M.sides.push_back({LaplaceData::scalar_laplacian(g, 1), {RadialFn(Poly::constant(rng.uniform(0.3, 1.0)))},
                         {RadialFn(Poly::constant(rng.uniform(-1.0, 1.0)))}});
    }
    M.conditions = {transmittal("0", Eigen::MatrixXd::Constant(1, 1, sp.U0)),
                    robin("1+", Eigen::MatrixXd::Constant(1, 1, rng.uniform())),
                    robin("1-", Eigen::MatrixXd::Constant(1, 1, rng.uniform()))};
    const Problem N = reduced_problem(M);
    const double factor = std::pow(2.0 * std::numbers::pi, static_cast<double>(sp.fp.size()));
    const CoefficientSet cM = rec.eval(M), cN = rec.eval(N);
    rec.same_coefficients(cM, cN, factor, sp.label + " coefficients", &M);
    if (opts.solver_checks) {
      const auto sM = run(M, opts, times), sN = run(N, opts, times);
      std::vector<double> scaled;
      for (double v : sN.values) scaled.push_back(factor * v);
      rec.record(max_relative(sM.values, scaled), 1e-6, sp.label + " samples", &M);
    }
    ++out.cases;
  }
  return out;
}

CheckOutcome check_b2_identities(const HarnessOptions& opts) {
  CheckOutcome out;
  out.name = "b2_identities";
  Recorder rec{out, opts};
  SeededRandom rng(opts.seed + 303);
  const auto times = matched_times();
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);

  // decoupling: no cross blocks gives Robin on each side separately
  for (int rep = 0; rep < 3; ++rep) {
    const int n = 1 + (rep % 2);
    WarpedGeometry gp, gm;
    if (rep == 2) {
      const double c = rng.uniform();
      gp.warpings.push_back(Poly{0.0, c, rng.uniform()});
      gm.warpings.push_back(Poly{0.0, rng.uniform(), rng.uniform()});
    }
    const Side plus{random_operator(rng, n, gp), random_field(rng, n, 2), random_field(rng, n, 2)};
    const Side minus{random_operator(rng, n, gm), random_field(rng, n, 2), random_field(rng, n, 2)};
    const Eigen::MatrixXd Spp = random_matrix(rng, n, n), Smm = random_matrix(rng, n, n);
    const ConditionSpec op = robin("1+", random_matrix(rng, n, n));
    Problem p;
    p.sides = {plus, minus};
    p.conditions = {transmission("0", Spp, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Smm), op,
                    dirichlet("1-")};
    Problem a, b;
    a.sides = {plus};
    a.conditions = {robin("0+", Spp), op};
    b.sides = {minus};
    b.conditions = {robin("0+", Smm), dirichlet("1+")};
    CoefficientSet sum = rec.eval(a);
    const CoefficientSet cb = rec.eval(b);
    for (size_t k = 0; k < 4; ++k) sum.beta[k] += cb.beta[k];
    rec.same_coefficients(rec.eval(p), sum, 1.0, "decoupling " + std::to_string(rep), &p);
    ++out.cases;
  }

  // doubling: S_pp = S_mm = 0, S_pm = S_mp = S reproduces Robin with rho_+ + rho_-
  for (int rep = 0; rep < 3; ++rep) {
    const int n = 1 + (rep % 2);
    WarpedGeometry g;
    if (rep == 2) g.warpings.push_back(Poly{0.0, rng.uniform(), rng.uniform()});
    const LaplaceData op = random_operator(rng, n, g);
    const FieldComponents phi0 = random_field(rng, n, 2);
    const FieldComponents rp = random_field(rng, n, 2), rm = random_field(rng, n, 2);
    const Eigen::MatrixXd S = random_symmetric(rng, n);
    const ConditionSpec outer = robin("1+", random_symmetric(rng, n));
    Problem p;
    p.sides = {{op, phi0, rp}, {op, phi0, rm}};
    p.conditions = {transmission("0", Eigen::MatrixXd::Zero(n, n), S, S, Eigen::MatrixXd::Zero(n, n)), outer,
                    on_side(outer, '-')};
    Problem r;
    r.sides = {{op, phi0, combine(rp, rm, 1.0, 1.0)}};
    r.conditions = {robin("0+", S), outer};
    const std::string label = "doubling " + std::to_string(rep);
    rec.same_coefficients(rec.eval(p), rec.eval(r), 1.0, label, &p);
    if (opts.solver_checks) {
      const auto sp = run(p, opts, times), sr = run(r, opts, times);
      rec.record(max_relative(sp.values, sr.values), kMatched, label + " samples", &p);
    }
    ++out.cases;
  }

  // S = (a, -a; -b, b) with phi = 1: a stationary solution, so beta_n = 0 for n >= 1
  for (int rep = 0; rep < 3; ++rep) {
    WarpedGeometry gp, gm;
    gp.warpings.push_back(vanishing_warping(rng, rng.uniform()));
    gm.warpings.push_back(vanishing_warping(rng, rng.uniform()));
    const double a = rng.uniform(), b = rng.uniform();
    Problem p;
    p.sides = {{LaplaceData::scalar_laplacian(gp, 1), {RadialFn(Poly{1.0})}, random_field(rng, 1, 2)},
               {LaplaceData::scalar_laplacian(gm, 1), {RadialFn(Poly{1.0})}, random_field(rng, 1, 2)}};
    p.conditions = {transmission("0", a * one, -a * one, -b * one, b * one), robin("1+", 0.0 * one),
                    robin("1-", 0.0 * one)};
    const CoefficientSet c = rec.eval(p);
    const double scale = std::max(1.0, std::abs(c.beta[0]));
    for (size_t k = 1; k < 4; ++k)
      rec.record(std::abs(c.beta[k]) / scale, kExact, "unit solution beta_" + std::to_string(k), &p);
    ++out.cases;
  }

  // linear stationary solutions of -d^2/dr^2 with rho_- = 0
  for (int rep = 0; rep < 3; ++rep) {
    Eigen::Matrix2d S = random_matrix(rng, 2, 2);
    double bp = rng.uniform(0.5, 1.0), bm = rng.uniform(0.5, 1.0);
    const double ap = -(S(0, 0) * bp + S(0, 1) * bm);
    const double am = -(S(1, 1) * bm + S(1, 0) * bp);
    if (std::abs(ap + bp) < 0.1 || std::abs(am + bm) < 0.1) {
      S *= 0.25;
      bp += 1.0;
      bm += 1.0;
    }
    const double ap2 = -(S(0, 0) * bp + S(0, 1) * bm);
    const double am2 = -(S(1, 1) * bm + S(1, 0) * bp);
    Problem p;
    p.sides = {{LaplaceData::scalar_laplacian({}, 1), {RadialFn(Poly{bp, ap2})}, random_field(rng, 1, 2)},
               {LaplaceData::scalar_laplacian({}, 1), {RadialFn(Poly{bm, am2})}, {RadialFn(Poly{})}}};
    // at r = 1 the inward derivative is -a, so S = a / phi(1) keeps phi stationary
    p.conditions = {transmission("0", S(0, 0) * one, S(0, 1) * one, S(1, 0) * one, S(1, 1) * one),
                    robin("1+", (ap2 / (ap2 + bp)) * one), robin("1-", (am2 / (am2 + bm)) * one)};
    const CoefficientSet c = rec.eval(p);
    const double scale = std::max(1.0, std::abs(c.beta[0]));
    const std::string label = "linear family " + std::to_string(rep);
    for (size_t k = 1; k < 4; ++k) rec.record(std::abs(c.beta[k]) / scale, kExact, label + " beta_" + std::to_string(k), &p);
    if (opts.solver_checks) {
      const auto s = run(p, opts, times);
      double worst = 0.0;
      for (double v : s.values) worst = std::max(worst, std::abs(v - c.beta[0]) / scale);
      rec.record(worst, kMatched, label + " samples constant", &p);
    }
    ++out.cases;
  }
  return out;
}

CheckOutcome check_separation_of_variables(const HarnessOptions& opts) {
  CheckOutcome out;
  out.name = "separation_of_variables";
  Recorder rec{out, opts};
  SeededRandom rng(opts.seed + 404);
  // eps(theta) = c0 + c1 sin(theta) + c2 cos(theta); rho_+(theta) likewise
  struct Trig {
    double c0 = 0, c1 = 0, c2 = 0;
    double operator()(double t) const { return c0 + c1 * std::sin(t) + c2 * std::cos(t); }
    double d(double t) const { return c1 * std::cos(t) - c2 * std::sin(t); }
    double dd(double t) const { return -c1 * std::sin(t) - c2 * std::cos(t); }
  };
  struct Spec {
    Trig ep, em, rp, rm;
    double phip, phim, U0;
    std::string label;
  };
  const double c = rng.uniform(0.5, 1.5);
  std::vector<Spec> specs = {
      {{c}, {c}, {rng.uniform()}, {rng.uniform()}, rng.uniform(), rng.uniform(), rng.uniform(), "eps+ = eps- constant"},
      {{c}, {0}, {rng.uniform()}, {rng.uniform()}, rng.uniform(), rng.uniform(), rng.uniform(), "eps+ = c, eps- = 0"},
      {{rng.uniform(), rng.uniform(), rng.uniform()},
       {rng.uniform(), rng.uniform(), rng.uniform()},
       {rng.uniform(), rng.uniform(), rng.uniform()},
       {rng.uniform(), rng.uniform(), rng.uniform()},
       rng.uniform(),
       rng.uniform(),
       rng.uniform(),
       "trigonometric eps and rho"},
      {{0, 1, 0}, {0}, {1.0, rng.uniform(), rng.uniform()}, {0}, 1.0, 1.0, 0.0, "eps+ = sin, phi = (1,1), rho- = 0"},
  };
  const WarpedGeometry flat{{Poly{}}};
  const QuadratureRule q = periodic_rule(32);
  auto jet = [&](const Trig& eps, const Trig& rho, double phi, double t, bool with_eps) {
    const double e = with_eps ? eps(t) : 0.0, de = with_eps ? eps.d(t) : 0.0;
    SideJet j;
    j.phi = Eigen::VectorXd::Constant(1, phi);
    j.rho = Eigen::VectorXd::Constant(1, rho(t));
    j.Dphi = Eigen::VectorXd::Zero(1);
    // formal adjoint of -(d^2 + 2 eps d) acting on rho(theta)
    j.Dtrho = Eigen::VectorXd::Constant(1, -rho.dd(t) + 2.0 * de * rho(t) + 2.0 * e * rho.d(t));
    j.dnu_phi = Eigen::VectorXd::Zero(1);
    j.dnu_rho = Eigen::VectorXd::Zero(1);
    j.dtan_phi = {Eigen::VectorXd::Constant(1, e * phi)};
    j.dtan_rho = {Eigen::VectorXd::Constant(1, rho.d(t) - e * rho(t))};
    j.E = Eigen::MatrixXd::Constant(1, 1, -e * e - de);
    j.geom = boundary_geometry(flat, BoundaryPoint::Start);
    return j;
  };
  for (const auto& sp : specs) {
    std::vector<InterfaceTrace> with, without;
    for (size_t k = 0; k < q.points.size(); ++k) {
      const double t = q.points[k];
      for (bool e : {true, false}) {
        InterfaceTrace tr;
        tr.plus = jet(sp.ep, sp.rp, sp.phip, t, e);
        tr.minus = jet(sp.em, sp.rm, sp.phim, t, e);
        tr.omega_a = {Eigen::MatrixXd::Constant(1, 1, e ? sp.ep(t) - sp.em(t) : 0.0)};
        tr.U = Eigen::MatrixXd::Constant(1, 1, sp.U0);
        tr.weight = q.weights[k];
        (e ? with : without).push_back(tr);
      }
    }
    const CoefficientSet a = beta_b1(with, opts.constants), b = beta_b1(without, opts.constants);
    rec.note(a);
    rec.same_coefficients(a, b, 1.0, sp.label, nullptr);
    ++out.cases;
  }
  return out;
}

std::vector<Problem> harmonic_unit_cases(const HarnessOptions& opts, int cases) {
  SeededRandom rng(opts.seed + 505);
  std::vector<Problem> out;
  for (int i = 0; i < cases; ++i) {
    const int d = 1 + (i % 2);
    const int n = 1 + ((i / 2) % 2);
    Problem pr;
    for (int s = 0; s < 2; ++s) {
      WarpedGeometry g;
      for (int a = 0; a < d; ++a) g.warpings.push_back(vanishing_warping(rng, rng.uniform()));
      LaplaceData op = LaplaceData::scalar_laplacian(g, n);
      if (n == 2) {
        // a constant connection on an unwarped direction; E cancels its curvature term on constants
        op.geom.warpings[0] = Poly{};
        const Eigen::MatrixXd om = rng.uniform(0.5, 2.0) * rotation_generator();
        op.omega_theta.assign(static_cast<size_t>(d), Eigen::MatrixXd::Zero(2, 2));
        op.omega_theta[0] = om;
        op.E = PolyMatrix::constant(-om * om);
      }
      FieldComponents one;
      for (int k = 0; k < n; ++k) one.emplace_back(Poly{1.0});
      pr.sides.push_back({op, one, random_field(rng, n, 2)});
    }
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, n);
    pr.conditions = {transmittal("0", zero), transmittal("1", zero)};
    out.push_back(std::move(pr));
  }
  return out;
}

CheckOutcome check_harmonic_unit(const HarnessOptions& opts, int cases) {
  CheckOutcome out;
  out.name = "harmonic_unit";
  Recorder rec{out, opts};
  const auto times = matched_times();
  const auto problems = harmonic_unit_cases(opts, cases);
  for (size_t i = 0; i < problems.size(); ++i) {
    const Problem& p = problems[i];
    const CoefficientSet c = rec.eval(p);
    const double scale = std::max(1.0, std::abs(c.beta[0]));
    const std::string label = "case " + std::to_string(i);
    for (size_t k = 1; k < 4; ++k) rec.record(std::abs(c.beta[k]) / scale, kExact, label + " beta_" + std::to_string(k), &p);
    if (opts.solver_checks) {
      const auto s = run(p, opts, times);
      double worst = 0.0;
      for (double v : s.values) worst = std::max(worst, std::abs(v - c.beta[0]) / scale);
      rec.record(worst, kMatched, label + " samples constant", &p);
    }
    ++out.cases;
  }
  return out;
}

CheckOutcome check_coverage(const std::vector<CheckOutcome>& outcomes, const ConstantTable& table) {
  CheckOutcome out;
  out.name = "coverage";
  std::set<std::string> seen;
  for (const auto& o : outcomes) seen.insert(o.touched.begin(), o.touched.end());
  for (const auto& name : table.nonzero_names()) {
    ++out.cases;
    if (!seen.count(name)) {
      out.pass = false;
      out.failures.push_back("constant " + name + " is not exercised by any check");
    }
  }
  out.touched = seen;
  return out;
}

std::vector<std::string> harness_check_names() {
  return {"doubling_b1", "epsilon_shift", "warped_reduction", "b2_identities", "separation_of_variables",
          "harmonic_unit", "coverage"};
}

std::vector<CheckOutcome> run_harness(const HarnessOptions& opts, const std::vector<std::string>& selection) {
  const auto all = harness_check_names();
  for (const auto& s : selection)
    if (std::find(all.begin(), all.end(), s) == all.end()) throw ConfigError("selection", "unknown check '" + s + "'");
  auto wanted = [&](const std::string& n) {
    return selection.empty() || std::find(selection.begin(), selection.end(), n) != selection.end();
  };
  const bool coverage = wanted("coverage");
  std::vector<CheckOutcome> out;
  // coverage needs every other check
  auto need = [&](const std::string& n) { return wanted(n) || coverage; };
  if (need("doubling_b1")) out.push_back(check_doubling_b1(opts));
  if (need("epsilon_shift")) out.push_back(check_epsilon_shift(opts));
  if (need("warped_reduction")) out.push_back(check_warped_reduction(opts));
  if (need("b2_identities")) out.push_back(check_b2_identities(opts));
  if (need("separation_of_variables")) out.push_back(check_separation_of_variables(opts));
  if (need("harmonic_unit")) out.push_back(check_harmonic_unit(opts));
  if (coverage) out.push_back(check_coverage(out, opts.constants));
  std::vector<CheckOutcome> selected;
  for (auto& o : out)
    if (wanted(o.name)) selected.push_back(std::move(o));
  return selected;
}

Json outcome_json(const CheckOutcome& o) {
  return {{"name", o.name},
          {"verdict", o.pass ? "PASS" : "FAIL"},
          {"cases", o.cases},
          {"worst_ratio", o.worst},
          {"failures", o.failures},
          {"touched", std::vector<std::string>(o.touched.begin(), o.touched.end())}};
}

}  // namespace heatlab
