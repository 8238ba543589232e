#include "heatlab/solver.hpp"

#include "heatlab/error.hpp"
#include "heatlab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatlab {
namespace {

/// Lagrange basis on the reference element [0,1] sampled at Gauss points.
struct ElementBasis {
  std::vector<double> nodes;
  std::vector<double> qpts, qw;
  Eigen::MatrixXd val, der;  // rows: quadrature points, cols: local nodes
};

ElementBasis make_basis(int p, int qn) {
  ElementBasis e;
  if (p == 1) {
    e.nodes = {0.0, 1.0};
  } else {
    e.nodes = gauss_lobatto(p).points;
  }
  const QuadratureRule q = gauss_legendre(qn);
  e.qpts = q.points;
  e.qw = q.weights;
  const int n = p + 1;
  // barycentric weights, kept as log-magnitude and sign to avoid underflow
  std::vector<double> logw(static_cast<size_t>(n)), sgn(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double lw = 0.0, s = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = e.nodes[static_cast<size_t>(i)] - e.nodes[static_cast<size_t>(j)];
      lw -= std::log(std::abs(d));
      if (d < 0) s = -s;
    }
    logw[static_cast<size_t>(i)] = lw;
    sgn[static_cast<size_t>(i)] = s;
  }
  const double shift = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = sgn[static_cast<size_t>(i)] * std::exp(logw[static_cast<size_t>(i)] - shift);

  e.val.resize(qn, n);
  e.der.resize(qn, n);
  for (int k = 0; k < qn; ++k) {
    const double x = e.qpts[static_cast<size_t>(k)];
    int hit = -1;
    for (int i = 0; i < n; ++i)
      if (std::abs(x - e.nodes[static_cast<size_t>(i)]) < 1e-15) hit = i;
    if (hit >= 0) {
      // quadrature point on a node: use the differentiation matrix row
      const double xi = e.nodes[static_cast<size_t>(hit)];
      double diag = 0.0;
      for (int j = 0; j < n; ++j) {
        e.val(k, j) = (j == hit) ? 1.0 : 0.0;
        if (j == hit) continue;
        const double dij = (w[static_cast<size_t>(j)] / w[static_cast<size_t>(hit)]) / (xi - e.nodes[static_cast<size_t>(j)]);
        e.der(k, j) = dij;
        diag -= dij;
      }
      e.der(k, hit) = diag;
      continue;
    }
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = w[static_cast<size_t>(i)] / (x - e.nodes[static_cast<size_t>(i)]);
      s1 += t;
      s2 += t / (x - e.nodes[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
      const double dx = x - e.nodes[static_cast<size_t>(i)];
      const double l = (w[static_cast<size_t>(i)] / dx) / s1;
      e.val(k, i) = l;
      e.der(k, i) = l * (s2 / s1 - 1.0 / dx);
    }
  }
  return e;
}

/// Scalar gauge u -> exp(Omega) u removing a symmetric part w(r) Id of omega_r.
struct Gauge {
  bool active = false;
  std::vector<Poly> omega;  // Omega per side
  std::vector<Poly> w;
};

bool scalar_symmetric_part(const PolyMatrix& om, Poly& w) {
  const int n = om.dim();
  const PolyMatrix sym = 0.5 * (om + om.transpose());
  Poly tr;
  for (int i = 0; i < n; ++i) tr += sym.at(i, i);
  w = tr * (1.0 / n);
  const PolyMatrix rest = sym - PolyMatrix::scalar(w, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (double c : rest.at(i, j).coeffs())
        if (std::abs(c) > 1e-13) return false;
  return true;
}

Gauge make_gauge(const Problem& problem) {
  Gauge g;
  bool any = false;
  for (const auto& s : problem.sides) {
    Poly w;
    if (!scalar_symmetric_part(s.op.omega_r, w)) return {};
    any = any || !w.is_zero();
    g.w.push_back(w);
    g.omega.push_back(w.antiderivative());
  }
  if (!any) return {};
  if (problem.two_sided()) {
    std::vector<double> pts;
    for (const auto& c : problem.conditions)
      if (c.kind == ConditionKind::Transmittal) pts.push_back(boundary_coordinate(c.point()));
    if (!pts.empty()) {
      const double shift = g.omega[0](pts[0]) - g.omega[1](pts[0]);
      for (double p : pts)
        if (std::abs(g.omega[0](p) - g.omega[1](p) - shift) > 1e-12) return {};
      g.omega[1] += Poly::constant(shift);
    }
  }
  g.active = true;
  return g;
}

struct SideSystem {
  Eigen::MatrixXd K, M;
  Eigen::VectorXd g, b;
  int nodes = 0;
  int n = 1;
  std::vector<double> node_r;
};

SideSystem assemble_side(const Side& side, const Gauge& gauge, size_t s, const AngularMode& mode,
                         const Discretization& disc) {
  const LaplaceData& op0 = side.op;
  const int n = op0.fiber_dim;
  PolyMatrix omega_r = op0.omega_r;
  if (gauge.active) omega_r -= PolyMatrix::scalar(gauge.w[s], n);

  const bool fd = disc.scheme == Scheme::FD2;
  const int p = fd ? 1 : disc.resolution;
  const int cells = fd ? disc.resolution : 1;
  const int qn = fd ? 3 : p + disc.extra_quadrature;
  const ElementBasis eb = make_basis(p, qn);
  const int nodes = cells * p + 1;
  const int dofs = nodes * n;

  SideSystem sys;
  sys.n = n;
  sys.nodes = nodes;
  sys.K = Eigen::MatrixXd::Zero(dofs, dofs);
  sys.M = Eigen::MatrixXd::Zero(dofs, dofs);
  sys.g = Eigen::VectorXd::Zero(dofs);
  sys.b = Eigen::VectorXd::Zero(dofs);
  for (int c = 0; c < cells; ++c)
    for (int k = 0; k < p; ++k) sys.node_r.push_back((c + eb.nodes[static_cast<size_t>(k)]) / cells);
  sys.node_r.push_back(1.0);

  const int d = op0.geom.dim();
  const double h = 1.0 / cells;
  Eigen::MatrixXd W(n, n), WM(n, n);
  for (int cell = 0; cell < cells; ++cell) {
    const int base = cell * p;
    for (int q = 0; q < qn; ++q) {
      const double r = (cell + eb.qpts[static_cast<size_t>(q)]) * h;
      const double wq = eb.qw[static_cast<size_t>(q)] * h * op0.geom.volume_density(r);
      const Eigen::MatrixXd om = omega_r(r);
      Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, n);
      for (int a = 0; a < d; ++a) {
        const double e2 = std::exp(-2.0 * op0.geom.warpings[static_cast<size_t>(a)](r));
        const int k = mode.empty() ? 0 : mode[static_cast<size_t>(a)];
        const Eigen::MatrixXd ot = op0.omega_theta_at(a);
        V += e2 * (double(k) * k * Eigen::MatrixXd::Identity(n, n) - ot * ot);
      }
      // zeroth-order block: -(omega^2 + E - V)
      const Eigen::MatrixXd Z = -(om * om + op0.E(r) - V);
      Eigen::VectorXd phi = evaluate(side.phi, r);
      Eigen::VectorXd rho = evaluate(side.rho, r);
      if (gauge.active) {
        const double e = std::exp(gauge.omega[s](r));
        phi *= e;
        rho /= e;
      }
      for (int i = 0; i <= p; ++i) {
        const double li = eb.val(q, i), di = eb.der(q, i) / h;
        const int row = (base + i) * n;
        for (int c = 0; c < n; ++c) {
          sys.g(row + c) += wq * li * phi(c);
          sys.b(row + c) += wq * li * rho(c);
        }
        for (int j = 0; j <= p; ++j) {
          const double lj = eb.val(q, j), dj = eb.der(q, j) / h;
          const int col = (base + j) * n;
          const double ll = wq * li * lj;
          const double cross = wq * (lj * di - dj * li);
          for (int c = 0; c < n; ++c) {
            sys.K(row + c, col + c) += wq * di * dj;
            sys.M(row + c, col + c) += ll;
            for (int e = 0; e < n; ++e) sys.K(row + c, col + e) += cross * om(c, e) + ll * Z(c, e);
          }
        }
      }
    }
  }
  if (fd) {
    const Eigen::VectorXd lumped = sys.M.rowwise().sum();
    sys.M = lumped.asDiagonal();
  }
  return sys;
}

Eigen::VectorXd solve_mass(const AssembledProblem& a, const Eigen::VectorXd& rhs) {
  return a.M.llt().solve(rhs);
}

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::Auto: return "auto";
    case Route::Eigen: return "eigen";
    case Route::Timestep: return "timestep";
  }
  return "auto";
}

AssembledProblem assemble(const Problem& problem, const Discretization& disc) {
  problem.validate();
  if (disc.scheme == Scheme::FD2 && disc.resolution < 64)
    throw PreconditionError("the second-order scheme needs at least 64 cells per side");
  if (disc.scheme == Scheme::Spectral && disc.resolution < 8)
    throw PreconditionError("the spectral scheme needs degree at least 8");
  if (disc.extra_quadrature < 0) throw PreconditionError("extra quadrature must be nonnegative");

  const Gauge gauge = make_gauge(problem);
  const AngularMode mode = problem.effective_mode();
  std::vector<SideSystem> local;
  for (size_t s = 0; s < problem.sides.size(); ++s)
    local.push_back(assemble_side(problem.sides[s], gauge, s, mode, disc));

  // global numbering: -1 for Dirichlet unknowns, shared unknowns at transmittal interfaces
  std::vector<std::vector<int>> map(local.size());
  for (size_t s = 0; s < local.size(); ++s) map[s].assign(static_cast<size_t>(local[s].nodes * local[s].n), -2);
  auto end_node = [&](size_t s, BoundaryPoint p) { return p == BoundaryPoint::Start ? 0 : local[s].nodes - 1; };
  for (const auto& c : problem.conditions) {
    if (c.kind != ConditionKind::Dirichlet) continue;
    const size_t s = c.side_sign() < 0 ? 1 : 0;
    const int node = end_node(s, c.point());
    for (int k = 0; k < local[s].n; ++k) map[s][static_cast<size_t>(node * local[s].n + k)] = -1;
  }
  int next = 0;
  for (size_t s = 0; s < local.size(); ++s)
    for (auto& m : map[s])
      if (m == -2) m = next++;
  // the minus copies of shared nodes were numbered above; fold them onto the plus copies
  for (const auto& c : problem.conditions) {
    if (c.kind != ConditionKind::Transmittal) continue;
    const int node = end_node(0, c.point());
    for (int k = 0; k < local[1].n; ++k)
      map[1][static_cast<size_t>(node * local[1].n + k)] = map[0][static_cast<size_t>(node * local[0].n + k)];
  }
  // compact the numbering
  std::vector<int> used(static_cast<size_t>(next), 0);
  for (const auto& m : map)
    for (int v : m)
      if (v >= 0) used[static_cast<size_t>(v)] = 1;
  std::vector<int> renum(static_cast<size_t>(next), -1);
  int total = 0;
  for (int i = 0; i < next; ++i)
    if (used[static_cast<size_t>(i)]) renum[static_cast<size_t>(i)] = total++;
  for (auto& m : map)
    for (auto& v : m)
      if (v >= 0) v = renum[static_cast<size_t>(v)];

  AssembledProblem out;
  out.K = Eigen::MatrixXd::Zero(total, total);
  out.M = Eigen::MatrixXd::Zero(total, total);
  out.g = Eigen::VectorXd::Zero(total);
  out.b = Eigen::VectorXd::Zero(total);
  out.node_r.assign(static_cast<size_t>(total), 0.0);
  out.node_side.assign(static_cast<size_t>(total), -1);
  out.node_component.assign(static_cast<size_t>(total), 0);
  out.angular_factor = problem.angular_factor();
  out.gauged = gauge.active;

  for (size_t s = 0; s < local.size(); ++s) {
    const SideSystem& L = local[s];
    const auto& m = map[s];
    for (size_t i = 0; i < m.size(); ++i) {
      const int gi = m[i];
      if (gi < 0) continue;
      out.g(gi) += L.g(static_cast<Eigen::Index>(i));
      out.b(gi) += L.b(static_cast<Eigen::Index>(i));
      if (out.node_side[static_cast<size_t>(gi)] < 0) {
        out.node_side[static_cast<size_t>(gi)] = static_cast<int>(s);
        out.node_r[static_cast<size_t>(gi)] = L.node_r[i / static_cast<size_t>(L.n)];
        out.node_component[static_cast<size_t>(gi)] = static_cast<int>(i % static_cast<size_t>(L.n));
      }
      for (size_t j = 0; j < m.size(); ++j) {
        const int gj = m[j];
        if (gj < 0) continue;
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        if (L.K(ii, jj) != 0.0) out.K(gi, gj) += L.K(ii, jj);
        if (L.M(ii, jj) != 0.0) out.M(gi, gj) += L.M(ii, jj);
      }
    }
  }

  auto dof = [&](size_t s, BoundaryPoint p, int k) {
    return map[s][static_cast<size_t>(end_node(s, p) * local[s].n + k)];
  };
  auto add_block = [&](size_t s_row, size_t s_col, BoundaryPoint p, const Eigen::MatrixXd& B, double scale) {
    for (int i = 0; i < B.rows(); ++i)
      for (int j = 0; j < B.cols(); ++j) {
        const int gi = dof(s_row, p, i), gj = dof(s_col, p, j);
        if (gi >= 0 && gj >= 0) out.K(gi, gj) += scale * B(i, j);
      }
  };
  for (const auto& c : problem.conditions) {
    const BoundaryPoint p = c.point();
    const double r = boundary_coordinate(p);
    switch (c.kind) {
      case ConditionKind::Dirichlet: break;
      case ConditionKind::Robin: {
        const size_t s = c.side_sign() < 0 ? 1 : 0;
        add_block(s, s, p, c.S, -problem.sides[s].op.geom.volume_density(r));
        break;
      }
      case ConditionKind::Transmittal:
        add_block(0, 0, p, c.U, problem.sides[0].op.geom.volume_density(r));
        break;
      case ConditionKind::Transmission: {
        const double mu = problem.sides[0].op.geom.volume_density(r);
        const double jump = gauge.active ? std::exp(gauge.omega[0](r) - gauge.omega[1](r)) : 1.0;
        add_block(0, 0, p, c.S_pp, -mu);
        add_block(0, 1, p, c.S_pm, -mu * jump);
        add_block(1, 0, p, c.S_mp, -mu / jump);
        add_block(1, 1, p, c.S_mm, -mu);
        break;
      }
    }
  }
  const double norm = out.K.norm();
  out.symmetric = (out.K - out.K.transpose()).norm() <= 1e-10 * std::max(norm, 1.0);
  return out;
}

HeatContentSamples heat_content_eigen(const AssembledProblem& a, const std::vector<double>& times) {
  if (!a.symmetric) throw PreconditionError("the operator is not symmetric; use the time-stepping route");
  const Eigen::MatrixXd Ks = 0.5 * (a.K + a.K.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ks, a.M);
  if (es.info() != Eigen::Success) throw NumericError("generalized eigensolver did not converge");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const Eigen::VectorXd alpha = es.eigenvectors().transpose() * a.b;
  const Eigen::VectorXd gamma = es.eigenvectors().transpose() * a.g;
  const Eigen::Index n = lambda.size();
  const Eigen::Index tail = n - std::max<Eigen::Index>(1, n / 10);

  HeatContentSamples out;
  out.method = "eigen";
  out.times = times;
  for (double t : times) {
    if (!(t > 0.0)) throw PreconditionError("sample times must be positive");
    double sum = 0.0, high = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double term = std::exp(-lambda(i) * t) * alpha(i) * gamma(i);
      sum += term;
      if (i >= tail) high += std::abs(term);
    }
    out.values.push_back(a.angular_factor * sum);
    // weight carried by the least-resolved tenth of the spectrum
    out.errors.push_back(a.angular_factor * high + 1e-15 * std::abs(a.angular_factor * sum));
  }
  return out;
}

HeatContentSamples heat_content_timestep(const AssembledProblem& a, const std::vector<double>& times, int steps) {
  if (steps < 4) throw PreconditionError("time stepping needs at least 4 steps per interval");
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) return {{}, {}, {}, "timestep"};
  if (!(sorted.front() > 0.0)) throw PreconditionError("sample times must be positive");

  auto run = [&](int m) {
    std::vector<double> vals;
    Eigen::VectorXd u = solve_mass(a, a.g);
    double t0 = 0.0;
    for (size_t k = 0; k < sorted.size(); ++k) {
      const double dt = (sorted[k] - t0) / m;
      if (!(dt > std::numeric_limits<double>::min()) || t0 + dt == t0) throw NumericError("time step underflow");
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a.M + 0.5 * dt * a.K);
      const Eigen::MatrixXd explicit_part = a.M - 0.5 * dt * a.K;
      int start = 0;
      if (k == 0) {
        // four implicit Euler half-steps damp the incompatible initial data
        for (int i = 0; i < 4; ++i) u = lu.solve(a.M * u);
        start = 2;
      }
      for (int i = start; i < m; ++i) u = lu.solve(explicit_part * u);
      if (!u.allFinite()) throw NumericError("time stepping produced non-finite values");
      vals.push_back(a.angular_factor * a.b.dot(u));
      t0 = sorted[k];
    }
    return vals;
  };
  const std::vector<double> coarse = run(steps);
  const std::vector<double> fine = run(2 * steps);

  HeatContentSamples out;
  out.method = "timestep";
  out.times = times;
  for (double t : times) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
    const size_t k = static_cast<size_t>(it - sorted.begin());
    out.values.push_back((4.0 * fine[k] - coarse[k]) / 3.0);
    out.errors.push_back(std::abs(fine[k] - coarse[k]) / 3.0);
  }
  return out;
}

HeatContentSamples simulate(const Problem& problem, const Discretization& disc, const std::vector<double>& times,
                            Route route, int steps) {
  const AssembledProblem a = assemble(problem, disc);
  if (route == Route::Eigen || (route == Route::Auto && a.symmetric)) return heat_content_eigen(a, times);
  return heat_content_timestep(a, times, steps);
}

std::vector<double> geometric_times(double t_max, double ratio, int count) {
  if (!(t_max > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 1)
    throw PreconditionError("a geometric time grid needs t_max > 0, 0 < ratio < 1 and count >= 1");
  std::vector<double> t;
  for (int j = 0; j < count; ++j) t.push_back(t_max * std::pow(ratio, j));
  return t;
}

std::vector<double> default_times() { return geometric_times(0.01, std::sqrt(0.5), 16); }

Eigen::VectorXd lowest_eigenvalues(const AssembledProblem& a, int count) {
  if (!a.symmetric) throw PreconditionError("the operator is not symmetric");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a.K + a.K.transpose()), a.M,
                                                               Eigen::EigenvaluesOnly);
  const Eigen::Index n = std::min<Eigen::Index>(count, es.eigenvalues().size());
  return es.eigenvalues().head(n);
}

Eigen::VectorXd apply_discrete(const AssembledProblem& a, const Eigen::VectorXd& nodal) {
  return solve_mass(a, a.K * nodal);
}

}  // namespace heatlab
