#include "heatlab/config.hpp"

#include "heatlab/error.hpp"
#include "heatlab/rational.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#ifndef HEATLAB_VERSION
#define HEATLAB_VERSION "0.0.0"
#endif

namespace heatlab {
namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const Json& j, const std::string& path, const std::set<std::string>& keys) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw ConfigError(at(path, k), "unknown key");
}

const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(at(path, key), "missing");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      if (s.find_first_of("eE") == std::string::npos) return Rational::parse(s).to_double();
      size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(path, "not a number: '" + s + "'");
  }
  throw ConfigError(path, "expected a number");
}

int integer(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (std::floor(v) != v || std::abs(v) > 1e9) throw ConfigError(path, "expected an integer");
  return static_cast<int>(v);
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Poly poly(const Json& j, const std::string& path) {
  if (!j.is_array()) return Poly::constant(number(j, path));
  std::vector<double> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(number(j[i], at(path, i)));
  return Poly(c);
}

bool is_rows(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!e.is_array()) return false;
  return true;
}

/// A number (times the identity) or an n x n nested array.
Eigen::MatrixXd matrix(const Json& j, const std::string& path, int n) {
  if (!j.is_array()) return number(j, path) * Eigen::MatrixXd::Identity(n, n);
  if (static_cast<int>(j.size()) != n) throw ConfigError(path, "expected " + std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string rp = at(path, static_cast<size_t>(r));
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ConfigError(rp, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = number(row[static_cast<size_t>(c)], at(rp, static_cast<size_t>(c)));
  }
  return m;
}

Eigen::MatrixXd rect_matrix(const Json& j, const std::string& path, int rows, int cols) {
  if (rows == cols) return matrix(j, path, rows);
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ConfigError(path, "expected " + std::to_string(rows) + " rows");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string rp = at(path, static_cast<size_t>(r));
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ConfigError(rp, "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<size_t>(c)], at(rp, static_cast<size_t>(c)));
  }
  return m;
}

/// A polynomial (times the identity) or an n x n nested array of polynomials.
PolyMatrix poly_matrix(const Json& j, const std::string& path, int n) {
  if (!is_rows(j)) return PolyMatrix::scalar(poly(j, path), n);
  if (static_cast<int>(j.size()) != n) throw ConfigError(path, "expected " + std::to_string(n) + " rows");
  PolyMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const std::string rp = at(path, static_cast<size_t>(r));
    const Json& row = j[static_cast<size_t>(r)];
    if (static_cast<int>(row.size()) != n) throw ConfigError(rp, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m.at(r, c) = poly(row[static_cast<size_t>(c)], at(rp, static_cast<size_t>(c)));
  }
  return m;
}

FieldComponents field(const Json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ConfigError(path, "expected " + std::to_string(n) + " components");
  FieldComponents f;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    const Json& e = j[i];
    if (e.is_object()) {
      allow_keys(e, p, {"poly", "exp"});
      f.emplace_back(poly(require(e, p, "poly"), at(p, "poly")), e.contains("exp") ? poly(e["exp"], at(p, "exp")) : Poly{});
    } else {
      f.emplace_back(poly(e, p));
    }
  }
  return f;
}

Side parse_side(const Json& j, const std::string& path) {
  allow_keys(j, path, {"warpings", "fiber_dim", "operator", "phi", "rho"});
  WarpedGeometry geom;
  if (j.contains("warpings")) {
    const Json& w = j["warpings"];
    if (!w.is_array()) throw ConfigError(at(path, "warpings"), "expected a list of polynomials");
    for (size_t a = 0; a < w.size(); ++a) geom.warpings.push_back(poly(w[a], at(at(path, "warpings"), a)));
  }
  try {
    geom.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(at(path, "warpings"), e.what());
  }
  const int n = j.contains("fiber_dim") ? integer(j["fiber_dim"], at(path, "fiber_dim")) : 1;
  if (n < 1 || n > 8) throw ConfigError(at(path, "fiber_dim"), "must be between 1 and 8");

  Side side;
  side.op = LaplaceData::scalar_laplacian(geom, n);
  if (j.contains("operator")) {
    const std::string op_path = at(path, "operator");
    const Json& op = j["operator"];
    allow_keys(op, op_path, {"form", "omega_r", "E", "omega_theta", "A_r", "A_theta", "B"});
    const std::string form = op.contains("form") ? text(op["form"], at(op_path, "form")) : "natural";
    auto angular = [&](const char* key) {
      std::vector<Eigen::MatrixXd> out;
      if (!op.contains(key)) return out;
      const Json& a = op[key];
      const std::string ap = at(op_path, key);
      if (!a.is_array() || static_cast<int>(a.size()) != geom.dim())
        throw ConfigError(ap, "expected one matrix per angular direction");
      for (size_t k = 0; k < a.size(); ++k) out.push_back(matrix(a[k], at(ap, k), n));
      return out;
    };
    if (form == "natural") {
      for (const char* k : {"A_r", "A_theta", "B"})
        if (op.contains(k)) throw ConfigError(at(op_path, k), "not allowed with form 'natural'");
      if (op.contains("omega_r")) side.op.omega_r = poly_matrix(op["omega_r"], at(op_path, "omega_r"), n);
      if (op.contains("E")) side.op.E = poly_matrix(op["E"], at(op_path, "E"), n);
      side.op.omega_theta = angular("omega_theta");
    } else if (form == "symbol") {
      for (const char* k : {"omega_r", "E", "omega_theta"})
        if (op.contains(k)) throw ConfigError(at(op_path, k), "not allowed with form 'symbol'");
      SymbolData s;
      s.A_r = op.contains("A_r") ? poly_matrix(op["A_r"], at(op_path, "A_r"), n) : PolyMatrix::zero(n);
      s.B = op.contains("B") ? poly_matrix(op["B"], at(op_path, "B"), n) : PolyMatrix::zero(n);
      s.A_theta = angular("A_theta");
      try {
        side.op = symbol_to_natural(s, geom, n);
      } catch (const PreconditionError& e) {
        throw ConfigError(op_path, e.what());
      }
    } else {
      throw ConfigError(at(op_path, "form"), "expected 'natural' or 'symbol'");
    }
  }
  side.phi = field(require(j, path, "phi"), at(path, "phi"), n);
  side.rho = field(require(j, path, "rho"), at(path, "rho"), n);
  return side;
}

ConditionSpec parse_condition(const Json& j, const std::string& path, const std::vector<Side>& sides) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const std::string kind = text(require(j, path, "kind"), at(path, "kind"));
  const std::string where = text(require(j, path, "at"), at(path, "at"));
  const int np = sides.empty() ? 1 : sides[0].op.fiber_dim;
  const int nm = sides.size() > 1 ? sides[1].op.fiber_dim : np;
  const int n_side = (where.size() == 2 && where[1] == '-') ? nm : np;
  ConditionSpec c;
  c.at = where;
  if (kind == "dirichlet") {
    allow_keys(j, path, {"kind", "at"});
    c.kind = ConditionKind::Dirichlet;
  } else if (kind == "robin") {
    allow_keys(j, path, {"kind", "at", "S"});
    c.kind = ConditionKind::Robin;
    c.S = j.contains("S") ? matrix(j["S"], at(path, "S"), n_side) : Eigen::MatrixXd::Zero(n_side, n_side);
  } else if (kind == "neumann") {
    allow_keys(j, path, {"kind", "at"});
    c.kind = ConditionKind::Robin;
    c.S = Eigen::MatrixXd::Zero(n_side, n_side);
  } else if (kind == "transmittal") {
    allow_keys(j, path, {"kind", "at", "U"});
    c.kind = ConditionKind::Transmittal;
    c.U = j.contains("U") ? matrix(j["U"], at(path, "U"), np) : Eigen::MatrixXd::Zero(np, np);
  } else if (kind == "transmission") {
    allow_keys(j, path, {"kind", "at", "S_pp", "S_pm", "S_mp", "S_mm", "physics"});
    if (j.contains("physics")) {
      for (const char* k : {"S_pp", "S_pm", "S_mp", "S_mm"})
        if (j.contains(k)) throw ConfigError(at(path, k), "not allowed together with 'physics'");
      const std::string pp = at(path, "physics");
      const Json& ph = j["physics"];
      allow_keys(ph, pp, {"K_plus", "K_minus", "H"});
      if (np != 1 || nm != 1) throw ConfigError(pp, "the physics form needs scalar fields");
      try {
        c = transmission_from_physics(number(require(ph, pp, "K_plus"), at(pp, "K_plus")),
                                      number(require(ph, pp, "K_minus"), at(pp, "K_minus")),
                                      number(require(ph, pp, "H"), at(pp, "H")), where);
      } catch (const PreconditionError& e) {
        throw ConfigError(pp, e.what());
      }
    } else {
      c.kind = ConditionKind::Transmission;
      auto block = [&](const char* key, int r, int cc) {
        return j.contains(key) ? rect_matrix(j[key], at(path, key), r, cc) : Eigen::MatrixXd::Zero(r, cc);
      };
      c.S_pp = block("S_pp", np, np);
      c.S_pm = block("S_pm", np, nm);
      c.S_mp = block("S_mp", nm, np);
      c.S_mm = block("S_mm", nm, nm);
    }
  } else {
    throw ConfigError(at(path, "kind"), "expected dirichlet, robin, neumann, transmittal or transmission");
  }
  return c;
}

Json poly_json(const Poly& p) { return p.coeffs(); }

Json poly_matrix_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(poly_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json field_json(const FieldComponents& f) {
  Json out = Json::array();
  for (const auto& c : f) {
    if (c.exponent().is_zero()) {
      out.push_back(poly_json(c.poly()));
    } else {
      out.push_back({{"poly", poly_json(c.poly())}, {"exp", poly_json(c.exponent())}});
    }
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
}

RunConfig parse_config(const Json& doc) {
  allow_keys(doc, "", {"sides", "conditions", "mode", "solver", "fit", "tolerances", "output"});
  RunConfig rc;
  rc.source = doc;

  const Json& sides = require(doc, "", "sides");
  if (!sides.is_array() || sides.empty() || sides.size() > 2) throw ConfigError("sides", "expected one or two sides");
  for (size_t i = 0; i < sides.size(); ++i) rc.problem.sides.push_back(parse_side(sides[i], at("sides", i)));

  const Json& conds = require(doc, "", "conditions");
  if (!conds.is_array()) throw ConfigError("conditions", "expected a list");
  for (size_t i = 0; i < conds.size(); ++i)
    rc.problem.conditions.push_back(parse_condition(conds[i], at("conditions", i), rc.problem.sides));

  if (doc.contains("mode")) {
    const Json& m = doc["mode"];
    if (!m.is_array()) throw ConfigError("mode", "expected a list of integers");
    for (size_t i = 0; i < m.size(); ++i) rc.problem.mode.push_back(integer(m[i], at("mode", i)));
  }
  // ill-posed condition sets are ConfigError, inadmissible data PreconditionError
  rc.problem.validate();

  {
    double t_max = 0.01, ratio = std::sqrt(0.5);
    int count = 16;
    std::vector<double> list;
    if (doc.contains("solver")) {
      const Json& s = doc["solver"];
      allow_keys(s, "solver", {"scheme", "resolution", "route", "steps", "times", "quadrature_extra"});
      if (s.contains("scheme")) {
        const std::string sc = text(s["scheme"], "solver.scheme");
        if (sc == "spectral") rc.disc.scheme = Scheme::Spectral;
        else if (sc == "fd2") rc.disc.scheme = Scheme::FD2;
        else throw ConfigError("solver.scheme", "expected 'spectral' or 'fd2'");
        if (rc.disc.scheme == Scheme::FD2) rc.disc.resolution = 512;
      }
      if (s.contains("resolution")) rc.disc.resolution = integer(s["resolution"], "solver.resolution");
      if (s.contains("quadrature_extra")) rc.disc.extra_quadrature = integer(s["quadrature_extra"], "solver.quadrature_extra");
      if (s.contains("route")) {
        const std::string r = text(s["route"], "solver.route");
        if (r == "auto") rc.route = Route::Auto;
        else if (r == "eigen") rc.route = Route::Eigen;
        else if (r == "timestep") rc.route = Route::Timestep;
        else throw ConfigError("solver.route", "expected 'auto', 'eigen' or 'timestep'");
      }
      if (s.contains("steps")) rc.steps = integer(s["steps"], "solver.steps");
      if (s.contains("times")) {
        const Json& t = s["times"];
        if (t.is_array()) {
          for (size_t i = 0; i < t.size(); ++i) {
            const double v = number(t[i], at("solver.times", i));
            if (!(v > 0.0)) throw ConfigError(at("solver.times", i), "times must be positive");
            list.push_back(v);
          }
        } else {
          allow_keys(t, "solver.times", {"t_max", "ratio", "count"});
          if (t.contains("t_max")) t_max = number(t["t_max"], "solver.times.t_max");
          if (t.contains("ratio")) ratio = number(t["ratio"], "solver.times.ratio");
          if (t.contains("count")) count = integer(t["count"], "solver.times.count");
        }
      }
    }
    if (list.empty()) {
      try {
        list = geometric_times(t_max, ratio, count);
      } catch (const PreconditionError& e) {
        throw ConfigError("solver.times", e.what());
      }
    }
    rc.times = list;
  }

  if (doc.contains("fit")) {
    const Json& f = doc["fit"];
    allow_keys(f, "fit", {"n_terms"});
    if (f.contains("n_terms")) rc.n_terms = integer(f["n_terms"], "fit.n_terms");
    if (rc.n_terms < 3 || rc.n_terms > 10) throw ConfigError("fit.n_terms", "must be between 3 and 10");
  }

  rc.tolerances = {{1e-6, 1e-6}, {1e-3, 1e-3}, {1e-3, 1e-3}, {1e-2, 1e-2}};
  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    if (!t.is_array() || t.size() != 4) throw ConfigError("tolerances", "expected four entries for beta_0..beta_3");
    for (size_t i = 0; i < 4; ++i) {
      const std::string p = at("tolerances", i);
      if (t[i].is_object()) {
        allow_keys(t[i], p, {"rel", "abs"});
        rc.tolerances[i].rel = t[i].contains("rel") ? number(t[i]["rel"], at(p, "rel")) : 0.0;
        rc.tolerances[i].abs = t[i].contains("abs") ? number(t[i]["abs"], at(p, "abs")) : 0.0;
      } else {
        const double v = number(t[i], p);
        rc.tolerances[i] = {v, v};
      }
    }
  }

  if (doc.contains("output")) {
    const Json& o = doc["output"];
    allow_keys(o, "output", {"path", "format"});
    if (o.contains("path")) rc.output_path = text(o["path"], "output.path");
    if (o.contains("format")) {
      rc.output_format = text(o["format"], "output.format");
      if (rc.output_format != "json" && rc.output_format != "csv")
        throw ConfigError("output.format", "expected 'json' or 'csv'");
    }
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(parse_json_text(ss.str()));
}

Json problem_to_json(const Problem& problem) {
  Json doc;
  Json sides = Json::array();
  for (const auto& s : problem.sides) {
    Json side;
    Json w = Json::array();
    for (const auto& f : s.op.geom.warpings) w.push_back(poly_json(f));
    side["warpings"] = w;
    side["fiber_dim"] = s.op.fiber_dim;
    Json op = {{"form", "natural"}, {"omega_r", poly_matrix_json(s.op.omega_r)}, {"E", poly_matrix_json(s.op.E)}};
    if (s.op.has_angular_connection()) {
      Json om = Json::array();
      for (int a = 0; a < s.op.geom.dim(); ++a) om.push_back(matrix_json(s.op.omega_theta_at(a)));
      op["omega_theta"] = om;
    }
    side["operator"] = op;
    side["phi"] = field_json(s.phi);
    side["rho"] = field_json(s.rho);
    sides.push_back(side);
  }
  doc["sides"] = sides;
  Json conds = Json::array();
  for (const auto& c : problem.conditions) {
    Json j = {{"kind", to_string(c.kind)}, {"at", c.at}};
    switch (c.kind) {
      case ConditionKind::Dirichlet: break;
      case ConditionKind::Robin: j["S"] = matrix_json(c.S); break;
      case ConditionKind::Transmittal: j["U"] = matrix_json(c.U); break;
      case ConditionKind::Transmission:
        j["S_pp"] = matrix_json(c.S_pp);
        j["S_pm"] = matrix_json(c.S_pm);
        j["S_mp"] = matrix_json(c.S_mp);
        j["S_mm"] = matrix_json(c.S_mm);
        break;
    }
    conds.push_back(j);
  }
  doc["conditions"] = conds;
  if (!problem.mode.empty()) doc["mode"] = problem.mode;
  return doc;
}

std::string config_hash(const Json& doc) {
  const std::string s = doc.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string version() { return HEATLAB_VERSION; }

Json theory_json(const CoefficientSet& c) {
  Json j;
  for (size_t n = 0; n < 4; ++n) j["beta" + std::to_string(n)] = c.beta[n];
  Json terms = Json::array();
  for (const auto& t : c.terms)
    terms.push_back({{"label", t.label}, {"order", t.order}, {"invariant", t.invariant}, {"value", t.value}});
  j["terms"] = terms;
  j["interior"] = c.interior;
  j["boundary"] = c.boundary;
  return j;
}

Json fit_json(const FitResult& f) {
  Json j;
  for (Eigen::Index n = 0; n < f.coefficients.size(); ++n) j["beta" + std::to_string(n)] = f.coefficients(n);
  j["sensitivity"] = std::vector<double>(f.sensitivity.data(), f.sensitivity.data() + f.sensitivity.size());
  j["window"] = {f.t_min, f.t_max};
  j["condition_number"] = f.condition_number;
  j["residual"] = f.residual;
  return j;
}

Json verdicts_json(const std::vector<Verdict>& v) {
  Json out = Json::array();
  for (const auto& x : v)
    out.push_back({{"order", x.order},
                   {"theory", x.theory},
                   {"fitted", x.fitted},
                   {"residual", x.residual},
                   {"tolerance", {{"rel", x.tolerance.rel}, {"abs", x.tolerance.abs}}},
                   {"verdict", x.pass ? "PASS" : "FAIL"}});
  return out;
}

Json samples_json(const HeatContentSamples& s) {
  return {{"method", s.method}, {"t", s.times}, {"beta", s.values}, {"err", s.errors}};
}

std::string samples_csv(const HeatContentSamples& s) {
  std::string out = "t,beta,err\n";
  char buf[96];
  for (size_t i = 0; i < s.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.times[i], s.values[i], s.errors[i]);
    out += buf;
  }
  return out;
}

Json make_report(const Json& config, const Json& sections) {
  Json r = sections;
  r["config_hash"] = config_hash(config);
  r["version"] = version();
  return r;
}

}  // namespace heatlab
