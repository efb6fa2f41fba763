#include "gbidx/cli.hpp"

#include "gbidx/kaehler.hpp"
#include "gbidx/witten.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

namespace gbidx {

namespace {

using json = nlohmann::ordered_json;

struct TermConfig {
  std::string variable;
  IVec weight;
};

struct OddConfig {
  std::vector<IVec> factors;
  IMat intersections;
};

struct RunConfig {
  std::string command;
  std::string group = "A1";
  std::optional<std::int64_t> level_k;
  std::optional<IMat> level_matrix;
  int genus = 2;
  int order = 4;
  std::vector<TermConfig> deformation;
  std::optional<IVec> insertion_weight;
  std::optional<OddConfig> odd;
  std::string point_set = "F_rho";
  std::vector<double> t_grid{-0.5};
  int s_order = 0;
  int l = 0;
  std::vector<long> n_values{100, 1000};
  std::optional<IVec> phi_weight;
  long witten_terms = 100000;
  int jobs = 1;
  std::string format = "json";
  std::string out_path;
};

template <class T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path, "wrong type");
  }
}

IVec to_ivec(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an integer array");
  IVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = get_as<std::int64_t>(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

IMat to_imat(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a square integer matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  IMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    IVec row = to_ivec(j[i], path + "[" + std::to_string(i) + "]");
    if (row.size() != n) throw ConfigError(path, "matrix is not square");
    m.row(i) = row.transpose();
  }
  return m;
}

IMat parse_matrix_csv(const std::string& s) {
  json rows = json::array();
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    json r = json::array();
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(cell, &used);
        if (cell.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(cell);
        r.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("level_matrix", "not an integer: '" + cell + "'");
      }
    }
    rows.push_back(r);
  }
  return to_imat(rows, "level_matrix");
}

void load_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "command") c.command = get_as<std::string>(v, k);
    else if (k == "group") {
      if (v.is_object()) {
        if (!v.contains("type") || !v.contains("rank")) throw ConfigError("group", "needs type and rank");
        c.group = get_as<std::string>(v["type"], "group.type") + std::to_string(get_as<int>(v["rank"], "group.rank"));
      } else {
        c.group = get_as<std::string>(v, k);
      }
    } else if (k == "level") {
      if (v.is_number_integer()) c.level_k = v.get<std::int64_t>();
      else c.level_matrix = to_imat(v, k);
    } else if (k == "genus") c.genus = get_as<int>(v, k);
    else if (k == "order") c.order = get_as<int>(v, k);
    else if (k == "deformation") {
      if (!v.is_array()) throw ConfigError(k, "expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string p = "deformation[" + std::to_string(i) + "]";
        if (!v[i].is_object() || !v[i].contains("highest_weight")) throw ConfigError(p, "needs highest_weight");
        TermConfig t;
        t.variable = v[i].contains("variable") ? get_as<std::string>(v[i]["variable"], p + ".variable")
                                               : "t" + std::to_string(i + 1);
        t.weight = to_ivec(v[i]["highest_weight"], p + ".highest_weight");
        if (v[i].contains("order")) c.order = get_as<int>(v[i]["order"], p + ".order");
        c.deformation.push_back(t);
      }
    } else if (k == "insertion_weight") c.insertion_weight = to_ivec(v, k);
    else if (k == "odd_spec") {
      if (!v.is_object() || !v.contains("factors") || !v.contains("intersections"))
        throw ConfigError(k, "needs factors and intersections");
      OddConfig o;
      for (std::size_t i = 0; i < v["factors"].size(); ++i)
        o.factors.push_back(to_ivec(v["factors"][i], k + ".factors[" + std::to_string(i) + "]"));
      o.intersections = to_imat(v["intersections"], k + ".intersections");
      c.odd = o;
    } else if (k == "point_set") c.point_set = get_as<std::string>(v, k);
    else if (k == "t") {
      c.t_grid.clear();
      if (v.is_array())
        for (std::size_t i = 0; i < v.size(); ++i) c.t_grid.push_back(get_as<double>(v[i], "t[" + std::to_string(i) + "]"));
      else
        c.t_grid.push_back(get_as<double>(v, k));
    } else if (k == "s_order") c.s_order = get_as<int>(v, k);
    else if (k == "l") c.l = get_as<int>(v, k);
    else if (k == "n") {
      c.n_values.clear();
      if (!v.is_array()) throw ConfigError(k, "expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) c.n_values.push_back(get_as<long>(v[i], "n[" + std::to_string(i) + "]"));
    } else if (k == "phi_weight") c.phi_weight = to_ivec(v, k);
    else if (k == "witten_terms") c.witten_terms = get_as<long>(v, k);
    else if (k == "jobs") c.jobs = get_as<int>(v, k);
    else if (k == "output") {
      if (v.contains("format")) c.format = get_as<std::string>(v["format"], "output.format");
      if (v.contains("path")) c.out_path = get_as<std::string>(v["path"], "output.path");
    } else throw ConfigError(k, "unknown field");
  }
}

struct Row {
  std::string command;
  std::vector<int> exps;
  std::string label;  // replaces the exponent tuple for named quantities
  double re = 0, im = 0;
  double residual = 0, int_defect = 0;
};

struct Output {
  std::vector<Row> rows;
  json report = json::object();
  bool invariant_ok = true;
};

struct Context {
  RunConfig cfg;
  RootSystem rs;
  Level level;
  std::string level_text;
};

double factorial_weight(const std::vector<int>& exps) {
  double f = 1;
  for (int e : exps)
    for (int i = 2; i <= e; ++i) f *= i;
  return f;
}

double int_defect(double x) { return std::abs(x - std::round(x)); }

Character irred_checked(const RootSystem& rs, const IVec& w, const std::string& path) {
  if (w.size() != rs.rank) throw ConfigError(path, "weight has wrong length");
  if (!is_dominant(rs, w)) throw ConfigError(path, "weight is not dominant");
  return irred_character(rs, w);
}

Context make_context(const RunConfig& cfg) {
  Context ctx{cfg, {}, {}, {}};
  try {
    ctx.rs = build_root_system(cfg.group);
  } catch (const std::exception& e) {
    throw ConfigError("group", e.what());
  }
  if (cfg.genus < 0) throw ConfigError("genus", "must be >= 0");
  if (cfg.order < 0) throw ConfigError("order", "must be >= 0");
  if (cfg.jobs < 1) throw ConfigError("jobs", "must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("output.format", "must be json or csv");
  try {
    if (cfg.level_matrix) {
      if (cfg.level_matrix->rows() != ctx.rs.rank) throw ConfigError("level", "matrix size does not match the rank");
      ctx.level = make_level(ctx.rs, *cfg.level_matrix);
    } else {
      ctx.level = canonical_level(ctx.rs, cfg.level_k.value_or(1));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("level", e.what());
  }
  std::ostringstream ls;
  for (Eigen::Index i = 0; i < ctx.level.h.rows(); ++i) {
    if (i) ls << ';';
    for (Eigen::Index j = 0; j < ctx.level.h.cols(); ++j) ls << (j ? " " : "") << ctx.level.h(i, j);
  }
  ctx.level_text = ls.str();
  return ctx;
}

Character insertion(const Context& ctx) {
  return ctx.cfg.insertion_weight ? irred_checked(ctx.rs, *ctx.cfg.insertion_weight, "insertion_weight")
                                  : trivial_character(ctx.rs);
}

void emit_series(Output& o, const std::string& cmd, const SSeries& s, double residual, bool factorial) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    Row r;
    r.command = cmd;
    r.exps = s.layout().monomials[i];
    r.re = s[i].real();
    r.im = s[i].imag();
    r.residual = residual;
    r.int_defect = int_defect(r.re * (factorial ? factorial_weight(r.exps) : 1.0)) + std::abs(r.im);
    o.rows.push_back(r);
  }
}

void emit_value(Output& o, const std::string& cmd, const std::string& label, cd v, double residual, double defect) {
  o.rows.push_back({cmd, {}, label, v.real(), v.imag(), residual, defect});
}

Output cmd_verlinde(const Context& ctx) {
  Output o;
  double v = verlinde_number(ctx.rs, ctx.level, ctx.cfg.genus);
  PointSet ps = enumerate_F_rho(ctx.rs, ctx.level);
  emit_value(o, "verlinde", "value", v, 0.0, int_defect(v));
  o.report["point_count"] = ps.orbit_reps.size();
  o.report["value"] = v;
  if (int_defect(v) > 1e-6) o.invariant_ok = false;
  if (ctx.cfg.genus == 2 && ctx.cfg.level_k && ctx.rs.torus_rank == 0) {
    std::int64_t oracle = fusion_gluing_oracle(ctx.rs, *ctx.cfg.level_k);
    emit_value(o, "verlinde", "oracle", static_cast<double>(oracle), 0.0, 0.0);
    o.report["oracle_value"] = oracle;
    if (std::abs(v - static_cast<double>(oracle)) > 1e-6) o.invariant_ok = false;
  }
  return o;
}

IndexRequest make_request(const Context& ctx) {
  IndexRequest req;
  req.rs = ctx.rs;
  req.level = ctx.level;
  req.genus = ctx.cfg.genus;
  req.spec.order = ctx.cfg.order;
  for (std::size_t i = 0; i < ctx.cfg.deformation.size(); ++i) {
    const auto& t = ctx.cfg.deformation[i];
    req.spec.terms.push_back(
        {t.variable, irred_checked(ctx.rs, t.weight, "deformation[" + std::to_string(i) + "].highest_weight")});
  }
  req.U = insertion(ctx);
  if (ctx.cfg.odd) {
    OddClassSpec odd;
    const auto& oc = *ctx.cfg.odd;
    if (oc.intersections.rows() != static_cast<Eigen::Index>(oc.factors.size()))
      throw ConfigError("odd_spec.intersections", "size must match the number of factors");
    for (std::size_t i = 0; i < oc.factors.size(); ++i) {
      odd.cycles.push_back("C" + std::to_string(i + 1));
      odd.factors.push_back(irred_checked(ctx.rs, oc.factors[i], "odd_spec.factors[" + std::to_string(i) + "]"));
    }
    odd.intersections = oc.intersections;
    req.odd = odd;
  }
  if (ctx.cfg.point_set == "F") req.point_set = PointSetKind::F;
  else if (ctx.cfg.point_set != "F_rho") throw ConfigError("point_set", "must be F_rho or F");
  return req;
}

Output cmd_index(const Context& ctx) {
  Output o;
  IndexRequest req = make_request(ctx);
  SSeries s = req.odd ? index_general(req) : index_even(req);
  double residual = 0;
  PointSet ps = enumerate_F_rho(ctx.rs, ctx.level);
  if (!req.spec.terms.empty())
    for (auto i : ps.orbit_reps) {
      DeformedPoint dp = solve_deformed(ctx.rs, ctx.level, req.spec, ps.points[i]);
      residual = std::max(residual, max_abs(deformation_residual(ctx.level, req.spec, dp)));
    }
  emit_series(o, "index", s, residual, true);
  double worst = 0;
  for (auto& r : o.rows) worst = std::max(worst, r.int_defect);
  o.report["max_int_defect"] = worst;
  o.report["max_residual"] = residual;
  if (!req.odd && worst > 1e-6) o.invariant_ok = false;
  return o;
}

Character kaehler_v(const Context& ctx) {
  if (ctx.cfg.deformation.size() > 1) throw ConfigError("deformation", "the Kaehler index takes at most one s term");
  if (ctx.cfg.deformation.empty()) return Character(ctx.rs.rank);
  return irred_checked(ctx.rs, ctx.cfg.deformation[0].weight, "deformation[0].highest_weight");
}

std::string t_label(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "kaehler@t=%.17g", t);
  return buf;
}

Output cmd_kaehler(const Context& ctx) {
  Output o;
  Character V = kaehler_v(ctx), U = insertion(ctx);
  for (std::size_t i = 0; i < ctx.cfg.t_grid.size(); ++i) {
    double t = ctx.cfg.t_grid[i];
    if (!(t > -1.0 && t <= 0.0)) throw ConfigError("t[" + std::to_string(i) + "]", "must lie in (-1, 0]");
  }
  if (ctx.cfg.s_order < 0) throw ConfigError("s_order", "must be >= 0");

  std::vector<std::optional<KaehlerResult>> results(ctx.cfg.t_grid.size());
  auto run = [&](std::size_t i) {
    results[i] = kaehler_index(ctx.rs, ctx.level, ctx.cfg.genus, V, U, ctx.cfg.s_order, ctx.cfg.t_grid[i]);
  };
  const std::size_t n = ctx.cfg.t_grid.size(), jobs = static_cast<std::size_t>(ctx.cfg.jobs);
  for (std::size_t start = 0; start < n; start += jobs) {
    std::vector<std::future<void>> fs;
    for (std::size_t i = start; i < std::min(n, start + jobs); ++i)
      fs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, i));
    for (auto& f : fs) f.get();
  }

  double worst_res = 0;
  json steps = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = *results[i];
    double res = 0;
    for (auto& h : r.state.history) res = std::max(res, h.max_residual);
    for (auto& p : r.state.points) res = std::max(res, p.residual);
    worst_res = std::max(worst_res, res);
    std::size_t first = o.rows.size();
    emit_series(o, t_label(ctx.cfg.t_grid[i]), r.value, res, true);
    for (std::size_t k = first; k < o.rows.size(); ++k) o.rows[k].int_defect = 0;  // real t: no integrality
    steps.push_back({{"t", ctx.cfg.t_grid[i]}, {"steps", r.state.history.size()}, {"max_residual", res}});
  }

  std::vector<std::string> vars{"t"};
  if (ctx.cfg.s_order > 0) vars.insert(vars.begin(), "s");
  SSeries taylor = kaehler_taylor(ctx.rs, ctx.level, ctx.cfg.genus, V, U, ctx.cfg.order, vars);
  std::size_t first = o.rows.size();
  emit_series(o, "kaehler-taylor", taylor, 0.0, false);
  double worst_def = 0;
  const int s_idx = taylor.layout().var_index("s");
  for (std::size_t i = first; i < o.rows.size(); ++i) {
    auto& r = o.rows[i];
    double w = s_idx >= 0 ? factorial_weight({r.exps[s_idx]}) : 1.0;
    r.int_defect = int_defect(r.re * w) + std::abs(r.im);
    worst_def = std::max(worst_def, r.int_defect);
  }
  o.report["hessian_guarantee"] = within_hessian_guarantee(ctx.rs, ctx.level);
  o.report["continuation"] = steps;
  o.report["max_residual"] = worst_res;
  o.report["taylor_max_int_defect"] = worst_def;
  if (worst_res > 1e-10 || worst_def > 1e-6) o.invariant_ok = false;
  return o;
}

Output cmd_newstead(const Context& ctx) {
  Output o;
  Character V = kaehler_v(ctx), U = insertion(ctx);
  NewsteadReport rep = newstead_report(ctx.rs, ctx.level, ctx.cfg.genus, V, U, ctx.cfg.s_order);
  emit_value(o, "newstead", "vanishing_order", static_cast<double>(rep.vanishing_order), 0.0, 0.0);
  emit_value(o, "newstead", "inner_limit_formula", rep.inner_limit_formula, 0.0, 0.0);
  emit_value(o, "newstead", "inner_limit_extrapolated", rep.inner_limit_extrapolated, rep.limit_agreement, 0.0);
  emit_value(o, "newstead", "betti_factor_at_minus1", static_cast<double>(rep.betti_factor_at_minus1), 0.0, 0.0);
  json samples = json::array();
  for (auto& [t, v] : rep.inner_samples) samples.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}});
  o.report["vanishing_order"] = rep.vanishing_order;
  o.report["limit_finite_nonzero"] = rep.limit_finite_nonzero;
  o.report["limit_agreement"] = rep.limit_agreement;
  o.report["inner_samples"] = samples;
  o.report["flag_betti"] = rep.flag_betti;
  o.report["betti_factor_at_minus1"] = rep.betti_factor_at_minus1;
  o.report["betti_factor_vanishes"] = rep.betti_factor_vanishes;
  o.report["betti_poly_at_q_minus1"] = rep.betti_poly_at_q_minus1;
  o.report["full_flag_transfer_conclusive"] = rep.full_flag_transfer_conclusive;
  o.report["hessian_guarantee"] = rep.hessian_guarantee;
  o.report["notes"] = rep.notes;
  if (!rep.limit_finite_nonzero) o.invariant_ok = false;
  return o;
}

Output cmd_witten(const Context& ctx) {
  Output o;
  if (ctx.rs.label != "A1") throw ConfigError("group", "witten asymptotics are implemented for A1 only");
  if (ctx.cfg.l < 0) throw ConfigError("l", "must be >= 0");
  if (ctx.cfg.genus < 2) throw ConfigError("genus", "witten asymptotics need genus >= 2");
  if (ctx.cfg.witten_terms < 1) throw ConfigError("witten_terms", "must be >= 1");
  for (std::size_t i = 0; i < ctx.cfg.n_values.size(); ++i)
    if (ctx.cfg.n_values[i] < 1 || (i && ctx.cfg.n_values[i] <= ctx.cfg.n_values[i - 1]))
      throw ConfigError("n[" + std::to_string(i) + "]", "n values must be positive and increasing");
  AsymptoticRun run = asymptotic_check(ctx.cfg.l, ctx.cfg.genus, ctx.cfg.n_values, ctx.cfg.jobs);
  for (std::size_t i = 0; i < run.n_values.size(); ++i) {
    long double v = run.verlinde[i];
    double defect = static_cast<double>(std::fabs(v - std::round(v)));
    emit_value(o, "witten", "n=" + std::to_string(run.n_values[i]) + ";k=" + std::to_string(run.levels[i]), static_cast<double>(run.scaled[i]),
               static_cast<double>(run.deviation[i]), defect);
  }
  std::map<int, double> phi;
  if (ctx.cfg.phi_weight) phi = laurent_of(irred_checked(ctx.rs, *ctx.cfg.phi_weight, "phi_weight"));
  int max_order;
  try {
    max_order = std::min(ctx.cfg.order, witten_max_order(ctx.cfg.l, phi));
    WittenSum ws = witten_sum(ctx.cfg.l, phi, ctx.cfg.genus, max_order, ctx.cfg.witten_terms);
    SSeries v = ws.value();
    for (std::size_t i = 0; i < v.size(); ++i)
      o.rows.push_back({"witten-sum", v.layout().monomials[i], "", v[i].real(), v[i].imag(), ws.tail_bound[i], 0.0});
  } catch (const std::invalid_argument& e) {
    throw ConfigError("phi_weight", e.what());
  }
  o.report["d"] = run.d;
  o.report["target"] = static_cast<double>(run.target);
  o.report["fitted_exponent"] = run.fitted_exponent;
  o.report["t_order"] = max_order;
  return o;
}

Output cmd_oracle(const Context& ctx) {
  Output o;
  if (!ctx.cfg.level_k) throw ConfigError("level", "the fusion oracle needs a scalar level");
  if (ctx.rs.torus_rank) throw ConfigError("group", "the fusion oracle needs a simple group");
  std::int64_t v = fusion_gluing_oracle(ctx.rs, *ctx.cfg.level_k);
  emit_value(o, "oracle", "genus2", static_cast<double>(v), 0.0, 0.0);
  o.report["level_weights"] = level_weights(ctx.rs, *ctx.cfg.level_k).size();
  return o;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string exps_text(const Row& r) {
  if (!r.label.empty()) return r.label;
  std::string s = "(";
  for (std::size_t i = 0; i < r.exps.size(); ++i) s += (i ? " " : "") + std::to_string(r.exps[i]);
  return s + ")";
}

void write_output(const Context& ctx, const Output& o, std::ostream& out) {
  if (ctx.cfg.format == "csv") {
    out << "command,group,level,genus,exponent-tuple,re,im,diag_residual,diag_int_defect\n";
    for (auto& r : o.rows)
      out << r.command << ',' << ctx.rs.label << ',' << ctx.level_text << ',' << ctx.cfg.genus << ',' << exps_text(r)
          << ',' << fmt(r.re) << ',' << fmt(r.im) << ',' << fmt(r.residual) << ',' << fmt(r.int_defect) << '\n';
    return;
  }
  json j;
  j["command"] = ctx.cfg.command;
  j["group"] = ctx.rs.label;
  j["level"] = ctx.level_text;
  j["genus"] = ctx.cfg.genus;
  json rows = json::array();
  for (auto& r : o.rows) {
    json row;
    row["command"] = r.command;
    if (r.label.empty()) row["exponents"] = r.exps;
    else row["quantity"] = r.label;
    row["re"] = r.re;
    row["im"] = r.im;
    row["diag_residual"] = r.residual;
    row["diag_int_defect"] = r.int_defect;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["report"] = o.report;
  j["invariants_ok"] = o.invariant_ok;
  out << j.dump(2) << '\n';
}

void error_json(std::ostream& err, const std::string& kind, const std::string& path, const std::string& msg) {
  json e;
  e["error"] = kind;
  if (!path.empty()) e["path"] = path;
  e["message"] = msg;
  err << e.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"index formulas for moduli of G-bundles"};
  RunConfig cfg;
  std::string config_path, group, level_matrix, format, out_path;
  std::optional<std::int64_t> level;
  std::optional<int> genus, order, jobs;
  std::optional<double> t;
  app.add_option("command", cfg.command, "verlinde | index | kaehler | newstead | witten | oracle")
      ->required()
      ->check(CLI::IsMember({"verlinde", "index", "kaehler", "newstead", "witten", "oracle"}));
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--group", group, "A1..A4, C2, G2, T<l>, or products like A1xT1");
  app.add_option("--level", level, "scalar level k");
  app.add_option("--level-matrix", level_matrix, "level form as CSV rows separated by ';'");
  app.add_option("--genus", genus);
  app.add_option("--order", order);
  app.add_option("--t", t, "single t value for kaehler");
  app.add_option("--jobs", jobs);
  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    error_json(err, "config", "argv", e.what());
    return exit_config;
  }

  std::unique_ptr<Context> ctx;
  try {
    std::string command = cfg.command;
    if (!config_path.empty()) load_file(cfg, config_path);
    cfg.command = command;
    if (!group.empty()) cfg.group = group;
    if (level) cfg.level_k = *level, cfg.level_matrix.reset();
    if (!level_matrix.empty()) cfg.level_matrix = parse_matrix_csv(level_matrix), cfg.level_k.reset();
    if (genus) cfg.genus = *genus;
    if (order) cfg.order = *order;
    if (t) cfg.t_grid = {*t};
    if (jobs) cfg.jobs = *jobs;
    if (!format.empty()) cfg.format = format;
    if (!out_path.empty()) cfg.out_path = out_path;
    ctx = std::make_unique<Context>(make_context(cfg));
  } catch (const ConfigError& e) {
    error_json(err, "config", e.path, e.what());
    return exit_config;
  }

  Output o;
  try {
    const auto& c = cfg.command;
    if (c == "verlinde") o = cmd_verlinde(*ctx);
    else if (c == "index") o = cmd_index(*ctx);
    else if (c == "kaehler") o = cmd_kaehler(*ctx);
    else if (c == "newstead") o = cmd_newstead(*ctx);
    else if (c == "witten") o = cmd_witten(*ctx);
    else o = cmd_oracle(*ctx);
  } catch (const ConfigError& e) {
    error_json(err, "config", e.path, e.what());
    return exit_config;
  } catch (const std::exception& e) {
    error_json(err, "computation", "", e.what());
    return exit_computation;
  }

  if (cfg.out_path.empty()) {
    write_output(*ctx, o, out);
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      error_json(err, "config", "output.path", "cannot write " + cfg.out_path);
      return exit_config;
    }
    write_output(*ctx, o, f);
  }
  if (!o.invariant_ok) {
    error_json(err, "invariant", "", "an invariant check failed; see diag columns");
    return exit_invariant;
  }
  return exit_ok;
}

}  // namespace gbidx
