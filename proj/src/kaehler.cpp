#include "gbidx/kaehler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gbidx {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const cd two_pi_i(0.0, two_pi);

Eigen::VectorXcd rho_of(const RootSystem& rs) { return rs.rho.cast<cd>(); }

Eigen::VectorXcd reduce_mod_lattice(Eigen::VectorXcd r) {
  for (int i = 0; i < r.size(); ++i) r(i) -= std::round(r(i).real());
  return r;
}

void check_t(double t) {
  if (!(t > -1.0 && t <= 0.0)) throw std::invalid_argument("t must lie in (-1, 0]");
}

}  // namespace

cd exp_weight(const IVec& weight, const Eigen::VectorXcd& mu) {
  return std::exp(two_pi_i * weight.cast<cd>().dot(mu));
}

Eigen::VectorXcd chi_residual(const RootSystem& rs, const Level& level, const Character& V, cd s, double t,
                              const Eigen::VectorXcd& mu) {
  check_t(t);
  Eigen::VectorXcd r = level.h_prime.cast<cd>() * mu - rho_of(rs);
  Eigen::VectorXcd bracket = Eigen::VectorXcd::Zero(rs.rank);
  if (s != 0.0)
    for (auto& [k, m] : V.terms()) {
      IVec w = Character::weight_of(k);
      bracket += (s * static_cast<double>(m) * exp_weight(w, mu)) * w.cast<cd>();
    }
  for (auto& a : rs.positive_roots) {
    cd ea = exp_weight(a, mu);
    bracket -= (std::log(1.0 + t * ea) - std::log(1.0 + t / ea)) * a.cast<cd>();
  }
  return reduce_mod_lattice(r + bracket / two_pi_i);
}

Eigen::MatrixXcd chi_jacobian(const RootSystem& rs, const Level& level, const Character& V, cd s, double t,
                              const Eigen::VectorXcd& mu) {
  Eigen::MatrixXcd j = level.h_prime.cast<cd>();
  if (s != 0.0)
    for (auto& [k, m] : V.terms()) {
      Eigen::VectorXcd w = Character::weight_of(k).cast<cd>();
      j += (s * static_cast<double>(m) * exp_weight(Character::weight_of(k), mu)) * (w * w.transpose());
    }
  for (auto& a : rs.all_roots()) {
    cd ea = exp_weight(a, mu);
    Eigen::VectorXcd v = a.cast<cd>();
    j -= (t * ea / (1.0 + t * ea)) * (v * v.transpose());
  }
  return j;
}

Eigen::VectorXcd chi_dt(const RootSystem& rs, const Eigen::VectorXcd& mu, double t) {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(rs.rank);
  for (auto& a : rs.positive_roots) {
    cd ea = exp_weight(a, mu);
    d -= (ea / (1.0 + t * ea) - (1.0 / ea) / (1.0 + t / ea)) * a.cast<cd>();
  }
  return d / two_pi_i;
}

cd theta_st(const RootSystem& rs, const Level& level, const Character& V, cd s, double t, const Eigen::VectorXcd& mu) {
  cd prod = 1.0;
  for (auto& a : rs.all_roots()) {
    cd ea = exp_weight(a, mu);
    if (std::abs(1.0 - ea) < 1e-300) throw std::invalid_argument("singular point in theta");
    prod *= (1.0 + t * ea) / (1.0 - ea);
  }
  Eigen::MatrixXcd hp = level.h_prime.cast<cd>();
  cd d = (hp.inverse() * chi_jacobian(rs, level, V, s, t, mu)).determinant();
  return 1.0 / (static_cast<double>(level.F_order) * prod * d);
}

// ---- series

namespace {

SSeries weight_series(const IVec& weight, const Eigen::VectorXcd& mu0, const VSeries& delta) {
  return exp_weight(weight, mu0) * exp(two_pi_i * dot(weight.cast<cd>(), delta));
}

}  // namespace

VSeries chi_residual_series(const RootSystem& rs, const Level& level, const Character& V,
                            const Eigen::VectorXcd& mu0, const VSeries& delta, const SSeries& s, const SSeries& t) {
  const auto& lay = delta.layout_ptr();
  SSeries one = scalar_constant(lay, 1.0);
  VSeries r = left_mul(Eigen::MatrixXcd(level.h_prime.cast<cd>()), delta);
  VSeries bracket(lay, Eigen::VectorXcd::Zero(rs.rank));
  if (max_abs(s) > 0)
    for (auto& [k, m] : V.terms()) {
      IVec w = Character::weight_of(k);
      bracket += scale(s * weight_series(w, mu0, delta), Eigen::VectorXcd(static_cast<double>(m) * w.cast<cd>()));
    }
  for (auto& a : rs.positive_roots) {
    SSeries ep = weight_series(a, mu0, delta);
    SSeries em = weight_series(IVec(-a), mu0, delta);
    SSeries l = log(one + t * ep) - log(one + t * em);
    bracket -= scale(l, Eigen::VectorXcd(a.cast<cd>()));
  }
  r += bracket * (1.0 / two_pi_i);
  r[0].setZero();
  return r;
}

MSeries chi_jacobian_series(const RootSystem& rs, const Level& level, const Character& V,
                            const Eigen::VectorXcd& mu0, const VSeries& delta, const SSeries& s, const SSeries& t) {
  const auto& lay = delta.layout_ptr();
  SSeries one = scalar_constant(lay, 1.0);
  MSeries j = MSeries::constant(lay, level.h_prime.cast<cd>());
  if (max_abs(s) > 0)
    for (auto& [k, m] : V.terms()) {
      Eigen::VectorXcd w = Character::weight_of(k).cast<cd>();
      j += scale(s * weight_series(Character::weight_of(k), mu0, delta),
                 Eigen::MatrixXcd(static_cast<double>(m) * w * w.transpose()));
    }
  for (auto& a : rs.all_roots()) {
    SSeries ea = weight_series(a, mu0, delta);
    Eigen::VectorXcd v = a.cast<cd>();
    j -= scale(t * ea * inv(one + t * ea), Eigen::MatrixXcd(v * v.transpose()));
  }
  return j;
}

SSeries theta_st_series(const RootSystem& rs, const Level& level, const Character& V, const Eigen::VectorXcd& mu0,
                        const VSeries& delta, const SSeries& s, const SSeries& t) {
  const auto& lay = delta.layout_ptr();
  SSeries one = scalar_constant(lay, 1.0);
  SSeries prod = one;
  for (auto& a : rs.all_roots()) {
    SSeries ea = weight_series(a, mu0, delta);
    prod = prod * (one + t * ea) * inv(one - ea);
  }
  MSeries j = chi_jacobian_series(rs, level, V, mu0, delta, s, t);
  Eigen::MatrixXcd hinv = level.h_prime.cast<cd>().inverse();
  SSeries d = det(left_mul(hinv, j));
  return inv(static_cast<double>(level.F_order) * prod * d);
}

SSeries trace_series(const Character& U, const Eigen::VectorXcd& mu0, const VSeries& delta) {
  SSeries s(delta.layout_ptr(), cd(0.0));
  for (auto& [k, m] : U.terms()) s += static_cast<double>(m) * weight_series(Character::weight_of(k), mu0, delta);
  return s;
}

VSeries solve_formal(const RootSystem& rs, const Level& level, const Character& V, const Eigen::VectorXcd& mu0,
                     const SSeries& s, const SSeries& t) {
  const auto& lay = s.layout_ptr();
  Eigen::MatrixXcd j0 = chi_jacobian(rs, level, V, s[0], t[0].real(), mu0);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(j0);
  if (!lu.isInvertible()) throw NumericalFailure("singular Jacobian at the expansion point");
  Eigen::MatrixXcd jinv = lu.inverse();
  VSeries delta(lay, Eigen::VectorXcd::Zero(rs.rank));
  for (int sweep = 0; sweep <= lay->order; ++sweep)
    delta -= left_mul(jinv, chi_residual_series(rs, level, V, mu0, delta, s, t));
  return delta;
}

// ---- continuation

namespace {

struct Tracker {
  const RootSystem& rs;
  const Level& level;
  const Character& V;
  const ContinuationOptions& opts;

  Eigen::VectorXcd residual(double t, const Eigen::VectorXcd& mu) const {
    return chi_residual(rs, level, V, 0.0, t, mu);
  }

  bool correct(double t, Eigen::VectorXcd& mu, double& res, double& cond) const {
    for (int it = 0; it < 12; ++it) {
      Eigen::VectorXcd r = residual(t, mu);
      res = r.norm();
      Eigen::MatrixXcd j = chi_jacobian(rs, level, V, 0.0, t, mu);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j);
      auto sv = svd.singularValues();
      cond = sv(0) / sv(sv.size() - 1);
      if (!(cond < opts.max_condition)) return false;
      if (res < opts.tolerance) return true;
      Eigen::VectorXcd step = j.partialPivLu().solve(r);
      mu -= step;
      if (step.norm() > 0.25) return false;
    }
    res = residual(t, mu).norm();
    return res < opts.tolerance;
  }

  Eigen::VectorXcd tangent_x(double x, const Eigen::VectorXcd& mu) const {
    double t = x * x - 1.0;
    Eigen::MatrixXcd j = chi_jacobian(rs, level, V, 0.0, t, mu);
    return -j.partialPivLu().solve(chi_dt(rs, mu, t) * (2.0 * x));
  }
};

double distance_mod_lattice(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd d = a - b;
  for (int i = 0; i < d.size(); ++i) d(i) -= std::round(d(i).real());
  return d.norm();
}

// Orbit representatives are compared through all Weyl images; when every
// point is tracked the images are tracked too, so direct distances suffice.
void measure(const RootSystem& rs, const std::vector<TrackedPoint>& pts, bool all_points, StepRecord& rec) {
  rec.min_separation = INFINITY;
  rec.min_root_distance = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (auto& a : rs.positive_roots) {
      double v = a.cast<cd>().dot(pts[i].mu).real();
      rec.min_root_distance = std::min(rec.min_root_distance, std::abs(v - std::round(v)));
    }
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (all_points) {
        rec.min_separation = std::min(rec.min_separation, distance_mod_lattice(pts[i].mu, pts[j].mu));
        continue;
      }
      for (auto& w : rs.weyl) {
        Eigen::VectorXcd img = w.on_coweights.cast<cd>() * pts[i].mu;
        rec.min_separation = std::min(rec.min_separation, distance_mod_lattice(img, pts[j].mu));
      }
    }
  }
}

void attach_s_series(const RootSystem& rs, const Level& level, const Character& V, int s_order, double t,
                     std::vector<TrackedPoint>& pts) {
  auto lay = SeriesLayout::get({"s"}, s_order);
  SSeries s = variable(lay, "s");
  SSeries tt = scalar_constant(lay, t);
  for (auto& p : pts) p.s_series = solve_formal(rs, level, V, p.mu, s, tt);
}

}  // namespace

ContinuationState continue_points(const RootSystem& rs, const Level& level, const Character& V, int s_order,
                                  double t_target, const ContinuationOptions& opts) {
  check_t(t_target);
  if (s_order < 0) throw std::invalid_argument("s order must be >= 0");
  ContinuationState st;
  st.hessian_guarantee = within_hessian_guarantee(rs, level);
  PointSet ps = enumerate_F_rho(rs, level);
  st.F_order = ps.F_order;
  auto seed = [&](const VerlindePoint& vp) {
    TrackedPoint tp;
    tp.origin = vp;
    tp.mu = to_vector(vp.point.mu).cast<cd>();
    st.points.push_back(tp);
  };
  if (opts.all_points) {
    for (auto& p : ps.points)
      if (p.is_regular) seed(p);
  } else {
    for (auto i : ps.orbit_reps) seed(ps.points[i]);
  }

  Tracker tr{rs, level, V, opts};
  for (auto& p : st.points) {
    p.residual = tr.residual(0.0, p.mu).norm();
    if (p.residual > 1e-9) throw std::logic_error("seed is not a root of the residual");
  }

  const double x_target = std::sqrt(1.0 + t_target);
  double x = 1.0, h = opts.initial_step;
  int halvings = 0;
  while (x > x_target) {
    double step = std::min(h, x - x_target);
    double x_new = x - step;
    if (x - x_new < 1e-15 || x_new == x_target) x_new = x_target;
    double t_new = x_new * x_new - 1.0;
    std::vector<TrackedPoint> trial = st.points;
    StepRecord rec;
    rec.t = t_new;
    rec.step = x - x_new;
    bool ok = true;
    for (auto& p : trial) {
      p.mu += (x_new - x) * tr.tangent_x(x, p.mu);
      double res = 0, cond = 0;
      if (!tr.correct(t_new, p.mu, res, cond)) {
        ok = false;
        break;
      }
      p.residual = res;
      rec.max_residual = std::max(rec.max_residual, res);
      rec.max_condition = std::max(rec.max_condition, cond);
    }
    if (ok) {
      measure(rs, trial, opts.all_points, rec);
      if (rec.min_separation < opts.collision) ok = false;
      if (rec.min_root_distance <= 0) ok = false;
    }
    if (!ok) {
      if (++halvings > opts.max_halvings)
        throw NumericalFailure("continuation stalled near t = " + std::to_string(x * x - 1.0) +
                               " (step halving limit; Jacobian blowup or point collision)");
      h /= 2;
      continue;
    }
    st.points = std::move(trial);
    st.history.push_back(rec);
    x = x_new;
    h = std::min(h * 1.5, opts.max_step);
    halvings = 0;
  }
  st.t = t_target;
  attach_s_series(rs, level, V, s_order, t_target, st.points);
  return st;
}

KaehlerResult kaehler_index(const RootSystem& rs, const Level& level, int genus, const Character& V,
                            const Character& U, int s_order, double t, const ContinuationOptions& opts) {
  if (genus < 0) throw std::invalid_argument("genus must be >= 0");
  ContinuationOptions o = opts;
  o.all_points = false;
  KaehlerResult res{SSeries(), SSeries(), continue_points(rs, level, V, s_order, t, o)};
  auto lay = SeriesLayout::get({"s"}, s_order);
  SSeries s = variable(lay, "s");
  SSeries tt = scalar_constant(lay, t);
  res.inner = SSeries(lay, cd(0.0));
  for (auto& p : res.state.points) {
    SSeries theta = theta_st_series(rs, level, V, p.mu, p.s_series, s, tt);
    res.inner += powi(theta, 1 - genus) * trace_series(U, p.mu, p.s_series);
  }
  res.value = res.inner * std::pow(1.0 + t, (genus - 1) * rs.rank);
  return res;
}

SSeries kaehler_taylor(const RootSystem& rs, const Level& level, int genus, const Character& V, const Character& U,
                       int order, const std::vector<std::string>& vars) {
  if (genus < 0) throw std::invalid_argument("genus must be >= 0");
  for (auto& v : vars)
    if (v != "s" && v != "t") throw std::invalid_argument("Taylor variables must be among s, t");
  auto lay = SeriesLayout::get(vars, order);
  auto var_or_zero = [&](const std::string& n) {
    return lay->var_index(n) >= 0 ? variable(lay, n) : scalar_constant(lay, 0.0);
  };
  SSeries s = var_or_zero("s"), t = var_or_zero("t");
  PointSet ps = enumerate_F_rho(rs, level);
  SSeries inner(lay, cd(0.0));
  for (auto i : ps.orbit_reps) {
    Eigen::VectorXcd mu0 = to_vector(ps.points[i].point.mu).cast<cd>();
    VSeries delta = solve_formal(rs, level, V, mu0, s, t);
    inner += powi(theta_st_series(rs, level, V, mu0, delta, s, t), 1 - genus) * trace_series(U, mu0, delta);
  }
  SSeries one = scalar_constant(lay, 1.0);
  return powi(one + t, (genus - 1) * rs.rank) * inner;
}

KaehlerResult full_flag_index(const RootSystem& rs, const Level& level, int genus, const Character& V,
                              const Character& U, int s_order, double t, const ContinuationOptions& opts) {
  ContinuationOptions o = opts;
  o.all_points = false;
  KaehlerResult res{SSeries(), SSeries(), continue_points(rs, level, V, s_order, t, o)};
  auto lay = SeriesLayout::get({"s"}, s_order);
  SSeries s = variable(lay, "s");
  SSeries tt = scalar_constant(lay, t);
  SSeries one = scalar_constant(lay, 1.0);
  res.inner = SSeries(lay, cd(0.0));
  for (auto& p : res.state.points) {
    SSeries theta = powi(theta_st_series(rs, level, V, p.mu, p.s_series, s, tt), 1 - genus);
    std::vector<Eigen::VectorXcd> seen;
    for (auto& w : rs.weyl) {
      Eigen::MatrixXcd n = w.on_coweights.cast<cd>();
      Eigen::VectorXcd mu = n * p.mu;
      bool dup = false;
      for (auto& q : seen)
        if (distance_mod_lattice(q, mu) < 1e-9) dup = true;
      if (dup) continue;
      seen.push_back(mu);
      VSeries delta = left_mul(n, p.s_series);
      SSeries flag = one;
      for (auto& a : rs.positive_roots) {
        SSeries ea = weight_series(a, mu, delta);
        flag = flag * (one + tt * ea) * inv(one - ea);
      }
      res.inner += theta * trace_series(U, mu, delta) * flag;
    }
  }
  res.value = res.inner * std::pow(1.0 + t, (genus - 1) * rs.rank);
  return res;
}

}  // namespace gbidx
