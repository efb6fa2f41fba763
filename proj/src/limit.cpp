#include "gbidx/kaehler.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gbidx {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const cd two_pi_i(0.0, two_pi);

double root_value(const IVec& beta, const Eigen::VectorXd& z) { return beta.cast<double>().dot(z); }

double barrier(const Eigen::MatrixXd& h, const std::vector<IVec>& roots, const Eigen::VectorXd& z) {
  double v = 0.5 * z.dot(h * z);
  for (auto& b : roots) v -= 2.0 * std::log(std::abs(root_value(b, z)));
  return v;
}

bool same_chamber(const std::vector<IVec>& roots, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (auto& r : roots)
    if (root_value(r, a) * root_value(r, b) <= 0) return false;
  return true;
}

// Coefficient of x^{k+1} moved to x^k.
SSeries shift_down(const SSeries& a) {
  SSeries r(a.layout_ptr(), cd(0.0));
  const int n = a.order();
  for (int k = 0; k < n; ++k) r[a.layout().index_of({k})] = a.coeff({k + 1});
  return r;
}

struct LimitSeries {
  const RootSystem& rs;
  const Level& level;
  Eigen::VectorXd mu;                  // mu at t = -1
  std::vector<IVec> z_roots;           // positive roots in the centralizer
  std::vector<IVec> other_roots;       // remaining positive roots
  LayoutPtr lay;

  // Residual as an x-series for mu(x) = mu + sum_k x^k xi_k / 2 pi, constant term dropped.
  VSeries residual(const std::vector<Eigen::VectorXd>& xi) const {
    SSeries x = variable(lay, "x");
    SSeries one = scalar_constant(lay, 1.0);
    SSeries t = x * x - one;
    VSeries delta(lay, Eigen::VectorXcd::Zero(rs.rank));
    for (std::size_t k = 0; k < xi.size(); ++k) {
      if (xi[k].size() == 0) continue;
      delta += scale(powi(x, static_cast<long>(k + 1)), Eigen::VectorXcd(xi[k].cast<cd>() / two_pi));
    }
    VSeries r = left_mul(Eigen::MatrixXcd(level.h_prime.cast<cd>()), delta);
    auto e = [&](const IVec& w) {
      cd base = std::exp(two_pi_i * w.cast<double>().dot(mu));
      return base * exp(two_pi_i * dot(w.cast<cd>(), delta));
    };
    VSeries bracket(lay, Eigen::VectorXcd::Zero(rs.rank));
    for (auto& a : other_roots) {
      SSeries l = log(one + t * e(a)) - log(one + t * e(IVec(-a)));
      bracket += scale(l, Eigen::VectorXcd(a.cast<cd>()));
    }
    for (auto& b : z_roots) {
      SSeries l = log(shift_down(one + t * e(b))) - log(shift_down(one + t * e(IVec(-b))));
      bracket += scale(l, Eigen::VectorXcd(b.cast<cd>()));
    }
    r -= bracket * (1.0 / two_pi_i);
    r[0].setZero();
    return r;
  }

  Eigen::VectorXcd coefficient(const std::vector<Eigen::VectorXd>& xi, int k) const {
    return residual(xi).coeff({k});
  }
};

double distance_mod_lattice(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd d = a - b;
  for (int i = 0; i < d.size(); ++i) d(i) -= std::round(d(i).real());
  return d.norm();
}

}  // namespace

Eigen::VectorXd barrier_minimizer(const Eigen::MatrixXd& h, const std::vector<IVec>& positive_roots,
                                  const Eigen::VectorXd& start) {
  Eigen::VectorXd z = start;
  for (auto& b : positive_roots)
    if (root_value(b, z) == 0) throw std::invalid_argument("barrier start lies on a wall");
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd g = h * z;
    Eigen::MatrixXd H = h;
    for (auto& b : positive_roots) {
      Eigen::VectorXd bv = b.cast<double>();
      double v = bv.dot(z);
      g -= 2.0 * bv / v;
      H += 2.0 * bv * bv.transpose() / (v * v);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) throw NumericalFailure("barrier Hessian not positive definite");
    Eigen::VectorXd step = llt.solve(g);
    double dec = g.dot(step);
    if (dec < 1e-28) break;
    double lam = 1.0, f0 = barrier(h, positive_roots, z);
    Eigen::VectorXd next;
    for (int ls = 0; ls < 60; ++ls, lam *= 0.5) {
      next = z - lam * step;
      if (same_chamber(positive_roots, next, start) && barrier(h, positive_roots, next) <= f0 - 0.25 * lam * dec)
        break;
    }
    if (!same_chamber(positive_roots, next, start))
      throw NumericalFailure("barrier minimizer escaped its chamber (internal inconsistency)");
    z = next;
  }
  return z;
}

Eigen::MatrixXd limiting_form(const Eigen::MatrixXd& h, const std::vector<IVec>& positive_roots,
                              const Eigen::VectorXd& xi1) {
  Eigen::MatrixXd j = h;
  for (auto& b : positive_roots) {
    Eigen::VectorXd bv = b.cast<double>();
    double v = bv.dot(xi1);
    j += 2.0 * bv * bv.transpose() / (v * v);
  }
  return j;
}

std::vector<LimitPoint> limit_t_minus1(const RootSystem& rs, const Level& level, const Character& V, int s_order) {
  if (s_order < 0) throw std::invalid_argument("s order must be >= 0");
  const int n = rs.rank;
  const Eigen::MatrixXd h = level.h.cast<double>();
  if (Eigen::LLT<Eigen::MatrixXd>(h).info() != Eigen::Success)
    throw NumericalFailure("t = -1 limit needs a positive definite level form");
  const int top = 2 * s_order + 2;
  auto lay = SeriesLayout::get({"x"}, top + 1);

  std::vector<LimitPoint> out;
  for (auto& mu_r : solve_congruence(level.h, RVec(n, Rational(0)))) {
    LimitPoint lp;
    lp.f_minus1 = make_point(mu_r);
    LimitSeries ls{rs, level, to_vector(mu_r), {}, {}, lay};
    for (auto& a : rs.positive_roots)
      (pairing(a, mu_r).is_integer() ? ls.z_roots : ls.other_roots).push_back(a);
    lp.centralizer_roots = ls.z_roots;

    lp.approach_count = 0;
    for (auto& w : rs.weyl)
      if (same_point(act(w, lp.f_minus1), lp.f_minus1)) ++lp.approach_count;

    std::vector<Eigen::VectorXd> xi(top);
    int first_linear = 1;
    if (!ls.z_roots.empty()) {
      Eigen::VectorXd start = Eigen::VectorXd::Zero(n);
      for (auto& b : ls.z_roots) {
        for (std::size_t i = 0; i < rs.positive_roots.size(); ++i)
          if (rs.positive_roots[i] == b) start += rs.positive_coroots[i].cast<double>();
      }
      lp.xi1 = barrier_minimizer(h, ls.z_roots, start);
      xi[0] = lp.xi1;
      lp.linear_residual = ls.coefficient(xi, 1).norm();
      lp.limiting_H = limiting_form(h, ls.z_roots, lp.xi1);
      first_linear = 2;
    } else {
      lp.limiting_H = chi_jacobian(rs, level, V, 0.0, -1.0, ls.mu.cast<cd>()).real();
    }

    for (int k = first_linear; k <= top; ++k) {
      xi[k - 1] = Eigen::VectorXd::Zero(n);
      Eigen::VectorXcd r0 = ls.coefficient(xi, k);
      Eigen::MatrixXd m(n, n);
      for (int j = 0; j < n; ++j) {
        xi[k - 1] = Eigen::VectorXd::Unit(n, j);
        m.col(j) = (ls.coefficient(xi, k) - r0).real() * two_pi;
      }
      if (r0.imag().norm() > 1e-8) throw NumericalFailure("recursion produced a non-real coefficient");
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (!lu.isInvertible()) throw NumericalFailure("recursion map is singular");
      xi[k - 1] = -lu.solve(Eigen::VectorXd(r0.real() * two_pi));
      lp.recursion_maps.push_back(m);
      if (k == 1) {
        lp.linear_residual = ls.coefficient(xi, 1).norm();
        continue;
      }
      lp.higher_xi.push_back(xi[k - 1]);
    }
    out.push_back(std::move(lp));
  }
  return out;
}

cd inner_sum_limit(const RootSystem& rs, const Level& level, int genus, const Character& U,
                   const std::vector<LimitPoint>& limits) {
  (void)level;
  cd total = 0;
  for (auto& lp : limits) {
    double d = lp.limiting_H.determinant();
    total += static_cast<double>(lp.approach_count) * std::pow(d, genus - 1) * trace_eval(U, lp.f_minus1);
  }
  return total / static_cast<double>(rs.weyl.size());
}

std::vector<CensusEntry> limit_census(const RootSystem& rs, const Level& level, const Character& V,
                                      const std::vector<LimitPoint>& limits, double eps) {
  ContinuationOptions opts;
  opts.all_points = true;
  ContinuationState st = continue_points(rs, level, V, 0, -1.0 + eps, opts);
  std::vector<CensusEntry> out;
  for (std::size_t i = 0; i < limits.size(); ++i) out.push_back({i, limits[i].approach_count, 0});
  for (auto& p : st.points) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < limits.size(); ++i) {
      double d = distance_mod_lattice(p.mu, to_vector(limits[i].f_minus1.mu).cast<cd>());
      if (d < bd) bd = d, best = i;
    }
    if (!limits.empty()) ++out[best].observed;
  }
  return out;
}

namespace {

cd neville_at_zero(const std::vector<double>& x, const std::vector<cd>& y) {
  std::vector<cd> p = y;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
  return p[0];
}

}  // namespace

NewsteadReport newstead_report(const RootSystem& rs, const Level& level, int genus, const Character& V,
                               const Character& U, int s_order) {
  NewsteadReport rep;
  rep.vanishing_order = (genus - 1) * rs.rank;
  rep.hessian_guarantee = within_hessian_guarantee(rs, level);
  if (!rep.hessian_guarantee) rep.notes.push_back("level outside the h > c Hessian guarantee");
  if (genus == 1) rep.notes.push_back("genus 1: no prefactor, vanishing order 0");

  rep.flag_betti = poincare_polynomial(rs, {});
  for (std::size_t p = 0; p < rep.flag_betti.size(); ++p) {
    rep.betti_factor_at_minus1 += rep.flag_betti[p];  // (-t)^p at t = -1
    rep.betti_poly_at_q_minus1 += (p % 2 ? -1 : 1) * rep.flag_betti[p];
  }
  rep.betti_factor_vanishes = rep.betti_factor_at_minus1 == 0;
  rep.full_flag_transfer_conclusive = !rep.betti_factor_vanishes;
  if (rep.betti_factor_vanishes) rep.notes.push_back("flag factor vanishes at t = -1: full-flag transfer inconclusive");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    auto limits = limit_t_minus1(rs, level, V, s_order);
    rep.inner_limit_formula = inner_sum_limit(rs, level, genus, U, limits);
  } catch (const NumericalFailure& e) {
    rep.inner_limit_formula = nan;
    rep.notes.push_back(std::string("limit formula failed: ") + e.what());
  }

  std::vector<double> xs;
  std::vector<cd> ys;
  try {
    for (int k = 2; k <= 5; ++k) {
      double t = -1.0 + std::pow(10.0, -k);
      KaehlerResult r = kaehler_index(rs, level, genus, V, U, 0, t);
      rep.inner_samples.emplace_back(t, r.inner[0]);
      xs.push_back(std::sqrt(1.0 + t));
      ys.push_back(r.inner[0]);
    }
    rep.inner_limit_extrapolated = neville_at_zero(xs, ys);
  } catch (const NumericalFailure& e) {
    rep.inner_limit_extrapolated = nan;
    rep.notes.push_back(std::string("continuation failed: ") + e.what());
  }

  const double lim = std::abs(rep.inner_limit_formula);
  rep.limit_finite_nonzero = std::isfinite(lim) && lim > 1e-9;
  rep.limit_agreement = std::abs(rep.inner_limit_formula - rep.inner_limit_extrapolated);
  return rep;
}

}  // namespace gbidx
