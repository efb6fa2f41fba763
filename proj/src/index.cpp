#include "gbidx/index.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbidx {

namespace {

PointSet points_for(const IndexRequest& req) {
  return req.point_set == PointSetKind::F ? enumerate_F(req.rs, req.level) : enumerate_F_rho(req.rs, req.level);
}

void check_odd(const OddClassSpec& odd) {
  const auto n = static_cast<int>(odd.factors.size());
  if (odd.intersections.rows() != n || odd.intersections.cols() != n)
    throw std::invalid_argument("intersection matrix must match the number of odd factors");
  if (odd.intersections != IMat(-odd.intersections.transpose()))
    throw std::invalid_argument("intersection matrix must be antisymmetric with zero diagonal");
}

SSeries sum_over_points(const IndexRequest& req, bool with_odd) {
  if (req.genus < 0) throw std::invalid_argument("genus must be >= 0");
  if (!is_admissible(req.level)) throw std::invalid_argument("inadmissible level");
  if (with_odd && req.odd) check_odd(*req.odd);
  PointSet ps = points_for(req);
  const Character U = req.U ? *req.U : trivial_character(req.rs);
  SSeries total(req.spec.layout(), cd(0.0));
  if (with_odd && req.odd && req.odd->factors.size() % 2) return total;
  for (auto i : ps.orbit_reps) {
    DeformedPoint dp = solve_deformed(req.rs, req.level, req.spec, ps.points[i]);
    SSeries theta = theta_t(req.rs, req.level, req.spec, dp, ps.F_order);
    SSeries term = powi(theta, 1 - req.genus) * trace_at(dp, U);
    if (with_odd && req.odd && !req.odd->factors.empty())
      term = term * odd_bracket(req.rs, req.level, req.spec, *req.odd, dp);
    total += term;
  }
  return total;
}

}  // namespace

SSeries index_even(const IndexRequest& req) { return sum_over_points(req, false); }

SSeries index_general(const IndexRequest& req) { return sum_over_points(req, true); }

SSeries index_graded(IndexRequest req) {
  req.point_set = PointSetKind::F;
  return sum_over_points(req, true);
}

SSeries pfaffian(const std::vector<std::vector<SSeries>>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("pfaffian of an empty matrix needs a layout");
  if (n % 2) return SSeries(a[0][0].layout_ptr(), cd(0.0));
  if (n == 2) return a[0][1];
  SSeries total(a[0][0].layout_ptr(), cd(0.0));
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::size_t> keep;
    for (std::size_t r = 1; r < n; ++r)
      if (r != j) keep.push_back(r);
    std::vector<std::vector<SSeries>> sub(keep.size(), std::vector<SSeries>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) sub[r][c] = a[keep[r]][keep[c]];
    SSeries term = a[0][j] * pfaffian(sub);
    if (j % 2) total += term;
    else total -= term;
  }
  return total;
}

SSeries odd_bracket(const RootSystem& rs, const Level& level, const DeformationSpec& spec, const OddClassSpec& odd,
                    const DeformedPoint& dp) {
  check_odd(odd);
  const auto& lay = dp.xi.layout_ptr();
  const std::size_t n = odd.factors.size();
  if (n == 0) return scalar_constant(lay, 1.0);
  if (n % 2) return SSeries(lay, cd(0.0));
  MSeries ginv = inverse(deformed_form(level, spec, dp));
  std::vector<VSeries> grad;
  for (auto& u : odd.factors) grad.push_back(gradient_series(dp, u));
  std::vector<std::vector<SSeries>> p(n, std::vector<SSeries>(n, SSeries(lay, cd(0.0))));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      if (!odd.intersections(j, k)) continue;
      VSeries q = ginv * grad[k];
      SSeries pair(lay, cd(0.0));
      for (int i = 0; i < rs.rank; ++i) pair += component(grad[j], i) * component(q, i);
      p[j][k] = pair * (-static_cast<double>(odd.intersections(j, k)));
      p[k][j] = -p[j][k];
    }
  return pfaffian(p);
}

std::map<int, double> laurent_of(const Character& ch) {
  if (ch.rank() != 1) throw std::invalid_argument("Laurent form needs a rank-one character");
  std::map<int, double> phi;
  for (auto& [k, m] : ch.terms()) phi[static_cast<int>(k[0])] += static_cast<double>(m);
  return phi;
}

SSeries index_su2_form(int l, const std::map<int, double>& phi, int genus, int order) {
  if (l < 0) throw std::invalid_argument("level must be >= 0");
  for (auto& [n, c] : phi) {
    auto it = phi.find(-n);
    double other = it == phi.end() ? 0.0 : it->second;
    if (std::abs(other - c) > 1e-12) throw std::invalid_argument("phi must satisfy phi_n = phi_{-n}");
  }
  auto lay = SeriesLayout::get({"t"}, order);
  SSeries t = variable(lay, "t");
  SSeries one = scalar_constant(lay, 1.0);
  const double m = 2.0 * l + 4.0;
  SSeries total(lay, cd(0.0));
  for (int j = 1; j <= l + 1; ++j) {
    const cd zeta0 = std::polar(1.0, std::numbers::pi * j / (l + 2));
    SSeries y(lay, cd(0.0));
    auto power_sum = [&](int deriv) {
      SSeries s(lay, cd(0.0));
      for (auto& [n, c] : phi) {
        if (!n || !c) continue;
        s += (c * std::pow(static_cast<double>(n), deriv) * std::pow(zeta0, n)) * exp(static_cast<double>(n) * y);
      }
      return s;
    };
    for (int sweep = 0; sweep <= order; ++sweep) y = (-1.0 / m) * (t * power_sum(1));
    SSeries u2 = (zeta0 * zeta0) * exp(2.0 * y);
    SSeries delta2 = (one - u2) * (one - inv(u2));
    SSeries base = (scalar_constant(lay, m) + t * power_sum(2)) * inv(delta2);
    total += powi(base, genus - 1);
  }
  return total;
}

SSeries fourier_coefficient(const IndexRequest& req, const IVec& mu) {
  IndexRequest r = req;
  r.U = holo_induce(req.rs, IVec(mu - req.rs.rho));
  r.odd.reset();
  return index_even(r);
}

IVec affine_reflection(const RootSystem& rs, const Level& level, const IVec& mu) {
  IVec s = mu - pair(mu, rs.highest_coroot) * rs.highest_root;
  return s - level.h_prime * rs.highest_coroot;
}

IVec lattice_translate(const Level& level, const IVec& mu, const IVec& gamma) { return mu + level.h_prime * gamma; }

}  // namespace gbidx
