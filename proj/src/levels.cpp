#include "gbidx/levels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace gbidx {

IMat c_form(const RootSystem& rs) {
  IMat c = IMat::Zero(rs.rank, rs.rank);
  for (auto& a : rs.positive_roots) c += a * a.transpose();
  return c;
}

Level make_level(const RootSystem& rs, const IMat& h) {
  if (h.rows() != rs.rank || h.cols() != rs.rank)
    throw std::invalid_argument("level matrix must be " + std::to_string(rs.rank) + "x" + std::to_string(rs.rank));
  if (h != h.transpose()) throw std::invalid_argument("level matrix must be symmetric");
  Level l;
  l.h = h;
  l.h_prime = h + c_form(rs);
  l.F_order = std::llabs(int_det(l.h_prime));
  return l;
}

Level canonical_level(const RootSystem& rs, std::int64_t k) {
  if (!rs.simple_rank) throw std::invalid_argument("a scalar level needs a simple factor; give a level matrix");
  return make_level(rs, IMat(k * rs.basic_form));
}

bool is_admissible(const Level& level) { return is_positive_definite(level.h_prime); }

bool within_hessian_guarantee(const RootSystem& rs, const Level& level) {
  return is_positive_definite(IMat(level.h - c_form(rs)));
}

namespace {

void row_axpy(IMat& m, int dst, int src, std::int64_t q) {  // row dst -= q row src
  for (int j = 0; j < m.cols(); ++j) m(dst, j) = checked_sub(m(dst, j), checked_mul(q, m(src, j)));
}

void col_axpy(IMat& m, int dst, int src, std::int64_t q) {
  for (int i = 0; i < m.rows(); ++i) m(i, dst) = checked_sub(m(i, dst), checked_mul(q, m(i, src)));
}

}  // namespace

SmithForm smith_normal_form(const IMat& a) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  SmithForm s{IMat::Identity(m, m), a, IMat::Identity(n, n)};
  IMat& d = s.D;
  for (int t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (d(i, j) && (pi < 0 || std::llabs(d(i, j)) < std::llabs(d(pi, pj)))) pi = i, pj = j;
      if (pi < 0) return s;
      d.row(t).swap(d.row(pi));
      s.U.row(t).swap(s.U.row(pi));
      d.col(t).swap(d.col(pj));
      s.V.col(t).swap(s.V.col(pj));

      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        std::int64_t q = d(i, t) / d(t, t);
        row_axpy(d, i, t, q);
        row_axpy(s.U, i, t, q);
        if (d(i, t)) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        std::int64_t q = d(t, j) / d(t, t);
        col_axpy(d, j, t, q);
        col_axpy(s.V, j, t, q);
        if (d(t, j)) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(d, t, bad, -1);
      row_axpy(s.U, t, bad, -1);
    }
    if (d(t, t) < 0) {
      d.row(t) *= -1;
      s.U.row(t) *= -1;
    }
  }
  return s;
}

std::vector<RVec> solve_congruence(const IMat& a, const RVec& target) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || static_cast<int>(target.size()) != n) throw std::invalid_argument("congruence shape mismatch");
  SmithForm s = smith_normal_form(a);
  RVec ub(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.U(i, j)) ub[i] += Rational(s.U(i, j)) * target[j];
  std::vector<std::int64_t> d(n);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    d[i] = s.D(i, i);
    if (!d[i]) throw std::invalid_argument("degenerate form: the congruence has infinitely many solutions");
    total = checked_mul(total, d[i]);
  }
  std::vector<RVec> out;
  out.reserve(total);
  std::vector<std::int64_t> idx(n, 0);
  for (std::int64_t c = 0; c < total; ++c) {
    RVec y(n);
    for (int i = 0; i < n; ++i) y[i] = (ub[i] + Rational(idx[i])) / Rational(d[i]);
    RVec mu(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (s.V(i, j)) mu[i] += Rational(s.V(i, j)) * y[j];
      mu[i] = mu[i].frac();
    }
    out.push_back(mu);
    for (int i = 0; i < n; ++i) {
      if (++idx[i] < d[i]) break;
      idx[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TorusPoint> weyl_orbit(const RootSystem& rs, const TorusPoint& f) {
  std::vector<TorusPoint> orbit;
  if (!f.has_correction()) {
    std::set<RVec> seen;
    for (auto& w : rs.weyl) {
      TorusPoint g = act(w, f);
      if (seen.insert(reduced(g).mu).second) orbit.push_back(g);
    }
    return orbit;
  }
  for (auto& w : rs.weyl) {
    TorusPoint g = act(w, f);
    bool seen = false;
    for (auto& o : orbit)
      if (same_point(o, g)) seen = true;
    if (!seen) orbit.push_back(g);
  }
  return orbit;
}

namespace {

PointSet enumerate(const RootSystem& rs, const Level& level, const RVec& target) {
  if (!is_admissible(level)) throw std::invalid_argument("inadmissible level: h + c is not positive definite");
  PointSet ps;
  ps.F_order = level.F_order;
  for (auto& mu : solve_congruence(level.h_prime, target)) {
    VerlindePoint p;
    p.point = make_point(mu);
    p.is_regular = is_regular(rs, p.point);
    cd d2 = weyl_denominator_sq(rs, p.point);
    p.theta0 = d2.real() / static_cast<double>(level.F_order);
    ps.points.push_back(p);
  }
  if (static_cast<std::int64_t>(ps.points.size()) != ps.F_order)
    throw std::logic_error("point count disagrees with |det h'|");
  std::map<RVec, int> orbit_size;
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    auto& p = ps.points[i];
    if (auto it = orbit_size.find(p.point.mu); it != orbit_size.end()) {
      p.orbit_size = it->second;
      continue;
    }
    auto orbit = weyl_orbit(rs, p.point);
    p.orbit_size = static_cast<int>(orbit.size());
    for (auto& g : orbit) orbit_size[reduced(g).mu] = p.orbit_size;
    if (!p.is_regular) continue;
    if (!(p.theta0 > 0)) throw std::logic_error("non-positive theta at a regular point");
    ps.orbit_reps.push_back(i);
  }
  return ps;
}

}  // namespace

PointSet enumerate_F_rho(const RootSystem& rs, const Level& level) {
  RVec rho(rs.rank);
  for (int i = 0; i < rs.rank; ++i) rho[i] = Rational(rs.rho(i));
  return enumerate(rs, level, rho);
}

PointSet enumerate_F(const RootSystem& rs, const Level& level) {
  return enumerate(rs, level, RVec(rs.rank, Rational(0)));
}

std::vector<VerlindePoint> regular_orbit_reps(const PointSet& ps) {
  std::vector<VerlindePoint> out;
  for (auto i : ps.orbit_reps) out.push_back(ps.points[i]);
  return out;
}

double verlinde_number(const RootSystem& rs, const Level& level, int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be >= 0");
  PointSet ps = enumerate_F_rho(rs, level);
  long double sum = 0;
  for (auto i : ps.orbit_reps) sum += std::pow(static_cast<long double>(ps.points[i].theta0), 1 - genus);
  return static_cast<double>(sum);
}

}  // namespace gbidx
