#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbidx/deform.hpp"
#include "oracles.hpp"

using namespace gbidx;

namespace {

DeformationSpec adjoint_spec(const RootSystem& rs, int order) {
  DeformationSpec spec;
  spec.terms.push_back({"t", adjoint_character(rs)});
  spec.order = order;
  return spec;
}

// Direct Newton solve of h' xi + t dTr_V(f e^xi) = 0 and evaluation of theta.
cd theta_numeric(const RootSystem& rs, const Level& lv, const Character& V, const VerlindePoint& p, double t) {
  const int n = rs.rank;
  Eigen::MatrixXcd hp = lv.h_prime.cast<cd>();
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(n);
  auto at = [&](const Eigen::VectorXcd& x) {
    TorusPoint f = p.point;
    f.correction = x;
    return f;
  };
  for (int it = 0; it < 50; ++it) {
    TorusPoint f = at(xi);
    Eigen::VectorXcd r = hp * xi + t * trace_gradient(V, f);
    if (r.norm() < 1e-15) break;
    xi -= (hp + t * trace_hessian(V, f)).lu().solve(r);
  }
  TorusPoint f = at(xi);
  cd delta2 = 1.0;
  for (auto& a : rs.all_roots()) delta2 *= 1.0 - character_value(a, f);
  cd d = (hp + t * trace_hessian(V, f)).determinant() / hp.determinant();
  return delta2 / (static_cast<double>(lv.F_order) * d);
}

}  // namespace

TEST_CASE("undeformed solution is the base point") {
  auto rs = build_root_system("A2");
  Level lv = canonical_level(rs, 2);
  DeformationSpec spec;
  spec.order = 0;
  PointSet ps = enumerate_F_rho(rs, lv);
  for (auto i : ps.orbit_reps) {
    DeformedPoint dp = solve_deformed(rs, lv, spec, ps.points[i]);
    SSeries th = theta_t(rs, lv, spec, dp, ps.F_order);
    CHECK(std::abs(th[0] - ps.points[i].theta0) < 1e-12);
  }
}

TEST_CASE("theta derivative matches a finite difference of a direct solve") {
  auto rs = build_root_system("A1");
  Level lv = canonical_level(rs, 1);
  DeformationSpec spec = adjoint_spec(rs, 2);
  PointSet ps = enumerate_F_rho(rs, lv);
  for (auto i : ps.orbit_reps) {
    DeformedPoint dp = solve_deformed(rs, lv, spec, ps.points[i]);
    SSeries th = theta_t(rs, lv, spec, dp, ps.F_order);
    const double h = 1e-5;
    cd fd = (theta_numeric(rs, lv, spec.terms[0].second, ps.points[i], h) -
             theta_numeric(rs, lv, spec.terms[0].second, ps.points[i], -h)) /
            (2 * h);
    CHECK(std::abs(fd - th[1]) < 1e-6);
    CHECK(std::abs(theta_numeric(rs, lv, spec.terms[0].second, ps.points[i], 0.0) - th[0]) < 1e-12);
  }
}

TEST_CASE("two deformation variables") {
  auto rs = build_root_system("A2");
  Level lv = canonical_level(rs, 1);
  DeformationSpec spec;
  spec.terms.push_back({"a", irred_character(rs, (IVec(2) << 1, 0).finished())});
  spec.terms.push_back({"b", irred_character(rs, (IVec(2) << 0, 1).finished())});
  spec.order = 3;
  CHECK(spec.variables() == std::vector<std::string>{"a", "b"});
  PointSet ps = enumerate_F_rho(rs, lv);
  for (auto i : ps.orbit_reps) {
    DeformedPoint dp = solve_deformed(rs, lv, spec, ps.points[i]);
    CHECK(max_abs(deformation_residual(lv, spec, dp)) < 1e-12);
  }
}

TEST_CASE("property: the solution satisfies the defining equation") {
  for (auto l : {"A1", "A2", "C2", "G2"}) {
    auto rs = build_root_system(l);
    for (int k = 1; k <= 2; ++k) {
      Level lv = canonical_level(rs, k);
      DeformationSpec spec = adjoint_spec(rs, 4);
      PointSet ps = enumerate_F_rho(rs, lv);
      for (auto i : ps.orbit_reps) {
        DeformedPoint dp = solve_deformed(rs, lv, spec, ps.points[i]);
        CHECK(max_abs(deformation_residual(lv, spec, dp)) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: Weyl equivariance of xi and theta") {
  for (auto l : {"A1", "A2", "C2"}) {
    auto rs = build_root_system(l);
    Level lv = canonical_level(rs, 2);
    DeformationSpec spec = adjoint_spec(rs, 3);
    PointSet ps = enumerate_F_rho(rs, lv);
    for (auto i : ps.orbit_reps) {
      DeformedPoint dp = solve_deformed(rs, lv, spec, ps.points[i]);
      SSeries th = theta_t(rs, lv, spec, dp, ps.F_order);
      for (auto& w : rs.weyl) {
        VerlindePoint moved = ps.points[i];
        moved.point = act(w, moved.point);
        DeformedPoint direct = solve_deformed(rs, lv, spec, moved);
        DeformedPoint image = act(w, dp);
        CHECK(max_abs(direct.xi - image.xi) < 1e-10);
        CHECK(max_abs(theta_t(rs, lv, spec, direct, ps.F_order) - th) < 1e-10);
      }
    }
  }
}

TEST_CASE("property: solving to order N then truncating equals solving to N-1") {
  auto rs = build_root_system("A2");
  Level lv = canonical_level(rs, 2);
  PointSet ps = enumerate_F_rho(rs, lv);
  for (int n = 2; n <= 4; ++n) {
    DeformationSpec hi = adjoint_spec(rs, n), lo = adjoint_spec(rs, n - 1);
    for (auto i : ps.orbit_reps) {
      DeformedPoint a = solve_deformed(rs, lv, hi, ps.points[i]);
      DeformedPoint b = solve_deformed(rs, lv, lo, ps.points[i]);
      CHECK(max_abs(truncated(a.xi, n - 1) - b.xi) < 1e-12);
    }
  }
}
