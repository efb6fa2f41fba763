#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbidx/levels.hpp"
#include "oracles.hpp"

#include <random>

using namespace gbidx;

namespace {

const std::vector<std::string> simple_labels{"A1", "A2", "A3", "A4", "C2", "G2"};

RVec random_mu(std::mt19937& rng, int rank) {
  std::uniform_int_distribution<int> num(0, 59);
  RVec mu;
  for (int i = 0; i < rank; ++i) mu.emplace_back(num(rng), 60);
  return mu;
}

}  // namespace

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.floor() == -2);
  CHECK(a.frac() == Rational(1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) / Rational(4, 9)) == Rational(3, 2));
  CHECK(Rational(-1, 3) < Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), std::overflow_error);
}

TEST_CASE("root system tables") {
  struct Row {
    std::string label;
    std::size_t positive, weyl;
    int hdual;
  };
  for (auto& r : std::vector<Row>{{"A1", 1, 2, 2}, {"A2", 3, 6, 3}, {"A3", 6, 24, 4}, {"A4", 10, 120, 5},
                                  {"C2", 4, 8, 3}, {"G2", 6, 12, 4}}) {
    CAPTURE(r.label);
    auto rs = build_root_system(r.label);
    CHECK(rs.positive_roots.size() == r.positive);
    CHECK(rs.weyl.size() == r.weyl);
    CHECK(rs.dual_coxeter == r.hdual);
    IVec twice_rho = IVec::Zero(rs.rank);
    for (auto& a : rs.positive_roots) twice_rho += a;
    CHECK(twice_rho == 2 * rs.rho);
    CHECK(rs.basic_form == rs.basic_form.transpose());
    CHECK(is_positive_definite(rs.basic_form));
  }
  auto t = build_root_system("T3");
  CHECK(t.positive_roots.empty());
  CHECK(t.weyl.size() == 1);
  auto p = build_root_system("A1xT1");
  CHECK(p.rank == 2);
  CHECK(p.weyl.size() == 2);
  CHECK_THROWS(build_root_system("E8"));
  CHECK_THROWS(build_root_system('A', 0));
}

TEST_CASE("G2 and C2 use the short first root") {
  auto g2 = build_root_system("G2");
  CHECK(g2.cartan(0, 1) == -3);
  CHECK(g2.basic_form(0, 0) == 6);
  CHECK(g2.basic_form(1, 1) == 2);
  auto c2 = build_root_system("C2");
  CHECK(c2.basic_form(0, 0) == 4);
  CHECK(c2.basic_form(1, 1) == 2);
}

TEST_CASE("Weyl lengths agree with brute-force inversion counts") {
  for (auto& l : simple_labels) {
    auto rs = build_root_system(l);
    for (auto& w : rs.weyl) {
      CHECK(w.length == oracle::inversion_count(rs, w.on_weights));
      CHECK(w.sign == (w.length % 2 ? -1 : 1));
      IMat pairing = w.on_weights.transpose() * w.on_coweights;
      CHECK(pairing == IMat::Identity(rs.rank, rs.rank));
    }
  }
}

TEST_CASE("dominant conjugate") {
  auto rs = build_root_system("A2");
  IVec w(2);
  w << -1, 2;
  auto d = dominant_conjugate(rs, w);
  CHECK(is_dominant(rs, d.weight));
  CHECK(d.weight == (IVec(2) << 1, 1).finished());
  IVec wall(2);
  wall << -1, 1;
  CHECK(dominant_conjugate(rs, wall).on_wall);
}

TEST_CASE("poincare polynomials") {
  CHECK(poincare_polynomial(build_root_system("A2"), {}) == std::vector<std::int64_t>{1, 2, 2, 1});
  CHECK(poincare_polynomial(build_root_system("A2"), {0}) == std::vector<std::int64_t>{1, 1, 1});
  CHECK(poincare_polynomial(build_root_system("A1"), {}) == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("property: Weyl denominator and regularity are Weyl invariant") {
  std::mt19937 rng(20261016);
  for (auto& l : simple_labels) {
    auto rs = build_root_system(l);
    for (int trial = 0; trial < 10; ++trial) {
      TorusPoint f = make_point(random_mu(rng, rs.rank));
      cd d0 = weyl_denominator_sq(rs, f);
      bool reg = is_regular(rs, f);
      for (auto& w : rs.weyl) {
        TorusPoint g = act(w, f);
        CHECK(std::abs(weyl_denominator_sq(rs, g) - d0) < 1e-9);
        CHECK(is_regular(rs, g) == reg);
      }
      CHECK(reg == (std::abs(d0) > 1e-12));
    }
  }
}

TEST_CASE("property: poincare polynomial at q=1 is the Weyl order") {
  for (auto& l : simple_labels) {
    auto rs = build_root_system(l);
    std::int64_t s = 0;
    for (auto c : poincare_polynomial(rs, {})) s += c;
    CHECK(s == static_cast<std::int64_t>(rs.weyl.size()));
  }
}

TEST_CASE("property: c form is the dual Coxeter number times the basic form") {
  for (auto& l : simple_labels) {
    auto rs = build_root_system(l);
    CHECK(c_form(rs) == rs.dual_coxeter * rs.basic_form);
  }
}

TEST_CASE("integer determinant and adjugate") {
  IMat m(3, 3);
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  CHECK(int_det(m) == 4);
  CHECK(m * int_adjugate(m) == 4 * IMat::Identity(3, 3));
  CHECK(is_positive_definite(m));
  CHECK_FALSE(is_positive_definite(IMat(-m)));
}
