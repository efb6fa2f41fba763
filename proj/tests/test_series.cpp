#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbidx/series.hpp"

#include <random>

using namespace gbidx;

namespace {

SSeries random_series(std::mt19937& rng, const LayoutPtr& lay, cd constant) {
  std::uniform_real_distribution<double> u(-1, 1);
  SSeries s(lay, cd(0.0));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = cd(u(rng), u(rng));
  s[0] = constant;
  return s;
}

}  // namespace

TEST_CASE("layout ordering and lookup") {
  auto lay = SeriesLayout::get({"s", "t"}, 2);
  CHECK(lay->monomials.size() == 6);
  CHECK(lay->index_of({0, 0}) == 0);
  CHECK(lay->index_of({2, 1}) == -1);
  CHECK(lay->var_index("t") == 1);
  CHECK(lay->var_index("u") == -1);
  CHECK(SeriesLayout::get({"s", "t"}, 2) == lay);
}

TEST_CASE("products truncate at the order") {
  auto lay = SeriesLayout::get({"t"}, 3);
  SSeries t = variable(lay, "t");
  SSeries one = scalar_constant(lay, 1.0);
  SSeries p = powi(one + t, 5);
  CHECK(std::abs(p[3] - 10.0) < 1e-12);
  CHECK(p.size() == 4);
  SSeries g = inv(one - t);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - 1.0) < 1e-12);
}

TEST_CASE("exp and log are inverse") {
  auto lay = SeriesLayout::get({"x", "y"}, 4);
  std::mt19937 rng(7);
  SSeries a = random_series(rng, lay, 0.0);
  SSeries b = log(exp(a));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
  SSeries c = random_series(rng, lay, cd(2.0, 1.0));
  SSeries d = exp(log(c));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - d[i]) < 1e-10);
}

TEST_CASE("pow with a complex exponent") {
  auto lay = SeriesLayout::get({"t"}, 4);
  SSeries one = scalar_constant(lay, 1.0);
  SSeries t = variable(lay, "t");
  SSeries r = pow(one + t, 0.5);
  SSeries sq = r * r;
  CHECK(std::abs(sq[0] - 1.0) < 1e-12);
  CHECK(std::abs(sq[1] - 1.0) < 1e-12);
  for (std::size_t i = 2; i < sq.size(); ++i) CHECK(std::abs(sq[i]) < 1e-12);
}

TEST_CASE("matrix series inverse and determinant") {
  auto lay = SeriesLayout::get({"t"}, 5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  MSeries m(lay, Eigen::MatrixXcd::Zero(3, 3));
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = Eigen::MatrixXcd::Random(3, 3);
  m[0] += 4.0 * Eigen::MatrixXcd::Identity(3, 3);
  MSeries p = m * inverse(m);
  CHECK((p[0] - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i].norm() < 1e-10);
  // determinant against pointwise evaluation at small t
  SSeries d = det(m);
  for (double t : {0.01, -0.02}) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(3, 3);
    cd dv = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      v += std::pow(t, static_cast<int>(i)) * m[i];
      dv += std::pow(t, static_cast<int>(i)) * d[i];
    }
    CHECK(std::abs(v.determinant() - dv) < 1e-7);
  }
}

TEST_CASE("restriction by variable name") {
  auto big = SeriesLayout::get({"s", "t"}, 3);
  auto small = SeriesLayout::get({"t"}, 2);
  SSeries s = variable(big, "s"), t = variable(big, "t");
  SSeries one = scalar_constant(big, 1.0);
  SSeries f = exp(s + t * 2.0);
  SSeries r = restrict_to(f, small);
  CHECK(std::abs(r[0] - 1.0) < 1e-12);
  CHECK(std::abs(r[1] - 2.0) < 1e-12);
  CHECK(std::abs(r[2] - 2.0) < 1e-12);
  CHECK(truncated(f, 1).size() == 3);
}

TEST_CASE("mismatched layouts are rejected") {
  SSeries a = variable(SeriesLayout::get({"t"}, 2), "t");
  SSeries b = variable(SeriesLayout::get({"t"}, 3), "t");
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS(inv(a));
}

TEST_CASE("property: unit series times inverse is one; exp(a) exp(-a) is one") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    auto lay = SeriesLayout::get({"s", "t"}, 2 + trial % 4);
    SSeries a = random_series(rng, lay, cd(1.0 + u(rng) * 0.5, u(rng) * 0.5));
    SSeries p = a * inv(a);
    CHECK(std::abs(p[0] - 1.0) < 1e-12);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(std::abs(p[i]) < 1e-10);
    SSeries z = random_series(rng, lay, 0.0);
    SSeries q = exp(z) * exp(-z);
    CHECK(std::abs(q[0] - 1.0) < 1e-12);
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(std::abs(q[i]) < 1e-10);
  }
}
