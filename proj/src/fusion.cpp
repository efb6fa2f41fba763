#include "gbidx/levels.hpp"

#include <stdexcept>

namespace gbidx {

namespace {

void require_simple(const RootSystem& rs, std::int64_t k) {
  if (!rs.simple_rank || rs.torus_rank) throw std::invalid_argument("fusion oracle needs a simple group without torus factor");
  if (k < 0) throw std::invalid_argument("fusion oracle needs level k >= 0");
}

}  // namespace

std::vector<IVec> level_weights(const RootSystem& rs, std::int64_t k) {
  require_simple(rs, k);
  const int n = rs.simple_rank;
  std::vector<IVec> out;
  IVec w = IVec::Zero(n);
  for (;;) {
    if (w.dot(rs.highest_coroot) <= k) out.push_back(w);
    int i = 0;
    while (i < n) {
      ++w(i);
      if (w.dot(rs.highest_coroot) <= k) break;
      w(i) = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

IVec dual_weight(const RootSystem& rs, const IVec& a) { return dominant_conjugate(rs, IVec(-a)).weight; }

std::int64_t fusion_coefficient(const RootSystem& rs, std::int64_t k, const IVec& a, const IVec& b, const IVec& c) {
  require_simple(rs, k);
  const std::int64_t big = k + rs.dual_coxeter;
  Character vb = irred_character(rs, b);
  std::int64_t total = 0;
  for (auto& [key, m] : vb.terms()) {
    IVec lam = a + Character::weight_of(key) + rs.rho;
    int sign = 1;
    for (;;) {
      int i = 0;
      while (i < rs.simple_rank && lam(i) >= 0) ++i;
      if (i < rs.simple_rank) {
        lam -= lam(i) * rs.simple_roots[i];
        sign = -sign;
        continue;
      }
      std::int64_t over = lam.dot(rs.highest_coroot) - big;
      if (over > 0) {
        lam -= over * rs.highest_root;
        sign = -sign;
        continue;
      }
      break;
    }
    bool wall = lam.dot(rs.highest_coroot) == big;
    for (int i = 0; i < rs.simple_rank; ++i)
      if (lam(i) == 0) wall = true;
    if (wall) continue;
    if (IVec(lam - rs.rho) == c) total += sign * m;
  }
  return total;
}

std::int64_t fusion_gluing_oracle(const RootSystem& rs, std::int64_t k) {
  auto ws = level_weights(rs, k);
  std::int64_t total = 0;
  for (auto& a : ws)
    for (auto& b : ws)
      for (auto& c : ws) {
        std::int64_t n1 = fusion_coefficient(rs, k, a, b, dual_weight(rs, c));
        if (!n1) continue;
        std::int64_t n2 = fusion_coefficient(rs, k, dual_weight(rs, a), dual_weight(rs, b), c);
        total += n1 * n2;
      }
  return total;
}

}  // namespace gbidx
