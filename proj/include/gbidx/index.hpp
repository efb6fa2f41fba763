#pragma once

#include "gbidx/deform.hpp"

#include <map>
#include <optional>

namespace gbidx {

// Odd insertions E*_{C_k} U_k; intersections(j,k) = #(C_j . C_k).
struct OddClassSpec {
  std::vector<std::string> cycles;
  std::vector<Character> factors;
  IMat intersections;
};

enum class PointSetKind { F_rho, F };

struct IndexRequest {
  RootSystem rs;
  Level level;
  int genus = 2;
  DeformationSpec spec;
  std::optional<Character> U;  // trivial when absent
  std::optional<OddClassSpec> odd;
  PointSetKind point_set = PointSetKind::F_rho;
};

// sum over regular orbits of theta_t^{1-g} Tr_U(f_t)
SSeries index_even(const IndexRequest& req);
// [psi](f_t): Pfaffian of -#(C_j.C_k) <dTr_{U_j} | dTr_{U_k}> with the inverse of h' + sum t_i H_{V_i}.
SSeries odd_bracket(const RootSystem& rs, const Level& level, const DeformationSpec& spec, const OddClassSpec& odd,
                    const DeformedPoint& dp);
SSeries index_general(const IndexRequest& req);
SSeries index_graded(IndexRequest req);

// SL(2) form with Laurent coefficients phi_n of Tr_V(u): sum over
// zeta_t^{2l+4} exp(t phi'(zeta_t)) = 1, Im zeta > 0, of
// [(2l+4 + t phi''(zeta_t)) / Delta^2(zeta_t)]^{g-1}.
SSeries index_su2_form(int l, const std::map<int, double>& phi, int genus, int order);
std::map<int, double> laurent_of(const Character& ch);  // A1 character as Laurent polynomial in u = e^omega

// Weyl-numerator Fourier coefficient: index_even with U = holo_induce(mu - rho).
SSeries fourier_coefficient(const IndexRequest& req, const IVec& mu);
// s_theta(mu) - iota(H_theta) h'
IVec affine_reflection(const RootSystem& rs, const Level& level, const IVec& mu);
// mu + iota(gamma) h'
IVec lattice_translate(const Level& level, const IVec& mu, const IVec& gamma);

SSeries pfaffian(const std::vector<std::vector<SSeries>>& a);

}  // namespace gbidx
