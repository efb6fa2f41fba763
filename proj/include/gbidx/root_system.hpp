#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace gbidx {

using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// w acts on weights by on_weights * lambda and on coweights by
// on_coweights * xi; the two are contragredient.
struct WeylElement {
  IMat on_weights;
  IMat on_coweights;
  int sign = 1;
  int length = 0;
};

// Weights in the fundamental-weight basis, coweights in the simple-coroot
// basis. The simple factor (if any) occupies the first simple_rank
// coordinates, the torus factor the remaining torus_rank.
struct RootSystem {
  std::string label;
  char simple_type = 0;  // 'A', 'C', 'G' or 0 for a pure torus
  int simple_rank = 0;
  int torus_rank = 0;
  int rank = 0;

  IMat cartan;  // cartan(i,j) = alpha_j(H_i), simple_rank square
  std::vector<IVec> simple_roots;
  std::vector<IVec> simple_coroots;
  std::vector<IVec> positive_roots;
  std::vector<IVec> positive_coroots;  // aligned with positive_roots
  IVec rho;
  IVec highest_root;
  IVec highest_coroot;
  IMat basic_form;
  int dual_coxeter = 0;
  std::vector<WeylElement> weyl;  // identity first, BFS (length) order

  std::vector<IVec> all_roots() const;
  std::size_t weyl_order() const { return weyl.size(); }
};

// type in {'A','C','G','T'}; A: rank 1..4, C: 2, G: 2, T: rank >= 1.
RootSystem build_root_system(char type, int rank);
// Labels "A2", "C2", "G2", "T3", "A1xT1" (one simple factor times a torus).
RootSystem build_root_system(const std::string& label);
RootSystem product_with_torus(const RootSystem& simple, int torus_rank);

const std::vector<WeylElement>& weyl_group(const RootSystem& rs);

inline std::int64_t pair(const IVec& weight, const IVec& coweight) { return weight.dot(coweight); }

// Dominant conjugate under W; sign and singularity of the conjugating element.
struct DominantResult {
  IVec weight;
  int sign = 1;
  bool on_wall = false;  // some coordinate of the result vanishes on the simple part
};
DominantResult dominant_conjugate(const RootSystem& rs, IVec weight);
bool is_dominant(const RootSystem& rs, const IVec& weight);

// Coefficients of W(q)/W_Phi(q) for a subset Phi of simple-root indices.
std::vector<std::int64_t> poincare_polynomial(const RootSystem& rs, const std::vector<int>& parabolic);

// Exact integer determinant (Bareiss) and adjugate for small matrices.
std::int64_t int_det(const IMat& m);
IMat int_adjugate(const IMat& m);
bool is_positive_definite(const IMat& m);

}  // namespace gbidx
