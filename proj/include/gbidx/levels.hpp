#pragma once

#include "gbidx/character.hpp"
#include "gbidx/root_system.hpp"
#include "gbidx/torus_point.hpp"

namespace gbidx {

struct Level {
  IMat h;
  IMat h_prime;  // h + c
  std::int64_t F_order = 0;
};

// sum over positive roots of alpha (x) alpha on coweights
IMat c_form(const RootSystem& rs);
Level make_level(const RootSystem& rs, const IMat& h);
Level canonical_level(const RootSystem& rs, std::int64_t k);
bool is_admissible(const Level& level);
// h - c positive definite: the regime where the Kaehler Jacobian is provably nondegenerate.
bool within_hessian_guarantee(const RootSystem& rs, const Level& level);

struct SmithForm {
  IMat U, D, V;  // U * A * V = D, U and V unimodular, D diagonal >= 0
};
SmithForm smith_normal_form(const IMat& a);

// All mu in [0,1)^n with a * mu == target modulo Z^n, lexicographically sorted.
std::vector<RVec> solve_congruence(const IMat& a, const RVec& target);

struct VerlindePoint {
  TorusPoint point;
  double theta0 = 0;  // Delta^2 / F_order
  int orbit_size = 0;
  bool is_regular = false;
};

struct PointSet {
  std::vector<VerlindePoint> points;
  std::int64_t F_order = 0;
  std::vector<std::size_t> orbit_reps;  // regular orbits, lexicographically least member
};

PointSet enumerate_F_rho(const RootSystem& rs, const Level& level);
PointSet enumerate_F(const RootSystem& rs, const Level& level);
std::vector<VerlindePoint> regular_orbit_reps(const PointSet& ps);

std::vector<TorusPoint> weyl_orbit(const RootSystem& rs, const TorusPoint& f);

double verlinde_number(const RootSystem& rs, const Level& level, int genus);

// Level-k integrable highest weights: dominant with lambda(H_theta) <= k.
std::vector<IVec> level_weights(const RootSystem& rs, std::int64_t k);
// Kac-Walton fusion multiplicity N_{ab}^c at level k.
std::int64_t fusion_coefficient(const RootSystem& rs, std::int64_t k, const IVec& a, const IVec& b, const IVec& c);
IVec dual_weight(const RootSystem& rs, const IVec& a);
// Genus-2 partition function glued along the theta graph.
std::int64_t fusion_gluing_oracle(const RootSystem& rs, std::int64_t k);

}  // namespace gbidx
