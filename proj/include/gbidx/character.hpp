#pragma once

#include "gbidx/root_system.hpp"
#include "gbidx/series.hpp"
#include "gbidx/torus_point.hpp"

#include <map>

namespace gbidx {

// Finitely supported weight -> integer multiplicity; zero entries are never stored.
class Character {
public:
  using Key = std::vector<std::int64_t>;

  explicit Character(int rank = 0) : rank_(rank) {}

  int rank() const { return rank_; }
  const std::map<Key, std::int64_t>& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  std::int64_t dimension() const;
  std::int64_t multiplicity(const IVec& weight) const;

  Character& add(const IVec& weight, std::int64_t mult);
  Character& operator+=(const Character& o);
  Character& operator*=(std::int64_t k);
  friend Character operator+(Character a, const Character& b) { return a += b; }
  friend Character operator-(Character a, const Character& b) { return a += b * -1; }
  friend Character operator*(Character a, std::int64_t k) { return a *= k; }
  friend Character operator*(const Character& a, const Character& b);
  friend bool operator==(const Character& a, const Character& b) { return a.rank_ == b.rank_ && a.m_ == b.m_; }

  static IVec weight_of(const Key& k);

private:
  int rank_;
  std::map<Key, std::int64_t> m_;
};

Character trivial_character(const RootSystem& rs);
// Irreducible with highest weight lambda (Freudenthal on dominant weights).
Character irred_character(const RootSystem& rs, const IVec& lambda);
// Adjoint representation including the torus directions.
Character adjoint_character(const RootSystem& rs);
// Borel-Weil-Bott: sign(w) irred(w(mu+rho)-rho), zero when mu+rho is singular.
Character holo_induce(const RootSystem& rs, const IVec& mu);
Character adams(const Character& ch, std::int64_t n);
bool is_weyl_invariant(const RootSystem& rs, const Character& ch);

cd trace_eval(const Character& ch, const TorusPoint& f);
// sum m e^lambda(f) lambda  (covector)
Eigen::VectorXcd trace_gradient(const Character& ch, const TorusPoint& f);
// sum m e^lambda(f) lambda (x) lambda
Eigen::MatrixXcd trace_hessian(const Character& ch, const TorusPoint& f);

// (1+t)^rank prod over all roots (1 + t e^alpha(f))
cd lambda_t_adjoint_eval(const RootSystem& rs, const TorusPoint& f, cd t);
SSeries lambda_t_adjoint_eval(const RootSystem& rs, const TorusPoint& f, const SSeries& t);

}  // namespace gbidx
