#pragma once

#include "gbidx/rational.hpp"
#include "gbidx/root_system.hpp"

#include <complex>

namespace gbidx {

using cd = std::complex<double>;

// f = exp(2 pi i mu) * exp(correction); correction empty when absent.
struct TorusPoint {
  RVec mu;
  Eigen::VectorXcd correction;

  bool has_correction() const { return correction.size() > 0; }
};

TorusPoint make_point(RVec mu);
// mu reduced into [0,1)^rank; correction kept.
TorusPoint reduced(const TorusPoint& f);

Rational pairing(const IVec& weight, const RVec& mu);
// e^lambda(f) = exp(2 pi i lambda(mu) + lambda(xi)).
cd character_value(const IVec& weight, const TorusPoint& f);

// alpha(mu) not integral for every root; only the exact part is consulted.
bool is_regular(const RootSystem& rs, const TorusPoint& f);

TorusPoint act(const WeylElement& w, const TorusPoint& f);
// f^n: mu and correction scaled by n.
TorusPoint power(const TorusPoint& f, std::int64_t n);

// mu equal modulo the coweight lattice, corrections within tol.
bool same_point(const TorusPoint& a, const TorusPoint& b, double tol = 1e-9);

// prod over all roots of (1 - e^alpha(f)).
cd weyl_denominator_sq(const RootSystem& rs, const TorusPoint& f);

Eigen::VectorXd to_vector(const RVec& mu);

}  // namespace gbidx
