#pragma once

// Test-side reference computations. Each one avoids the library code path it
// is compared against.

#include "gbidx/root_system.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using gbidx::IMat;
using gbidx::IVec;
using cd = std::complex<double>;

// Weyl dimension formula: prod over positive coroots of <lambda+rho, a> / <rho, a>.
inline double weyl_dimension(const gbidx::RootSystem& rs, const IVec& lambda) {
  double num = 1, den = 1;
  for (auto& a : rs.positive_coroots) {
    num *= static_cast<double>((lambda + rs.rho).dot(a));
    den *= static_cast<double>(rs.rho.dot(a));
  }
  return num / den;
}

// Number of positive roots sent to negative roots.
inline int inversion_count(const gbidx::RootSystem& rs, const IMat& on_weights) {
  int n = 0;
  for (auto& a : rs.positive_roots) {
    IVec img = on_weights * a;
    bool positive = false;
    for (auto& b : rs.positive_roots)
      if (b == img) positive = true;
    if (!positive) ++n;
  }
  return n;
}

// Closed-form SU(2) Verlinde sum.
inline double su2_verlinde(int k, int g) {
  double s = 0;
  const int m = k + 2;
  for (int j = 1; j < m; ++j) {
    double sn = std::sin(std::numbers::pi * j / m);
    s += std::pow(m / (2.0 * sn * sn), g - 1);
  }
  return s;
}

template <class F>
double central_difference(F f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// Exterior algebra over n generators with coefficients in cd; basis blades
// are bitmasks, generators ordered by index.
class Grassmann {
public:
  explicit Grassmann(int n) : n_(n) {}

  static Grassmann generator(int n, int i, cd c = 1.0) {
    Grassmann g(n);
    g.terms_[1u << i] = c;
    return g;
  }

  Grassmann& operator+=(const Grassmann& o) {
    for (auto& [k, v] : o.terms_) terms_[k] += v;
    return *this;
  }

  friend Grassmann operator*(const Grassmann& a, const Grassmann& b) {
    Grassmann r(a.n_);
    for (auto& [ka, va] : a.terms_)
      for (auto& [kb, vb] : b.terms_) {
        if (ka & kb) continue;
        // sign of moving each generator of b past the higher generators of a
        int swaps = 0;
        for (int i = 0; i < a.n_; ++i)
          if (kb & (1u << i)) swaps += std::popcount(ka >> (i + 1));
        r.terms_[ka | kb] += (swaps % 2 ? -1.0 : 1.0) * va * vb;
      }
    return r;
  }

  // Left derivative d/dpsi_i.
  Grassmann derivative(int i) const {
    Grassmann r(n_);
    for (auto& [k, v] : terms_) {
      if (!(k & (1u << i))) continue;
      int before = std::popcount(k & ((1u << i) - 1));
      r.terms_[k & ~(1u << i)] += (before % 2 ? -1.0 : 1.0) * v;
    }
    return r;
  }

  cd scalar() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? cd(0.0) : it->second;
  }

  // Full Wick contraction with propagator P: exp(1/2 sum P_ij d_j d_i) applied, scalar part.
  cd gaussian_pairing(const Eigen::MatrixXcd& P) const {
    Grassmann cur = *this;
    cd out = cur.scalar();
    double fact = 1;
    for (int k = 1; 2 * k <= n_; ++k) {
      Grassmann next(n_);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          if (P(i, j) == 0.0) continue;
          Grassmann d = cur.derivative(i).derivative(j);
          for (auto& [key, v] : d.terms_) next.terms_[key] += 0.5 * P(i, j) * v;
        }
      cur = next;
      fact *= k;
      out += cur.scalar() / fact;
    }
    return out;
  }

private:
  int n_;
  std::map<unsigned, cd> terms_;
};

// Standard symplectic form on Z^{2g}: a_i . b_i = 1.
inline IMat symplectic(int g) {
  IMat I = IMat::Zero(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    I(2 * i, 2 * i + 1) = 1;
    I(2 * i + 1, 2 * i) = -1;
  }
  return I;
}

}  // namespace oracle
