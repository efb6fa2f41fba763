#pragma once

#include "gbidx/series.hpp"

#include <map>
#include <vector>

namespace gbidx {

// SL(2) large-level asymptotics. phi holds Laurent coefficients of Tr_V(u)
// (u = e^omega); dots are u d/du.

// k_t = k + k_1 t + ... with k_t + t phi'(exp(pi i k_t/(l+2))) / (2 pi i) = k.
SSeries solve_kt(int l, const std::map<int, double>& phi, long k, int order);

// Largest admissible t-order: n * j < l + 2 for phi of u-degree 2j.
int witten_max_order(int l, const std::map<int, double>& phi);

struct WittenSum {
  SSeries partial;                  // sum over k <= K
  long double tail_estimate_t0 = 0; // Euler-Maclaurin estimate of the t^0 tail
  std::vector<double> tail_bound;   // rigorous bound on each coefficient's tail
  long terms = 0;
  SSeries value() const;            // partial with the t^0 tail estimate added
};

// 2(l+2)^d sum_k [1 + t phi''(zeta_k)/(2l+4)]^{g-1} (sqrt2 pi k_t)^{2-2g}, d = 3(g-1).
WittenSum witten_sum(int l, const std::map<int, double>& phi, int genus, int t_order, long K_terms);

struct AsymptoticRun {
  int l = 0;
  int genus = 2;
  int d = 3;
  long double target = 0;
  std::vector<long> n_values;
  std::vector<long> levels;              // n(l+2) - 2
  std::vector<long double> verlinde;     // exact-sum Verlinde numbers
  std::vector<long double> scaled;       // verlinde / n^d
  std::vector<long double> scaled_next;  // verlinde / n^{d+1}
  std::vector<long double> deviation;    // |scaled - target|
  double fitted_exponent = 0;            // least-squares slope of log deviation against log n
};

// A1 Verlinde number at level k by compensated long double summation.
long double verlinde_a1(long k, int genus);

AsymptoticRun asymptotic_check(int l, int genus, const std::vector<long>& n_values, int jobs = 1);

}  // namespace gbidx
