#pragma once

#include "gbidx/index.hpp"

#include <stdexcept>

namespace gbidx {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Residual of h' mu + (1/2 pi i)[s dTr_V - sum_{alpha>0} alpha log((1+te^alpha)/(1+te^-alpha))] - rho,
// reduced to the nearest representative modulo the character lattice. mu in units with f = exp(2 pi i mu).
Eigen::VectorXcd chi_residual(const RootSystem& rs, const Level& level, const Character& V, cd s, double t,
                              const Eigen::VectorXcd& mu);
// d(residual)/d mu = h' + s H_V - t sum_alpha e^alpha/(1+te^alpha) alpha (x) alpha
Eigen::MatrixXcd chi_jacobian(const RootSystem& rs, const Level& level, const Character& V, cd s, double t,
                              const Eigen::VectorXcd& mu);
Eigen::VectorXcd chi_dt(const RootSystem& rs, const Eigen::VectorXcd& mu, double t);
// theta^{-1} = |F| prod_alpha (1+te^alpha)/(1-e^alpha) det(h'^{-1} J)
cd theta_st(const RootSystem& rs, const Level& level, const Character& V, cd s, double t, const Eigen::VectorXcd& mu);

cd exp_weight(const IVec& weight, const Eigen::VectorXcd& mu);

// Series versions about a base point mu0; delta is the correction in mu
// units, s and t are scalar series (constants or variables).
VSeries chi_residual_series(const RootSystem& rs, const Level& level, const Character& V,
                            const Eigen::VectorXcd& mu0, const VSeries& delta, const SSeries& s, const SSeries& t);
MSeries chi_jacobian_series(const RootSystem& rs, const Level& level, const Character& V,
                            const Eigen::VectorXcd& mu0, const VSeries& delta, const SSeries& s, const SSeries& t);
SSeries theta_st_series(const RootSystem& rs, const Level& level, const Character& V, const Eigen::VectorXcd& mu0,
                        const VSeries& delta, const SSeries& s, const SSeries& t);
SSeries trace_series(const Character& U, const Eigen::VectorXcd& mu0, const VSeries& delta);
// Formal root of chi_residual_series about mu0 (a root at the constant term).
VSeries solve_formal(const RootSystem& rs, const Level& level, const Character& V, const Eigen::VectorXcd& mu0,
                     const SSeries& s, const SSeries& t);

struct TrackedPoint {
  VerlindePoint origin;
  Eigen::VectorXcd mu;
  VSeries s_series;  // correction in s about mu, mu units
  double residual = 0;
};

struct StepRecord {
  double t = 0;
  double step = 0;  // in x = sqrt(1+t)
  double max_residual = 0;
  double min_separation = 0;
  double min_root_distance = 0;
  double max_condition = 0;
};

struct ContinuationOptions {
  double initial_step = 1e-2;
  double tolerance = 1e-12;
  int max_halvings = 50;
  double max_step = 0.05;
  double max_condition = 1e12;
  double collision = 1e-9;
  bool all_points = false;  // track every regular point instead of orbit representatives
};

struct ContinuationState {
  double t = 0;
  std::vector<TrackedPoint> points;
  std::vector<StepRecord> history;
  bool hessian_guarantee = false;
  std::int64_t F_order = 0;
};

ContinuationState continue_points(const RootSystem& rs, const Level& level, const Character& V, int s_order,
                                  double t_target, const ContinuationOptions& opts = {});

struct KaehlerResult {
  SSeries value;  // (1+t)^{(g-1) rank} * inner, series in s
  SSeries inner;
  ContinuationState state;
};

KaehlerResult kaehler_index(const RootSystem& rs, const Level& level, int genus, const Character& V,
                            const Character& U, int s_order, double t, const ContinuationOptions& opts = {});
// Formal expansion about t = 0 in the given variables (subset of {"s","t"}).
SSeries kaehler_taylor(const RootSystem& rs, const Level& level, int genus, const Character& V, const Character& U,
                       int order, const std::vector<std::string>& vars = {"s", "t"});
KaehlerResult full_flag_index(const RootSystem& rs, const Level& level, int genus, const Character& V,
                              const Character& U, int s_order, double t, const ContinuationOptions& opts = {});

// ---- t -> -1

struct LimitPoint {
  TorusPoint f_minus1;
  std::vector<IVec> centralizer_roots;  // positive roots beta with e^beta(f_-1) = 1
  Eigen::VectorXd xi1;                  // empty for regular limits; mu_t ~ mu_-1 + x xi1/(2 pi)
  std::vector<Eigen::VectorXd> higher_xi;
  std::vector<Eigen::MatrixXd> recursion_maps;  // linear map of xi_k in the order-k equation
  double linear_residual = 0;                   // order-x residual with xi1
  Eigen::MatrixXd limiting_H;
  int approach_count = 1;  // |W_z|
};

// Minimizer of 1/2 h(z,z) - sum over all roots beta of log|beta(z)| in the chamber containing start.
Eigen::VectorXd barrier_minimizer(const Eigen::MatrixXd& h, const std::vector<IVec>& positive_roots,
                                  const Eigen::VectorXd& start);
Eigen::MatrixXd limiting_form(const Eigen::MatrixXd& h, const std::vector<IVec>& positive_roots,
                              const Eigen::VectorXd& xi1);

std::vector<LimitPoint> limit_t_minus1(const RootSystem& rs, const Level& level, const Character& V, int s_order);
// lim_{t->-1} of the inner sum, from the limit points.
cd inner_sum_limit(const RootSystem& rs, const Level& level, int genus, const Character& U,
                   const std::vector<LimitPoint>& limits);

struct CensusEntry {
  std::size_t limit_index;
  int expected;
  int observed;
};
// Tracks every regular point to t = -1 + eps and assigns it to the nearest limit.
std::vector<CensusEntry> limit_census(const RootSystem& rs, const Level& level, const Character& V,
                                      const std::vector<LimitPoint>& limits, double eps = 1e-4);

struct NewsteadReport {
  int vanishing_order = 0;
  cd inner_limit_formula;
  cd inner_limit_extrapolated;
  std::vector<std::pair<double, cd>> inner_samples;
  bool limit_finite_nonzero = false;
  double limit_agreement = 0;
  std::vector<std::int64_t> flag_betti;
  std::int64_t betti_factor_at_minus1 = 0;  // sum_p (-t)^p b_2p at t = -1
  bool betti_factor_vanishes = false;
  std::int64_t betti_poly_at_q_minus1 = 0;  // informational
  bool full_flag_transfer_conclusive = true;
  bool hessian_guarantee = false;
  std::vector<std::string> notes;
};

NewsteadReport newstead_report(const RootSystem& rs, const Level& level, int genus, const Character& V,
                               const Character& U, int s_order);

}  // namespace gbidx
