#pragma once

#include "gbidx/levels.hpp"
#include "gbidx/series.hpp"

namespace gbidx {

struct DeformationSpec {
  std::vector<std::pair<std::string, Character>> terms;
  int order = 4;

  std::vector<std::string> variables() const;
  LayoutPtr layout() const;
};

// f_t = f exp(xi(t)), xi a coweight-valued series with zero constant term.
struct DeformedPoint {
  VerlindePoint base;
  VSeries xi;
};

// e^lambda(f_t) as a series.
SSeries weight_series(const DeformedPoint& dp, const IVec& weight);
VSeries gradient_series(const DeformedPoint& dp, const Character& ch);
MSeries hessian_series(const DeformedPoint& dp, const Character& ch);

// Solves h' xi + sum_i t_i dTr_{V_i}(f e^xi) = 0 by fixed-point sweeps.
DeformedPoint solve_deformed(const RootSystem& rs, const Level& level, const DeformationSpec& spec,
                             const VerlindePoint& f);
VSeries deformation_residual(const Level& level, const DeformationSpec& spec, const DeformedPoint& dp);

// h' + sum_i t_i H_{V_i}(f_t)
MSeries deformed_form(const Level& level, const DeformationSpec& spec, const DeformedPoint& dp);
// det^{-1}[1 + sum t_i H_{V_i}(f_t)^dagger] Delta^2(f_t) / |F|
SSeries theta_t(const RootSystem& rs, const Level& level, const DeformationSpec& spec, const DeformedPoint& dp,
                std::int64_t F_order);
SSeries trace_at(const DeformedPoint& dp, const Character& U);

DeformedPoint act(const WeylElement& w, const DeformedPoint& dp);

}  // namespace gbidx
