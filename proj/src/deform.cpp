#include "gbidx/deform.hpp"

#include <stdexcept>

namespace gbidx {

std::vector<std::string> DeformationSpec::variables() const {
  std::vector<std::string> v;
  for (auto& [name, ch] : terms) v.push_back(name);
  return v;
}

LayoutPtr DeformationSpec::layout() const { return SeriesLayout::get(variables(), order); }

SSeries weight_series(const DeformedPoint& dp, const IVec& weight) {
  return character_value(weight, dp.base.point) * exp(dot(weight.cast<cd>(), dp.xi));
}

VSeries gradient_series(const DeformedPoint& dp, const Character& ch) {
  VSeries g(dp.xi.layout_ptr(), Eigen::VectorXcd::Zero(ch.rank()));
  for (auto& [k, m] : ch.terms()) {
    IVec w = Character::weight_of(k);
    g += scale(weight_series(dp, w), Eigen::VectorXcd(static_cast<double>(m) * w.cast<cd>()));
  }
  return g;
}

MSeries hessian_series(const DeformedPoint& dp, const Character& ch) {
  MSeries h(dp.xi.layout_ptr(), Eigen::MatrixXcd::Zero(ch.rank(), ch.rank()));
  for (auto& [k, m] : ch.terms()) {
    Eigen::VectorXcd w = Character::weight_of(k).cast<cd>();
    h += scale(weight_series(dp, Character::weight_of(k)), Eigen::MatrixXcd(static_cast<double>(m) * w * w.transpose()));
  }
  return h;
}

namespace {

VSeries forcing(const DeformationSpec& spec, const DeformedPoint& dp) {
  const auto& lay = dp.xi.layout_ptr();
  VSeries acc(lay, Eigen::VectorXcd::Zero(dp.xi[0].size()));
  for (auto& [name, ch] : spec.terms) acc += variable(lay, name) * gradient_series(dp, ch);
  return acc;
}

}  // namespace

DeformedPoint solve_deformed(const RootSystem& rs, const Level& level, const DeformationSpec& spec,
                             const VerlindePoint& f) {
  if (!f.is_regular) throw std::invalid_argument("deformation needs a regular point");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(level.h_prime.cast<double>());
  if (!lu.isInvertible()) throw std::invalid_argument("h' is not invertible");
  const Eigen::MatrixXcd hinv = lu.inverse().cast<cd>();
  DeformedPoint dp{f, VSeries(spec.layout(), Eigen::VectorXcd::Zero(rs.rank))};
  for (int sweep = 0; sweep <= spec.order; ++sweep) dp.xi = left_mul(Eigen::MatrixXcd(-hinv), forcing(spec, dp));
  return dp;
}

VSeries deformation_residual(const Level& level, const DeformationSpec& spec, const DeformedPoint& dp) {
  return left_mul(Eigen::MatrixXcd(level.h_prime.cast<cd>()), dp.xi) + forcing(spec, dp);
}

MSeries deformed_form(const Level& level, const DeformationSpec& spec, const DeformedPoint& dp) {
  const auto& lay = dp.xi.layout_ptr();
  MSeries m = MSeries::constant(lay, level.h_prime.cast<cd>());
  for (auto& [name, ch] : spec.terms) m += variable(lay, name) * hessian_series(dp, ch);
  return m;
}

SSeries theta_t(const RootSystem& rs, const Level& level, const DeformationSpec& spec, const DeformedPoint& dp,
                std::int64_t F_order) {
  const auto& lay = dp.xi.layout_ptr();
  SSeries delta2 = scalar_constant(lay, 1.0);
  SSeries one = scalar_constant(lay, 1.0);
  for (auto& a : rs.all_roots()) delta2 = delta2 * (one - weight_series(dp, a));
  SSeries ratio = det(deformed_form(level, spec, dp)) * (1.0 / static_cast<double>(int_det(level.h_prime)));
  return delta2 * inv(ratio) * (1.0 / static_cast<double>(F_order));
}

SSeries trace_at(const DeformedPoint& dp, const Character& U) {
  SSeries s(dp.xi.layout_ptr(), cd(0.0));
  for (auto& [k, m] : U.terms()) s += static_cast<double>(m) * weight_series(dp, Character::weight_of(k));
  return s;
}

DeformedPoint act(const WeylElement& w, const DeformedPoint& dp) {
  DeformedPoint out = dp;
  out.base.point = act(w, dp.base.point);
  out.xi = left_mul(Eigen::MatrixXcd(w.on_coweights.cast<cd>()), dp.xi);
  return out;
}

}  // namespace gbidx
