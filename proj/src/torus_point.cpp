#include "gbidx/torus_point.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbidx {

TorusPoint make_point(RVec mu) { return TorusPoint{std::move(mu), Eigen::VectorXcd()}; }

TorusPoint reduced(const TorusPoint& f) {
  TorusPoint g = f;
  for (auto& m : g.mu) m = m.frac();
  return g;
}

Rational pairing(const IVec& weight, const RVec& mu) {
  if (static_cast<std::size_t>(weight.size()) != mu.size()) throw std::invalid_argument("rank mismatch in pairing");
  Rational r;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (weight(i)) r += Rational(weight(i)) * mu[i];
  return r;
}

cd character_value(const IVec& weight, const TorusPoint& f) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double phase = two_pi * pairing(weight, f.mu).frac().to_long_double();
  cd v(static_cast<double>(std::cos(phase)), static_cast<double>(std::sin(phase)));
  if (f.has_correction()) v *= std::exp(weight.cast<cd>().dot(f.correction));
  return v;
}

bool is_regular(const RootSystem& rs, const TorusPoint& f) {
  for (auto& a : rs.positive_roots)
    if (pairing(a, f.mu).is_integer()) return false;
  return true;
}

TorusPoint act(const WeylElement& w, const TorusPoint& f) {
  TorusPoint g;
  const auto n = f.mu.size();
  g.mu.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w.on_coweights(i, j)) g.mu[i] += Rational(w.on_coweights(i, j)) * f.mu[j];
  if (f.has_correction()) g.correction = w.on_coweights.cast<cd>() * f.correction;
  return reduced(g);
}

TorusPoint power(const TorusPoint& f, std::int64_t n) {
  TorusPoint g = f;
  for (auto& m : g.mu) m *= Rational(n);
  if (f.has_correction()) g.correction *= static_cast<double>(n);
  return reduced(g);
}

bool same_point(const TorusPoint& a, const TorusPoint& b, double tol) {
  if (a.mu.size() != b.mu.size()) return false;
  for (std::size_t i = 0; i < a.mu.size(); ++i)
    if (!(a.mu[i] - b.mu[i]).is_integer()) return false;
  Eigen::VectorXcd ca = a.has_correction() ? a.correction : Eigen::VectorXcd::Zero(a.mu.size());
  Eigen::VectorXcd cb = b.has_correction() ? b.correction : Eigen::VectorXcd::Zero(b.mu.size());
  return (ca - cb).norm() <= tol;
}

cd weyl_denominator_sq(const RootSystem& rs, const TorusPoint& f) {
  cd p = 1.0;
  for (auto& a : rs.positive_roots) {
    p *= (1.0 - character_value(a, f));
    p *= (1.0 - character_value(IVec(-a), f));
  }
  return p;
}

Eigen::VectorXd to_vector(const RVec& mu) {
  Eigen::VectorXd v(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) v(i) = mu[i].to_double();
  return v;
}

}  // namespace gbidx
