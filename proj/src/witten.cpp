#include "gbidx/witten.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

namespace gbidx {

namespace {

struct Neumaier {
  long double sum = 0, comp = 0;
  void add(long double x) {
    long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  long double value() const { return sum + comp; }
};

void check_phi(const std::map<int, double>& phi) {
  for (auto& [n, c] : phi) {
    if (c == 0) continue;
    if (n % 2) throw std::invalid_argument("phi must have even spin (odd Laurent exponent present)");
    auto it = phi.find(-n);
    if (it == phi.end() || std::abs(it->second - c) > 1e-12)
      throw std::invalid_argument("phi must satisfy phi_n = phi_{-n}");
  }
}

// sum_n c n^p exp(n pi i k_t / (l+2))
SSeries phi_dot(const std::map<int, double>& phi, int p, int l, const SSeries& kt) {
  SSeries s(kt.layout_ptr(), cd(0.0));
  const cd w(0.0, std::numbers::pi / (l + 2));
  for (auto& [n, c] : phi) {
    if (!n || !c) continue;
    s += (c * std::pow(static_cast<double>(n), p)) * exp(static_cast<double>(n) * w * kt);
  }
  return s;
}

}  // namespace

SSeries solve_kt(int l, const std::map<int, double>& phi, long k, int order) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (l < 0) throw std::invalid_argument("level must be >= 0");
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  auto lay = SeriesLayout::get({"t"}, order);
  SSeries t = variable(lay, "t");
  SSeries k0 = scalar_constant(lay, static_cast<double>(k));
  SSeries kt = k0;
  const cd two_pi_i(0.0, 2.0 * std::numbers::pi);
  for (int sweep = 0; sweep <= order; ++sweep) kt = k0 - (t * phi_dot(phi, 1, l, kt)) * (1.0 / two_pi_i);
  return kt;
}

int witten_max_order(int l, const std::map<int, double>& phi) {
  int deg = 0;
  for (auto& [n, c] : phi)
    if (c != 0) deg = std::max(deg, std::abs(n));
  const int j = deg / 2;
  if (j == 0) return std::numeric_limits<int>::max();
  return (l + 2 - 1) / j;  // largest n with n j < l + 2
}

SSeries WittenSum::value() const {
  SSeries v = partial;
  v.add_constant(cd(static_cast<double>(tail_estimate_t0)));
  return v;
}

WittenSum witten_sum(int l, const std::map<int, double>& phi, int genus, int t_order, long K_terms) {
  if (genus < 2) throw std::invalid_argument("witten_sum needs genus >= 2");
  if (l < 0) throw std::invalid_argument("level must be >= 0");
  if (K_terms < 1) throw std::invalid_argument("K_terms must be >= 1");
  check_phi(phi);
  if (t_order < 0 || t_order > witten_max_order(l, phi))
    throw std::invalid_argument("t order must satisfy order * j < l + 2 (truncation rule for spin 2j)");

  auto lay = SeriesLayout::get({"t"}, t_order);
  SSeries t = variable(lay, "t");
  SSeries one = scalar_constant(lay, 1.0);
  const long period = 2L * l + 4;
  const int d = 3 * (genus - 1);
  const long double pref = 2.0L * std::pow(static_cast<long double>(l + 2), d);
  const double c2 = 2.0 * std::numbers::pi * std::numbers::pi;

  std::vector<SSeries> delta(period), bracket(period);
  std::vector<double> dmax(lay->monomials.size(), 0.0), bmax(lay->monomials.size(), 0.0);
  for (long r = 1; r <= period; ++r) {
    SSeries kt = solve_kt(l, phi, r, t_order);
    delta[r - 1] = kt - scalar_constant(lay, static_cast<double>(r));
    bracket[r - 1] = powi(one + t * phi_dot(phi, 2, l, kt) * (1.0 / (2.0 * l + 4.0)), genus - 1);
    for (std::size_t i = 0; i < lay->monomials.size(); ++i) {
      dmax[i] = std::max(dmax[i], std::abs(delta[r - 1][i]));
      bmax[i] = std::max(bmax[i], std::abs(bracket[r - 1][i]));
    }
  }

  const std::size_t m = lay->monomials.size();
  std::vector<Neumaier> re(m), im(m);
  for (long k = 1; k <= K_terms; ++k) {
    const long r = (k - 1) % period;
    SSeries kt = delta[r];
    kt.add_constant(cd(static_cast<double>(k)));
    SSeries term = bracket[r] * powi(c2 * kt * kt, 1 - genus);
    for (std::size_t i = 0; i < m; ++i) {
      re[i].add(term[i].real());
      im[i].add(term[i].imag());
    }
  }

  WittenSum out;
  out.terms = K_terms;
  out.partial = SSeries(lay, cd(0.0));
  for (std::size_t i = 0; i < m; ++i)
    out.partial[i] = cd(static_cast<double>(pref * re[i].value()), static_cast<double>(pref * im[i].value()));

  const long double p = 2.0L * genus - 2.0L, K = K_terms;
  const long double unit = pref * std::pow(static_cast<long double>(c2), 1 - genus);
  out.tail_estimate_t0 =
      unit * (std::pow(K, 1 - p) / (p - 1) - std::pow(K, -p) / 2 + p * std::pow(K, -p - 1) / 12);

  SSeries dser(lay, cd(0.0)), bser(lay, cd(0.0));
  for (std::size_t i = 0; i < m; ++i) dser[i] = dmax[i], bser[i] = bmax[i];
  SSeries major = bser * powi(one - dser * (1.0 / (K_terms + 1.0)), 2 - 2 * genus);
  const long double integral = std::pow(K, 3 - 2 * genus) / (2.0L * genus - 3.0L);
  for (std::size_t i = 0; i < m; ++i)
    out.tail_bound.push_back(static_cast<double>(unit * integral * std::abs(major[i])));
  return out;
}

long double verlinde_a1(long k, int genus) {
  if (k < 0) throw std::invalid_argument("level must be >= 0");
  const long m = k + 2;
  const long double pi = std::numbers::pi_v<long double>;
  Neumaier s;
  for (long j = 1; j < m; ++j) {
    long double sn = std::sin(pi * std::min(j, m - j) / m);
    s.add(std::pow(m / (2.0L * sn * sn), genus - 1));
  }
  return s.value();
}

AsymptoticRun asymptotic_check(int l, int genus, const std::vector<long>& n_values, int jobs) {
  if (genus < 2) throw std::invalid_argument("asymptotic check needs genus >= 2");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw std::invalid_argument("n values must be increasing");
  for (long n : n_values)
    if (n < 1) throw std::invalid_argument("n values must be >= 1");

  AsymptoticRun run;
  run.l = l;
  run.genus = genus;
  run.d = 3 * (genus - 1);
  run.n_values = n_values;
  run.target = static_cast<long double>(witten_sum(l, {}, genus, 0, 100000).value()[0].real());

  std::vector<long double> values(n_values.size());
  auto eval = [&](std::size_t i) { values[i] = verlinde_a1(n_values[i] * (l + 2) - 2, genus); };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n_values.size(); ++i) eval(i);
  } else {
    for (std::size_t start = 0; start < n_values.size(); start += jobs) {
      std::vector<std::future<void>> fs;
      for (std::size_t i = start; i < std::min(n_values.size(), start + jobs); ++i)
        fs.push_back(std::async(std::launch::async, eval, i));
      for (auto& f : fs) f.get();
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    long double n = n_values[i];
    run.levels.push_back(n_values[i] * (l + 2) - 2);
    run.verlinde.push_back(values[i]);
    run.scaled.push_back(values[i] / std::pow(n, run.d));
    run.scaled_next.push_back(values[i] / std::pow(n, run.d + 1));
    run.deviation.push_back(std::fabs(run.scaled.back() - run.target));
    double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(run.deviation.back()));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double cnt = static_cast<double>(n_values.size());
  run.fitted_exponent = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return run;
}

}  // namespace gbidx
