#include "gbidx/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace gbidx {

namespace {

void enumerate(int nvars, int degree, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[pos] = k;
    enumerate(nvars, degree - k, cur, pos + 1, out);
  }
}

}  // namespace

int SeriesLayout::index_of(const std::vector<int>& exps) const {
  if (exps.size() != vars.size()) throw std::invalid_argument("exponent tuple has wrong arity");
  int d = 0;
  for (int e : exps) {
    if (e < 0) return -1;
    d += e;
  }
  if (d > order) return -1;
  // graded-lex position: binary search within the degree block
  auto lo = std::lower_bound(degree.begin(), degree.end(), d) - degree.begin();
  auto hi = std::upper_bound(degree.begin(), degree.end(), d) - degree.begin();
  for (auto i = lo; i < hi; ++i)
    if (monomials[i] == exps) return static_cast<int>(i);
  return -1;
}

int SeriesLayout::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

LayoutPtr SeriesLayout::get(const std::vector<std::string>& vars, int order) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<std::string>, int>, LayoutPtr> cache;
  if (order < 0) throw std::invalid_argument("negative truncation order");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw std::invalid_argument("duplicate series variable '" + vars[i] + "'");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(vars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto lay = std::make_shared<SeriesLayout>();
  lay->vars = vars;
  lay->order = order;
  const int n = static_cast<int>(vars.size());
  if (n == 0) {
    lay->monomials.push_back({});
    lay->degree.push_back(0);
  } else {
    for (int d = 0; d <= order; ++d) {
      std::vector<std::vector<int>> block;
      std::vector<int> cur(n);
      enumerate(n, d, cur, 0, block);
      for (auto& m : block) {
        lay->monomials.push_back(m);
        lay->degree.push_back(d);
      }
    }
  }
  const int sz = static_cast<int>(lay->monomials.size());
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) {
      if (lay->degree[a] + lay->degree[b] > order) continue;
      std::vector<int> e(n);
      for (int v = 0; v < n; ++v) e[v] = lay->monomials[a][v] + lay->monomials[b][v];
      lay->products.push_back({a, b, lay->index_of(e)});
    }
  cache.emplace(key, lay);
  return lay;
}

SSeries variable(const LayoutPtr& lay, const std::string& name) {
  int v = lay->var_index(name);
  if (v < 0) throw std::invalid_argument("unknown series variable '" + name + "'");
  SSeries s(lay, cd(0.0));
  if (lay->order >= 1) {
    std::vector<int> e(lay->vars.size(), 0);
    e[v] = 1;
    s[lay->index_of(e)] = 1.0;
  }
  return s;
}

SSeries scalar_constant(const LayoutPtr& lay, cd value) { return SSeries::constant(lay, value); }

namespace {

// sum_k coef[k] * y^k for y with zero constant term
SSeries compose(const SSeries& y, const std::vector<cd>& coef) {
  SSeries result = scalar_constant(y.layout_ptr(), coef[0]);
  SSeries p = scalar_constant(y.layout_ptr(), 1.0);
  for (std::size_t k = 1; k < coef.size(); ++k) {
    p = p * y;
    if (coef[k] != 0.0) result += coef[k] * p;
  }
  return result;
}

SSeries without_constant(SSeries a) {
  a[0] = 0.0;
  return a;
}

}  // namespace

SSeries exp(const SSeries& a) {
  const int n = a.order();
  std::vector<cd> coef(n + 1);
  double f = 1;
  for (int k = 0; k <= n; ++k) {
    if (k) f *= k;
    coef[k] = 1.0 / f;
  }
  return std::exp(a[0]) * compose(without_constant(a), coef);
}

SSeries log(const SSeries& a) {
  if (a[0] == 0.0) throw std::domain_error("log of a series with zero constant term");
  const int n = a.order();
  std::vector<cd> coef(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) coef[k] = (k % 2 ? 1.0 : -1.0) / k;
  coef[0] = std::log(a[0]);
  return compose(without_constant(a) * (1.0 / a[0]), coef);
}

SSeries inv(const SSeries& a) {
  if (a[0] == 0.0) throw std::domain_error("inverse of a series with zero constant term");
  const int n = a.order();
  std::vector<cd> coef(n + 1);
  for (int k = 0; k <= n; ++k) coef[k] = (k % 2 ? -1.0 : 1.0);
  return (1.0 / a[0]) * compose(without_constant(a) * (1.0 / a[0]), coef);
}

SSeries pow(const SSeries& a, cd e) {
  if (a[0] == 0.0) throw std::domain_error("power of a series with zero constant term");
  SSeries l = log(a * (1.0 / a[0]));
  return std::exp(e * std::log(a[0])) * exp(e * l);
}

SSeries powi(const SSeries& a, long n) {
  if (n < 0) return inv(powi(a, -n));
  SSeries result = scalar_constant(a.layout_ptr(), 1.0);
  SSeries base = a;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

SSeries operator/(const SSeries& a, const SSeries& b) { return a * inv(b); }

SSeries component(const VSeries& v, int i) {
  SSeries s(v.layout_ptr(), cd(0.0));
  for (std::size_t k = 0; k < v.size(); ++k) s[k] = v[k](i);
  return s;
}

SSeries entry(const MSeries& m, int i, int j) {
  SSeries s(m.layout_ptr(), cd(0.0));
  for (std::size_t k = 0; k < m.size(); ++k) s[k] = m[k](i, j);
  return s;
}

SSeries dot(const Eigen::VectorXcd& covector, const VSeries& v) {
  SSeries s(v.layout_ptr(), cd(0.0));
  for (std::size_t k = 0; k < v.size(); ++k) s[k] = covector.transpose() * v[k];
  return s;
}

VSeries from_components(const std::vector<SSeries>& parts) {
  if (parts.empty()) throw std::invalid_argument("no components");
  const int n = static_cast<int>(parts.size());
  VSeries v(parts[0].layout_ptr(), Eigen::VectorXcd::Zero(n));
  for (int i = 0; i < n; ++i) {
    parts[0].check(parts[i]);
    for (std::size_t k = 0; k < v.size(); ++k) v[k](i) = parts[i][k];
  }
  return v;
}

VSeries scale(const SSeries& s, const Eigen::VectorXcd& vec) {
  VSeries v(s.layout_ptr(), vec);
  for (std::size_t k = 0; k < s.size(); ++k) v[k] = s[k] * vec;
  return v;
}

MSeries scale(const SSeries& s, const Eigen::MatrixXcd& mat) {
  MSeries m(s.layout_ptr(), mat);
  for (std::size_t k = 0; k < s.size(); ++k) m[k] = s[k] * mat;
  return m;
}

MSeries inverse(const MSeries& m) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m[0]);
  if (!lu.isInvertible()) throw std::domain_error("matrix series with singular constant term");
  Eigen::MatrixXcd m0inv = lu.inverse();
  MSeries x = m;
  x[0].setZero();
  x = left_mul(Eigen::MatrixXcd(-m0inv), x);
  MSeries result = MSeries::constant(m.layout_ptr(), m0inv);
  MSeries p = MSeries::constant(m.layout_ptr(), m0inv);
  for (int k = 1; k <= m.order(); ++k) {
    p = x * p;
    result += p;
  }
  return result;
}

SSeries det(const MSeries& m) {
  const int n = static_cast<int>(m[0].rows());
  if (n != m[0].cols()) throw std::invalid_argument("determinant of a non-square matrix series");
  if (n == 0) return scalar_constant(m.layout_ptr(), 1.0);
  std::vector<std::vector<SSeries>> e(n, std::vector<SSeries>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[i][j] = entry(m, i, j);
  // minors over the last rows, indexed by the column mask they use
  std::vector<SSeries> minor(1u << n);
  minor[0] = scalar_constant(m.layout_ptr(), 1.0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    int row = n - k;
    SSeries acc(m.layout_ptr(), cd(0.0));
    int pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      SSeries term = e[row][c] * minor[mask & ~(1u << c)];
      if (pos % 2) acc -= term;
      else acc += term;
      ++pos;
    }
    minor[mask] = acc;
  }
  return minor[(1u << n) - 1];
}

}  // namespace gbidx
