#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace gbidx {

using cd = std::complex<double>;

// Monomials of total degree <= order in the named variables, graded then
// lexicographic, with a precomputed product table. Shared and immutable.
struct SeriesLayout {
  std::vector<std::string> vars;
  int order = 0;
  std::vector<std::vector<int>> monomials;
  std::vector<int> degree;
  struct Product {
    int a, b, out;
  };
  std::vector<Product> products;

  int index_of(const std::vector<int>& exps) const;  // -1 when beyond order
  int var_index(const std::string& name) const;      // -1 when absent

  static std::shared_ptr<const SeriesLayout> get(const std::vector<std::string>& vars, int order);
};

using LayoutPtr = std::shared_ptr<const SeriesLayout>;

template <class C>
C zero_like(const C& x) {
  if constexpr (std::is_same_v<C, cd>)
    return cd(0.0);
  else
    return C::Zero(x.rows(), x.cols());
}

template <class A, class B>
struct mul_result;
template <>
struct mul_result<cd, cd> {
  using type = cd;
};
template <>
struct mul_result<cd, Eigen::VectorXcd> {
  using type = Eigen::VectorXcd;
};
template <>
struct mul_result<Eigen::VectorXcd, cd> {
  using type = Eigen::VectorXcd;
};
template <>
struct mul_result<cd, Eigen::MatrixXcd> {
  using type = Eigen::MatrixXcd;
};
template <>
struct mul_result<Eigen::MatrixXcd, cd> {
  using type = Eigen::MatrixXcd;
};
template <>
struct mul_result<Eigen::MatrixXcd, Eigen::VectorXcd> {
  using type = Eigen::VectorXcd;
};
template <>
struct mul_result<Eigen::MatrixXcd, Eigen::MatrixXcd> {
  using type = Eigen::MatrixXcd;
};
template <class A, class B>
using mul_t = typename mul_result<A, B>::type;

// Truncated power series with coefficients of type C (complex scalar,
// vector or matrix; one shape per series).
template <class C>
class Series {
public:
  using coeff_type = C;

  Series() = default;
  Series(LayoutPtr lay, const C& zero) : lay_(std::move(lay)), c_(lay_->monomials.size(), zero_like(zero)) {}

  static Series constant(LayoutPtr lay, const C& value) {
    Series s(std::move(lay), value);
    s.c_[0] = value;
    return s;
  }

  const LayoutPtr& layout_ptr() const { return lay_; }
  const SeriesLayout& layout() const { return *lay_; }
  int order() const { return lay_->order; }
  std::size_t size() const { return c_.size(); }

  C& operator[](std::size_t i) { return c_[i]; }
  const C& operator[](std::size_t i) const { return c_[i]; }
  const C& constant_term() const { return c_[0]; }
  C zero_coeff() const { return zero_like(c_[0]); }

  C coeff(const std::vector<int>& exps) const {
    int i = lay_->index_of(exps);
    return i < 0 ? zero_coeff() : c_[i];
  }

  Series& operator+=(const Series& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Series& operator*=(cd k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  Series operator-() const {
    Series r = *this;
    r *= cd(-1.0);
    return r;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, cd k) { return a *= k; }
  friend Series operator*(cd k, Series a) { return a *= k; }

  Series& add_constant(const C& v) {
    c_[0] += v;
    return *this;
  }

  void check(const Series& o) const {
    if (lay_ != o.lay_) throw std::invalid_argument("series variable/order mismatch");
  }

private:
  LayoutPtr lay_;
  std::vector<C> c_;
};

using SSeries = Series<cd>;
using VSeries = Series<Eigen::VectorXcd>;
using MSeries = Series<Eigen::MatrixXcd>;

template <class A, class B>
Series<mul_t<A, B>> operator*(const Series<A>& a, const Series<B>& b) {
  if (a.layout_ptr() != b.layout_ptr()) throw std::invalid_argument("series variable/order mismatch");
  using R = mul_t<A, B>;
  R z = a[0] * b[0];
  Series<R> r(a.layout_ptr(), z);
  for (const auto& p : a.layout().products) r[p.out] += a[p.a] * b[p.b];
  return r;
}

// Constant coefficient times series.
template <class K, class B>
Series<mul_t<K, B>> left_mul(const K& k, const Series<B>& b) {
  using R = mul_t<K, B>;
  R z = k * b[0];
  Series<R> r(b.layout_ptr(), z);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = k * b[i];
  return r;
}

SSeries variable(const LayoutPtr& lay, const std::string& name);
SSeries scalar_constant(const LayoutPtr& lay, cd value);

// Map coefficients into another layout by variable name. Variables missing
// from the target are set to zero; monomials beyond the target order drop.
template <class C>
Series<C> restrict_to(const Series<C>& s, const LayoutPtr& target) {
  Series<C> r(target, s.zero_coeff());
  const auto& src = s.layout();
  std::vector<int> map(src.vars.size());
  for (std::size_t v = 0; v < src.vars.size(); ++v) map[v] = target->var_index(src.vars[v]);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<int> e(target->vars.size(), 0);
    bool keep = true;
    for (std::size_t v = 0; v < src.vars.size(); ++v) {
      int k = src.monomials[i][v];
      if (!k) continue;
      if (map[v] < 0) {
        keep = false;
        break;
      }
      e[map[v]] = k;
    }
    if (!keep) continue;
    int j = target->index_of(e);
    if (j >= 0) r[j] = s[i];
  }
  return r;
}

template <class C>
Series<C> truncated(const Series<C>& s, int order) {
  return restrict_to(s, SeriesLayout::get(s.layout().vars, order));
}

template <class C>
double max_abs(const Series<C>& s) {
  double m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if constexpr (std::is_same_v<C, cd>)
      m = std::max(m, std::abs(s[i]));
    else
      m = std::max(m, s[i].cwiseAbs().maxCoeff());
  }
  return m;
}

// Scalar series functions. exp accepts any constant term; log and inv need
// a nonzero constant term; pow uses the principal log of the constant term.
SSeries exp(const SSeries& a);
SSeries log(const SSeries& a);
SSeries inv(const SSeries& a);
SSeries pow(const SSeries& a, cd exponent);
SSeries powi(const SSeries& a, long n);
SSeries operator/(const SSeries& a, const SSeries& b);

// Components and assembly.
SSeries component(const VSeries& v, int i);
SSeries entry(const MSeries& m, int i, int j);
SSeries dot(const Eigen::VectorXcd& covector, const VSeries& v);
VSeries from_components(const std::vector<SSeries>& parts);
VSeries scale(const SSeries& s, const Eigen::VectorXcd& v);  // s * v
MSeries scale(const SSeries& s, const Eigen::MatrixXcd& m);  // s * m

// Matrix series: inverse by Neumann expansion about the constant term,
// determinant by Laplace expansion over the scalar-series ring.
MSeries inverse(const MSeries& m);
SSeries det(const MSeries& m);

}  // namespace gbidx
