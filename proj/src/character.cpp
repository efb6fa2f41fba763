#include "gbidx/character.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gbidx {

namespace {

Character::Key key_of(const IVec& v) { return Character::Key(v.data(), v.data() + v.size()); }

}  // namespace

IVec Character::weight_of(const Key& k) {
  IVec v(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) v(i) = k[i];
  return v;
}

std::int64_t Character::dimension() const {
  std::int64_t d = 0;
  for (auto& [k, m] : m_) d = checked_add(d, m);
  return d;
}

std::int64_t Character::multiplicity(const IVec& weight) const {
  auto it = m_.find(key_of(weight));
  return it == m_.end() ? 0 : it->second;
}

Character& Character::add(const IVec& weight, std::int64_t mult) {
  if (weight.size() != rank_) throw std::invalid_argument("weight rank mismatch in character");
  if (!mult) return *this;
  auto k = key_of(weight);
  auto& slot = m_[k];
  slot = checked_add(slot, mult);
  if (!slot) m_.erase(k);
  return *this;
}

Character& Character::operator+=(const Character& o) {
  if (o.rank_ != rank_) throw std::invalid_argument("character rank mismatch");
  for (auto& [k, m] : o.m_) add(weight_of(k), m);
  return *this;
}

Character& Character::operator*=(std::int64_t k) {
  if (!k) {
    m_.clear();
    return *this;
  }
  for (auto& [w, m] : m_) m = checked_mul(m, k);
  return *this;
}

Character operator*(const Character& a, const Character& b) {
  if (a.rank_ != b.rank_) throw std::invalid_argument("character rank mismatch");
  Character out(a.rank_);
  for (const auto& [wa, ma] : a.m_)
    for (const auto& [wb, mb] : b.m_) out.add(Character::weight_of(wa) + Character::weight_of(wb), checked_mul(ma, mb));
  return out;
}

Character trivial_character(const RootSystem& rs) {
  Character c(rs.rank);
  c.add(IVec::Zero(rs.rank), 1);
  return c;
}

Character irred_character(const RootSystem& rs, const IVec& lambda) {
  if (lambda.size() != rs.rank) throw std::invalid_argument("highest weight has wrong rank");
  if (!is_dominant(rs, lambda)) throw std::invalid_argument("highest weight is not dominant");
  const int n = rs.simple_rank;
  Character ch(rs.rank);
  if (n == 0) {
    ch.add(lambda, 1);
    return ch;
  }

  // Inner product on weights: lambda^T adj(B) mu, a positive multiple of B^{-1}.
  const IMat gram = int_adjugate(IMat(rs.basic_form.topLeftCorner(n, n)));
  auto ip = [&](const IVec& a, const IVec& b) -> std::int64_t {
    return IVec(a.head(n)).dot(gram * IVec(b.head(n)));
  };
  const IMat cartan_adj = int_adjugate(rs.cartan);
  auto depth = [&](const IVec& mu) -> std::int64_t {
    return (cartan_adj * IVec((lambda - mu).head(n))).sum();
  };

  // Dominant weights below lambda, reached through dominant weights by
  // subtracting positive roots.
  std::map<Character::Key, IVec> dom;
  std::vector<IVec> stack{lambda};
  dom.emplace(key_of(lambda), lambda);
  while (!stack.empty()) {
    IVec mu = stack.back();
    stack.pop_back();
    for (auto& a : rs.positive_roots) {
      IVec nu = mu - a;
      if (!is_dominant(rs, nu)) continue;
      if (dom.emplace(key_of(nu), nu).second) stack.push_back(nu);
    }
  }
  std::vector<IVec> order;
  for (auto& [k, v] : dom) order.push_back(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](const IVec& a, const IVec& b) { return depth(a) < depth(b); });

  std::map<Character::Key, std::int64_t> mult;
  const IVec lr = lambda + rs.rho;
  const std::int64_t top = ip(lr, lr);
  auto lookup = [&](const IVec& nu) -> std::int64_t {
    auto d = dominant_conjugate(rs, nu);
    auto it = mult.find(key_of(d.weight));
    return it == mult.end() ? 0 : it->second;
  };
  for (auto& mu : order) {
    if (mu == lambda) {
      mult[key_of(mu)] = 1;
      continue;
    }
    std::int64_t num = 0;
    for (auto& a : rs.positive_roots) {
      for (std::int64_t j = 1;; ++j) {
        IVec nu = mu + j * a;
        std::int64_t m = lookup(nu);
        if (!m) break;
        num = checked_add(num, checked_mul(m, ip(nu, a)));
      }
    }
    num = checked_mul(num, 2);
    IVec mr = mu + rs.rho;
    std::int64_t den = top - ip(mr, mr);
    if (den <= 0 || num % den) throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
    mult[key_of(mu)] = num / den;
  }

  for (auto& [k, m] : mult) {
    if (!m) continue;
    std::set<Character::Key> orbit;
    IVec mu = Character::weight_of(k);
    for (auto& w : rs.weyl) orbit.insert(key_of(IVec(w.on_weights * mu)));
    for (auto& o : orbit) ch.add(Character::weight_of(o), m);
  }
  return ch;
}

Character adjoint_character(const RootSystem& rs) {
  Character c(rs.rank);
  if (rs.simple_rank) c = irred_character(rs, rs.highest_root);
  if (rs.torus_rank) c.add(IVec::Zero(rs.rank), rs.torus_rank);
  return c;
}

Character holo_induce(const RootSystem& rs, const IVec& mu) {
  auto d = dominant_conjugate(rs, IVec(mu + rs.rho));
  if (d.on_wall) return Character(rs.rank);
  return irred_character(rs, IVec(d.weight - rs.rho)) * d.sign;
}

Character adams(const Character& ch, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("Adams operation needs n >= 1");
  Character out(ch.rank());
  for (auto& [k, m] : ch.terms()) out.add(IVec(n * Character::weight_of(k)), m);
  return out;
}

bool is_weyl_invariant(const RootSystem& rs, const Character& ch) {
  for (auto& w : rs.weyl)
    for (auto& [k, m] : ch.terms())
      if (ch.multiplicity(IVec(w.on_weights * Character::weight_of(k))) != m) return false;
  return true;
}

cd trace_eval(const Character& ch, const TorusPoint& f) {
  cd s = 0.0;
  for (auto& [k, m] : ch.terms()) s += static_cast<double>(m) * character_value(Character::weight_of(k), f);
  return s;
}

Eigen::VectorXcd trace_gradient(const Character& ch, const TorusPoint& f) {
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(ch.rank());
  for (auto& [k, m] : ch.terms()) {
    IVec w = Character::weight_of(k);
    g += (static_cast<double>(m) * character_value(w, f)) * w.cast<cd>();
  }
  return g;
}

Eigen::MatrixXcd trace_hessian(const Character& ch, const TorusPoint& f) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(ch.rank(), ch.rank());
  for (auto& [k, m] : ch.terms()) {
    Eigen::VectorXcd w = Character::weight_of(k).cast<cd>();
    h += (static_cast<double>(m) * character_value(Character::weight_of(k), f)) * (w * w.transpose());
  }
  return h;
}

cd lambda_t_adjoint_eval(const RootSystem& rs, const TorusPoint& f, cd t) {
  cd p = std::pow(1.0 + t, rs.rank);
  for (auto& a : rs.all_roots()) p *= 1.0 + t * character_value(a, f);
  return p;
}

SSeries lambda_t_adjoint_eval(const RootSystem& rs, const TorusPoint& f, const SSeries& t) {
  SSeries one = scalar_constant(t.layout_ptr(), 1.0);
  SSeries p = powi(one + t, rs.rank);
  for (auto& a : rs.all_roots()) p = p * (one + character_value(a, f) * t);
  return p;
}

}  // namespace gbidx
