#include "gbidx/root_system.hpp"
#include "gbidx/rational.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace gbidx {

namespace {

std::vector<std::int64_t> key_of(const IMat& m) {
  return std::vector<std::int64_t>(m.data(), m.data() + m.size());
}

std::vector<std::int64_t> key_of(const IVec& v) {
  return std::vector<std::int64_t>(v.data(), v.data() + v.size());
}

IMat cartan_table(char type, int n) {
  IMat a = IMat::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = -1;
      break;
    case 'C':  // alpha_1 short, alpha_2 long
      a(0, 1) = -2;
      a(1, 0) = -1;
      break;
    case 'G':  // alpha_1 short, alpha_2 long
      a(0, 1) = -3;
      a(1, 0) = -1;
      break;
    default:
      throw std::invalid_argument("unknown Cartan type");
  }
  return a;
}

// 2/(alpha_j, alpha_j) with long roots of squared length 2
std::vector<std::int64_t> root_length_factors(char type, int n) {
  std::vector<std::int64_t> d(n, 1);
  if (type == 'C') d[0] = 2;
  if (type == 'G') d[0] = 3;
  return d;
}

RootSystem build_simple(char type, int n) {
  RootSystem rs;
  rs.simple_type = type;
  rs.simple_rank = rs.rank = n;
  rs.label = std::string(1, type) + std::to_string(n);
  rs.cartan = cartan_table(type, n);
  const IMat& a = rs.cartan;

  auto d = root_length_factors(type, n);
  rs.basic_form = IMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.basic_form(i, j) = a(i, j) * d[j];

  for (int j = 0; j < n; ++j) {
    rs.simple_roots.push_back(a.col(j));
    rs.simple_coroots.push_back(IVec::Unit(n, j));
  }

  // Orbit of the simple roots under simple reflections, tracking root
  // coordinates (simple-root basis) and the coroot alongside.
  struct Entry {
    IVec root, coroot, coords;
  };
  std::map<std::vector<std::int64_t>, Entry> seen;
  std::deque<Entry> queue;
  for (int j = 0; j < n; ++j) {
    Entry e{rs.simple_roots[j], rs.simple_coroots[j], IVec::Unit(n, j)};
    seen.emplace(key_of(e.root), e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Entry e = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      Entry r = e;
      std::int64_t li = e.root(i);
      r.root -= li * rs.simple_roots[i];
      r.coords(i) -= li;
      std::int64_t ai = rs.simple_roots[i].dot(e.coroot);
      r.coroot(i) -= ai;
      if (seen.emplace(key_of(r.root), r).second) queue.push_back(r);
    }
  }
  std::vector<Entry> pos;
  for (auto& [k, e] : seen)
    if ((e.coords.array() >= 0).all()) pos.push_back(e);
  std::sort(pos.begin(), pos.end(), [](const Entry& x, const Entry& y) {
    auto hx = x.coords.sum(), hy = y.coords.sum();
    if (hx != hy) return hx < hy;
    return key_of(x.coords) < key_of(y.coords);
  });
  IVec twice_rho = IVec::Zero(n);
  for (auto& e : pos) {
    rs.positive_roots.push_back(e.root);
    rs.positive_coroots.push_back(e.coroot);
    twice_rho += e.root;
  }
  rs.rho = twice_rho / 2;
  rs.highest_root = pos.back().root;
  rs.highest_coroot = pos.back().coroot;
  rs.dual_coxeter = static_cast<int>(rs.rho.dot(rs.highest_coroot)) + 1;
  return rs;
}

void build_weyl(RootSystem& rs) {
  const int n = rs.rank;
  std::vector<IMat> sw, sc;
  for (int i = 0; i < rs.simple_rank; ++i) {
    IMat w = IMat::Identity(n, n);
    // s_i(lambda) = lambda - lambda_i alpha_i
    w.col(i) -= rs.simple_roots[i];
    IMat c = IMat::Identity(n, n);
    // s_i(xi) = xi - alpha_i(xi) H_i
    c.row(i) -= rs.simple_roots[i].transpose();
    sw.push_back(w);
    sc.push_back(c);
  }
  rs.weyl.clear();
  std::set<std::vector<std::int64_t>> seen;
  WeylElement id{IMat::Identity(n, n), IMat::Identity(n, n), 1, 0};
  rs.weyl.push_back(id);
  seen.insert(key_of(id.on_weights));
  for (std::size_t head = 0; head < rs.weyl.size(); ++head) {
    for (std::size_t i = 0; i < sw.size(); ++i) {
      WeylElement nxt{sw[i] * rs.weyl[head].on_weights, sc[i] * rs.weyl[head].on_coweights,
                      -rs.weyl[head].sign, rs.weyl[head].length + 1};
      if (seen.insert(key_of(nxt.on_weights)).second) rs.weyl.push_back(nxt);
    }
  }
}

IVec pad(const IVec& v, int n) {
  IVec out = IVec::Zero(n);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

std::vector<IVec> RootSystem::all_roots() const {
  std::vector<IVec> out;
  for (auto& r : positive_roots) {
    out.push_back(r);
    out.push_back(-r);
  }
  return out;
}

RootSystem product_with_torus(const RootSystem& simple, int torus_rank) {
  if (torus_rank < 0) throw std::invalid_argument("negative torus rank");
  if (simple.torus_rank != 0) throw std::invalid_argument("only one torus factor is supported");
  RootSystem rs = simple;
  const int n = simple.simple_rank + torus_rank;
  rs.torus_rank = torus_rank;
  rs.rank = n;
  rs.label = simple.simple_type ? simple.label + (torus_rank ? "xT" + std::to_string(torus_rank) : "")
                                : "T" + std::to_string(torus_rank);
  for (auto* vs : {&rs.simple_roots, &rs.simple_coroots, &rs.positive_roots, &rs.positive_coroots})
    for (auto& v : *vs) v = pad(v, n);
  rs.rho = pad(simple.rho, n);
  if (simple.simple_type) {
    rs.highest_root = pad(simple.highest_root, n);
    rs.highest_coroot = pad(simple.highest_coroot, n);
  } else {
    rs.highest_root = rs.highest_coroot = IVec::Zero(n);
  }
  rs.basic_form = IMat::Zero(n, n);
  rs.basic_form.topLeftCorner(simple.simple_rank, simple.simple_rank) = simple.basic_form;
  build_weyl(rs);
  return rs;
}

RootSystem build_root_system(char type, int rank) {
  bool ok = (type == 'A' && rank >= 1 && rank <= 4) || (type == 'C' && rank == 2) ||
            (type == 'G' && rank == 2) || (type == 'T' && rank >= 1 && rank <= 8);
  if (!ok)
    throw std::invalid_argument("unsupported root system " + std::string(1, type) + std::to_string(rank) +
                                " (supported: A1..A4, C2, G2, T<rank>)");
  if (type == 'T') {
    RootSystem rs;
    rs.rho = IVec::Zero(0);
    rs.cartan = IMat::Zero(0, 0);
    rs.basic_form = IMat::Zero(0, 0);
    rs.highest_root = rs.highest_coroot = IVec::Zero(0);
    return product_with_torus(rs, rank);
  }
  RootSystem rs = build_simple(type, rank);
  build_weyl(rs);
  return rs;
}

RootSystem build_root_system(const std::string& label) {
  auto parse = [&](const std::string& s) -> std::pair<char, int> {
    if (s.size() < 2 || !std::isdigit(static_cast<unsigned char>(s[1])))
      throw std::invalid_argument("malformed group label '" + label + "'");
    std::size_t used = 0;
    int r = std::stoi(s.substr(1), &used);
    if (used + 1 != s.size()) throw std::invalid_argument("malformed group label '" + label + "'");
    return {s[0], r};
  };
  auto x = label.find('x');
  if (x == std::string::npos) {
    auto [t, r] = parse(label);
    return build_root_system(t, r);
  }
  auto [t1, r1] = parse(label.substr(0, x));
  auto [t2, r2] = parse(label.substr(x + 1));
  if (t1 == 'T' || t2 != 'T') throw std::invalid_argument("products must be <simple>xT<rank>: '" + label + "'");
  if (r2 < 1 || r2 > 8) throw std::invalid_argument("unsupported torus rank in '" + label + "'");
  return product_with_torus(build_root_system(t1, r1), r2);
}

const std::vector<WeylElement>& weyl_group(const RootSystem& rs) { return rs.weyl; }

bool is_dominant(const RootSystem& rs, const IVec& weight) {
  for (int i = 0; i < rs.simple_rank; ++i)
    if (weight(i) < 0) return false;
  return true;
}

DominantResult dominant_conjugate(const RootSystem& rs, IVec weight) {
  DominantResult res;
  for (;;) {
    int i = 0;
    while (i < rs.simple_rank && weight(i) >= 0) ++i;
    if (i == rs.simple_rank) break;
    weight -= weight(i) * rs.simple_roots[i];
    res.sign = -res.sign;
  }
  for (int i = 0; i < rs.simple_rank; ++i)
    if (weight(i) == 0) res.on_wall = true;
  res.weight = weight;
  return res;
}

std::vector<std::int64_t> poincare_polynomial(const RootSystem& rs, const std::vector<int>& parabolic) {
  for (int i : parabolic)
    if (i < 0 || i >= rs.simple_rank) throw std::invalid_argument("parabolic index out of range");
  std::set<std::vector<std::int64_t>> positive;
  for (auto& r : rs.positive_roots) positive.insert(key_of(r));
  std::vector<std::int64_t> poly(1, 0);
  for (auto& w : rs.weyl) {
    bool minimal = true;
    for (int i : parabolic)
      if (!positive.count(key_of(IVec(w.on_weights * rs.simple_roots[i])))) minimal = false;
    if (!minimal) continue;
    if (static_cast<int>(poly.size()) <= w.length) poly.resize(w.length + 1, 0);
    ++poly[w.length];
  }
  return poly;
}

std::int64_t int_det(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  IMat a = m;
  int sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("int64 overflow in determinant");
        a(i, j) = static_cast<std::int64_t>(v);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IMat int_adjugate(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  IMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IMat minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      adj(i, j) = ((i + j) % 2 ? -1 : 1) * int_det(minor);
    }
  return adj;
}

bool is_positive_definite(const IMat& m) {
  for (int k = 1; k <= m.rows(); ++k)
    if (int_det(m.topLeftCorner(k, k)) <= 0) return false;
  return true;
}

}  // namespace gbidx
