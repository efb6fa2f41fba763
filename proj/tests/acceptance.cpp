// One line per sub-check: "PASS|FAIL  c<N>  <description>  (<detail>)".
// Usage: acceptance [criterion...]; no arguments runs all of them.

#include "gbidx/kaehler.hpp"
#include "gbidx/witten.hpp"
#include "odd_oracle.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace gbidx;

namespace {

int failures = 0;
int current = 0;

void report(bool ok, const std::string& what, const std::string& detail = {}) {
  if (!ok) ++failures;
  std::printf("%s  c%d  %s%s\n", ok ? "PASS" : "FAIL", current, what.c_str(),
              detail.empty() ? "" : ("  (" + detail + ")").c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool near_int(double v, double tol) { return std::abs(v - std::round(v)) < tol; }

IndexRequest request(const std::string& label, int k, int genus, int order, bool adjoint) {
  IndexRequest req;
  req.rs = build_root_system(label);
  req.level = canonical_level(req.rs, k);
  req.genus = genus;
  req.spec.order = order;
  if (adjoint) req.spec.terms.push_back({"t", adjoint_character(req.rs)});
  return req;
}

void verlinde_vs_fusion() {
  const std::map<std::pair<std::string, int>, std::int64_t> known{{{"A1", 1}, 4}, {{"A1", 2}, 10}, {{"A2", 1}, 9}};
  std::vector<std::pair<std::string, int>> cases{{"A1", 1}, {"A1", 2}, {"A1", 3}, {"A1", 4}, {"A2", 1}};
  for (auto& [l, k] : cases) {
    auto rs = build_root_system(l);
    double v = verlinde_number(rs, canonical_level(rs, k), 2);
    std::int64_t o = fusion_gluing_oracle(rs, k);
    std::string name = l + " k=" + std::to_string(k) + " g=2";
    report(near_int(v, 1e-9) && std::llround(v) == o, name + " formula equals fusion oracle",
           fmt("formula %.12g", v) + ", oracle " + std::to_string(o));
    if (auto it = known.find({l, k}); it != known.end())
      report(o == it->second, name + " oracle equals " + std::to_string(it->second));
  }
}

void integrality() {
  std::vector<std::pair<std::string, int>> groups{{"A1", 6}, {"A2", 3}, {"C2", 2}, {"G2", 2}};
  for (auto& [l, kmax] : groups) {
    auto rs = build_root_system(l);
    for (int k = 1; k <= kmax; ++k) {
      Level lv = canonical_level(rs, k);
      double worst = 0;
      for (int g = 0; g <= 3; ++g) {
        double v = verlinde_number(rs, lv, g);
        worst = std::max(worst, std::abs(v - std::round(v)));
      }
      std::string name = l + " k=" + std::to_string(k);
      report(worst < 1e-9, name + " g=0..3 integral within 1e-9", fmt("max defect %.2e", worst));
      double g0 = verlinde_number(rs, lv, 0), g1 = verlinde_number(rs, lv, 1);
      report(std::abs(g0 - 1) < 1e-9, name + " genus 0 equals 1", fmt("%.12g", g0));
      auto count = static_cast<double>(level_weights(rs, k).size());
      report(std::abs(g1 - count) < 1e-9, name + " genus 1 equals the point count",
             fmt("%.12g", g1) + fmt(" vs %.0f", count));
    }
  }
}

void deformed_integrality() {
  auto rs = build_root_system("A1");
  auto phi = laurent_of(adjoint_character(rs));
  for (int k = 1; k <= 3; ++k) {
    SSeries a = index_even(request("A1", k, 2, 4, true));
    SSeries b = index_su2_form(k, phi, 2, 4);
    double worst = 0, gap = 0, f = 1;
    for (int n = 0; n <= 4; ++n) {
      if (n) f *= n;
      worst = std::max({worst, std::abs(a[n].real() * f - std::round(a[n].real() * f)), std::abs(a[n].imag() * f)});
      gap = std::max(gap, std::abs(a[n] - b[n]));
    }
    std::string name = "A1 k=" + std::to_string(k) + " g=2 adjoint";
    report(worst < 1e-6, name + " n! t^n coefficients integral for n<=4", fmt("max defect %.2e", worst));
    report(gap < 1e-9, name + " SL(2) form agrees with the general formula", fmt("max gap %.2e", gap));
  }
}

void affine_weyl() {
  for (int k = 1; k <= 3; ++k) {
    IndexRequest req = request("A1", k, 2, 0, false);
    for (int m = 0; m <= 2; ++m) {
      IVec mu = (IVec(1) << m).finished();
      cd a = fourier_coefficient(req, mu)[0];
      cd b = fourier_coefficient(req, affine_reflection(req.rs, req.level, mu))[0];
      report(std::abs(a + b) < 1e-9, "A1 k=" + std::to_string(k) + " mu=" + std::to_string(m) + " antisymmetric",
             fmt("I(mu) = %.9g", a.real()) + fmt(", I(s0 mu) = %.9g", b.real()));
    }
  }
}

void odd_oracle() {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coord(-2, 2), small(0, 2);
  IMat I = oracle::symplectic(2);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::string label = trial % 2 ? "A2" : "A1";
    IndexRequest req = request(label, 1 + trial % 3, 2, 0, false);
    PointSet ps = enumerate_F_rho(req.rs, req.level);
    const auto& vp = ps.points[ps.orbit_reps[trial % ps.orbit_reps.size()]];
    OddClassSpec odd;
    std::vector<IVec> cycles;
    for (int j = 0; j < 4; ++j) {
      IVec w(req.rs.rank);
      for (int i = 0; i < req.rs.rank; ++i) w(i) = small(rng);
      odd.factors.push_back(irred_character(req.rs, w));
      odd.cycles.push_back("C" + std::to_string(j));
      IVec c(4);
      for (int i = 0; i < 4; ++i) c(i) = coord(rng);
      cycles.push_back(c);
    }
    odd.intersections = IMat(4, 4);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) odd.intersections(j, k) = cycles[j].dot(I * cycles[k]);
    DeformedPoint dp = solve_deformed(req.rs, req.level, req.spec, vp);
    cd lib = odd_bracket(req.rs, req.level, req.spec, odd, dp)[0];
    cd ref = oracle::grassmann_bracket(req.rs, req.level, vp.point, odd.factors, cycles);
    worst = std::max(worst, std::abs(lib - ref) / std::max(1.0, std::abs(ref)));
  }
  report(worst < 1e-9, "20 random A1/A2 four-factor brackets match the exterior-algebra oracle",
         fmt("max scaled gap %.2e", worst));

  bool zero = true;
  for (int nf : {1, 3}) {
    IndexRequest req = request("A2", 1, 2, 2, true);
    OddClassSpec odd;
    for (int j = 0; j < nf; ++j) {
      odd.cycles.push_back("C" + std::to_string(j));
      odd.factors.push_back(adjoint_character(req.rs));
    }
    odd.intersections = IMat::Zero(nf, nf);
    for (int j = 0; j < nf; ++j)
      for (int k = j + 1; k < nf; ++k) odd.intersections(j, k) = 1, odd.intersections(k, j) = -1;
    req.odd = odd;
    zero = zero && max_abs(index_general(req)) == 0.0;
  }
  report(zero, "odd factor counts give exactly 0");
}

void kaehler() {
  auto rs = build_root_system("A1");
  Level lv = canonical_level(rs, 2);
  Character V(rs.rank), U = trivial_character(rs);

  ContinuationState st = continue_points(rs, lv, V, 0, -0.999);
  double worst = 0;
  for (auto& h : st.history) worst = std::max(worst, h.max_residual);
  for (auto& p : st.points) worst = std::max(worst, p.residual);
  report(worst < 1e-10 && !st.history.empty(), "residual below 1e-10 along t in [-0.999, 0]",
         std::to_string(st.history.size()) + fmt(" steps, max %.2e", worst));

  SSeries tay = kaehler_taylor(rs, lv, 2, V, U, 3, {"t"});
  double defect = 0;
  std::ostringstream coeffs;
  for (int n = 0; n <= 3; ++n) {
    defect = std::max({defect, std::abs(tay[n].real() - std::round(tay[n].real())), std::abs(tay[n].imag())});
    coeffs << (n ? " " : "") << tay[n].real();
  }
  report(defect < 1e-6, "t-Taylor coefficients at 0 integral for orders <= 3", "coefficients " + coeffs.str());

  NewsteadReport nr = newstead_report(rs, lv, 2, V, U, 0);
  double bound = 0;
  for (auto& [t, v] : nr.inner_samples) bound = std::max(bound, std::abs(v));
  report(std::isfinite(bound) && bound < 1e6, "inner sum bounded as t -> -1", fmt("max |inner| %.6g", bound));
  report(nr.limit_agreement < 1e-4, "inner-sum limit matches the limit formula within 1e-4",
         fmt("formula %.10g", nr.inner_limit_formula.real()) + fmt(", extrapolated %.10g", nr.inner_limit_extrapolated.real()));

  auto limits = limit_t_minus1(rs, lv, V, 0);
  double hh = 0;
  for (auto& L : limits)
    if (L.xi1.size()) hh = L.limiting_H(0, 0);
  report(std::abs(hh - 8) < 1e-6, "singular limit has limiting_H(H,H) = 8", fmt("%.12g", hh));
}

void newstead() {
  auto a1 = build_root_system("A1");
  for (int k : {2, 4})
    for (int g : {2, 3}) {
      NewsteadReport r = newstead_report(a1, canonical_level(a1, k), g, Character(1), trivial_character(a1), 0);
      std::string name = "A1 k=" + std::to_string(k) + " g=" + std::to_string(g);
      report(r.vanishing_order == g - 1, name + " vanishing order g-1", std::to_string(r.vanishing_order));
      report(r.limit_finite_nonzero, name + " inner-sum limit finite and nonzero",
             fmt("%.10g", r.inner_limit_formula.real()));
    }
  auto a2 = build_root_system("A2");
  NewsteadReport r = newstead_report(a2, canonical_level(a2, 1), 2, Character(2), trivial_character(a2), 0);
  report(r.vanishing_order == 2, "A2 k=1 g=2 vanishing order 2", std::to_string(r.vanishing_order));
  std::ostringstream betti;
  for (auto b : r.flag_betti) betti << b << ' ';
  report(r.betti_factor_vanishes && !r.full_flag_transfer_conclusive,
         "A2 Betti factor at t=-1 vanishes and full-flag transfer is flagged inconclusive",
         "b_2p = " + betti.str() + "; factor at t=-1 is " + std::to_string(r.betti_factor_at_minus1) +
             ", value at q=-1 is " + std::to_string(r.betti_poly_at_q_minus1));
}

void witten() {
  AsymptoticRun r = asymptotic_check(0, 2, {100, 1000, 10000});
  report(std::abs(static_cast<double>(r.target) - 4.0 / 3) < 1e-9, "l=0 g=2 limit equals 4/3",
         fmt("%.15g", static_cast<double>(r.target)));
  report(r.deviation[0] < 0.05L, "l=0 n=100 within 0.05 of 4/3", fmt("%.3e", static_cast<double>(r.deviation[0])));
  report(r.deviation[1] < 0.005L, "l=0 n=1000 within 0.005 of 4/3", fmt("%.3e", static_cast<double>(r.deviation[1])));
  report(std::abs(r.fitted_exponent + 1) <= 0.5, "l=0 empirical rate close to n^-1 (exponent in [-1.5, -0.5])",
         fmt("fitted exponent %.4f", r.fitted_exponent));
  AsymptoticRun r2 = asymptotic_check(2, 2, {1000});
  double rel = static_cast<double>(std::fabs(r2.scaled[0] - 32.0L / 3) / (32.0L / 3));
  report(std::abs(static_cast<double>(r2.target) - 32.0 / 3) < 1e-9, "l=2 g=2 limit equals 32/3",
         fmt("%.15g", static_cast<double>(r2.target)));
  report(rel < 0.005, "l=2 n=1000 within 0.5% of 32/3", fmt("relative deviation %.3e", rel));
}

void property_suite() {
  std::istringstream bins(GB_UNIT_TESTS);
  std::string path;
  while (std::getline(bins, path, '|')) {
    std::string name = path.substr(path.find_last_of('/') + 1);
    int rc = std::system((path + " > /dev/null 2>&1").c_str());
    report(rc == 0, name + " green", "exit " + std::to_string(rc));
  }
}

struct Criterion {
  const char* title;
  double budget_s;  // 0: no runtime requirement
  std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> all{
      {1, {"Verlinde numbers vs fusion oracle", 1, verlinde_vs_fusion}},
      {2, {"integrality suite", 10, integrality}},
      {3, {"deformed-index integrality and SL(2) agreement", 10, deformed_integrality}},
      {4, {"affine Weyl antisymmetry", 1, affine_weyl}},
      {5, {"odd-class oracle", 0, odd_oracle}},
      {6, {"Kaehler continuation", 30, kaehler}},
      {7, {"Newstead vanishing order", 0, newstead}},
      {8, {"Witten asymptotics", 30, witten}},
      {9, {"structural invariants", 120, property_suite}},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (auto& [n, c] : all) which.push_back(n);
  for (int n : which) {
    auto it = all.find(n);
    if (it == all.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    current = n;
    std::printf("== c%d %s\n", n, it->second.title);
    auto t0 = std::chrono::steady_clock::now();
    try {
      it->second.run();
    } catch (const std::exception& e) {
      report(false, "ran without exceptions", e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (it->second.budget_s > 0)
      report(secs < it->second.budget_s, fmt("runtime under %.0f s", it->second.budget_s), fmt("%.2f s", secs));
  }
  return failures ? 1 : 0;
}
