// Acceptance checks 1-10. Usage: acceptance <path-to-ridgelab-cli>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ridgelab/adversary.hpp"
#include "ridgelab/algorithms.hpp"
#include "ridgelab/classes.hpp"
#include "ridgelab/geometry.hpp"
#include "ridgelab/harness.hpp"

using namespace ridgelab;
namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Point unit_random(int d, Rng& rng) {
  Point a(d);
  double s = 0.0;
  for (auto& v : a) {
    v = rng.normal();
    s += v * v;
  }
  for (auto& v : a) v /= std::sqrt(s);
  return a;
}

Point ball_random(int d, Rng& rng) {
  Point x = unit_random(d, rng);
  const double r = std::pow(rng.uniform(), 1.0 / d);
  for (auto& v : x) v *= r;
  return x;
}

double pnorm(ConstPoint x, double p) {
  double s = 0.0;
  for (double v : x) s = std::isinf(p) ? std::max(s, std::abs(v)) : s + std::pow(std::abs(v), p);
  return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

// Sup of |f - g| over random ball points, the unit sphere and dense lines t u.
double sup_gap(const std::function<double(ConstPoint)>& f, const std::function<double(ConstPoint)>& g,
               int d, const std::vector<Point>& lines, std::uint64_t seed, int random = 6000,
               int line_pts = 4001) {
  Rng rng(seed, 77);
  double worst = 0.0;
  for (int i = 0; i < random; ++i) {
    Point x = i % 3 == 0 ? unit_random(d, rng) : ball_random(d, rng);
    worst = std::max(worst, std::abs(f(x) - g(x)));
  }
  for (const auto& u : lines) {
    const double n = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (int i = 0; i < line_pts; ++i) {
      const double t = -1.0 + 2.0 * i / (line_pts - 1);
      Point x(d);
      for (int j = 0; j < d; ++j) x[j] = t * u[j] / n;
      worst = std::max(worst, std::abs(f(x) - g(x)));
    }
  }
  return worst;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

double fact(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Sup of |h| and of the Hoelder quotient with the factor 2, over all pairs of a grid.
double grid_lip_norm(const std::vector<std::function<double(double)>>& derivs, double beta, int n) {
  double best = 0.0;
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) t[i] = -1.0 + 2.0 * i / (n - 1);
  for (const auto& h : derivs)
    for (double ti : t) best = std::max(best, std::abs(h(ti)));
  for (int i = 0; i < n; ++i) v[i] = derivs.back()(t[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      best = std::max(best, std::abs(v[i] - v[j]) / (2.0 * std::pow(std::min(1.0, t[j] - t[i]), beta)));
  return best;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int st = pclose(pipe);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Two-step sampler rate on d = 8, alpha = 2, kappa = 1.
Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const int d = 8;
  const auto spec = ClassSpec::make(2.0, 2.0, 1.0, d);
  Rng rng(2024);
  std::vector<std::pair<std::string, Point>> cases;
  for (const char* id : {"sine", "cubic_sine"}) cases.push_back({id, unit_random(d, rng)});
  std::ostringstream det;
  bool ok = true;
  for (const auto& [id, a] : cases) {
    RidgeFunction f(a, catalog_profile(id, spec));
    std::vector<double> xs, es;
    for (int k : {16, 32, 64, 128, 256, 512}) {
      TwoStepSampler S(spec, static_cast<std::size_t>(k + d));
      auto A = S.run([&](ConstPoint x) { return f(x); });
      std::vector<Point> lines{a};
      if (auto dir = A.ridge_direction()) lines.push_back(*dir);
      const double e = sup_gap([&](ConstPoint x) { return f(x); }, [&](ConstPoint x) { return A(x); },
                               d, lines, 5 + k);
      xs.push_back(k);
      es.push_back(e);
    }
    const double slope = ols_slope(xs, es);
    ok = ok && slope >= -2.3 && slope <= -1.7;
    det << id << " slope " << fmt(slope) << "; ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < 60.0;
  det << "runtime " << fmt(secs) << " s";
  return {ok, det.str()};
}

// 2. Direction recovery on 100 seeded triples.
Outcome criterion2() {
  Rng rng(31337);
  const std::vector<std::string> ids{"sine", "cubic_sine", "linear", "sine_plus_bumps:theta=101,k=3"};
  const std::vector<double> epss{0.2, 0.1, 0.05};
  const std::vector<double> alphas{1.5, 2.0, 2.5, 3.0};
  int good = 0, exact_queries = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + static_cast<int>(rng.index(9));
    const double alpha = alphas[rng.index(alphas.size())];
    const double kappa = rng.index(2) ? 1.0 : 0.5;
    const auto spec = ClassSpec::make(alpha, 2.0, kappa, d);
    Profile g = catalog_profile(ids[rng.index(ids.size())], spec);
    const bool flip = rng.index(2) == 1;
    if (flip) g = g.scaled(-1.0);
    const double g0 = *g.g0_deriv();
    const Point a = unit_random(d, rng);
    RidgeFunction f(a, g);
    const double eps = epss[rng.index(epss.size())];
    auto params = RecoveryParams::make(eps, kappa, std::min(1.0, alpha - 1.0));
    std::size_t calls = 0;
    auto est = recover_direction(
        [&](ConstPoint x) {
          ++calls;
          return f(x);
        },
        params, d);
    const double sign = g0 > 0 ? 1.0 : -1.0;
    double err = 0.0;
    for (int i = 0; i < d; ++i) err += std::pow(sign * est.direction[i] - a[i], 2);
    err = std::sqrt(err);
    worst = std::max(worst, err / eps);
    good += err <= eps;
    exact_queries += calls == static_cast<std::size_t>(d + 1) && est.queries == calls;
  }
  return {good == 100 && exact_queries == 100,
          std::to_string(good) + "/100 within eps, " + std::to_string(exact_queries) +
              "/100 with d+1 queries, worst err/eps " + fmt(worst)};
}

// 3. Fooling certificates for n = 8 < d = 10.
Outcome criterion3() {
  const int d = 10;
  const auto spec = ClassSpec::make(1.0, 2.0, 0.0, d);
  // norm of t_+ on [-1, 1]: sup 1, Lipschitz quotient 1/2
  const double theta1 =
      1.0 / grid_lip_norm({[](double t) { return std::max(0.0, t); }}, 1.0, 2001);
  const double threshold = theta1 * 0.5 * 0.5 - 1e-3;
  auto dirs = DirectionSet::canonical(d);
  std::ostringstream det;
  bool ok = true;
  std::vector<std::unique_ptr<AdaptiveSampler>> samplers;
  samplers.push_back(std::make_unique<CoverSampler>(CoverSampler::for_budget(spec, 8)));
  samplers.push_back(std::make_unique<TaylorCoverSampler>(TaylorCoverSampler::for_budget(spec, 8)));
  for (const auto& S : samplers) {
    auto cert = certify_lower_bound(*S, dirs, spec);
    bool zeros = cert.adversary.has_value();
    if (zeros) {
      for (const auto& x : cert.points) zeros = zeros && cert.adversary->f(x) == 0.0;
    }
    // the sampler answers zero on f and -f, so its error is at least |f(Psi(a))|
    double peak = 0.0;
    if (cert.adversary) peak = std::abs(cert.adversary->f(cert.adversary->f.direction()));
    const bool this_ok = cert.pass() && zeros && cert.zero_answers && cert.achieved >= threshold &&
                         peak >= threshold && S->budget() <= 8;
    ok = ok && this_ok;
    det << S->name() << ": " << cert.status_name() << " achieved " << fmt(cert.achieved) << " peak "
        << fmt(peak) << " (>= " << fmt(threshold) << ", " << cert.points.size() << " queries); ";
  }
  return {ok, det.str()};
}

// 4. Taylor remainder bound with exact derivatives.
Outcome criterion4() {
  Rng rng(4444);
  const std::vector<double> alphas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.7};
  const std::vector<double> ps{0.5, 1.0, 1.5, 2.0};
  const std::vector<std::string> ids{"sine", "cubic_sine", "bump", "psi:k=2,b=0.2", "monomial:j=3",
                                     "linear", "sine_plus_bumps:theta=11,k=2", "psi:k=1,b=-0.4"};
  int violations = 0;
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int d = 1 + static_cast<int>(rng.index(5));
    const double alpha = alphas[rng.index(alphas.size())];
    const double p = ps[rng.index(ps.size())];
    const auto spec = ClassSpec::make(alpha, p, 0.0, d);
    Profile g = catalog_profile(ids[rng.index(ids.size())], spec);
    // direction with |a|_p <= 1
    Point a = unit_random(d, rng);
    const double scale = rng.uniform(0.3, 1.0) / pnorm(a, p);
    for (auto& v : a) v *= scale;
    RidgeFunction f(a, g);
    Point x = ball_random(d, rng), x0 = ball_random(d, rng);
    if (t % 4 == 0) {
      // close pairs probe the small-distance end of the bound
      const double r = std::pow(10.0, -rng.uniform(1, 4));
      for (int i = 0; i < d; ++i) x[i] = x0[i] * (1 - r) + r * x[i];
    }
    const int s = spec.s;
    auto T = exact_taylor(f, x0, s);
    const double pp = p >= 1.0 ? (p == 1.0 ? kInf : p / (p - 1.0)) : kInf;
    Point diff(d);
    for (int i = 0; i < d; ++i) diff[i] = x[i] - x0[i];
    const double bound = 2.0 / fact(s) * std::pow(pnorm(diff, pp), alpha);
    const double gap = std::abs(f(x) - T(x));
    if (gap > bound + 1e-13) ++violations;
    if (bound > 0) worst = std::max(worst, gap / bound);
  }
  return {violations == 0,
          std::to_string(violations) + " violations in 10000, worst ratio " + fmt(worst)};
}

// 5. Entropy brackets of the Euclidean ball in l_2.
Outcome criterion5() {
  std::ostringstream det;
  bool ok = true;
  for (int d : {2, 3, 4}) {
    auto prof = entropy_profile(Target::ball(d, 2.0), d, 3 * d, 2.0);
    double c_lo = 0.0, c_hi = kInf;
    bool monotone = true;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const double w = std::pow(2.0, static_cast<double>(prof[i].k) / d);
      c_lo = std::max(c_lo, prof[i].lower * w);
      c_hi = std::min(c_hi, prof[i].upper * w);
      if (i > 0) {
        monotone = monotone && prof[i].lower <= prof[i - 1].lower && prof[i].upper <= prof[i - 1].upper;
      }
    }
    const bool fits = c_lo <= c_hi;
    ok = ok && fits && monotone;
    det << "d=" << d << " c in [" << fmt(c_lo) << ", " << fmt(c_hi) << "]" << (monotone ? "" : " non-monotone")
        << "; ";
  }
  // d = 1: exhaustive search over center placements on a dyadic grid of [-1, 1]
  bool eq = true;
  for (int k = 1; k <= 3; ++k) {
    const int n = 1 << (k - 1);
    const int m = 64;
    std::vector<double> cand;
    for (int i = 0; i <= m; ++i) cand.push_back(-1.0 + 2.0 * i / m);
    std::vector<double> sample;
    for (int i = 0; i <= 4 * m; ++i) sample.push_back(-1.0 + 2.0 * i / (4 * m));
    double best = kInf;
    std::vector<int> idx(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int from) {
      if (pos == n) {
        double r = 0.0;
        for (double s : sample) {
          double near = kInf;
          for (int i : idx) near = std::min(near, std::abs(s - cand[i]));
          r = std::max(r, near);
        }
        best = std::min(best, r);
        return;
      }
      for (int i = from; i < static_cast<int>(cand.size()); ++i) {
        idx[pos] = i;
        rec(pos + 1, i);
      }
    };
    rec(0, 0);
    auto e = entropy_estimate(Target::ball(1, 2.0), k, 2.0);
    eq = eq && std::abs(e.lower - best) < 1e-12 && std::abs(e.upper - best) < 1e-12;
    det << "d=1 k=" << k << " " << fmt(e.lower) << "/" << fmt(e.upper) << " vs " << fmt(best) << "; ";
  }
  return {ok && eq, det.str()};
}

// 6. Cover sampler error against every catalog profile.
Outcome criterion6() {
  const std::vector<std::string> ids{"zero", "constant:c=-0.6", "linear", "linear:slope=-1", "sine",
                                     "cubic_sine", "monomial:j=2", "monomial:j=5", "bump",
                                     "psi:k=1,b=0", "psi:k=3,b=0.5", "sine_plus_bumps:theta=1011,k=4",
                                     "fooling:anorm=1,eps=0.5,alpha=1"};
  std::ostringstream det;
  bool ok = true;
  Rng rng(606);
  for (int d : {2, 3}) {
    const auto spec = ClassSpec::make(1.0, 2.0, 0.0, d);
    for (double eps : {0.5, 0.25}) {
      CoverSampler S(spec, eps);
      double worst = 0.0;
      for (const auto& id : ids) {
        const Point a = unit_random(d, rng);
        RidgeFunction f(a, catalog_profile(id, spec));
        auto A = S.run([&](ConstPoint x) { return f(x); });
        std::vector<Point> lines{a};
        for (int i = 0; i < d; ++i) lines.push_back(unit_vector(d, i));
        worst = std::max(worst, sup_gap([&](ConstPoint x) { return f(x); },
                                        [&](ConstPoint x) { return A(x); }, d, lines, 9, 20000));
      }
      ok = ok && worst <= eps;
      det << "d=" << d << " eps=" << eps << " worst " << fmt(worst) << " (" << S.budget() << " cells); ";
    }
  }
  return {ok, det.str()};
}

// 7. Tractability table on a 30-point grid.
Outcome criterion7() {
  struct Row {
    double alpha, p, kappa;
    std::string label;
    int clause;
  };
  // thresholds: intractable iff alpha <= 1/(1/p - 1/2); weak iff alpha > 1/(1/max(1,p) - 1/2)
  const std::vector<Row> grid{
      {0.5, 2.0, 0.0, "curse", 1},           {2.0, 2.0, 0.0, "curse", 1},
      {10.0, 2.0, 0.0, "curse", 1},          {1e6, 2.0, 0.0, "curse", 1},
      {0.3, 1.0, 0.0, "intractable", 3},     {1.5, 1.0, 0.0, "intractable", 3},
      {2.0, 1.0, 0.0, "intractable", 3},     {2.0001, 1.0, 0.0, "weakly tractable", 4},
      {3.0, 1.0, 0.0, "weakly tractable", 4}, {6.0, 1.5, 0.0, "intractable", 3},
      {6.5, 1.5, 0.0, "weakly tractable", 4}, {5.0, 1.5, 0.0, "intractable", 3},
      {10.0, 1.9, 0.0, "intractable", 3},    {40.0, 1.9, 0.0, "weakly tractable", 4},
      {2.0 / 3.0, 0.5, 0.0, "intractable", 3}, {0.5, 0.5, 0.0, "intractable", 3},
      {1.0, 0.5, 0.0, "unknown-gap", 0},     {2.0, 0.5, 0.0, "unknown-gap", 0},
      {2.5, 0.5, 0.0, "weakly tractable", 4}, {1.5, 0.8, 0.0, "unknown-gap", 0},
      {1.0, 0.8, 0.0, "intractable", 3},     {kInf, 2.0, 0.0, "quasi-polynomially tractable", 5},
      {kInf, 1.0, 0.0, "quasi-polynomially tractable", 5},
      {kInf, 0.5, 0.0, "quasi-polynomially tractable", 5},
      {1.5, 2.0, 1.0, "polynomially tractable", 6}, {2.0, 1.0, 0.3, "polynomially tractable", 6},
      {3.0, 0.5, 0.5, "polynomially tractable", 6}, {kInf, 2.0, 0.5, "polynomially tractable", 6},
      {0.25, 0.25, 0.0, "intractable", 3},   {1.5, 0.25, 0.0, "unknown-gap", 0}};
  int matched = 0;
  std::set<int> clauses;
  bool gap_clean = true, free_flag = true;
  for (const auto& r : grid) {
    auto v = tractability_classify(r.alpha, r.p, r.kappa);
    const std::string name = tractability_name(v.label);
    if (name == r.label && v.clause == r.clause) ++matched;
    clauses.insert(v.clause);
    if (r.p < 2.0 && !v.curse_free) free_flag = false;
    if (r.p == 2.0 && v.curse_free) free_flag = false;
    if (r.label == "unknown-gap" && (v.clause != 0 || name != "unknown-gap")) gap_clean = false;
  }
  if (free_flag) clauses.insert(2);
  bool all_six = true;
  for (int c = 1; c <= 6; ++c) all_six = all_six && clauses.count(c);
  return {matched == static_cast<int>(grid.size()) && all_six && gap_clean,
          std::to_string(matched) + "/" + std::to_string(grid.size()) + " match, clauses 1-6 " +
              (all_six ? "covered" : "missing") + ", gap " + (gap_clean ? "unlabeled" : "LABELED")};
}

// 8. Univariate sine-plus-bump adversary.
Outcome criterion8() {
  const double alpha = 2.0;
  std::function<double(double)> phi = [](double x) {
    return std::abs(x) < 1 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
  };
  std::function<double(double)> dphi = [&](double x) {
    return std::abs(x) < 1 ? phi(x) * (-2.0 * x / std::pow(1.0 - x * x, 2)) : 0.0;
  };
  const double c_alpha = 1.0 / (std::pow(5.0, alpha) * grid_lip_norm({phi, dphi}, 1.0, 2001));
  const double a0 = std::numbers::pi / 4 - 0.2;
  double gamma = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = a0 + 0.4 * i / 100000.0;
    gamma = std::max({gamma, std::cos(t), std::sin(t)});
  }
  Rng rng(808);
  std::ostringstream det;
  bool ok = true;
  for (int n : {4, 16, 64}) {
    std::vector<double> coords;
    for (int i = 0; i < n; ++i) {
      coords.push_back(i % 2 ? rng.uniform(-1, 1) : rng.uniform(a0, a0 + 0.4));
    }
    auto uf = univariate_fooling(coords, alpha, 1.0, 2);
    bool agree = true;
    for (double c : coords) {
      Point x{c, 0.0};
      agree = agree && uf.f(x) == uf.f_plus(x) && uf.f(x) == uf.f_minus(x);
    }
    const bool mem = membership_check(uf.f_plus, uf.spec, 4000, 1).pass &&
                     membership_check(uf.f_minus, uf.spec, 4000, 2).pass;
    // dense scan of [-1, 1] followed by a fine scan of the best bracket
    auto gap = [&](double t) {
      Point x{t, 0.0};
      return std::abs(uf.f_plus(x) - uf.f_minus(x));
    };
    double best = 0.0, arg = 0.0;
    const int m = 400000;
    for (int i = 0; i <= m; ++i) {
      const double t = -1.0 + 2.0 * i / m;
      if (gap(t) > best) best = gap(t), arg = t;
    }
    for (int i = -2000; i <= 2000; ++i) best = std::max(best, gap(arg + i * (2.0 / m) / 1000.0));
    const double expect = 2 * (1 - gamma) * c_alpha * std::exp(-1.0) * std::pow(2.0 * n, -alpha);
    const bool close = std::abs(best - expect) <= 1e-6;
    ok = ok && agree && mem && close;
    det << "n=" << n << (agree ? "" : " DISAGREE") << (mem ? "" : " NONMEMBER") << " sup "
        << fmt(best) << " vs " << fmt(expect) << "; ";
  }
  return {ok, det.str()};
}

// 9. Byte-identical CLI output across two runs.
Outcome criterion9() {
  const fs::path root = fs::temp_directory_path() / "ridgelab_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream cfg(root / "exp.json");
    cfg << R"({"sampler":"two-step","alpha":2,"p":2,"kappa":1,"d":8,"seed":11,)"
        << R"("schedule":[24,40,72,136],"profiles":["sine","cubic_sine"],"fit_x":"n-d"})";
  }
  const std::vector<std::string> commands{
      "entropy --target ball --d 3 --p 1 --q 2 --kmin 3 --kmax 7 --seed 5",
      "entropy --target sparse:2 --d 8 --p 2 --q 2 --k 4",
      "run --sampler cover --alpha 1 --p 2 --d 3 --n 80 --profile sine --seed 3",
      "run --sampler taylor --alpha 2 --p 1 --d 3 --eps 0.5 --profile bump --seed 3",
      "run --sampler two-step --alpha 2 --p 2 --kappa 1 --d 8 --n 72 --profile cubic_sine --seed 3",
      "run --sampler taylor-zero --alpha inf --p 2 --d 4 --eps 0.1 --profile sine --seed 3",
      "--config " + (root / "exp.json").string() + " run",
      "certify --sampler cover --alpha 1 --p 2 --d 10 --n 8 --dirs canonical",
      "certify --sampler taylor --alpha 1 --p 1 --d 8 --n 8 --dirs sparse:2",
      "tractability --alpha 2 --p 0.5 --kappa 0",
  };
  int identical = 0, total = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<std::string> blobs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = root / ("c" + std::to_string(i) + "_" + std::to_string(rep));
      fs::create_directories(out);
      auto r = cli("--out " + out.string() + " " + commands[i]);
      std::string blob = std::to_string(r.code) + "\n" + r.out;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(out)) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) blob += "\n--" + f.filename().string() + "\n" + slurp(f);
      if (files.empty() || r.code == 1) blob += "\n<no output>";
      blobs.push_back(blob);
    }
    ++total;
    const bool same = blobs[0] == blobs[1] && blobs[0].find("<no output>") == std::string::npos;
    identical += same;
    if (!same && first_bad.empty()) first_bad = commands[i];
  }
  // rates reads the experiment CSV written above
  {
    const std::string csv = (root / "c6_0" / "results.csv").string();
    auto a = cli("rates --csv " + csv + " --fit-x n-d");
    auto b = cli("rates --csv " + csv + " --fit-x n-d");
    ++total;
    const bool same = a.code == b.code && a.out == b.out && a.code == 0;
    identical += same;
    if (!same && first_bad.empty()) first_bad = "rates";
  }
  std::string det = std::to_string(identical) + "/" + std::to_string(total) + " commands identical";
  if (!first_bad.empty()) det += ", first difference: " + first_bad;
  return {identical == total, det};
}

// Lattice points with |k|_1 <= s in Z^d.
double l1_lattice_count(int d, int s) {
  std::vector<double> cur(s + 1, 1.0);
  for (int dim = 1; dim <= d; ++dim) {
    std::vector<double> next(s + 1, 0.0);
    for (int r = 0; r <= s; ++r)
      for (int j = -r; j <= r; ++j) next[r] += cur[r - std::abs(j)];
    cur = next;
  }
  return cur[s];
}

// 10. Taylor-at-zero sampler for the C-infinity class.
Outcome criterion10() {
  std::ostringstream det;
  bool ok = true;
  Rng rng(1010);
  for (int d : {2, 4, 8}) {
    const auto spec = ClassSpec::make(kInf, 2.0, 0.0, d);
    for (double eps : {0.1, 0.01}) {
      int s = 1;
      while (2.0 / fact(s) > eps) ++s;
      const Point a = unit_random(d, rng);
      RidgeFunction f(a, make_sine(spec));
      TaylorAtZeroSampler S(spec, eps);
      std::size_t calls = 0;
      auto A = S.run([&](ConstPoint x) {
        ++calls;
        return f(x);
      });
      const double err = sup_gap([&](ConstPoint x) { return f(x); }, [&](ConstPoint x) { return A(x); },
                                 d, {a}, 17, d == 8 ? 3000 : 8000, 2001);
      const double logged = choose(d + s, s) * S.stencil_factor();
      const bool count_ok = S.order() == s && calls == A.provenance().points.size() &&
                            std::abs(logged - static_cast<double>(calls)) < 1e-6 &&
                            static_cast<double>(calls) == l1_lattice_count(d, s);
      const bool this_ok = err <= eps + 1e-4 && count_ok;
      ok = ok && this_ok;
      det << "d=" << d << " eps=" << eps << " s=" << s << " err " << fmt(err) << " queries " << calls
          << (count_ok ? "" : " COUNT-MISMATCH") << "; ";
    }
  }
  return {ok, det.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <ridgelab-cli>\n";
    return 1;
  }
  g_cli = argv[1];
  const std::vector<std::function<Outcome()>> checks{criterion1, criterion2, criterion3, criterion4,
                                                     criterion5, criterion6, criterion7, criterion8,
                                                     criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
