#include "ridgelab/algorithms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <utility>

namespace ridgelab {

namespace {

constexpr double kQueryTol = 1e-12;

void indices_rec(int d, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == d - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    indices_rec(d, pos + 1, remaining - v, cur, out);
  }
  cur[pos] = 0;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Lattice centers of an l_q cover of the Euclidean ball, pulled radially into it.
std::vector<Point> projected_cover(int d, double eps, double q) {
  const Net net = grid_cover(Target::ball(d, 2.0), eps, q);
  std::vector<Point> out;
  out.reserve(net.size());
  for (const Point& c : net.centers()) {
    const double r = norm2(c);
    out.push_back(r > 1.0 ? scaled(c, 1.0 / r) : c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct BudgetCover {
  double eps;
  std::vector<Point> centers;
};

// Finest lattice cover whose size times `per_center` fits in n. When only the
// origin fits, axis points +-e_i are added in pairs while the budget lasts.
BudgetCover budget_cover(int d, double q, std::size_t n, std::size_t per_center) {
  if (per_center == 0 || n < per_center) {
    throw BudgetExceeded("budget " + std::to_string(n) + " below one cell (" +
                         std::to_string(per_center) + " queries)");
  }
  const std::size_t cells = n / per_center;
  const Target ball = Target::ball(d, 2.0);
  auto fits = [&](double eps) {
    try {
      return grid_cover_count(ball, eps, q, cells) <= cells;
    } catch (const BudgetExceeded&) {
      return false;
    }
  };
  double hi = ball.max_norm(q);
  double lo = hi / 2.0;
  for (int guard = 0; fits(lo) && guard < 60; ++guard) {
    hi = lo;
    lo /= 2.0;
  }
  for (int it = 0; it < 40; ++it) {
    const double mid = std::sqrt(lo * hi);
    (fits(mid) ? hi : lo) = mid;
  }
  BudgetCover out{hi, projected_cover(d, hi, q)};
  if (out.centers.size() == 1) {
    for (int i = 0; i < d && out.centers.size() + 2 <= cells; ++i) {
      out.centers.push_back(unit_vector(d, i, 1.0));
      out.centers.push_back(unit_vector(d, i, -1.0));
    }
  }
  return out;
}

std::size_t nearest_index(const std::vector<Point>& centers, ConstPoint x, double q) {
  std::size_t best = 0;
  double best_dist = kInf;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double dist = p_distance(x, centers[i], q);
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

Oracle session_oracle(QuerySession& session) {
  return [&session](ConstPoint x) { return session.ask(x); };
}

Provenance provenance_of(const QuerySession& session) {
  return Provenance{session.points(), session.values()};
}

void check_order(const ClassSpec& spec) {
  if (spec.smooth()) throw InvalidArgument("sampler needs a finite smoothness alpha");
}

}  // namespace

double factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  return std::tgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

double multi_factorial(const MultiIndex& gamma) {
  double r = 1.0;
  for (int g : gamma) r *= factorial(g);
  return r;
}

int order(const MultiIndex& gamma) {
  int r = 0;
  for (int g : gamma) r += g;
  return r;
}

std::vector<MultiIndex> multi_indices_exact(int d, int s) {
  if (d < 1 || s < 0) throw InvalidArgument("multi-indices need d >= 1 and s >= 0");
  std::vector<MultiIndex> out;
  MultiIndex cur(d, 0);
  indices_rec(d, 0, s, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices(int d, int s) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= s; ++j) {
    auto layer = multi_indices_exact(d, j);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

double TaylorModel::operator()(ConstPoint x) const {
  if (x.size() != center.size()) throw InvalidArgument("dimension mismatch in Taylor model");
  const std::size_t d = center.size();
  Point z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = x[i] - center[i];
  double sum = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    double term = coeffs[k];
    for (std::size_t i = 0; i < d; ++i) term *= ipow(z[i], indices[k][i]);
    sum += term;
  }
  return sum;
}

TaylorModel exact_taylor(const RidgeFunction& f, ConstPoint center, int s) {
  if (static_cast<int>(center.size()) != f.dim()) throw InvalidArgument("center dimension mismatch");
  TaylorModel m;
  m.center.assign(center.begin(), center.end());
  m.s = s;
  m.indices = multi_indices(f.dim(), s);
  m.coeffs.reserve(m.indices.size());
  for (const auto& g : m.indices) m.coeffs.push_back(f.partial(g, center) / multi_factorial(g));
  return m;
}

QuerySession::QuerySession(Oracle f, int d, std::size_t budget)
    : f_(std::move(f)), d_(d), budget_(budget) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
}

double QuerySession::ask(ConstPoint x) {
  if (static_cast<int>(x.size()) != d_) throw InvalidArgument("query has the wrong dimension");
  if (norm2(x) > 1.0 + kQueryTol) {
    throw DomainError("query point outside the unit ball (norm " + format_double(norm2(x)) + ")");
  }
  if (points_.size() >= budget_) {
    throw BudgetExceeded("query budget of " + std::to_string(budget_) + " exhausted");
  }
  // +0.0 folds -0.0 into 0.0 so that f and -f give identical answer records.
  const double v = f_(x) + 0.0;
  points_.emplace_back(x.begin(), x.end());
  values_.push_back(v);
  return v;
}

bool QuerySession::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double UnivariateInterpolant::operator()(double t) const {
  const int k = static_cast<int>(nodes.size());
  if (k == 0) return 0.0;
  if (k == 1) return values[0];
  t = std::clamp(t, nodes.front(), nodes.back());
  const double step = (nodes.back() - nodes.front()) / (k - 1);
  int cell = static_cast<int>(std::floor((t - nodes.front()) / step));
  cell = std::clamp(cell, 0, k - 2);
  if (s == 0) {
    const int j = (t - nodes[cell] <= nodes[cell + 1] - t) ? cell : cell + 1;
    return values[j];
  }
  const int start = std::min((cell / s) * s, k - 1 - s);
  double sum = 0.0;
  for (int i = start; i <= start + s; ++i) {
    double w = 1.0;
    for (int j = start; j <= start + s; ++j) {
      if (j != i) w *= (t - nodes[j]) / (nodes[i] - nodes[j]);
    }
    sum += w * values[i];
  }
  return sum;
}

Approximant::Approximant(int d, Form f, Provenance prov)
    : d_(d), form_(std::move(f)), prov_(std::move(prov)) {}

Approximant Approximant::zero(int d, Provenance prov) {
  return Approximant(d, form::Zero{}, std::move(prov));
}

double Approximant::operator()(ConstPoint x) const {
  if (static_cast<int>(x.size()) != d_) throw InvalidArgument("approximant evaluated off-dimension");
  struct Visitor {
    ConstPoint x;
    double operator()(const form::Zero&) const { return 0.0; }
    double operator()(const form::PiecewiseConstant& f) const {
      return f.values[nearest_index(f.centers, x, f.q)];
    }
    double operator()(const form::PiecewiseTaylor& f) const {
      return f.models[nearest_index(f.centers, x, f.q)](x);
    }
    double operator()(const form::RecoveredRidge& f) const {
      return f.profile(dot(f.direction, x));
    }
    double operator()(const form::GlobalTaylor& f) const { return f.model(x); }
  };
  return std::visit(Visitor{x}, form_);
}

std::string Approximant::kind() const {
  static const char* names[] = {"zero", "piecewise-constant", "piecewise-taylor",
                                "recovered-ridge", "global-taylor"};
  return names[form_.index()];
}

std::optional<Point> Approximant::ridge_direction() const {
  if (const auto* r = std::get_if<form::RecoveredRidge>(&form_)) return r->direction;
  return std::nullopt;
}

Approximant AdaptiveSampler::run(const Oracle& f) const {
  QuerySession session(f, dim(), budget());
  return interact(session);
}

// The order-s remainder is at most 2/s! |x - x0|_{p'}^alpha, so cells of this
// radius keep the error below eps^alpha.
double cell_radius(double eps, int s, double alpha) {
  return eps * std::pow(std::min(1.0, factorial(s) / 2.0), 1.0 / alpha);
}

CoverSampler::CoverSampler(int d, double q, double eps, std::vector<Point> centers)
    : d_(d), q_(q), eps_(eps), centers_(std::move(centers)) {}

CoverSampler::CoverSampler(const ClassSpec& spec, double eps)
    : d_(spec.d), q_(spec.p_prime), eps_(eps) {
  if (!(spec.alpha <= 1.0)) throw InvalidArgument("cover sampler needs alpha <= 1");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  centers_ = projected_cover(d_, cell_radius(eps, 0, spec.alpha), q_);
}

CoverSampler CoverSampler::for_budget(const ClassSpec& spec, std::size_t n) {
  if (!(spec.alpha <= 1.0)) throw InvalidArgument("cover sampler needs alpha <= 1");
  BudgetCover bc = budget_cover(spec.d, spec.p_prime, n, 1);
  const double eps = bc.eps * bc.eps / cell_radius(bc.eps, 0, spec.alpha);
  return CoverSampler(spec.d, spec.p_prime, eps, std::move(bc.centers));
}

Approximant CoverSampler::interact(QuerySession& session) const {
  std::vector<double> values;
  values.reserve(centers_.size());
  for (const Point& c : centers_) values.push_back(session.ask(c));
  if (session.all_zero()) return Approximant::zero(d_, provenance_of(session));
  return Approximant(d_, form::PiecewiseConstant{centers_, q_, std::move(values)},
                     provenance_of(session));
}

std::map<std::string, double> CoverSampler::info() const {
  return {{"cells", static_cast<double>(centers_.size())}, {"eps", eps_}};
}

double effective_fd_step(int s, double fd_step) {
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be positive");
  // Order-s differences divide by h^s; a larger step keeps roundoff below truncation.
  return std::max(fd_step, std::pow(DBL_EPSILON, 1.0 / (s + 2)));
}

std::size_t stencil_point_count(int d, int s) {
  double total = 0.0;
  for (int i = 0; i <= std::min(d, s); ++i) total += std::ldexp(binomial(d, i) * binomial(s, i), i);
  return static_cast<std::size_t>(total);
}

FdResult taylor_coeffs_fd(const Oracle& f, ConstPoint center, int s, double fd_step) {
  if (s < 0) throw InvalidArgument("Taylor order must be non-negative");
  const int d = static_cast<int>(center.size());
  if (d < 1) throw InvalidArgument("empty center");
  const double h = s == 0 ? 0.0 : effective_fd_step(s, fd_step);
  if (norm2(center) + s * h > 1.0 + kDomainTol) {
    throw DomainError("finite-difference stencil leaves the unit ball");
  }

  std::map<std::vector<int>, double> memo;
  Point x(d);
  auto sample = [&](const std::vector<int>& k) {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    for (int i = 0; i < d; ++i) x[i] = center[i] + k[i] * h;
    const double v = f(x);
    memo.emplace(k, v);
    return v;
  };

  FdResult out;
  out.step = h;
  out.model.center.assign(center.begin(), center.end());
  out.model.s = s;
  out.model.indices = multi_indices(d, s);
  out.model.coeffs.reserve(out.model.indices.size());

  std::vector<int> j(d), k(d);
  for (const MultiIndex& gamma : out.model.indices) {
    // D^gamma f ~ prod_i delta_{2h}^{gamma_i} f / (2h)^{|gamma|}; the central
    // difference of order g uses offsets (g - 2 j_i) h with weights (-1)^j C(g, j).
    std::fill(j.begin(), j.end(), 0);
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (int i = 0; i < d; ++i) {
        k[i] = gamma[i] - 2 * j[i];
        w *= binomial(gamma[i], j[i]) * ((j[i] % 2) ? -1.0 : 1.0);
      }
      sum += w * sample(k);
      int i = 0;
      while (i < d && ++j[i] > gamma[i]) j[i++] = 0;
      if (i == d) break;
    }
    const int g = order(gamma);
    const double deriv = g == 0 ? sum : sum / ipow(2.0 * h, g);
    out.model.coeffs.push_back(deriv / multi_factorial(gamma));
  }
  out.queries = memo.size();
  return out;
}

TaylorCoverSampler::TaylorCoverSampler(int d, double q, double eps, int s, double fd_step,
                                       std::vector<Point> cells)
    : d_(d), q_(q), eps_(eps), s_(s), fd_step_(fd_step), cells_(std::move(cells)) {
  // Expansion points sit far enough inside the ball for the whole stencil.
  const double margin = s_ == 0 ? 0.0 : s_ * effective_fd_step(s_, fd_step_);
  if (margin >= 1.0) throw InvalidArgument("finite-difference step too large for the unit ball");
  expansion_.reserve(cells_.size());
  for (const Point& c : cells_) {
    const double r = norm2(c);
    expansion_.push_back(r > 1.0 - margin ? scaled(c, (1.0 - margin) / r) : c);
  }
}

TaylorCoverSampler::TaylorCoverSampler(const ClassSpec& spec, double eps, double fd_step)
    : TaylorCoverSampler(spec.d, spec.p_prime, eps, std::max(spec.s, 0), fd_step,
                         (check_order(spec),
                          projected_cover(spec.d, cell_radius(eps, std::max(spec.s, 0), spec.alpha),
                                          spec.p_prime))) {}

TaylorCoverSampler TaylorCoverSampler::for_budget(const ClassSpec& spec, std::size_t n,
                                                  double fd_step) {
  check_order(spec);
  const int s = spec.s;
  BudgetCover bc = budget_cover(spec.d, spec.p_prime, n, stencil_point_count(spec.d, s));
  const double eps = bc.eps * bc.eps / cell_radius(bc.eps, s, spec.alpha);
  return TaylorCoverSampler(spec.d, spec.p_prime, eps, s, fd_step, std::move(bc.centers));
}

std::size_t TaylorCoverSampler::budget() const {
  return cells_.size() * stencil_point_count(d_, s_);
}

Approximant TaylorCoverSampler::interact(QuerySession& session) const {
  const Oracle ask = session_oracle(session);
  std::vector<TaylorModel> models;
  models.reserve(cells_.size());
  for (const Point& x0 : expansion_) models.push_back(taylor_coeffs_fd(ask, x0, s_, fd_step_).model);
  if (session.all_zero()) return Approximant::zero(d_, provenance_of(session));
  return Approximant(d_, form::PiecewiseTaylor{cells_, q_, std::move(models)},
                     provenance_of(session));
}

std::map<std::string, double> TaylorCoverSampler::info() const {
  return {{"cells", static_cast<double>(cells_.size())},
          {"eps", eps_},
          {"order", static_cast<double>(s_)},
          {"stencil", static_cast<double>(stencil_point_count(d_, s_))}};
}

RecoveryParams RecoveryParams::make(double eps, double kappa, double beta) {
  if (!(eps > 0.0)) throw InvalidArgument("recovery eps must be positive");
  if (!(kappa > 0.0 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in (0, 1]");
  RecoveryParams r;
  r.eps = eps;
  r.kappa = kappa;
  r.beta = beta;
  r.delta = eps * kappa / (2.0 + eps);
  r.h = std::pow(r.delta / 2.0, 1.0 / beta);
  return r;
}

DirectionEstimate recover_direction(const Oracle& f, const RecoveryParams& params, int d) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  if (!(params.h > 0.0 && params.h <= 1.0)) throw InvalidArgument("recovery step outside (0, 1]");
  DirectionEstimate out;
  const Point origin(d, 0.0);
  out.f0 = f(origin);
  out.raw.resize(d);
  for (int i = 0; i < d; ++i) {
    out.raw[i] = (f(unit_vector(d, i, params.h)) - out.f0) / params.h;
  }
  out.queries = static_cast<std::size_t>(d) + 1;
  const double r = norm2(out.raw);
  if (r == 0.0) throw InvalidArgument("difference quotients vanish; |g'(0)| >= kappa violated");
  out.direction = scaled(out.raw, 1.0 / r);
  return out;
}

UnivariateInterpolant univariate_sampler(const std::function<double(double)>& g, int k, int s) {
  if (s < 0) throw InvalidArgument("degree must be non-negative");
  if (k < s + 1 || k < 1) throw InvalidArgument("need at least s+1 nodes");
  UnivariateInterpolant out;
  out.s = s;
  out.nodes.resize(k);
  out.values.resize(k);
  for (int i = 0; i < k; ++i) {
    out.nodes[i] = k == 1 ? 0.0 : -1.0 + 2.0 * i / (k - 1);
    out.values[i] = g(out.nodes[i]);
  }
  return out;
}

TwoStepSampler::TwoStepSampler(const ClassSpec& spec, std::size_t n)
    : d_(spec.d), n_(n), s_(spec.s) {
  if (!(spec.kappa > 0.0)) throw InvalidArgument("two-step sampler needs kappa > 0");
  check_order(spec);
  if (!(spec.alpha > 1.0)) throw InvalidArgument("two-step sampler needs alpha > 1");
  const std::size_t need = static_cast<std::size_t>(d_ + s_ + 2);
  if (n < need) {
    throw BudgetExceeded("two-step sampler needs n >= d+s+2 = " + std::to_string(need));
  }
  const double k = static_cast<double>(n - d_);
  const double eps = std::clamp(std::pow(k, -spec.alpha), 1e-300, 0.5);
  params_ = RecoveryParams::make(eps, spec.kappa, std::min(1.0, spec.alpha - 1.0));
  // An odd node count puts t = 0 on the grid, where f(0) is already known.
  const int avail = static_cast<int>(n - d_);
  nodes_ = avail % 2 ? avail : avail - 1;
}

Approximant TwoStepSampler::interact(QuerySession& session) const {
  const Oracle ask = session_oracle(session);
  DirectionEstimate dir;
  try {
    dir = recover_direction(ask, params_, d_);
  } catch (const InvalidArgument&) {
    // Flat difference quotients: no direction to follow, fall back to f(0).
    const double f0 = session.values().front();
    if (session.all_zero()) return Approximant::zero(d_, provenance_of(session));
    return Approximant(d_, form::GlobalTaylor{TaylorModel{Point(d_, 0.0), 0, {MultiIndex(d_, 0)}, {f0}}},
                       provenance_of(session));
  }
  const double f0 = dir.f0;
  auto line = [&](double t) {
    if (t == 0.0) return f0;
    return ask(scaled(dir.direction, t));
  };
  UnivariateInterpolant profile = univariate_sampler(line, nodes_, s_);
  if (session.all_zero()) return Approximant::zero(d_, provenance_of(session));
  return Approximant(d_, form::RecoveredRidge{dir.direction, std::move(profile)},
                     provenance_of(session));
}

std::map<std::string, double> TwoStepSampler::info() const {
  return {{"nodes", static_cast<double>(nodes_)},
          {"recovery_eps", params_.eps},
          {"h", params_.h},
          {"delta", params_.delta}};
}

int taylor_zero_order(double eps, int d, TaylorZeroVariant variant) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
  for (int s = 1; s <= 400; ++s) {
    const double bound = variant == TaylorZeroVariant::Ridge
                             ? 2.0 / factorial(s)
                             : 2.0 * std::pow(static_cast<double>(d), s / 2.0) / factorial(s - 1);
    if (bound <= eps) return s;
  }
  throw InvalidArgument("no Taylor order reaches the requested accuracy");
}

TaylorAtZeroSampler::TaylorAtZeroSampler(const ClassSpec& spec, double eps,
                                         TaylorZeroVariant variant, double fd_step)
    : d_(spec.d), s_(taylor_zero_order(eps, spec.d, variant)), fd_step_(fd_step) {
  if (!spec.smooth()) throw InvalidArgument("Taylor-at-zero sampler needs alpha = inf");
  if (s_ * effective_fd_step(s_, fd_step_) > 1.0) {
    throw InvalidArgument("finite-difference stencil does not fit in the unit ball");
  }
  queries_ = stencil_point_count(d_, s_);
}

Approximant TaylorAtZeroSampler::interact(QuerySession& session) const {
  const Point origin(d_, 0.0);
  FdResult fd = taylor_coeffs_fd(session_oracle(session), origin, s_, fd_step_);
  if (session.all_zero()) return Approximant::zero(d_, provenance_of(session));
  return Approximant(d_, form::GlobalTaylor{std::move(fd.model)}, provenance_of(session));
}

std::size_t TaylorAtZeroSampler::coefficient_count() const {
  return static_cast<std::size_t>(binomial(d_ + s_, s_));
}

double TaylorAtZeroSampler::stencil_factor() const {
  return static_cast<double>(queries_) / static_cast<double>(coefficient_count());
}

std::map<std::string, double> TaylorAtZeroSampler::info() const {
  return {{"order", static_cast<double>(s_)},
          {"coefficients", static_cast<double>(coefficient_count())},
          {"stencil_factor", stencil_factor()},
          {"queries", static_cast<double>(queries_)}};
}

}  // namespace ridgelab
