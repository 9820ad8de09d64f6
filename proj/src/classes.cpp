#include "ridgelab/classes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "ridgelab/geometry.hpp"

namespace ridgelab {

namespace {

constexpr int kNormalizerGrid = 100001;  // odd, so t = 0 is a grid point

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// alpha (alpha-1) ... (alpha-j+1)
double falling(double alpha, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= alpha - i;
  return r;
}

std::string param_string(const std::string& kind,
                         const std::vector<std::pair<std::string, std::string>>& kv) {
  if (kv.empty()) return kind;
  std::string out = kind + ":";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (i) out += ",";
    out += kv[i].first + "=" + kv[i].second;
  }
  return out;
}

std::string alpha_string(double alpha) {
  return std::isinf(alpha) ? "inf" : format_double(alpha);
}

void require_finite_alpha(const ClassSpec& spec, const char* kind) {
  if (spec.smooth()) {
    throw InvalidArgument(std::string(kind) +
                          " profile is not admitted for alpha = inf");
  }
}

template <typename F>
double cached(std::map<double, double>& cache, std::mutex& mu, double key, F compute) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

// Largest Hoelder quotient |v_i - v_j| / (2 min{1,|t_i - t_j|}^beta) over grid pairs.
double holder_quotient(const std::vector<double>& t, const std::vector<double>& v,
                       double beta) {
  const std::size_t n = t.size();
  auto q = [&](std::size_t i, std::size_t j) {
    const double dist = std::abs(t[i] - t[j]);
    if (dist == 0.0) return 0.0;
    return std::abs(v[i] - v[j]) / (2.0 * std::pow(std::min(1.0, dist), beta));
  };
  double best = 0.0;
  if (n <= 4096) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, q(i, j));
    return best;
  }
  // Short lags on the full grid.
  const std::size_t max_lag = 256;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < std::min(n, i + max_lag + 1); ++j)
      best = std::max(best, q(i, j));
  // All pairs on a coarse subgrid, then a local search around the best pair.
  const std::size_t stride = (n + 4095) / 4096;
  std::vector<std::size_t> coarse;
  for (std::size_t i = 0; i < n; i += stride) coarse.push_back(i);
  if (coarse.back() != n - 1) coarse.push_back(n - 1);
  std::size_t bi = 0, bj = 0;
  double coarse_best = -1.0;
  for (std::size_t a = 0; a < coarse.size(); ++a)
    for (std::size_t b = a + 1; b < coarse.size(); ++b) {
      const double val = q(coarse[a], coarse[b]);
      if (val > coarse_best) {
        coarse_best = val;
        bi = coarse[a];
        bj = coarse[b];
      }
    }
  best = std::max(best, coarse_best);
  const std::size_t ilo = bi >= stride ? bi - stride : 0;
  const std::size_t jlo = bj >= stride ? bj - stride : 0;
  for (std::size_t i = ilo; i <= std::min(n - 1, bi + stride); ++i)
    for (std::size_t j = jlo; j <= std::min(n - 1, bj + stride); ++j)
      if (i != j) best = std::max(best, q(i, j));
  // Separations of at least 1: the quotient is |v_i - v_j| / 2.
  std::vector<double> suf_max(n + 1, -kInf), suf_min(n + 1, kInf);
  for (std::size_t i = n; i-- > 0;) {
    suf_max[i] = std::max(suf_max[i + 1], v[i]);
    suf_min[i] = std::min(suf_min[i + 1], v[i]);
  }
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && t[j] - t[i] < 1.0) ++j;
    if (j >= n) break;
    best = std::max(best, std::max(suf_max[j] - v[i], v[i] - suf_min[j]) / 2.0);
  }
  return best;
}

Profile positive_power(double alpha, double shift, double theta, std::string id) {
  const int s = strict_floor(alpha);
  auto eval = [alpha, shift, theta](int j, double t) {
    const double u = t - shift;
    if (u <= 0.0) return 0.0;
    return theta * falling(alpha, j) * std::pow(u, alpha - j);
  };
  return Profile(std::move(id), alpha, s, eval, 1.0, theta);
}

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key,
                    std::optional<double> fallback, const std::string& id) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw InvalidArgument("profile '" + id + "': missing parameter '" + key + "'");
  }
  try {
    std::size_t pos = 0;
    const std::string& s = it->second;
    if (s == "inf") return kInf;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("profile '" + id + "': parameter '" + key +
                          "' is not a number");
  }
}

}  // namespace

int strict_floor(double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (std::isinf(alpha)) return -1;
  const double c = std::ceil(alpha);
  return static_cast<int>(c) - 1;
}

double dual_exponent(double p) {
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  if (p <= 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

ClassSpec ClassSpec::make(double alpha, double p, double kappa, int d) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(p > 0.0 && p <= 2.0)) throw InvalidArgument("p must lie in (0, 2]");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in [0, 1]");
  if (kappa > 0.0 && !(alpha > 1.0)) {
    throw InvalidArgument("kappa > 0 requires alpha > 1");
  }
  if (d < 1) throw InvalidArgument("d must be at least 1");
  ClassSpec c;
  c.alpha = alpha;
  c.p = p;
  c.kappa = kappa;
  c.d = d;
  c.p_prime = dual_exponent(p);
  if (std::isinf(alpha)) {
    c.s = -1;
    c.beta = 0.0;
  } else {
    c.s = strict_floor(alpha);
    c.beta = alpha - c.s;
  }
  return c;
}

Profile::Profile(std::string id, double alpha, int max_order, Evaluator eval,
                 double lip_bound, double normalizer)
    : id_(std::move(id)),
      alpha_(alpha),
      max_order_(max_order),
      eval_(std::move(eval)),
      lip_bound_(lip_bound),
      normalizer_(normalizer) {}

double Profile::deriv(int j, double t) const {
  if (j < 0 || j > max_order_) {
    throw InvalidArgument("profile '" + id_ + "' has no derivative of order " +
                          std::to_string(j));
  }
  return eval_(j, t);
}

std::optional<double> Profile::g0_deriv() const {
  if (max_order_ < 1) return std::nullopt;
  return eval_(1, 0.0);
}

Profile Profile::scaled(double c) const {
  auto inner = eval_;
  std::string id = id_ + (id_.find(':') == std::string::npos ? ":" : ",") +
                   "scale=" + format_double(c);
  return Profile(std::move(id), alpha_, max_order_,
                 [inner, c](int j, double t) { return c * inner(j, t); },
                 std::abs(c) * lip_bound_, c * normalizer_);
}

RidgeFunction::RidgeFunction(Point direction, Profile profile)
    : a_(std::move(direction)), g_(std::move(profile)) {
  if (a_.empty()) throw InvalidArgument("ridge direction must be non-empty");
}

double RidgeFunction::operator()(ConstPoint x) const {
  return g_.value(dot(a_, x));
}

double RidgeFunction::partial(const std::vector<int>& gamma, ConstPoint x) const {
  int order = 0;
  double mono = 1.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    order += gamma[i];
    mono *= std::pow(a_[i], gamma[i]);
  }
  return g_.deriv(order, dot(a_, x)) * mono;
}

RidgeFunction RidgeFunction::negated() const {
  return RidgeFunction(a_, g_.scaled(-1.0));
}

double ridge_eval(const RidgeFunction& f, ConstPoint x, double tol) {
  if (x.size() != f.direction().size()) {
    throw InvalidArgument("point dimension does not match the ridge direction");
  }
  const double r = norm2(x);
  if (r > 1.0 + tol) {
    throw DomainError("point with norm " + format_double(r) +
                      " lies outside the unit ball");
  }
  return f(x);
}

double bump_phi(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double bump_phi_deriv(int n, double x) {
  const double phi = bump_phi(x);
  if (phi == 0.0) return 0.0;
  if (n == 0) return phi;
  // phi' = q' phi with q = -1/(1-x^2); Leibniz on (q' phi)^{(m)}.
  std::vector<double> dq(static_cast<std::size_t>(n) + 1);
  double fact = 1.0;
  for (int j = 1; j <= n; ++j) {
    fact *= j;
    const double left = std::pow(1.0 - x, -(j + 1));
    const double right = std::pow(1.0 + x, -(j + 1)) * ((j % 2) ? -1.0 : 1.0);
    dq[static_cast<std::size_t>(j)] = -0.5 * fact * (left + right);
  }
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  d[0] = phi;
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
      acc += binomial(m, k) * dq[static_cast<std::size_t>(k + 1)] *
             d[static_cast<std::size_t>(m - k)];
    }
    d[static_cast<std::size_t>(m + 1)] = acc;
  }
  return d[static_cast<std::size_t>(n)];
}

double bump_lip_norm(double alpha) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw InvalidArgument("bump norm needs a finite positive alpha");
  }
  static std::map<double, double> cache;
  static std::mutex mu;
  return cached(cache, mu, alpha, [alpha] {
    Profile raw("phi", alpha, kUnboundedOrder,
                [](int j, double t) { return bump_phi_deriv(j, t); }, kInf, 1.0);
    return seminorm_estimate(raw, kNormalizerGrid);
  });
}

double psi_constant(double alpha) {
  return 1.0 / (std::pow(5.0, alpha) * bump_lip_norm(alpha));
}

double sine_bump_left() { return std::numbers::pi / 4.0 - 0.2; }

double sine_bump_gamma() {
  // cos decreases and sin increases on the interval, so the max of the two is
  // cos at the left end (equal to sin at the right end).
  return std::cos(sine_bump_left());
}

double fooling_theta(double alpha) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw InvalidArgument("fooling profile needs a finite positive alpha");
  }
  static std::map<double, double> cache;
  static std::mutex mu;
  return cached(cache, mu, alpha, [alpha] {
    return 1.0 / seminorm_estimate(positive_power(alpha, 0.0, 1.0, "raw"),
                                   kNormalizerGrid);
  });
}

Profile make_zero(const ClassSpec& spec) {
  return Profile("zero", spec.alpha, kUnboundedOrder,
                 [](int, double) { return 0.0; }, 0.0, 0.0);
}

Profile make_constant(double c, const ClassSpec& spec) {
  if (std::abs(c) > 1.0) throw InvalidArgument("constant profile needs |c| <= 1");
  return Profile(param_string("constant", {{"c", format_double(c)}}), spec.alpha,
                 kUnboundedOrder,
                 [c](int j, double) { return j == 0 ? c : 0.0; }, std::abs(c), c);
}

Profile make_linear(const ClassSpec& spec, double slope) {
  if (std::abs(slope) > 1.0) throw InvalidArgument("linear profile needs |slope| <= 1");
  std::string id = slope == 1.0 ? "linear"
                                : param_string("linear", {{"slope", format_double(slope)}});
  return Profile(std::move(id), spec.alpha, kUnboundedOrder,
                 [slope](int j, double t) {
                   if (j == 0) return slope * t;
                   return j == 1 ? slope : 0.0;
                 },
                 std::abs(slope), slope);
}

Profile make_sine(const ClassSpec& spec) {
  return Profile("sine", spec.alpha, kUnboundedOrder,
                 [](int j, double t) {
                   switch (j % 4) {
                     case 0: return std::sin(t);
                     case 1: return std::cos(t);
                     case 2: return -std::sin(t);
                     default: return -std::cos(t);
                   }
                 },
                 1.0, 1.0);
}

Profile make_cubic_sine(double c, const ClassSpec& spec) {
  // |c| <= 0.1 keeps every derivative of sin t + c t^3 within [-1, 1] on [-1, 1].
  if (std::abs(c) > 0.1) throw InvalidArgument("cubic_sine needs |c| <= 0.1");
  Profile sine = make_sine(spec);
  return Profile(param_string("cubic_sine", {{"c", format_double(c)}}), spec.alpha,
                 kUnboundedOrder,
                 [sine, c](int j, double t) {
                   double poly = 0.0;
                   if (j == 0) poly = c * t * t * t;
                   else if (j == 1) poly = 3.0 * c * t * t;
                   else if (j == 2) poly = 6.0 * c * t;
                   else if (j == 3) poly = 6.0 * c;
                   return sine.deriv(j, t) + poly;
                 },
                 1.0, 1.0);
}

Profile make_monomial(int j, const ClassSpec& spec) {
  if (j < 0 || j > 30) throw InvalidArgument("monomial degree must lie in [0, 30]");
  auto raw_eval = [j](int order, double t) {
    if (order > j) return 0.0;
    return falling(j, order) * std::pow(t, j - order);
  };
  double norm = 1.0;
  if (spec.smooth()) {
    norm = std::tgamma(j + 1.0);  // sup of all derivatives is j!
  } else if (j > 0) {
    static std::map<double, double> cache[31];
    static std::mutex mu;
    norm = cached(cache[j], mu, spec.alpha, [&] {
      Profile raw("raw", spec.alpha, kUnboundedOrder, raw_eval, kInf, 1.0);
      return seminorm_estimate(raw, kNormalizerGrid);
    });
  }
  const double c = 1.0 / norm;
  return Profile(param_string("monomial", {{"j", std::to_string(j)}}), spec.alpha,
                 kUnboundedOrder,
                 [raw_eval, c](int order, double t) { return c * raw_eval(order, t); },
                 1.0, c);
}

Profile make_bump(const ClassSpec& spec) {
  require_finite_alpha(spec, "bump");
  const double norm = bump_lip_norm(spec.alpha);
  const double c = std::min(1.0, 1.0 / norm);
  return Profile("bump", spec.alpha, kUnboundedOrder,
                 [c](int j, double t) { return c * bump_phi_deriv(j, t); },
                 std::min(1.0, norm), c);
}

Profile make_psi(int k, double b, const ClassSpec& spec) {
  require_finite_alpha(spec, "psi");
  if (k < 1) throw InvalidArgument("psi needs k >= 1");
  const double alpha = spec.alpha;
  const double c = psi_constant(alpha) / std::pow(k, alpha);
  const double scale = 5.0 * k;
  return Profile(param_string("psi", {{"k", std::to_string(k)}, {"b", format_double(b)}}),
                 alpha, kUnboundedOrder,
                 [c, scale, b](int j, double t) {
                   return c * std::pow(scale, j) * bump_phi_deriv(j, scale * (t - b));
                 },
                 1.0, c);
}

Profile make_sine_plus_bumps(const std::vector<double>& weights, int k,
                             const std::vector<double>& centers,
                             const ClassSpec& spec, std::string id) {
  require_finite_alpha(spec, "sine_plus_bumps");
  if (weights.size() != centers.size()) {
    throw InvalidArgument("sine_plus_bumps: weights and centers differ in length");
  }
  for (double w : weights) {
    if (std::abs(w) > 1.0) throw InvalidArgument("sine_plus_bumps: |weight| must be <= 1");
  }
  const double gamma = sine_bump_gamma();
  const double c = (1.0 - gamma) * psi_constant(spec.alpha) / std::pow(k, spec.alpha);
  const double scale = 5.0 * k;
  Profile sine = make_sine(spec);
  return Profile(std::move(id), spec.alpha, kUnboundedOrder,
                 [sine, weights, centers, c, scale](int j, double t) {
                   double acc = sine.deriv(j, t);
                   const double pw = std::pow(scale, j);
                   for (std::size_t i = 0; i < weights.size(); ++i) {
                     if (weights[i] == 0.0) continue;
                     const double u = scale * (t - centers[i]);
                     if (std::abs(u) >= 1.0) continue;
                     acc += weights[i] * c * pw * bump_phi_deriv(j, u);
                   }
                   return acc;
                 },
                 1.0, c);
}

Profile make_sine_plus_bumps(const std::vector<int>& theta, int k, const ClassSpec& spec) {
  if (k < 1 || theta.size() != static_cast<std::size_t>(k)) {
    throw InvalidArgument("sine_plus_bumps: theta must have k entries");
  }
  std::vector<double> w, b;
  std::string bits;
  for (int j = 1; j <= k; ++j) {
    const int th = theta[static_cast<std::size_t>(j - 1)];
    if (th != 0 && th != 1) throw InvalidArgument("sine_plus_bumps: theta must be 0/1");
    w.push_back(th);
    b.push_back(sine_bump_left() + (2.0 * j - 1.0) / (5.0 * k));
    bits += static_cast<char>('0' + th);
  }
  return make_sine_plus_bumps(
      w, k, b, spec, param_string("sine_plus_bumps", {{"theta", bits}, {"k", std::to_string(k)}}));
}

Profile make_fooling(double a_norm, double eps, double alpha) {
  if (std::isinf(alpha)) throw InvalidArgument("fooling profile does not exist for alpha = inf");
  if (!(alpha > 0.0)) throw InvalidArgument("fooling profile needs alpha > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("fooling profile needs 0 < eps < 1");
  if (!(a_norm > 0.0 && a_norm <= 1.0)) throw InvalidArgument("fooling profile needs 0 < anorm <= 1");
  const double shift = a_norm * (1.0 - eps * eps / 2.0);
  return positive_power(alpha, shift, fooling_theta(alpha),
                        param_string("fooling", {{"anorm", format_double(a_norm)},
                                                 {"eps", format_double(eps)},
                                                 {"alpha", alpha_string(alpha)}}));
}

ProfileRequest parse_profile_id(const std::string& id) {
  ProfileRequest req;
  const auto colon = id.find(':');
  req.kind = id.substr(0, colon);
  if (req.kind.empty()) throw InvalidArgument("empty profile id");
  if (colon == std::string::npos) return req;
  std::stringstream ss(id.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument("profile '" + id + "': expected key=value, got '" + item + "'");
    }
    req.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return req;
}

Profile catalog_profile(const std::string& id, const ClassSpec& spec) {
  ProfileRequest req = parse_profile_id(id);
  std::optional<double> scale;
  if (auto it = req.params.find("scale"); it != req.params.end()) {
    scale = parse_double(req.params, "scale", std::nullopt, id);
    req.params.erase(it);
  }
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : req.params) {
      bool ok = false;
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw InvalidArgument("profile '" + id + "': unknown parameter '" + k + "'");
    }
  };
  const std::string& kind = req.kind;
  auto num = [&](const char* key, std::optional<double> fb = std::nullopt) {
    return parse_double(req.params, key, fb, id);
  };
  auto integer = [&](const char* key, std::optional<double> fb = std::nullopt) {
    const double v = num(key, fb);
    if (v != std::floor(v)) throw InvalidArgument("profile '" + id + "': '" + key + "' must be an integer");
    return static_cast<int>(v);
  };

  std::optional<Profile> out;
  if (kind == "zero") {
    allow({});
    out = make_zero(spec);
  } else if (kind == "constant") {
    allow({"c"});
    out = make_constant(num("c", 1.0), spec);
  } else if (kind == "linear") {
    allow({"slope"});
    out = make_linear(spec, num("slope", 1.0));
  } else if (kind == "sine") {
    allow({});
    out = make_sine(spec);
  } else if (kind == "cubic_sine") {
    allow({"c"});
    out = make_cubic_sine(num("c", 0.1), spec);
  } else if (kind == "monomial") {
    allow({"j"});
    out = make_monomial(integer("j"), spec);
  } else if (kind == "bump") {
    allow({});
    out = make_bump(spec);
  } else if (kind == "psi") {
    allow({"k", "b"});
    out = make_psi(integer("k"), num("b", 0.0), spec);
  } else if (kind == "sine_plus_bumps") {
    allow({"theta", "k"});
    auto it = req.params.find("theta");
    if (it == req.params.end()) throw InvalidArgument("profile '" + id + "': missing 'theta'");
    std::vector<int> theta;
    for (char ch : it->second) {
      if (ch != '0' && ch != '1') throw InvalidArgument("profile '" + id + "': theta must be a 0/1 string");
      theta.push_back(ch - '0');
    }
    const int k = integer("k", static_cast<double>(theta.size()));
    out = make_sine_plus_bumps(theta, k, spec);
  } else if (kind == "fooling") {
    allow({"anorm", "eps", "alpha"});
    const double alpha = num("alpha", spec.alpha);
    if (alpha != spec.alpha) {
      throw InvalidArgument("profile '" + id + "': alpha differs from the class alpha");
    }
    out = make_fooling(num("anorm", 1.0), num("eps"), alpha);
  } else {
    throw InvalidArgument("unknown profile kind '" + kind + "'");
  }
  if (scale) return out->scaled(*scale);
  return *out;
}

double seminorm_estimate(const Profile& g, int grid_size) {
  if (grid_size < 2) throw InvalidArgument("grid_size must be at least 2");
  const std::size_t n = static_cast<std::size_t>(grid_size);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  t[n - 1] = 1.0;
  if (std::isinf(g.alpha())) {
    const int top = std::min(kSmoothCheckOrder, g.max_order());
    double sup = 0.0;
    for (int j = 0; j <= top; ++j)
      for (double ti : t) sup = std::max(sup, std::abs(g.deriv(j, ti)));
    return sup;
  }
  const int s = strict_floor(g.alpha());
  const double beta = g.alpha() - s;
  if (g.max_order() < s) {
    throw InvalidArgument("profile '" + g.id() + "' has no derivative evaluator of order " +
                          std::to_string(s));
  }
  double sup = 0.0;
  std::vector<double> v(n);
  for (int j = 0; j <= s; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double val = g.deriv(j, t[i]);
      sup = std::max(sup, std::abs(val));
      if (j == s) v[i] = val;
    }
  }
  return std::max(sup, holder_quotient(t, v, beta));
}

MembershipReport membership_check(const RidgeFunction& f, const ClassSpec& spec,
                                  int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  MembershipReport rep;
  const Point& a = f.direction();
  const Profile& g = f.profile();
  const int d = f.dim();
  if (d != spec.d) {
    rep.failures.push_back("dimension " + std::to_string(d) + " differs from class d=" +
                           std::to_string(spec.d));
  }
  rep.direction_norm = p_norm(a, spec.p);
  if (rep.direction_norm > 1.0 + tol) {
    rep.failures.push_back("direction norm " + format_double(rep.direction_norm) + " exceeds 1");
  }
  const int top = spec.smooth() ? kSmoothCheckOrder : spec.s;
  if (g.max_order() < top) {
    rep.failures.push_back("profile lacks derivatives up to order " + std::to_string(top));
    rep.pass = false;
    return rep;
  }
  if (spec.kappa > 0.0) {
    auto g1 = g.g0_deriv();
    if (!g1 || std::abs(*g1) < spec.kappa - tol) {
      rep.failures.push_back("|g'(0)| is below kappa");
    }
  }

  std::size_t istar = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(a[i]) > std::abs(a[istar])) istar = i;
  const double amax = std::abs(a[istar]);
  const double anorm = norm2(a);
  Point u = anorm > 0.0 ? scaled(a, 1.0 / anorm) : unit_vector(d, 0);
  const Point axis = unit_vector(d, static_cast<int>(istar));

  auto check_point = [&](const Point& x) {
    const double t = dot(a, x);
    for (int j = 0; j <= top; ++j) {
      const double val = std::abs(g.deriv(j, t)) * std::pow(amax, j);
      if (val > rep.worst_derivative) {
        rep.worst_derivative = val;
        rep.worst_derivative_order = j;
        rep.derivative_witness = x;
      }
    }
  };
  auto check_pair = [&](const Point& x, const Point& y) {
    if (spec.smooth()) return;
    const double l1 = p_norm(difference(x, y), 1.0);
    if (l1 == 0.0) return;
    const double diff = std::pow(amax, spec.s) *
                        std::abs(g.deriv(spec.s, dot(a, x)) - g.deriv(spec.s, dot(a, y)));
    const double ratio = diff / (2.0 * std::pow(std::min(1.0, l1), spec.beta));
    if (ratio > rep.worst_holder_ratio) {
      rep.worst_holder_ratio = ratio;
      rep.holder_witness_x = x;
      rep.holder_witness_y = y;
    }
  };

  Rng rng(seed, 0x3E3B);
  const Point origin(static_cast<std::size_t>(d), 0.0);
  check_point(origin);
  check_point(u);
  check_point(scaled(u, -1.0));
  check_pair(u, scaled(u, -1.0));
  for (int trial = 0; trial < trials; ++trial) {
    Point x, y;
    switch (trial % 3) {
      case 0:
        x = random_ball_point(d, rng);
        y = random_ball_point(d, rng);
        break;
      default: {
        const Point& dir = (trial % 3 == 1) ? u : axis;
        const double t = rng.uniform(-1.0, 1.0);
        const double step = std::pow(10.0, -rng.uniform(0.0, 4.0)) * (rng.uniform() < 0.5 ? -1 : 1);
        const double t2 = std::clamp(t + step, -1.0, 1.0);
        x = scaled(dir, t);
        y = scaled(dir, t2);
        break;
      }
    }
    check_point(x);
    check_point(y);
    check_pair(x, y);
  }
  if (rep.worst_derivative > 1.0 + tol) {
    rep.failures.push_back("derivative of order " + std::to_string(rep.worst_derivative_order) +
                           " reaches " + format_double(rep.worst_derivative));
  }
  if (rep.worst_holder_ratio > 1.0 + tol) {
    rep.failures.push_back("Hoelder quotient reaches " + format_double(rep.worst_holder_ratio));
  }
  rep.pass = rep.failures.empty();
  return rep;
}

Point random_direction(int d, double p, Rng& rng, double norm) {
  Point a(static_cast<std::size_t>(d));
  double n = 0.0;
  do {
    for (double& v : a) v = rng.normal();
    n = p_norm(a, p);
  } while (n == 0.0);
  for (double& v : a) v *= norm / n;
  return a;
}

}  // namespace ridgelab
