#include "ridgelab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "ridgelab/geometry.hpp"
#include "ridgelab/harness.hpp"

namespace ridgelab {

namespace {

void check_members(const std::vector<Point>& members, int d) {
  for (const Point& a : members) {
    if (static_cast<int>(a.size()) != d) throw InvalidArgument("direction has the wrong dimension");
    if (norm2(a) == 0.0) throw InvalidArgument("direction set contains the origin");
  }
}

Point project_into_ball(Point x) {
  const double r = norm2(x);
  if (r > 1.0) {
    for (double& v : x) v /= r;
  }
  return x;
}

Point random_unit(int d, Rng& rng) {
  Point u(static_cast<std::size_t>(d));
  double r = 0.0;
  do {
    for (double& v : u) v = rng.normal();
    r = norm2(u);
  } while (r == 0.0);
  for (double& v : u) v /= r;
  return u;
}

}  // namespace

DirectionSet DirectionSet::canonical(int d) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  DirectionSet s;
  s.kind = DirectionKind::Canonical;
  s.d = d;
  for (int i = 0; i < d; ++i) {
    s.members.push_back(unit_vector(d, i, 1.0));
    s.members.push_back(unit_vector(d, i, -1.0));
  }
  return s;
}

DirectionSet DirectionSet::sparse(int d, int m, double p, int budget, std::uint64_t seed) {
  SparsePacking pack = sparse_sphere_packing(d, m, p, budget, seed);
  DirectionSet s;
  s.kind = DirectionKind::SparseSphere;
  s.d = d;
  s.p = p;
  s.m = m;
  for (const Point& v : pack.net.centers()) s.members.push_back(scaled(v, 1.0 / p_norm(v, p)));
  return s;
}

DirectionSet DirectionSet::full_sphere(int d, double p, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("direction count must be positive");
  DirectionSet s;
  s.kind = DirectionKind::FullSphere;
  s.d = d;
  s.p = p;
  Rng rng(seed, 0xD1E5);
  for (int i = 0; i < count; ++i) s.members.push_back(random_direction(d, p, rng));
  return s;
}

DirectionSet DirectionSet::explicit_set(std::vector<Point> members) {
  if (members.empty()) throw InvalidArgument("explicit direction set is empty");
  DirectionSet s;
  s.kind = DirectionKind::Explicit;
  s.d = static_cast<int>(members.front().size());
  check_members(members, s.d);
  s.members = std::move(members);
  return s;
}

std::vector<Point> DirectionSet::normalized() const {
  std::vector<Point> out;
  out.reserve(members.size());
  for (const Point& a : members) out.push_back(scaled(a, 1.0 / norm2(a)));
  return out;
}

double DirectionSet::separation() const {
  const auto u = normalized();
  double best = kInf;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) best = std::min(best, p_distance(u[i], u[j], 2.0));
  return best;
}

std::string DirectionSet::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DirectionKind::Canonical: os << "canonical"; break;
    case DirectionKind::SparseSphere: os << "sparse(m=" << m << ",p=" << format_double(p) << ")"; break;
    case DirectionKind::FullSphere: os << "full_sphere(p=" << format_double(p) << ")"; break;
    case DirectionKind::Explicit: os << "explicit"; break;
  }
  os << "[d=" << d << ",size=" << members.size() << "]";
  return os.str();
}

std::optional<FoolingRidge> fooling_ridge(const std::vector<Point>& points,
                                          const DirectionSet& dirs, double eps, double alpha) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("fooling eps must lie in (0, 1)");
  if (std::isinf(alpha) || !(alpha > 0.0)) throw InvalidArgument("fooling needs a finite alpha > 0");
  const auto psi = dirs.normalized();
  std::optional<FoolingRidge> best;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    double margin = kInf;
    for (const Point& x : points) margin = std::min(margin, p_distance(x, psi[j], 2.0));
    if (!(margin > eps)) continue;
    if (best && !(margin > best->margin)) continue;
    const Point& a = dirs.members[j];
    RidgeFunction f(a, make_fooling(norm2(a), eps, alpha));
    const bool vanishes =
        std::all_of(points.begin(), points.end(), [&](const Point& x) { return f(x) == 0.0; });
    if (!vanishes) continue;  // rounding at the support edge
    best = FoolingRidge{std::move(f), j, margin};
  }
  return best;
}

Point orthogonal_direction(const std::vector<Point>& points, int d) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  if (n == 0) return unit_vector(d, 0);
  Eigen::MatrixXd at(d, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (static_cast<int>(points[j].size()) != d) throw InvalidArgument("point has the wrong dimension");
    for (int i = 0; i < d; ++i) at(i, j) = points[j][i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(at);
  const Eigen::Index rank = qr.rank();
  if (rank >= d) throw InvalidArgument("points span the whole space");
  const Eigen::MatrixXd q = qr.householderQ();
  Point a(d);
  for (int i = 0; i < d; ++i) a[i] = q(i, rank);
  const double r = norm2(a);
  for (double& v : a) v /= r;
  return a;
}

UnivariateFooling univariate_fooling(const std::vector<double>& first_coords, double alpha,
                                     double kappa, int d) {
  const int n = static_cast<int>(first_coords.size());
  if (n < 1) throw InvalidArgument("need at least one sample coordinate");
  if (!(alpha > 1.0) || std::isinf(alpha)) throw InvalidArgument("univariate fooling needs finite alpha > 1");
  const ClassSpec spec = ClassSpec::make(alpha, 2.0, kappa, d);
  const double a0 = sine_bump_left();
  const double width = 1.0 / (5.0 * n);
  const int cells = 2 * n;  // the interval has length 2/5
  int free_cell = -1;
  for (int j = 0; j < cells && free_cell < 0; ++j) {
    const double lo = a0 + j * width;
    const double hi = lo + width;
    const bool hit = std::any_of(first_coords.begin(), first_coords.end(),
                                 [&](double x) { return x > lo && x < hi; });
    if (!hit) free_cell = j;
  }
  if (free_cell < 0) throw Error("every cell of the interval holds a sample coordinate");

  UnivariateFooling out{RidgeFunction(unit_vector(d, 0), make_sine(spec)),
                        RidgeFunction(unit_vector(d, 0), make_sine(spec)),
                        RidgeFunction(unit_vector(d, 0), make_sine(spec)),
                        a0 + free_cell * width,
                        a0 + (free_cell + 1) * width,
                        a0 + (free_cell + 0.5) * width,
                        cells,
                        spec};
  auto bumped = [&](double sign) {
    const std::string id = std::string("sine_bump:sign=") + (sign > 0 ? "+" : "-") +
                           ",k=" + std::to_string(cells) + ",b=" + format_double(out.center);
    return RidgeFunction(unit_vector(d, 0),
                         make_sine_plus_bumps({sign}, cells, {out.center}, spec, id));
  };
  out.f_plus = bumped(1.0);
  out.f_minus = bumped(-1.0);
  return out;
}

BumpFamily::BumpFamily(int d, double alpha, double eps, std::vector<Point> centers)
    : d_(d), alpha_(alpha), eps_(eps), centers_(std::move(centers)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("bump family needs 0 < alpha <= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("bump family needs 0 < eps <= 1");
  // Jumping between two disjoint bumps costs a factor 2^{1-alpha} in the seminorm.
  c_ = std::pow(2.0, alpha - 1.0) / bump_lip_norm(alpha);
}

double BumpFamily::operator()(const std::vector<int>& theta, ConstPoint x) const {
  if (theta.size() != centers_.size()) throw InvalidArgument("theta length differs from family size");
  double sum = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    if (theta[j] == 0) continue;
    const double r = p_distance(x, centers_[j], 2.0) / eps_;
    if (r < 1.0) sum += theta[j] * bump_phi(r);
  }
  return amplitude() * sum;
}

std::function<double(ConstPoint)> BumpFamily::member(std::vector<int> theta) const {
  return [fam = *this, th = std::move(theta)](ConstPoint x) { return fam(th, x); };
}

double BumpFamily::separation_floor() const { return amplitude() * std::exp(-1.0); }

BumpFamily lipschitz_bump_adversary(int d, double alpha, double eps, std::uint64_t seed,
                                    int budget) {
  const Target ball = Target::ball(d, 2.0);
  Net pack = greedy_packing(target_source(ball, seed), 2.0 * eps, 2.0, budget, ball);
  if (pack.size() < 2) throw InvalidArgument("packing holds fewer than two centers; lower eps");
  return BumpFamily(d, alpha, eps, pack.centers());
}

HolderReport holder_membership_check(const std::function<double(ConstPoint)>& f, int d,
                                     double alpha, int trials, std::uint64_t seed,
                                     const std::vector<Point>& anchors, double tol) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("Hoelder check needs 0 < alpha <= 1");
  HolderReport rep;
  Rng rng(seed, 0x401D);
  double radius = 0.5;
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      radius = std::min(radius, p_distance(anchors[i], anchors[j], 2.0));

  auto record = [&](const Point& x, const Point& y) {
    const double fx = f(x);
    const double fy = f(y);
    rep.sup = std::max({rep.sup, std::abs(fx), std::abs(fy)});
    const double dist = p_distance(x, y, 1.0);
    if (dist == 0.0) return;
    const double ratio = std::abs(fx - fy) / (2.0 * std::pow(std::min(1.0, dist), alpha));
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.witness_x = x;
      rep.witness_y = y;
    }
  };
  for (int t = 0; t < trials; ++t) {
    Point x, y;
    if (!anchors.empty() && t % 2 == 1) {
      const Point& c = anchors[rng.index(anchors.size())];
      const Point dir = random_unit(d, rng);
      const double r = rng.uniform() * radius;
      x = c;
      for (int i = 0; i < d; ++i) x[i] += r * dir[i];
      x = project_into_ball(std::move(x));
      const double step = std::pow(10.0, -rng.uniform(0.0, 4.0)) * radius;
      Point u = random_unit(d, rng);
      y = x;
      for (int i = 0; i < d; ++i) y[i] += step * u[i];
      y = project_into_ball(std::move(y));
    } else {
      x = random_ball_point(d, rng);
      y = random_ball_point(d, rng);
    }
    record(x, y);
  }
  rep.pass = rep.sup <= 1.0 + tol && rep.worst_ratio <= 1.0 + tol;
  return rep;
}

std::string Certificate::status_name() const {
  switch (status) {
    case CertificateStatus::Pass: return "pass";
    case CertificateStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

double default_certificate_eps(const DirectionSet& dirs, std::size_t n) {
  if (n < 1) throw InvalidArgument("sampler budget must be positive");
  const int k = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
  EntropyOptions opts;
  opts.rel_tol = 1e-9;
  opts.max_iter = 200;
  const EntropyEstimate e = entropy_estimate(Target::finite(dirs.normalized()), k, 2.0, opts);
  return e.lower;
}

Certificate certify_lower_bound(const AdaptiveSampler& sampler, const DirectionSet& dirs,
                                const ClassSpec& spec, std::optional<double> eps) {
  if (spec.kappa > 0.0) {
    throw InvalidArgument("fooling profiles have g'(0) = 0 and lie outside classes with kappa > 0");
  }
  if (spec.smooth()) throw InvalidArgument("no fooling construction for alpha = inf");
  if (dirs.d != sampler.dim()) throw InvalidArgument("direction set and sampler differ in dimension");

  Certificate cert;
  cert.sampler = sampler.name();
  cert.alpha = spec.alpha;
  const Approximant on_zero = sampler.run([](ConstPoint) { return 0.0; });
  cert.points = on_zero.provenance().points;

  double e = eps ? *eps : default_certificate_eps(dirs, sampler.budget());
  // The fooling profile needs eps < 1.
  e = std::min(e, 1.0 - 1e-12);
  cert.eps = e;
  if (!(e > 0.0)) {
    cert.reason = "certificate radius is zero";
    return cert;
  }
  cert.adversary = fooling_ridge(cert.points, dirs, e, spec.alpha);
  if (!cert.adversary) {
    cert.reason = "every direction is within eps of a queried point";
    return cert;
  }
  const RidgeFunction& f = cert.adversary->f;
  const RidgeFunction minus = f.negated();
  const Approximant sf = sampler.run([&](ConstPoint x) { return ridge_eval(f, x); });
  const Approximant smf = sampler.run([&](ConstPoint x) { return ridge_eval(minus, x); });
  const auto& vals = sf.provenance().values;
  cert.zero_answers = std::all_of(vals.begin(), vals.end(), [](double v) { return v == 0.0; });
  cert.identical_outputs = sf == smf;
  cert.achieved = std::max(ridge_error(f, sf).value, ridge_error(minus, smf).value);
  const double a_norm = norm2(f.direction());
  cert.floor = fooling_theta(spec.alpha) * std::pow(2.0, -spec.alpha) *
               std::pow(a_norm, spec.alpha) * std::pow(e, 2.0 * spec.alpha);
  const bool ok = cert.zero_answers && cert.identical_outputs &&
                  cert.achieved >= cert.floor - cert.tolerance;
  cert.status = ok ? CertificateStatus::Pass : CertificateStatus::Fail;
  if (!ok) {
    cert.reason = !cert.zero_answers       ? "adversary answered nonzero values"
                  : !cert.identical_outputs ? "outputs on f and -f differ"
                                            : "achieved error below the floor";
  }
  return cert;
}

}  // namespace ridgelab
