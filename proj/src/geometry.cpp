#include "ridgelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <unordered_map>

namespace ridgelab {

namespace {

double inv(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

// Factor c with ||x - y|| <= c (||x - z|| + ||z - y||) for the l_q quasi-norm.
double triangle_factor(double q) { return q >= 1.0 ? 1.0 : std::pow(2.0, 1.0 / q - 1.0); }

struct VecHash {
  std::size_t operator()(const std::vector<long long>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Accumulates per-coordinate contributions to an l_p norm without the final root.
struct NormAccumulator {
  double p;
  double add(double acc, double v) const {
    v = std::abs(v);
    if (std::isinf(p)) return std::max(acc, v);
    return acc + std::pow(v, p);
  }
  // acc compared against the unit threshold
  bool below_one(double acc) const { return acc < 1.0; }
};

double min_abs_on(double lo, double hi) {
  if (lo <= 0.0 && hi >= 0.0) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

double max_abs_on(double lo, double hi) { return std::max(std::abs(lo), std::abs(hi)); }

// Enumerates lattice cells meeting a ball or sphere. visit(index vector) returns
// false to abort.
template <typename Visit>
void enumerate_cells(const Target& target, double h, Visit&& visit) {
  const int d = target.d;
  const long long jlo = static_cast<long long>(std::floor(-1.0 / h));
  const long long jhi = static_cast<long long>(std::ceil(1.0 / h)) - 1;
  const NormAccumulator acc{target.p};
  const bool sphere = target.kind == TargetKind::Sphere;
  std::vector<long long> idx(static_cast<std::size_t>(d));
  bool stop = false;
  auto rec = [&](auto&& self, int i, double min_acc, double max_acc) -> void {
    if (stop) return;
    if (i == d) {
      if (!acc.below_one(min_acc)) return;
      if (sphere && max_acc < 1.0) return;
      if (!visit(idx)) stop = true;
      return;
    }
    for (long long j = jlo; j <= jhi && !stop; ++j) {
      const double lo = static_cast<double>(j) * h;
      const double hi = static_cast<double>(j + 1) * h;
      const double mn = acc.add(min_acc, min_abs_on(lo, hi));
      if (!acc.below_one(mn)) continue;
      idx[static_cast<std::size_t>(i)] = j;
      self(self, i + 1, mn, acc.add(max_acc, max_abs_on(lo, hi)));
    }
  };
  rec(rec, 0, 0.0, 0.0);
}

double lattice_spacing(int d, double eps, double q) {
  return 2.0 * eps / std::pow(static_cast<double>(d), inv(q));
}

void check_lattice_target(const Target& target) {
  if (target.kind != TargetKind::Ball && target.kind != TargetKind::Sphere) {
    throw InvalidArgument("grid_cover supports ball and sphere targets only");
  }
  if (target.d < 1) throw InvalidArgument("d must be at least 1");
}

struct PackingState {
  double eps;
  double q;
  int d;
  bool use_grid;
  std::vector<Point> kept;
  std::unordered_map<std::vector<long long>, std::vector<std::size_t>, VecHash> grid;

  std::vector<long long> cell(ConstPoint x) const {
    std::vector<long long> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      c[i] = static_cast<long long>(std::floor(x[i] / eps));
    return c;
  }

  bool admissible(ConstPoint x) const {
    if (!use_grid) {
      for (const Point& y : kept)
        if (p_distance(x, y, q) <= eps) return false;
      return true;
    }
    // ||.||_inf <= ||.||_q, so conflicts sit in neighboring cells.
    const auto base = cell(x);
    std::vector<long long> probe(base.size());
    const std::size_t total = static_cast<std::size_t>(std::pow(3.0, d));
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < base.size(); ++i) {
        probe[i] = base[i] + static_cast<long long>(c % 3) - 1;
        c /= 3;
      }
      auto it = grid.find(probe);
      if (it == grid.end()) continue;
      for (std::size_t k : it->second)
        if (p_distance(x, kept[k], q) <= eps) return false;
    }
    return true;
  }

  void add(Point x) {
    if (use_grid) grid[cell(x)].push_back(kept.size());
    kept.push_back(std::move(x));
  }
};

Net greedy_packing_impl(const CandidateSource& source, double eps, double q, int budget,
                        Target target, std::size_t stop_after) {
  if (budget < 1) throw InvalidArgument("budget must be at least 1");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  PackingState st{eps, q, target.d, false, {}, {}};
  int rejections = 0;
  bool first = true;
  while (rejections < budget && st.kept.size() < stop_after) {
    std::optional<Point> cand = source();
    if (!cand) break;
    if (first) {
      st.d = static_cast<int>(cand->size());
      st.use_grid = st.d <= 6;
      first = false;
    }
    if (st.admissible(*cand)) {
      st.add(std::move(*cand));
      rejections = 0;
    } else {
      ++rejections;
    }
  }
  return Net(std::move(st.kept), eps, q, NetRole::Packing, std::move(target));
}

// Greedy farthest-point centers; returns the covering radius achieved with n centers.
double gonzalez_radius(const std::vector<Point>& pts, std::size_t n, double q) {
  if (pts.empty()) return 0.0;
  if (n >= pts.size()) return 0.0;
  std::vector<double> dist(pts.size(), kInf);
  std::size_t next = 0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      dist[i] = std::min(dist[i], p_distance(pts[i], pts[next], q));
    next = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  }
  return *std::max_element(dist.begin(), dist.end());
}

// Largest min pairwise distance over subsets of size r (exhaustive).
double best_subset_separation(const std::vector<Point>& pts, std::size_t r, double q) {
  const std::size_t n = pts.size();
  if (r > n) return 0.0;
  if (r <= 1) return kInf;
  std::vector<std::vector<double>> dm(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dm[i][j] = p_distance(pts[i], pts[j], q);
  double best = 0.0;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start, double cur) -> void {
    if (cur <= best) return;
    if (pick.size() == r) {
      best = cur;
      return;
    }
    for (std::size_t i = start; i + (r - pick.size()) <= n; ++i) {
      double m = cur;
      for (std::size_t j : pick) m = std::min(m, dm[i][j]);
      pick.push_back(i);
      self(self, i + 1, m);
      pick.pop_back();
    }
  };
  rec(rec, 0, kInf);
  return best;
}

std::vector<Point> enumerate_sparse(int d, int m, std::size_t limit, bool& complete) {
  std::vector<Point> out;
  complete = true;
  const double v = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<int> support;
  auto rec = [&](auto&& self, int start) -> void {
    if (!complete) return;
    if (static_cast<int>(support.size()) == m) {
      for (unsigned long long signs = 0; signs < (1ULL << m); ++signs) {
        if (out.size() >= limit) {
          complete = false;
          return;
        }
        Point x(static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < m; ++i)
          x[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])] =
              ((signs >> i) & 1ULL) ? -v : v;
        out.push_back(std::move(x));
      }
      return;
    }
    for (int i = start; i < d; ++i) {
      support.push_back(i);
      self(self, i + 1);
      support.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double p_norm(ConstPoint x, double p) {
  if (x.empty()) throw InvalidArgument("p_norm of an empty vector");
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 2.0) return norm2(x);
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

double p_distance(ConstPoint x, ConstPoint y, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  return p_norm(difference(x, y), p);
}

Target Target::ball(int d, double p) {
  if (d < 1) throw InvalidArgument("d must be at least 1");
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  Target t;
  t.kind = TargetKind::Ball;
  t.d = d;
  t.p = p;
  return t;
}

Target Target::sphere(int d, double p) {
  Target t = ball(d, p);
  t.kind = TargetKind::Sphere;
  return t;
}

Target Target::sparse_sphere(int d, int m) {
  if (m < 1 || m > d) throw InvalidArgument("sparsity m must lie in [1, d]");
  Target t;
  t.kind = TargetKind::SparseSphere;
  t.d = d;
  t.p = 2.0;
  t.m = m;
  return t;
}

Target Target::finite(std::vector<Point> points) {
  Target t;
  t.kind = TargetKind::Finite;
  t.d = points.empty() ? 1 : static_cast<int>(points.front().size());
  t.points = std::move(points);
  return t;
}

std::string Target::describe() const {
  switch (kind) {
    case TargetKind::Ball: return "ball(d=" + std::to_string(d) + ",p=" + format_double(p) + ")";
    case TargetKind::Sphere: return "sphere(d=" + std::to_string(d) + ",p=" + format_double(p) + ")";
    case TargetKind::SparseSphere:
      return "sparse(d=" + std::to_string(d) + ",m=" + std::to_string(m) + ")";
    case TargetKind::Finite: return "finite(" + std::to_string(points.size()) + " points)";
  }
  return "unknown";
}

double Target::max_norm(double q) const {
  switch (kind) {
    case TargetKind::Ball:
    case TargetKind::Sphere:
      if (p <= q) return 1.0;
      return std::pow(static_cast<double>(d), inv(q) - inv(p));
    case TargetKind::SparseSphere:
      return std::pow(static_cast<double>(m), inv(q) - 0.5);
    case TargetKind::Finite: {
      double best = 0.0;
      for (const Point& x : points) best = std::max(best, p_norm(x, q));
      return best;
    }
  }
  return 1.0;
}

Point sample_target(const Target& target, Rng& rng) {
  const int d = target.d;
  switch (target.kind) {
    case TargetKind::Finite:
      if (target.points.empty()) throw InvalidArgument("empty finite target");
      return target.points[rng.index(target.points.size())];
    case TargetKind::SparseSphere: {
      std::vector<int> idx(static_cast<std::size_t>(d));
      std::iota(idx.begin(), idx.end(), 0);
      Point x(static_cast<std::size_t>(d), 0.0);
      const double v = 1.0 / std::sqrt(static_cast<double>(target.m));
      for (int i = 0; i < target.m; ++i) {
        const std::size_t j = static_cast<std::size_t>(i) + rng.index(static_cast<std::size_t>(d - i));
        std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
        x[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = rng.uniform() < 0.5 ? -v : v;
      }
      return x;
    }
    case TargetKind::Ball:
    case TargetKind::Sphere:
      break;
  }
  const double p = target.p;
  if (target.kind == TargetKind::Ball && p == 2.0) return random_ball_point(d, rng);
  Point x(static_cast<std::size_t>(d));
  if (std::isinf(p)) {
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    if (target.kind == TargetKind::Sphere) {
      const std::size_t face = rng.index(static_cast<std::size_t>(d));
      x[face] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    return x;
  }
  // Generalized Gaussian construction: uniform on the ball when an extra
  // exponential variable enters the normalization, cone measure otherwise.
  double s = 0.0;
  do {
    s = 0.0;
    for (double& v : x) {
      const double g = std::pow(rng.gamma(1.0 / p), 1.0 / p);
      v = rng.uniform() < 0.5 ? -g : g;
      s += std::pow(std::abs(v), p);
    }
  } while (s == 0.0);
  if (target.kind == TargetKind::Ball) s += rng.gamma(1.0);
  const double scale = std::pow(s, -1.0 / p);
  for (double& v : x) v *= scale;
  return x;
}

Net::Net(std::vector<Point> centers, double radius, double q, NetRole role, Target target)
    : centers_(std::move(centers)),
      radius_(radius),
      q_(q),
      role_(role),
      target_(std::move(target)) {}

std::size_t Net::nearest(ConstPoint x) const {
  if (centers_.empty()) throw InvalidArgument("nearest on an empty net");
  std::size_t best = 0;
  double bd = kInf;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double dist = p_distance(x, centers_[i], q_);
    if (dist < bd) {
      bd = dist;
      best = i;
    }
  }
  return best;
}

double Net::distance_to_nearest(ConstPoint x) const {
  return p_distance(x, centers_[nearest(x)], q_);
}

double Net::min_pairwise_distance() const {
  double best = kInf;
  for (std::size_t i = 0; i < centers_.size(); ++i)
    for (std::size_t j = i + 1; j < centers_.size(); ++j)
      best = std::min(best, p_distance(centers_[i], centers_[j], q_));
  return best;
}

Net grid_cover(const Target& target, double eps, double q, std::size_t max_centers) {
  check_lattice_target(target);
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const int d = target.d;
  if (eps >= target.max_norm(q)) {
    return Net({Point(static_cast<std::size_t>(d), 0.0)}, eps, q, NetRole::Cover, target);
  }
  const double h = lattice_spacing(d, eps, q);
  std::vector<Point> centers;
  bool overflow = false;
  enumerate_cells(target, h, [&](const std::vector<long long>& idx) {
    if (centers.size() >= max_centers) {
      overflow = true;
      return false;
    }
    Point c(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) c[i] = (static_cast<double>(idx[i]) + 0.5) * h;
    centers.push_back(std::move(c));
    return true;
  });
  if (overflow) {
    throw BudgetExceeded("grid cover needs more than " + std::to_string(max_centers) + " centers");
  }
  return Net(std::move(centers), eps, q, NetRole::Cover, target);
}

std::size_t grid_cover_count(const Target& target, double eps, double q, std::size_t max_centers) {
  check_lattice_target(target);
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (eps >= target.max_norm(q)) return 1;
  const double h = lattice_spacing(target.d, eps, q);
  std::size_t count = 0;
  bool overflow = false;
  enumerate_cells(target, h, [&](const std::vector<long long>&) {
    if (count >= max_centers) {
      overflow = true;
      return false;
    }
    ++count;
    return true;
  });
  if (overflow) {
    throw BudgetExceeded("grid cover needs more than " + std::to_string(max_centers) + " centers");
  }
  return count;
}

CoverAudit audit_cover(const Net& net, int samples, std::uint64_t seed) {
  CoverAudit out;
  Rng rng(seed, 0xA0D17);
  for (int i = 0; i < samples; ++i) {
    const Point x = sample_target(net.target(), rng);
    const double dist = net.distance_to_nearest(x);
    if (dist > out.worst) {
      out.worst = dist;
      out.witness = x;
    }
  }
  out.samples = static_cast<std::size_t>(samples);
  out.pass = out.worst <= net.radius() * (1.0 + 1e-12);
  return out;
}

Net greedy_packing(const CandidateSource& source, double eps, double q, int budget, Target target) {
  return greedy_packing_impl(source, eps, q, budget, std::move(target),
                             std::numeric_limits<std::size_t>::max());
}

CandidateSource target_source(const Target& target, std::uint64_t seed) {
  if (target.kind == TargetKind::Finite) return list_source(target.points);
  auto rng = std::make_shared<Rng>(seed, 0x9ACC);
  return [rng, target]() -> std::optional<Point> { return sample_target(target, *rng); };
}

CandidateSource list_source(std::vector<Point> points) {
  auto pts = std::make_shared<std::vector<Point>>(std::move(points));
  auto pos = std::make_shared<std::size_t>(0);
  return [pts, pos]() -> std::optional<Point> {
    if (*pos >= pts->size()) return std::nullopt;
    return (*pts)[(*pos)++];
  };
}

double schuett_bound(double p, double q, int k, int d) {
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  if (p > q) throw InvalidArgument("schuett_bound needs p <= q");
  if (k < 1 || d < 1) throw InvalidArgument("k and d must be at least 1");
  const double e = inv(p) - inv(q);
  const double kk = k, dd = d;
  if (kk <= std::log2(dd)) return 1.0;
  if (k < d) return std::pow(std::log2(1.0 + dd / kk) / kk, e);
  return std::pow(2.0, -kk / dd) * std::pow(dd, -e);
}

std::pair<double, double> sphere_entropy_bound(double p, double q, int k, int d) {
  if (d < 2) throw InvalidArgument("sphere bounds need d >= 2");
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  if (p > q) throw InvalidArgument("sphere bounds need p <= q");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const double e = inv(p) - inv(q);
  const double kk = k, dd = d;
  if (k >= d) {
    const double pbar = std::min(1.0, p);
    const double factor = std::pow(dd, -e);
    return {std::pow(2.0, -kk / (dd - 1.0)) * factor, std::pow(2.0, -kk / (dd - pbar)) * factor};
  }
  const double v = kk <= std::log2(dd) ? 1.0 : std::pow(std::log2(1.0 + dd / kk) / kk, e);
  return {v, v};
}

EntropyEstimate entropy_estimate(const Target& target_in, int k, double q,
                                 const EntropyOptions& opts) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (k - 1 > opts.max_log2_centers) {
    throw BudgetExceeded("2^(k-1) centers exceed the enumeration guard");
  }
  const std::size_t n_cov = std::size_t{1} << (k - 1);
  const double sep = 2.0 * triangle_factor(q);

  Target target = target_in;
  if (target.kind == TargetKind::Sphere && target.d == 1) {
    target = Target::finite({Point{-1.0}, Point{1.0}});
  }
  if (target.kind == TargetKind::SparseSphere) {
    const double log_count = log_binomial(target.d, target.m) + target.m * std::log(2.0);
    if (log_count <= std::log(4096.0)) {
      bool complete = true;
      target = Target::finite(enumerate_sparse(target.d, target.m, 4096, complete));
    }
  }

  EntropyEstimate est;
  est.k = k;
  if (target_in.kind == TargetKind::Ball && target_in.p <= q) {
    est.formula_value = schuett_bound(target_in.p, q, k, target_in.d);
  } else if (target_in.kind == TargetKind::Sphere && target_in.d >= 2 && target_in.p <= q) {
    est.formula_value = sphere_entropy_bound(target_in.p, q, k, target_in.d).first;
  }

  if (target.kind == TargetKind::Ball && target.d == 1) {
    // [-1, 1] in every norm: N intervals of radius r cover length at most 2 N r.
    est.lower = est.upper = 1.0 / static_cast<double>(n_cov);
    return est;
  }

  if (target.kind == TargetKind::Finite) {
    const auto& pts = target.points;
    est.upper = gonzalez_radius(pts, n_cov, q);
    if (n_cov + 1 > pts.size()) {
      est.lower = 0.0;
    } else if (pts.size() <= 16) {
      est.lower = best_subset_separation(pts, n_cov + 1, q) / sep;
    } else {
      // Bisection on greedy packings of the listed points.
      auto feasible = [&](double eps) {
        Net net = greedy_packing_impl(list_source(pts), sep * eps, q,
                                      static_cast<int>(pts.size()) + 1, target, n_cov + 1);
        return net.size() > n_cov;
      };
      double hi = est.upper > 0.0 ? est.upper : target.max_norm(q);
      double lo = hi / 2.0;
      int guard = 0;
      while (!feasible(lo) && guard++ < 60) {
        hi = lo;
        lo /= 2.0;
      }
      if (guard >= 60) lo = 0.0;
      for (int it = 0; it < opts.max_iter && lo > 0.0 && hi / lo > 1.0 + opts.rel_tol; ++it) {
        const double mid = std::sqrt(lo * hi);
        (feasible(mid) ? lo : hi) = mid;
      }
      est.lower = std::min(lo, est.upper);
    }
    return est;
  }

  // Upper bracket: smallest lattice radius whose cover fits into 2^{k-1} centers.
  Target lattice_target = target;
  if (lattice_target.kind == TargetKind::SparseSphere) lattice_target = Target::sphere(target.d, 2.0);
  auto cover_fits = [&](double eps) {
    try {
      return grid_cover_count(lattice_target, eps, q, n_cov) <= n_cov;
    } catch (const BudgetExceeded&) {
      return false;
    }
  };
  double hi = lattice_target.max_norm(q);
  double lo = hi / 2.0;
  int guard = 0;
  while (cover_fits(lo) && guard++ < 60) {
    hi = lo;
    lo /= 2.0;
  }
  for (int it = 0; it < opts.max_iter && hi / lo > 1.0 + opts.rel_tol; ++it) {
    const double mid = std::sqrt(lo * hi);
    (cover_fits(mid) ? hi : lo) = mid;
  }
  est.upper = hi;

  // Lower bracket: largest eps with a packing of more than 2^{k-1} points at
  // separation 2 eps (scaled for quasi-norms).
  std::vector<Point> pool;
  if (target.d == 1 && target.kind == TargetKind::Ball) {
    const std::size_t m = std::min<std::size_t>(1024 * n_cov + 1, std::size_t{1} << 22);
    for (std::size_t i = 0; i < m; ++i)
      pool.push_back(Point{-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(m - 1)});
  } else {
    const std::size_t m = std::min<std::size_t>(std::max<std::size_t>(4096, 32 * n_cov),
                                                std::size_t{1} << 21);
    Rng rng(opts.seed, 0xE17);
    pool.reserve(m);
    for (std::size_t i = 0; i < m; ++i) pool.push_back(sample_target(target, rng));
  }
  auto packs = [&](double eps) {
    Net net = greedy_packing_impl(list_source(pool), sep * eps, q,
                                  static_cast<int>(pool.size()) + 1, target, n_cov + 1);
    return net.size() > n_cov;
  };
  double phi = est.upper;
  double plo = phi / 2.0;
  guard = 0;
  while (!packs(plo) && guard++ < 60) {
    phi = plo;
    plo /= 2.0;
  }
  if (guard >= 60) {
    est.lower = 0.0;
    return est;
  }
  for (int it = 0; it < opts.max_iter && phi / plo > 1.0 + opts.rel_tol; ++it) {
    const double mid = std::sqrt(plo * phi);
    (packs(mid) ? plo : phi) = mid;
  }
  est.lower = std::min(plo, est.upper);
  return est;
}

std::vector<EntropyEstimate> entropy_profile(const Target& target, int k_min, int k_max,
                                             double q, const EntropyOptions& opts) {
  if (k_min < 1 || k_max < k_min) throw InvalidArgument("need 1 <= k_min <= k_max");
  std::vector<EntropyEstimate> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(entropy_estimate(target, k, q, opts));
  // e_k is non-increasing in k, so each bound also holds for its neighbors.
  for (std::size_t i = 1; i < out.size(); ++i) out[i].upper = std::min(out[i].upper, out[i - 1].upper);
  for (std::size_t i = out.size() - 1; i-- > 0;) out[i].lower = std::max(out[i].lower, out[i + 1].lower);
  return out;
}

SparsePacking sparse_sphere_packing(int d, int m, double p, int budget, std::uint64_t seed) {
  if (m < 1 || m > d) throw InvalidArgument("sparsity m must lie in [1, d]");
  if (!(p > 0.0 && p <= 2.0)) throw InvalidArgument("p must lie in (0, 2]");
  if (budget < 1) throw InvalidArgument("budget must be at least 1");
  const double sep = 1.0 / std::sqrt(2.0);
  const Target target = Target::sparse_sphere(d, m);
  SparsePacking out{Net({}, sep, 2.0, NetRole::Packing, target), 0.0, false, false};
  out.target_size = std::pow(static_cast<double>(d) / (4.0 * m), m / 2.0);
  const std::size_t cap = static_cast<std::size_t>(budget);

  const double log_count = log_binomial(d, m) + m * std::log(2.0);
  Net net = out.net;
  if (log_count <= std::log(1e5)) {
    bool complete = true;
    std::vector<Point> all = enumerate_sparse(d, m, 100000, complete);
    Rng rng(seed, 0x5BA5);
    std::shuffle(all.begin(), all.end(), rng.engine());
    net = greedy_packing_impl(list_source(std::move(all)), sep, 2.0,
                              std::numeric_limits<int>::max(), target, cap);
    out.exhaustive = true;
  } else {
    net = greedy_packing_impl(target_source(target, seed), sep, 2.0, budget, target, cap);
  }
  out.net = std::move(net);
  out.reached = static_cast<double>(out.net.size()) >= std::min(out.target_size, static_cast<double>(cap));
  return out;
}

}  // namespace ridgelab
