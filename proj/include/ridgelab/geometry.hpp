#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ridgelab/core.hpp"

namespace ridgelab {

// (sum |x_i|^p)^{1/p}, max |x_i| for p = inf. A quasi-norm when p < 1.
double p_norm(ConstPoint x, double p);
double p_distance(ConstPoint x, ConstPoint y, double p);

enum class TargetKind { Ball, Sphere, SparseSphere, Finite };

// The set being covered or packed.
struct Target {
  TargetKind kind = TargetKind::Ball;
  int d = 1;
  double p = 2.0;  // ball / sphere exponent
  int m = 1;       // sparsity for SparseSphere (Euclidean-normalized sign vectors)
  std::vector<Point> points;  // Finite only

  static Target ball(int d, double p);
  static Target sphere(int d, double p);
  static Target sparse_sphere(int d, int m);
  static Target finite(std::vector<Point> points);

  std::string describe() const;
  // Largest q-norm of a target point.
  double max_norm(double q) const;
};

// Seeded draw from the target (uniform for balls, cone measure for spheres).
Point sample_target(const Target& target, Rng& rng);

enum class NetRole { Cover, Packing };

class Net {
 public:
  Net(std::vector<Point> centers, double radius, double q, NetRole role,
      Target target);

  const std::vector<Point>& centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  bool empty() const { return centers_.empty(); }
  double radius() const { return radius_; }
  double q() const { return q_; }
  NetRole role() const { return role_; }
  const Target& target() const { return target_; }

  // Index of the nearest center in the net's norm; ties go to the lowest index.
  std::size_t nearest(ConstPoint x) const;
  double distance_to_nearest(ConstPoint x) const;
  double min_pairwise_distance() const;

 private:
  std::vector<Point> centers_;
  double radius_;
  double q_;
  NetRole role_;
  Target target_;
};

inline constexpr std::size_t kMaxCoverCenters = 100'000'000;

// Cell-centered lattice of spacing 2 eps / d^{1/q}; keeps the cells meeting
// the target (ball or sphere). Throws BudgetExceeded past max_centers.
Net grid_cover(const Target& target, double eps, double q,
               std::size_t max_centers = kMaxCoverCenters);
// Number of centers grid_cover would produce, without materializing them.
std::size_t grid_cover_count(const Target& target, double eps, double q,
                             std::size_t max_centers = kMaxCoverCenters);

struct CoverAudit {
  bool pass = true;
  double worst = 0.0;
  Point witness;
  std::size_t samples = 0;
};

// Randomized check that every sampled target point lies within the radius.
CoverAudit audit_cover(const Net& net, int samples, std::uint64_t seed);

using CandidateSource = std::function<std::optional<Point>()>;

// Keeps candidates at distance > eps from all kept points; stops after
// `budget` consecutive rejections or when the source is exhausted.
Net greedy_packing(const CandidateSource& source, double eps, double q,
                   int budget, Target target = Target{});

CandidateSource target_source(const Target& target, std::uint64_t seed);
CandidateSource list_source(std::vector<Point> points);

struct EntropyEstimate {
  int k = 1;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> formula_value;
};

struct EntropyOptions {
  double rel_tol = 1e-2;
  int max_iter = 40;
  std::uint64_t seed = 0;
  int max_log2_centers = 24;
};

EntropyEstimate entropy_estimate(const Target& target, int k, double q,
                                 const EntropyOptions& opts = {});
// Estimates for k_min..k_max with brackets made monotone in k.
std::vector<EntropyEstimate> entropy_profile(const Target& target, int k_min,
                                             int k_max, double q,
                                             const EntropyOptions& opts = {});

// Three-regime envelope for e_k of the l_p ball in l_q (base-2 logs).
double schuett_bound(double p, double q, int k, int d);

// (lower, upper) envelopes for e_k of the l_p sphere in l_q.
std::pair<double, double> sphere_entropy_bound(double p, double q, int k, int d);

struct SparsePacking {
  Net net;
  double target_size = 0.0;  // (d/(4m))^{m/2}
  bool reached = false;
  bool exhaustive = false;
};

// Packing of m-sparse unit sign vectors with l2 separation > 1/sqrt(2).
SparsePacking sparse_sphere_packing(int d, int m, double p, int budget = 2000,
                                    std::uint64_t seed = 0);

}  // namespace ridgelab
