#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ridgelab/algorithms.hpp"
#include "ridgelab/classes.hpp"
#include "ridgelab/core.hpp"

namespace ridgelab {

enum class DirectionKind { Canonical, SparseSphere, FullSphere, Explicit };

// Candidate ridge directions for fooling constructions; members lie in the
// closed l_p ball minus the origin.
struct DirectionSet {
  DirectionKind kind = DirectionKind::Explicit;
  int d = 1;
  double p = 2.0;
  int m = 0;
  std::vector<Point> members;

  static DirectionSet canonical(int d);
  // m-sparse sign vectors with entries m^{-1/p}, greedily packed in Psi-image.
  static DirectionSet sparse(int d, int m, double p, int budget = 2000, std::uint64_t seed = 0);
  static DirectionSet full_sphere(int d, double p, int count, std::uint64_t seed = 0);
  static DirectionSet explicit_set(std::vector<Point> members);

  std::size_t size() const { return members.size(); }
  // Psi(a) = a / |a|_2 for every member.
  std::vector<Point> normalized() const;
  // Smallest Euclidean distance between two normalized members.
  double separation() const;
  std::string describe() const;
};

struct FoolingRidge {
  RidgeFunction f;
  std::size_t index = 0;  // member of the direction set
  double margin = 0.0;    // min_i |x_i - Psi(a)|_2
};

// g = theta ((t - |a|(1 - eps^2/2))_+)^alpha along a direction whose Psi-image
// stays farther than eps from every point; none when no member qualifies.
std::optional<FoolingRidge> fooling_ridge(const std::vector<Point>& points,
                                          const DirectionSet& dirs, double eps, double alpha);

// Unit vector orthogonal to all points (first column of the QR nullspace basis).
Point orthogonal_direction(const std::vector<Point>& points, int d);

struct UnivariateFooling {
  RidgeFunction f;
  RidgeFunction f_plus;
  RidgeFunction f_minus;
  double left = 0.0;   // free cell [left, right] of the interval partition
  double right = 0.0;
  double center = 0.0;
  int k = 0;           // bump scale 2n
  ClassSpec spec;
};

// sin(x_1) and sin(x_1) +- (1-gamma) psi_{2n,b}, with the bump hidden in a
// cell of length 1/(5n) that contains none of the sampled first coordinates.
UnivariateFooling univariate_fooling(const std::vector<double>& first_coords, double alpha,
                                     double kappa, int d = 1);

// Sums of disjoint radial bumps c eps^alpha phi(|x - x_j|_2 / eps) over a
// greedy packing of 2 eps separated centers.
class BumpFamily {
 public:
  BumpFamily(int d, double alpha, double eps, std::vector<Point> centers);

  int dim() const { return d_; }
  double alpha() const { return alpha_; }
  double eps() const { return eps_; }
  double amplitude() const { return c_ * std::pow(eps_, alpha_); }  // c eps^alpha
  double constant() const { return c_; }
  std::size_t size() const { return centers_.size(); }
  const std::vector<Point>& centers() const { return centers_; }

  double operator()(const std::vector<int>& theta, ConstPoint x) const;
  std::function<double(ConstPoint)> member(std::vector<int> theta) const;
  // sup |f_theta - f_theta'| = c e^{-1} eps^alpha whenever they differ.
  double separation_floor() const;

 private:
  int d_;
  double alpha_;
  double eps_;
  double c_;
  std::vector<Point> centers_;
};

BumpFamily lipschitz_bump_adversary(int d, double alpha, double eps, std::uint64_t seed = 0,
                                    int budget = 2000);

struct HolderReport {
  bool pass = true;
  double sup = 0.0;
  double worst_ratio = 0.0;
  Point witness_x;
  Point witness_y;
};

// Randomized check of ||f||_{Lip_alpha(ball)} <= 1 for alpha <= 1 and any
// function on the ball; `anchors` add pairs concentrated around given points.
HolderReport holder_membership_check(const std::function<double(ConstPoint)>& f, int d,
                                     double alpha, int trials, std::uint64_t seed,
                                     const std::vector<Point>& anchors = {},
                                     double tol = 1e-6);

enum class CertificateStatus { Pass, Fail, Inconclusive };

struct Certificate {
  CertificateStatus status = CertificateStatus::Inconclusive;
  std::string sampler;
  double eps = 0.0;
  double alpha = 1.0;
  std::optional<FoolingRidge> adversary;
  std::vector<Point> points;       // zero-trajectory queries
  bool zero_answers = false;       // every recorded value of f is 0
  bool identical_outputs = false;  // S(f) == S(-f)
  double achieved = 0.0;           // max(|f - S f|, |-f - S(-f)|), estimated
  double floor = 0.0;              // theta 2^{-alpha} |a|_2^alpha eps^{2 alpha}
  double tolerance = 1e-3;
  std::string reason;

  bool pass() const { return status == CertificateStatus::Pass; }
  std::string status_name() const;
};

// Default certificate radius: packing lower bracket of e_k(Psi(dirs), l_2), k = ceil(log2 n) + 1.
double default_certificate_eps(const DirectionSet& dirs, std::size_t n);

// Runs the sampler on the zero function, builds a fooling ridge avoiding its
// queries and replays the sampler on f and -f.
Certificate certify_lower_bound(const AdaptiveSampler& sampler, const DirectionSet& dirs,
                                const ClassSpec& spec, std::optional<double> eps = std::nullopt);

}  // namespace ridgelab
