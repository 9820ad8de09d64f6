#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ridgelab/core.hpp"

namespace ridgelab {

// Derivative orders checked for smooth (alpha = infinity) profiles.
inline constexpr int kSmoothCheckOrder = 16;
inline constexpr int kUnboundedOrder = 1 << 20;

// Largest integer strictly less than alpha.
int strict_floor(double alpha);

// Dual index p' with 1/max(p,1) + 1/p' = 1.
double dual_exponent(double p);

struct ClassSpec {
  double alpha = 1.0;  // +inf for the C-infinity class
  int s = 0;           // -1 when alpha is infinite
  double beta = 1.0;   // 0 when alpha is infinite
  double p = 2.0;
  double p_prime = 2.0;
  double kappa = 0.0;
  int d = 1;

  static ClassSpec make(double alpha, double p, double kappa = 0.0, int d = 1);
  bool smooth() const { return s < 0; }
};

// Univariate profile on [-1, 1] with closed-form derivatives up to max_order.
class Profile {
 public:
  using Evaluator = std::function<double(int order, double t)>;

  Profile(std::string id, double alpha, int max_order, Evaluator eval,
          double lip_bound, double normalizer);

  const std::string& id() const { return id_; }
  double alpha() const { return alpha_; }
  int max_order() const { return max_order_; }
  double lip_bound() const { return lip_bound_; }
  double normalizer() const { return normalizer_; }

  double value(double t) const { return eval_(0, t); }
  double deriv(int j, double t) const;
  // g'(0), present when the profile has a first derivative (alpha > 1).
  std::optional<double> g0_deriv() const;

  Profile scaled(double c) const;

 private:
  std::string id_;
  double alpha_;
  int max_order_;
  Evaluator eval_;
  double lip_bound_;
  double normalizer_;
};

class RidgeFunction {
 public:
  RidgeFunction(Point direction, Profile profile);

  const Point& direction() const { return a_; }
  const Profile& profile() const { return g_; }
  int dim() const { return static_cast<int>(a_.size()); }

  double operator()(ConstPoint x) const;
  // D^gamma f(x) = g^{(|gamma|)}(a.x) a^gamma
  double partial(const std::vector<int>& gamma, ConstPoint x) const;
  RidgeFunction negated() const;

 private:
  Point a_;
  Profile g_;
};

// f(x) = g(a.x); throws DomainError when ||x||_2 > 1 + tol.
double ridge_eval(const RidgeFunction& f, ConstPoint x, double tol = kDomainTol);

// Standard bump e^{-1/(1-x^2)} on (-1,1) and its n-th derivative.
double bump_phi(double x);
double bump_phi_deriv(int n, double x);

// Numerical Lip_alpha norm of the bump on [-1,1] (cached per alpha).
double bump_lip_norm(double alpha);
// 1 / (5^alpha ||phi||_{Lip_alpha}).
double psi_constant(double alpha);
// max of cos and sin over the interval carrying the sine-plus-bumps family.
double sine_bump_gamma();
// Left end of that interval; its length is 2/5.
double sine_bump_left();
// Normalizer of the positive-part profile t_+^alpha (cached per alpha).
double fooling_theta(double alpha);

Profile make_zero(const ClassSpec& spec);
Profile make_constant(double c, const ClassSpec& spec);
Profile make_linear(const ClassSpec& spec, double slope = 1.0);
Profile make_sine(const ClassSpec& spec);
Profile make_cubic_sine(double c, const ClassSpec& spec);
Profile make_monomial(int j, const ClassSpec& spec);
Profile make_bump(const ClassSpec& spec);
Profile make_psi(int k, double b, const ClassSpec& spec);
// sin + (1-gamma) sum_j w_j psi_{k,c_j}
Profile make_sine_plus_bumps(const std::vector<double>& weights, int k,
                             const std::vector<double>& centers,
                             const ClassSpec& spec, std::string id);
// The catalog family with centers b_j = a0 + (2j-1)/(5k) and 0/1 weights.
Profile make_sine_plus_bumps(const std::vector<int>& theta, int k,
                             const ClassSpec& spec);
Profile make_fooling(double a_norm, double eps, double alpha);

// Catalog lookup by string id such as "fooling:anorm=1,eps=0.5,alpha=1".
Profile catalog_profile(const std::string& id, const ClassSpec& spec);

struct ProfileRequest {
  std::string kind;
  std::map<std::string, std::string> params;
};
ProfileRequest parse_profile_id(const std::string& id);

// Lower estimate of ||g||_{Lip_alpha[-1,1]} from grid pairs.
double seminorm_estimate(const Profile& g, int grid_size);

struct MembershipReport {
  bool pass = true;
  double direction_norm = 0.0;
  double worst_derivative = 0.0;  // max |D^gamma f| over |gamma| <= s
  int worst_derivative_order = 0;
  Point derivative_witness;
  double worst_holder_ratio = 0.0;  // |D^g f(x)-D^g f(y)| / (2 min{1,|x-y|_1}^beta)
  Point holder_witness_x;
  Point holder_witness_y;
  std::vector<std::string> failures;
};

MembershipReport membership_check(const RidgeFunction& f, const ClassSpec& spec,
                                  int trials, std::uint64_t seed = 0,
                                  double tol = 1e-6);

// Random direction with ||a||_p = norm.
Point random_direction(int d, double p, Rng& rng, double norm = 1.0);

}  // namespace ridgelab
