#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ridgelab/classes.hpp"
#include "ridgelab/core.hpp"
#include "ridgelab/geometry.hpp"

namespace ridgelab {

using MultiIndex = std::vector<int>;
using Oracle = std::function<double(ConstPoint)>;

double factorial(int n);
double binomial(int n, int k);
double multi_factorial(const MultiIndex& gamma);  // gamma!
int order(const MultiIndex& gamma);                // |gamma|

// All gamma in N_0^d with |gamma| <= s, graded then lexicographic (descending).
std::vector<MultiIndex> multi_indices(int d, int s);
// All gamma with |gamma| == s, in the same order.
std::vector<MultiIndex> multi_indices_exact(int d, int s);

// T_{s,x0} f(x) = sum_{|gamma|<=s} c_gamma (x - x0)^gamma with c_gamma = D^gamma f(x0) / gamma!.
struct TaylorModel {
  Point center;
  int s = 0;
  std::vector<MultiIndex> indices;
  std::vector<double> coeffs;

  double operator()(ConstPoint x) const;
  bool operator==(const TaylorModel&) const = default;
};

// TaylorModel from closed-form profile derivatives (no differencing).
TaylorModel exact_taylor(const RidgeFunction& f, ConstPoint center, int s);

// Query protocol between a sampler and the function it approximates.
class QuerySession {
 public:
  QuerySession(Oracle f, int d, std::size_t budget);

  // Throws DomainError outside the unit ball and BudgetExceeded past the budget.
  double ask(ConstPoint x);

  std::size_t used() const { return points_.size(); }
  std::size_t budget() const { return budget_; }
  int dim() const { return d_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  bool all_zero() const;

 private:
  Oracle f_;
  int d_;
  std::size_t budget_;
  std::vector<Point> points_;
  std::vector<double> values_;
};

struct Provenance {
  std::vector<Point> points;
  std::vector<double> values;
  bool operator==(const Provenance&) const = default;
};

// Piecewise polynomial interpolant of degree s on a uniform grid over [-1, 1].
struct UnivariateInterpolant {
  std::vector<double> nodes;
  std::vector<double> values;
  int s = 0;

  double operator()(double t) const;
  bool operator==(const UnivariateInterpolant&) const = default;
};

namespace form {
struct Zero {
  bool operator==(const Zero&) const = default;
};
struct PiecewiseConstant {
  std::vector<Point> centers;
  double q = 2.0;
  std::vector<double> values;
  bool operator==(const PiecewiseConstant&) const = default;
};
struct PiecewiseTaylor {
  std::vector<Point> centers;  // cell owners (nearest-center assignment)
  double q = 2.0;
  std::vector<TaylorModel> models;
  bool operator==(const PiecewiseTaylor&) const = default;
};
struct RecoveredRidge {
  Point direction;
  UnivariateInterpolant profile;
  bool operator==(const RecoveredRidge&) const = default;
};
struct GlobalTaylor {
  TaylorModel model;
  bool operator==(const GlobalTaylor&) const = default;
};
}  // namespace form

class Approximant {
 public:
  using Form = std::variant<form::Zero, form::PiecewiseConstant, form::PiecewiseTaylor,
                            form::RecoveredRidge, form::GlobalTaylor>;

  Approximant(int d, Form f, Provenance prov);
  static Approximant zero(int d, Provenance prov = {});

  double operator()(ConstPoint x) const;
  int dim() const { return d_; }
  const Form& form() const { return form_; }
  const Provenance& provenance() const { return prov_; }
  std::string kind() const;
  bool is_zero() const { return std::holds_alternative<form::Zero>(form_); }
  // Direction of a recovered-ridge approximant.
  std::optional<Point> ridge_direction() const;

  bool operator==(const Approximant&) const = default;

 private:
  int d_;
  Form form_;
  Provenance prov_;
};

// Interactive sampler: issues at most budget() queries through a session.
class AdaptiveSampler {
 public:
  virtual ~AdaptiveSampler() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual std::size_t budget() const = 0;
  virtual Approximant interact(QuerySession& session) const = 0;
  // Quantities logged for experiments (cell counts, stencil factors, ...).
  virtual std::map<std::string, double> info() const { return {}; }

  Approximant run(const Oracle& f) const;
};

inline constexpr double kDefaultFdStep = 1e-4;

// Piecewise-constant interpolation on the cells of an l_{p'} cover of the ball.
class CoverSampler : public AdaptiveSampler {
 public:
  CoverSampler(const ClassSpec& spec, double eps);
  // Finest lattice cover with at most n centers.
  static CoverSampler for_budget(const ClassSpec& spec, std::size_t n);

  std::string name() const override { return "cover"; }
  int dim() const override { return d_; }
  std::size_t budget() const override { return centers_.size(); }
  Approximant interact(QuerySession& session) const override;
  std::map<std::string, double> info() const override;

  const std::vector<Point>& centers() const { return centers_; }
  double eps() const { return eps_; }
  double q() const { return q_; }

 private:
  CoverSampler(int d, double q, double eps, std::vector<Point> centers);
  int d_;
  double q_;
  double eps_;
  std::vector<Point> centers_;
};

struct FdResult {
  TaylorModel model;
  std::size_t queries = 0;
  double step = 0.0;
};

// Step actually used for order-s differences: max(fd_step, DBL_EPSILON^{1/(s+2)}).
double effective_fd_step(int s, double fd_step);

// Number of distinct stencil points for all |gamma| <= s: #{k in Z^d : |k|_1 <= s}.
std::size_t stencil_point_count(int d, int s);

// D^gamma f(center) for |gamma| <= s by tensorized central differences.
FdResult taylor_coeffs_fd(const Oracle& f, ConstPoint center, int s,
                          double fd_step = kDefaultFdStep);

// Piecewise Taylor polynomials of order s on the cells of an l_{p'} cover.
class TaylorCoverSampler : public AdaptiveSampler {
 public:
  TaylorCoverSampler(const ClassSpec& spec, double eps, double fd_step = kDefaultFdStep);
  static TaylorCoverSampler for_budget(const ClassSpec& spec, std::size_t n,
                                       double fd_step = kDefaultFdStep);

  std::string name() const override { return "taylor"; }
  int dim() const override { return d_; }
  std::size_t budget() const override;
  Approximant interact(QuerySession& session) const override;
  std::map<std::string, double> info() const override;

  const std::vector<Point>& centers() const { return cells_; }
  double eps() const { return eps_; }
  int order() const { return s_; }

 private:
  TaylorCoverSampler(int d, double q, double eps, int s, double fd_step,
                     std::vector<Point> cells);
  int d_;
  double q_;
  double eps_;
  int s_;
  double fd_step_;
  std::vector<Point> cells_;
  std::vector<Point> expansion_;
};

struct RecoveryParams {
  double eps = 0.1;
  double kappa = 1.0;
  double beta = 1.0;
  double delta = 0.0;
  double h = 0.0;

  static RecoveryParams make(double eps, double kappa, double beta);
};

struct DirectionEstimate {
  Point direction;  // a_hat
  Point raw;        // a_tilde
  double f0 = 0.0;
  std::size_t queries = 0;
};

// a_tilde_i = (f(h e_i) - f(0)) / h, a_hat = a_tilde / |a_tilde|_2, with d+1 queries.
// Throws InvalidArgument when a_tilde vanishes.
DirectionEstimate recover_direction(const Oracle& f, const RecoveryParams& params, int d);

// Interpolant of degree s over k uniform nodes on [-1, 1].
UnivariateInterpolant univariate_sampler(const std::function<double(double)>& g, int k, int s);

// Direction recovery followed by profile sampling along the recovered line.
class TwoStepSampler : public AdaptiveSampler {
 public:
  TwoStepSampler(const ClassSpec& spec, std::size_t n);

  std::string name() const override { return "two-step"; }
  int dim() const override { return d_; }
  std::size_t budget() const override { return n_; }
  Approximant interact(QuerySession& session) const override;
  std::map<std::string, double> info() const override;

  const RecoveryParams& recovery() const { return params_; }
  int nodes() const { return nodes_; }

 private:
  int d_;
  std::size_t n_;
  int s_;
  RecoveryParams params_;
  int nodes_;
};

enum class TaylorZeroVariant { Ridge, General };

// Smallest s with 2/s! <= eps (ridge) or 2 d^{s/2}/(s-1)! <= eps (general).
int taylor_zero_order(double eps, int d, TaylorZeroVariant variant);

// Global Taylor polynomial at the origin for the C-infinity class.
class TaylorAtZeroSampler : public AdaptiveSampler {
 public:
  TaylorAtZeroSampler(const ClassSpec& spec, double eps,
                      TaylorZeroVariant variant = TaylorZeroVariant::Ridge,
                      double fd_step = kDefaultFdStep);

  std::string name() const override { return "taylor-zero"; }
  int dim() const override { return d_; }
  std::size_t budget() const override { return queries_; }
  Approximant interact(QuerySession& session) const override;
  std::map<std::string, double> info() const override;

  int order() const { return s_; }
  std::size_t coefficient_count() const;
  double stencil_factor() const;

 private:
  int d_;
  int s_;
  double fd_step_;
  std::size_t queries_;
};

}  // namespace ridgelab
