#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ridgelab/algorithms.hpp"
#include "ridgelab/classes.hpp"
#include "ridgelab/core.hpp"

namespace ridgelab {

using Evaluable = std::function<double(ConstPoint)>;

struct AuditOptions {
  std::size_t halton = 4096;
  std::size_t random = 4096;
  int line_grid = 2001;
  std::uint64_t seed = 0;
};

// Estimated sup |f - g| over the ball. Always a lower estimate of the true sup.
struct ErrorEstimate {
  double value = 0.0;
  Point witness;
  std::size_t audited = 0;
  std::string method;
  double tolerance = 0.0;  // spacing of the line grids before refinement
};

// Max over Halton points, seeded uniform points and 1-D maximization along
// each line t u (t in [-1, 1]) for the given directions.
ErrorEstimate sup_error_estimate(const Evaluable& f, const Evaluable& g, int d,
                                 const std::vector<Point>& lines = {},
                                 const AuditOptions& opts = {});

// Error of an approximant against a ridge function, with lines along the
// ridge direction and the approximant's recovered direction.
ErrorEstimate ridge_error(const RidgeFunction& f, const Approximant& s,
                          const AuditOptions& opts = {});

struct RateFit {
  std::vector<std::pair<double, double>> pairs;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square in log space
};

// Least squares on (log n, log e); non-positive pairs are dropped, fewer
// than three remaining is an error.
RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs);

struct ComplexityConstants {
  double C0 = 1.0;
  double C1 = 1.0;
  double C = 1.0;  // C_{p,alpha}
  double c0 = 1.0;
  double c1 = 1.0;
  double c = 1.0;  // c_{p,alpha}
};

struct ComplexityUpper {
  double value = 0.0;  // monotone in eps
  double raw = 0.0;    // branch formula at eps
  int branch = 1;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eta = 0.0;
};

// Three-branch upper bound on log2 n(eps, d) for p < 2.
ComplexityUpper complexity_upper(double eps, int d, double alpha, double p,
                                 const ComplexityConstants& k = {});

struct ComplexityLower {
  double value = 0.0;
  bool in_window = false;  // eps in [eps3, eps1)
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
  double exponent = 0.0;
};

// c0 + c1 (1/eps)^{1/(alpha (1/p - 1/2))}, flagged when eps leaves its window.
ComplexityLower complexity_lower(double eps, int d, double alpha, double p,
                                 const ComplexityConstants& k = {});

enum class Tractability { Curse, Intractable, WeaklyTractable, QuasiPolynomial, Polynomial, UnknownGap };

struct TractabilityVerdict {
  double alpha = 1.0;
  double p = 2.0;
  double kappa = 0.0;
  Tractability label = Tractability::UnknownGap;
  int clause = 0;           // 0 for the gap
  bool curse_free = false;  // p < 2
  std::string label_name() const;
};

std::string tractability_name(Tractability t);
TractabilityVerdict tractability_classify(double alpha, double p, double kappa);

struct ExperimentRow {
  std::size_t n = 0;
  int d = 1;
  double alpha = 1.0;
  double p = 2.0;
  double kappa = 0.0;
  std::string profile_id;
  std::size_t queries = 0;
  double error = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::optional<RateFit> fit;
  bool pass = true;
  std::string csv;
  nlohmann::json summary;
};

// Runs a sampler over a budget schedule and a profile set. Throws
// InvalidArgument naming the offending config field.
ExperimentReport run_experiment(const nlohmann::json& config);

std::string csv_escape(const std::string& field);
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_rows_csv(const std::string& text);

// Builds the named sampler ("cover", "taylor", "two-step", "taylor-zero") for
// a budget n or, when eps is set, for an accuracy target.
std::unique_ptr<AdaptiveSampler> make_sampler(const std::string& name, const ClassSpec& spec,
                                              std::optional<std::size_t> n,
                                              std::optional<double> eps,
                                              double fd_step = kDefaultFdStep);

// Parses "inf" / "infinity" as well as ordinary numbers.
double parse_real(const std::string& text);

struct Certificate;
struct EntropyEstimate;
nlohmann::json certificate_json(const Certificate& cert);
nlohmann::json verdict_json(const TractabilityVerdict& v);
nlohmann::json entropy_json(const EntropyEstimate& e);
nlohmann::json number_json(double x);  // "inf" / "nan" as strings

}  // namespace ridgelab
