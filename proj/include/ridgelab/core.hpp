#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridgelab {

using Point = std::vector<double>;
using ConstPoint = std::span<const double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack for "inside the closed unit ball" checks on computed points.
inline constexpr double kDomainTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the documented range of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A point or stencil outside the closed Euclidean unit ball.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A query, center or enumeration budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Seeded generator shared by all randomized routines. Streams are derived from
// the seed and a stream tag so independent consumers never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  double gamma(double shape);
  std::uint64_t next_u64() { return engine_(); }
  std::size_t index(std::size_t n);  // uniform in [0, n)

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

double dot(ConstPoint a, ConstPoint b);
double norm2(ConstPoint x);
Point scaled(ConstPoint x, double c);
Point difference(ConstPoint a, ConstPoint b);
Point unit_vector(int d, int i, double sign = 1.0);

// Uniform point in the closed Euclidean unit ball of dimension d.
Point random_ball_point(int d, Rng& rng);

// Radical-inverse (Halton) value of index i in the given prime base.
double radical_inverse(std::uint64_t i, int base);

// i-th point of a deterministic low-discrepancy sequence inside the unit ball.
Point halton_ball_point(std::uint64_t i, int d);

// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

}  // namespace ridgelab
