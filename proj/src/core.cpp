#include "ridgelab/core.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

namespace ridgelab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::array<int, 64> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
    43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix(seed ^ splitmix(stream + 0x5851F42D4C957F2DULL))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller; the first uniform is shifted away from zero.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double dot(ConstPoint a, ConstPoint b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(ConstPoint x) { return std::sqrt(dot(x, x)); }

Point scaled(ConstPoint x, double c) {
  Point out(x.begin(), x.end());
  for (double& v : out) v *= c;
  return out;
}

Point difference(ConstPoint a, ConstPoint b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point unit_vector(int d, int i, double sign) {
  Point e(static_cast<std::size_t>(d), 0.0);
  e[static_cast<std::size_t>(i)] = sign;
  return e;
}

Point random_ball_point(int d, Rng& rng) {
  Point x(static_cast<std::size_t>(d));
  double nrm = 0.0;
  do {
    for (double& v : x) v = rng.normal();
    nrm = norm2(x);
  } while (nrm == 0.0);
  const double r = std::pow(rng.uniform(), 1.0 / d);
  for (double& v : x) v *= r / nrm;
  return x;
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

Point halton_ball_point(std::uint64_t i, int d) {
  // Coordinates come in Box-Muller pairs of Halton components; one extra
  // component drives the radius. Index 0 is skipped (all components zero).
  const std::uint64_t idx = i + 1;
  const int pairs = (d + 1) / 2;
  if (2 * pairs + 1 > static_cast<int>(kPrimes.size())) {
    // Dimensions beyond the prime table fall back to a hashed stream.
    Rng rng(splitmix(idx), 0xA11CE);
    return random_ball_point(d, rng);
  }
  Point x(static_cast<std::size_t>(d));
  for (int k = 0; k < pairs; ++k) {
    const double u1 = 1.0 - radical_inverse(idx, kPrimes[2 * k]);
    const double u2 = radical_inverse(idx, kPrimes[2 * k + 1]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    x[static_cast<std::size_t>(2 * k)] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (2 * k + 1 < d) {
      x[static_cast<std::size_t>(2 * k + 1)] =
          r * std::sin(2.0 * std::numbers::pi * u2);
    }
  }
  const double nrm = norm2(x);
  const double radius =
      std::pow(radical_inverse(idx, kPrimes[2 * pairs]), 1.0 / d);
  if (nrm == 0.0) return Point(static_cast<std::size_t>(d), 0.0);
  for (double& v : x) v *= radius / nrm;
  return x;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace ridgelab
