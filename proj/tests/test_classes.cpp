#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "ridgelab/classes.hpp"

using namespace ridgelab;

namespace {

double phi(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

double phi_prime(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double u = 1.0 - x * x;
  return phi(x) * (-2.0 * x / (u * u));
}

// Brute-force Hoelder quotient over all grid pairs, with the factor 2 in the denominator.
double pair_quotient(const std::function<double(double)>& h, double beta, int n) {
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) {
    t[i] = -1.0 + 2.0 * i / (n - 1);
    v[i] = h(t[i]);
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double den = 2.0 * std::pow(std::min(1.0, t[j] - t[i]), beta);
      best = std::max(best, std::abs(v[i] - v[j]) / den);
    }
  return best;
}

double grid_sup(const std::function<double(double)>& h, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s = std::max(s, std::abs(h(-1.0 + 2.0 * i / (n - 1))));
  return s;
}

}  // namespace

TEST(ClassSpec, SmoothnessSplit) {
  auto a = ClassSpec::make(2.0, 2.0);
  EXPECT_EQ(a.s, 1);
  EXPECT_DOUBLE_EQ(a.beta, 1.0);
  auto b = ClassSpec::make(2.5, 1.0);
  EXPECT_EQ(b.s, 2);
  EXPECT_DOUBLE_EQ(b.beta, 0.5);
  EXPECT_TRUE(std::isinf(b.p_prime));
  auto c = ClassSpec::make(1.0, 1.5);
  EXPECT_EQ(c.s, 0);
  EXPECT_NEAR(c.p_prime, 3.0, 1e-12);
  auto e = ClassSpec::make(0.5, 0.5);
  EXPECT_TRUE(std::isinf(e.p_prime));
  auto inf = ClassSpec::make(kInf, 2.0);
  EXPECT_TRUE(inf.smooth());
}

TEST(ClassSpec, RejectsBadParameters) {
  EXPECT_THROW(ClassSpec::make(1.0, 2.0, 0.5, 3), InvalidArgument);
  EXPECT_THROW(ClassSpec::make(2.0, 3.0), InvalidArgument);
  EXPECT_THROW(ClassSpec::make(0.0, 2.0), InvalidArgument);
  EXPECT_THROW(ClassSpec::make(2.0, 2.0, 0.0, 0), InvalidArgument);
  EXPECT_NO_THROW(ClassSpec::make(2.0, 2.0, 0.5, 3));
}

TEST(Bump, ValueAtOrigin) {
  EXPECT_NEAR(bump_phi(0.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(bump_phi(1.0), 0.0);
  EXPECT_EQ(bump_phi(-1.3), 0.0);
  EXPECT_NEAR(bump_phi_deriv(1, 0.3), phi_prime(0.3), 1e-12);
}

TEST(Bump, LipNormMatchesBruteForce) {
  const double lip1 = std::max(grid_sup(phi, 4001), pair_quotient(phi, 1.0, 1601));
  EXPECT_NEAR(bump_lip_norm(1.0), lip1, 2e-3 * lip1);
  const double lip2 = std::max({grid_sup(phi, 4001), grid_sup(phi_prime, 4001),
                                pair_quotient(phi_prime, 1.0, 1601)});
  EXPECT_NEAR(bump_lip_norm(2.0), lip2, 2e-3 * lip2);
}

TEST(Fooling, VanishesUpToThreshold) {
  auto spec = ClassSpec::make(1.0, 2.0, 0.0, 1);
  auto g = make_fooling(1.0, 0.5, 1.0);
  EXPECT_EQ(g.value(0.875), 0.0);
  EXPECT_EQ(g.value(-1.0), 0.0);
  EXPECT_EQ(g.value(0.5), 0.0);
  EXPECT_GT(g.value(0.9), 0.0);
  EXPECT_NEAR(g.value(1.0), fooling_theta(1.0) * 0.125, 1e-12);
  EXPECT_EQ(catalog_profile("fooling:anorm=1,eps=0.5,alpha=1", spec).value(0.875), 0.0);
}

TEST(Fooling, ThetaForLipschitzIsOne) {
  // t_+ has sup 1 and Lipschitz quotient 1/2 on [-1, 1], so the norm is 1.
  EXPECT_NEAR(fooling_theta(1.0), 1.0, 1e-9);
}

TEST(Fooling, UndefinedForSmoothClass) {
  EXPECT_THROW(make_fooling(1.0, 0.5, kInf), InvalidArgument);
  EXPECT_THROW(make_fooling(1.0, 1.5, 1.0), InvalidArgument);
}

TEST(Psi, PeakValue) {
  for (double alpha : {1.0, 2.0, 2.5}) {
    auto spec = ClassSpec::make(alpha, 2.0);
    auto g = make_psi(2, 0.0, spec);
    const double expect = psi_constant(alpha) * std::exp(-1.0) * std::pow(2.0, -alpha);
    EXPECT_NEAR(g.value(0.0), expect, 1e-14);
    EXPECT_NEAR(psi_constant(alpha), 1.0 / (std::pow(5.0, alpha) * bump_lip_norm(alpha)), 1e-15);
    // support is [b - 1/(5k), b + 1/(5k)]
    EXPECT_EQ(g.value(0.1), 0.0);
    EXPECT_GT(g.value(0.09), 0.0);
  }
}

TEST(RidgeEval, SpecExamples) {
  auto spec = ClassSpec::make(1.0, 2.0, 0.0, 2);
  RidgeFunction lin({0.6, 0.8}, make_linear(spec));
  Point x{0.6, 0.8};
  EXPECT_NEAR(ridge_eval(lin, x), 1.0, 1e-15);
  Point perp{-0.8, 0.6};
  EXPECT_NEAR(ridge_eval(lin, perp), 0.0, 1e-15);

  auto spec3 = ClassSpec::make(3.0, 2.0, 0.0, 2);
  RidgeFunction sine({1.0, 0.0}, make_sine(spec3));
  Point h{0.5, 0.0};
  EXPECT_NEAR(ridge_eval(sine, h), 0.4794255, 1e-7);
}

TEST(RidgeEval, OutsideDomainThrows) {
  auto spec = ClassSpec::make(1.0, 2.0, 0.0, 2);
  RidgeFunction lin({0.6, 0.8}, make_linear(spec));
  Point far{1.0, 1.0};
  EXPECT_THROW(ridge_eval(lin, far), DomainError);
  Point edge{1.0, 0.0};
  EXPECT_NO_THROW(ridge_eval(lin, edge));
}

TEST(RidgeFunction, PartialsAndNegation) {
  auto spec = ClassSpec::make(3.0, 2.0, 0.0, 2);
  RidgeFunction f({0.6, 0.8}, make_sine(spec));
  Point x{0.2, -0.1};
  const double t = 0.6 * 0.2 - 0.8 * 0.1;
  EXPECT_NEAR(f.partial({1, 1}, x), -std::sin(t) * 0.48, 1e-14);
  EXPECT_NEAR(f.partial({0, 0}, x), std::sin(t), 1e-14);
  EXPECT_NEAR(f.negated()(x), -std::sin(t), 1e-15);
}

TEST(Seminorm, Examples) {
  auto s1 = ClassSpec::make(1.0, 2.0);
  const double lin = seminorm_estimate(make_linear(s1), 100001);
  EXPECT_LE(lin, 1.0 + 1e-9);
  EXPECT_GE(lin, 1.0 - 1e-3);
  EXPECT_EQ(seminorm_estimate(make_zero(s1), 1001), 0.0);
  auto s2 = ClassSpec::make(2.0, 2.0);
  EXPECT_LE(seminorm_estimate(make_bump(s2), 100001), 1.0 + 1e-6);
  auto s3 = ClassSpec::make(1.0, 2.0);
  EXPECT_LE(seminorm_estimate(make_psi(3, 0.2, s3), 20001), 1.0 + 1e-6);
}

TEST(Membership, LinearAndFoolingPass) {
  auto spec = ClassSpec::make(1.0, 2.0, 0.0, 3);
  RidgeFunction lin({0.6, 0.8, 0.0}, make_linear(spec));
  EXPECT_TRUE(membership_check(lin, spec, 2000, 1).pass);
  RidgeFunction fool({0.0, 0.0, 1.0}, make_fooling(1.0, 0.5, 1.0));
  auto rep = membership_check(fool, spec, 10000, 2);
  EXPECT_TRUE(rep.pass);
}

TEST(Membership, ScaledProfileFailsWithWitness) {
  auto spec = ClassSpec::make(1.0, 2.0, 0.0, 2);
  RidgeFunction big({1.0, 0.0}, make_linear(spec).scaled(1.5));
  auto rep = membership_check(big, spec, 2000, 3);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.failures.empty());
  EXPECT_GT(std::max(rep.worst_derivative, rep.worst_holder_ratio), 1.0 + 1e-6);
}

TEST(Membership, DirectionNormTooLarge) {
  auto spec = ClassSpec::make(1.0, 1.0, 0.0, 2);
  RidgeFunction f({0.6, 0.8}, make_linear(spec));  // l1 norm 1.4
  EXPECT_FALSE(membership_check(f, spec, 100, 4).pass);
}

TEST(Membership, DerivativeBoundHoldsForCatalog) {
  // |D^gamma f| <= ||a||_p^{|gamma|} sup|g^{(|gamma|)}| <= 1 for unit a
  auto spec = ClassSpec::make(3.0, 1.0, 0.0, 3);
  Rng rng(7);
  for (const char* id : {"sine", "cubic_sine", "bump", "psi:k=2,b=0.1", "monomial:j=3"}) {
    RidgeFunction f(random_direction(3, 1.0, rng), catalog_profile(id, spec));
    auto rep = membership_check(f, spec, 3000, 5);
    EXPECT_TRUE(rep.pass) << id;
    EXPECT_LE(rep.worst_derivative, 1.0 + 1e-9) << id;
  }
}

TEST(Membership, EmbeddingIntoRougherClasses) {
  auto smooth = ClassSpec::make(3.0, 2.0, 0.0, 2);
  RidgeFunction f({0.6, 0.8}, make_sine(smooth));
  for (double alpha : {2.0, 1.0, 0.5}) {
    auto rough = ClassSpec::make(alpha, 2.0, 0.0, 2);
    RidgeFunction g({0.6, 0.8}, make_sine(rough));
    EXPECT_TRUE(membership_check(g, rough, 3000, 6).pass) << alpha;
  }
  EXPECT_TRUE(membership_check(f, smooth, 3000, 6).pass);
}

TEST(SinePlusBumps, DerivativeAtZeroAndSeparation) {
  const double alpha = 2.0;
  auto spec = ClassSpec::make(alpha, 2.0, 1.0, 1);
  const int k = 4;
  auto g1 = make_sine_plus_bumps(std::vector<int>{1, 0, 1, 0}, k, spec);
  auto g2 = make_sine_plus_bumps(std::vector<int>{0, 0, 1, 0}, k, spec);
  ASSERT_TRUE(g1.g0_deriv().has_value());
  EXPECT_NEAR(*g1.g0_deriv(), 1.0, 1e-12);
  const double gamma = std::cos(std::numbers::pi / 4 - 0.2);
  EXPECT_NEAR(sine_bump_gamma(), gamma, 1e-12);
  double sup = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double t = -1.0 + 2.0 * i / 200000.0;
    sup = std::max(sup, std::abs(g1.value(t) - g2.value(t)));
  }
  const double expect = (1 - gamma) * psi_constant(alpha) * std::exp(-1.0) * std::pow(k, -alpha);
  EXPECT_NEAR(sup, expect, 1e-6 * expect + 1e-12);
  RidgeFunction f({1.0}, g1);
  EXPECT_TRUE(membership_check(f, spec, 5000, 8).pass);
}

TEST(Catalog, ParsesAndRejects) {
  auto spec = ClassSpec::make(2.0, 2.0, 0.0, 2);
  auto req = parse_profile_id("psi:k=2,b=0.5");
  EXPECT_EQ(req.kind, "psi");
  EXPECT_EQ(req.params.at("k"), "2");
  EXPECT_EQ(req.params.at("b"), "0.5");
  EXPECT_THROW(catalog_profile("nope", spec), InvalidArgument);
  EXPECT_THROW(catalog_profile("psi:k=2,z=1", spec), InvalidArgument);
  EXPECT_THROW(catalog_profile("psi:k=1.5", spec), InvalidArgument);
  EXPECT_THROW(catalog_profile("linear:slope=2", spec), InvalidArgument);
  EXPECT_THROW(catalog_profile("fooling:eps=0.5,alpha=1", spec), InvalidArgument);
  EXPECT_NEAR(catalog_profile("linear:scale=0.5", spec).value(1.0), 0.5, 1e-15);
  EXPECT_THROW(catalog_profile("psi:k=2", ClassSpec::make(kInf, 2.0)), InvalidArgument);
}

TEST(RandomDirection, HasRequestedNorm) {
  Rng rng(11);
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    auto a = random_direction(5, p, rng, 0.7);
    double s = 0.0;
    for (double v : a) s += std::pow(std::abs(v), p);
    EXPECT_NEAR(std::pow(s, 1.0 / p), 0.7, 1e-12) << p;
  }
}
