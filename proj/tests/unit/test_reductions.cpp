#include <gtest/gtest.h>

#include "sisfront/error.hpp"
#include "sisfront/integrate.hpp"
#include "sisfront/reductions.hpp"
#include "support.hpp"

using namespace sisfront;
using sisfront::testing::eig2;
using sisfront::testing::fd_jacobian2;
using sisfront::testing::make;
using sisfront::testing::ParamGen;

// Case 1 --------------------------------------------------------------------

TEST(Case1ReducedFlow, ZerosAtEquilibria) {
  const ModelParams p = make(2, 1, 0);
  EXPECT_EQ(case1_reduced_flow(0, p), 0.0);
  EXPECT_NEAR(case1_reduced_flow(0.5, p), 0.0, 1e-15);
  const ModelParams q = make(2, 0.5, 0.5);
  EXPECT_NEAR(case1_reduced_flow(endemic_infected(q), q), 0.0, 1e-15);
}

TEST(Case1ReducedFlow, EqualsVOnCriticalManifold) {
  ParamGen gen(31);
  for (int k = 0; k < 50; ++k) {
    const ModelParams p = gen.next(Regime::Case1ComparableSmall);
    for (double I = 0.0; I <= 1.0; I += 0.05)
      EXPECT_NEAR(case1_reduced_flow(I, p), case1_manifold_point(I, p)[2], 1e-12);
  }
}

TEST(Case1ReducedFlow, OnlyTwoZerosAndNegativeBetween) {
  ParamGen gen(32);
  for (int k = 0; k < 20; ++k) {
    const ModelParams p = gen.next(Regime::Case1ComparableSmall);
    const double ia = endemic_infected(p);
    int sign_changes = 0;
    double prev = case1_reduced_flow(1e-4, p);
    for (int i = 2; i < 10000; ++i) {
      const double I = i * 1e-4;
      const double v = case1_reduced_flow(I, p);
      if ((v > 0) != (prev > 0)) ++sign_changes;
      if (I < ia - 1e-9) {
        EXPECT_LT(v, 0.0);
      }
      prev = v;
    }
    EXPECT_LE(sign_changes, 1);
  }
}

TEST(Case1ManifoldPoint, Examples) {
  const ModelParams p = make(2, 1, 0);
  auto x = case1_manifold_point(0, p);
  EXPECT_EQ(x.coords, (Vec{1, 0, 0}));
  x = case1_manifold_point(1, p);
  EXPECT_NEAR(x[0], 0.0, 1e-15);
  EXPECT_NEAR(x[2], p.gamma() / p.c(), 1e-15);
  x = case1_manifold_point(0.5, p);
  EXPECT_NEAR(x[2], 0.0, 1e-15);
  for (double I = 0; I <= 1.0; I += 0.01)
    EXPECT_LT(manifold_residual(ManifoldId::M0_case1, case1_manifold_point(I, p).coords, p), 1e-12);
}

TEST(Case1FastRhs, Examples) {
  const ModelParams p = make(2, 1, 0, 1, 0.01, 1, Regime::Case1ComparableSmall);
  const auto d = case1_fast_rhs(PhaseState(SystemId::Reduced3, {0.6, 0.5, 0}), p, 0.0).coords;
  EXPECT_NEAR(d[0], -0.1, 1e-15);
  EXPECT_EQ(d[1], 0.0);
  EXPECT_NEAR(d[2], -0.1, 1e-15);
  for (double I = 0; I <= 1.0; I += 0.1)
    for (double v : case1_fast_rhs(case1_manifold_point(I, p), p, 0.0).coords) EXPECT_LT(std::abs(v), 1e-12);
  for (double v : case1_fast_rhs(PhaseState(SystemId::Reduced3, {1, 0, 0}), p, 0.01).coords) EXPECT_EQ(v, 0.0);
}

// Case 2 --------------------------------------------------------------------

TEST(Case2ReducedRhs, Examples) {
  const ModelParams p = make(2, 1, 0);
  auto f = case2_reduced_rhs(1, 0, p);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  f = case2_reduced_rhs(0.5, 0.5, p);
  EXPECT_NEAR(f[0], 0.0, 1e-15);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
  f = case2_reduced_rhs(0.5, 0.25, p);
  EXPECT_NEAR(f[0], 0.25, 1e-15);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
}

TEST(Case2Eigs, Examples) {
  auto b = case2_eigs_B(make(2, 0.5, 0.5, 1));
  EXPECT_NEAR(b.first, -1.25 / 1.5, 1e-15);
  EXPECT_EQ(b.second, -1.0);
  b = case2_eigs_B(make(2, 1, 0, 2));
  EXPECT_NEAR(b.first, -0.5, 1e-15);
  EXPECT_EQ(b.second, -2.0);
  auto a = case2_eigs_A(make(2, 0.5, 0.5, 1));
  EXPECT_NEAR(a.first, (-1 + std::sqrt(5.375)) / 2, 1e-14);
  EXPECT_NEAR(a.second, (-1 - std::sqrt(5.375)) / 2, 1e-14);
  a = case2_eigs_A(make(2, 1, 0, 1));
  EXPECT_NEAR(a.first, (-1 + std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(a.second, (-1 - std::sqrt(5.0)) / 2, 1e-14);
}

TEST(Case2Eigs, DeterminantIdentity) {
  ParamGen gen(41);
  for (int k = 0; k < 50; ++k) {
    const ModelParams p = gen.next();
    const auto a = case2_eigs_A(p);
    const double b = p.beta(), g = p.gamma(), s = p.sigma();
    EXPECT_NEAR(a.first * a.second, -(b - s * g) * (b - (1 + s) * g) / b, 1e-10 * (1 + std::abs(a.first * a.second)));
    EXPECT_GT(a.first, 0.0);
    EXPECT_LT(a.second, 0.0);
  }
}

TEST(Case2Eigs, MatchFiniteDifferenceOracle) {
  ParamGen gen(42);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = gen.next();
    auto f = [&](double S, double I) { return case2_reduced_rhs(S, I, p); };
    const auto jb = fd_jacobian2(f, 1.0, 0.0);
    const auto eb = eig2(jb[0], jb[1], jb[2], jb[3]);
    const auto cb = case2_eigs_B(p);
    const double hi = std::max(cb.first, cb.second), lo = std::min(cb.first, cb.second);
    EXPECT_NEAR(eb.first.real(), hi, 1e-8);
    EXPECT_NEAR(eb.second.real(), lo, 1e-8);
    const auto ja = fd_jacobian2(f, endemic_susceptible(p), endemic_infected(p));
    const auto ea = eig2(ja[0], ja[1], ja[2], ja[3]);
    const auto ca = case2_eigs_A(p);
    EXPECT_NEAR(ea.first.real(), ca.first, 1e-8);
    EXPECT_NEAR(ea.second.real(), ca.second, 1e-8);
  }
}

TEST(Case2Rescaled, Examples) {
  const ModelParams p = make(2, 1, 0);
  auto f = case2_rescaled_rhs(0.7, 0.3, p, 0.0);
  EXPECT_NEAR(f[0], 0.0, 1e-15);
  EXPECT_EQ(f[1], 0.0);
  f = case2_rescaled_rhs(0.5, 0.2, p, 0.0);
  EXPECT_NEAR(f[0], 0.3, 1e-15);
  f = case2_rescaled_rhs(1, 0.5, p, 1.0);
  EXPECT_NEAR(f[0], -0.5, 1e-15);
  EXPECT_NEAR(f[1], -0.5, 1e-15);
  EXPECT_THROW(case2_rescaled_rhs(1, 0.5, p, -1.0), Error);
}

TEST(Case2Rescaled, IsZetaScaledPlanarField) {
  ParamGen gen(43);
  for (int k = 0; k < 50; ++k) {
    const ModelParams p = gen.next();
    const double S = gen.uniform(0, 1), I = gen.uniform(0, 1), c = p.c();
    const auto a = case2_reduced_rhs(S, I, p);
    const auto b = case2_rescaled_rhs(S, I, p, 1.0 / (c * c));
    EXPECT_NEAR(a[0] / c, b[0], 1e-12);
    EXPECT_NEAR(a[1] / c, b[1], 1e-12);
  }
}

TEST(Case2LimitFlow, Examples) {
  const ModelParams p = make(2, 1, 0);
  EXPECT_EQ(case2_limit_flow(0, p), 0.0);
  EXPECT_NEAR(case2_limit_flow(0.5, p), 0.0, 1e-15);
  EXPECT_NEAR(case2_limit_flow(0.25, p), -0.125, 1e-15);
  const ModelParams q = make(3, 0.5, 1.5);
  EXPECT_NEAR(case2_limit_flow(endemic_infected(q), q), 0.0, 1e-14);
}

// Case 3 --------------------------------------------------------------------

TEST(Case3ReducedRhs, Examples) {
  const ModelParams p = make(2, 1, 0);
  auto f = case3_reduced_rhs(0, 0, p);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  f = case3_reduced_rhs(0.5, 0, p);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
  f = case3_reduced_rhs(0.25, 0, p);
  EXPECT_NEAR(f[1], -0.125, 1e-15);
  const ModelParams q = make(3, 0.5, 1.0);
  // 1 + sigma (1 - I - V/c) = 0 at I = 2, V = 0.
  EXPECT_THROW(case3_reduced_rhs(2.0, 0.0, q), Error);
}

TEST(Case3Eigs, Examples) {
  auto a = case3_eigs_A(make(2, 1, 0, 3));
  EXPECT_EQ(a.first, -3.0);
  EXPECT_NEAR(a.second, 1.0 / 3.0, 1e-15);
  a = case3_eigs_A(make(2, 0.5, 0.5, 2));
  EXPECT_NEAR(a.second, 0.546875, 1e-15);
  auto b = case3_eigs_B(make(2, 1, 0, 2));
  EXPECT_NEAR(b.first.real(), -1.0, 1e-15);
  EXPECT_NEAR(b.second.real(), -1.0, 1e-15);
  b = case3_eigs_B(make(2, 1, 0, 3));
  EXPECT_NEAR(b.first.real(), -1.5 + std::sqrt(1.25), 1e-15);
  EXPECT_NEAR(b.second.real(), -1.5 - std::sqrt(1.25), 1e-15);
  b = case3_eigs_B(make(2, 1, 0, 1));
  EXPECT_NEAR(b.first.real(), -0.5, 1e-15);
  EXPECT_GT(std::abs(b.first.imag()), 0.0);
}

TEST(Case3Eigs, ProductIdentityAndOracle) {
  ParamGen gen(44);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = gen.next(Regime::Case3FastInfected);
    const auto b = case3_eigs_B(p);
    EXPECT_NEAR((b.first * b.second).real(), invasion_rate(p), 1e-10);
    auto f = [&](double I, double V) { return case3_reduced_rhs(I, V, p); };
    const auto ja = fd_jacobian2(f, endemic_infected(p), 0.0);
    const auto ea = eig2(ja[0], ja[1], ja[2], ja[3]);
    const auto ca = case3_eigs_A(p);
    EXPECT_NEAR(ea.first.real(), ca.second, 1e-8);
    EXPECT_NEAR(ea.second.real(), ca.first, 1e-8);
    const double c_min = case3_min_speed(p);
    if (std::abs(p.c() - c_min) < 0.05 * c_min) continue;  // near-repeated root
    const auto jb = fd_jacobian2(f, 0.0, 0.0);
    const auto eb = eig2(jb[0], jb[1], jb[2], jb[3]);
    EXPECT_NEAR(eb.first.real(), b.first.real(), 1e-8);
    EXPECT_NEAR(std::abs(eb.first.imag()), std::abs(b.first.imag()), 1e-8);
  }
}

TEST(Case3Speed, MinSpeedExamples) {
  EXPECT_DOUBLE_EQ(case3_min_speed(make(2, 1, 0)), 2.0);
  EXPECT_NEAR(case3_min_speed(make(2, 0.5, 0.5)), 2 * std::sqrt(1.25 / 1.5), 1e-15);
  EXPECT_LT(case3_min_speed(make(1.0 + 1e-10, 1, 0)), 1e-4);
}

TEST(Case3Speed, SlopeIntervalExamples) {
  auto r = case3_slope_interval(make(2, 1, 0), 2);
  EXPECT_NEAR(r.lo, 1.0, 1e-15);
  EXPECT_NEAR(r.hi, 1.0, 1e-15);
  r = case3_slope_interval(make(2, 1, 0), 3);
  EXPECT_NEAR(r.lo, (3 - std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(r.hi, (3 + std::sqrt(5.0)) / 2, 1e-15);
  try {
    case3_slope_interval(make(2, 1, 0), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpeedBelowBound);
  }
}

TEST(Case3Speed, IntervalNonemptyExactlyAboveBound) {
  ParamGen gen(45);
  for (int k = 0; k < 30; ++k) {
    const ModelParams p = gen.next();
    const double c_min = case3_min_speed(p);
    for (double f : {0.5, 0.9, 0.999, 1.001, 1.1, 2.0, 5.0}) {
      const double c = f * c_min;
      if (f < 1) {
        EXPECT_THROW(case3_slope_interval(p, c), Error);
      } else {
        const auto r = case3_slope_interval(p, c);
        EXPECT_GT(r.lo, 0.0);
        EXPECT_LE(r.lo, r.hi);
        EXPECT_LE(r.hi, c);
        // r^2 - c r + m <= 0 at the endpoints
        EXPECT_NEAR(r.lo * r.lo - c * r.lo + invasion_rate(p), 0.0, 1e-10);
      }
    }
  }
}

TEST(KppResidual, VanishesAlongTrajectories) {
  const ModelParams p = make(2, 1, 0, 3);
  EXPECT_EQ(kpp_second_order_residual(0, 0, 0, p), 0.0);
  EXPECT_NEAR(kpp_second_order_residual(0.5, 0, 0, p), 0.0, 1e-15);
  const VectorField f = field_for(SystemId::Case3Plane, p);
  const VectorField back{SystemId::Case3Plane, 2, [&](std::span<const double> y, std::span<double> dy) {
                           f.eval(y, dy);
                           dy[0] = -dy[0];
                           dy[1] = -dy[1];
                         }};
  const Trajectory tr = integrate(f, {0.45, -0.01}, 3.0, 1e-12);
  const double h = 1e-3;
  for (std::size_t k = 1; k + 1 < tr.size(); k += 3) {
    const Vec& x = tr.states[k];
    const double vf = integrate(f, x, h, 1e-13).back()[1];
    const double vb = integrate(back, x, h, 1e-13).back()[1];
    EXPECT_LT(std::abs(kpp_second_order_residual(x[0], x[1], (vf - vb) / (2 * h), p)), 1e-5);
  }
}

// sigma = 0 -----------------------------------------------------------------

TEST(Fkpp, Parameters) {
  const auto k = fkpp_parameters(make(2, 1, 0, 2));
  EXPECT_DOUBLE_EQ(k.k, 0.5);
  EXPECT_DOUBLE_EQ(k.c_tilde, 2.0);
  EXPECT_DOUBLE_EQ(k.c_min_original, 2.0);
  EXPECT_DOUBLE_EQ(burgers_fkpp_min_speed(4.0), 2.5);
  EXPECT_DOUBLE_EQ(burgers_fkpp_min_speed(1.0), 2.0);
  EXPECT_THROW(fkpp_parameters(make(2, 0.5, 0.5)), Error);
}

TEST(Fkpp, RhsExamples) {
  const ModelParams p = make(2, 1, 0, 1);
  auto f = burgers_fkpp_rhs_tw(0, 0, p);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  f = burgers_fkpp_rhs_tw(0.5, 0, p);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
  f = burgers_fkpp_rhs_tw(0.25, 0.1, p);
  EXPECT_NEAR(f[0], 0.1, 1e-15);
  EXPECT_NEAR(f[1], -0.175, 1e-15);
  EXPECT_THROW(burgers_fkpp_rhs_tw(0.25, 0.1, make(2, 0.5, 0.5)), Error);
}

TEST(Fkpp, AgreesWithCase3AtSigmaZero) {
  ParamGen gen(46);
  for (int k = 0; k < 1000; ++k) {
    const double g = gen.uniform(0.2, 2);
    const ModelParams p = make(g * gen.uniform(1.1, 4), g, 0, gen.uniform(0.2, 5));
    const double I = gen.uniform(-0.5, 1.5), V = gen.uniform(-2, 2);
    const auto a = case3_reduced_rhs(I, V, p);
    const auto b = burgers_fkpp_rhs_tw(I, V, p);
    EXPECT_NEAR(a[0], b[0], 1e-12);
    EXPECT_NEAR(a[1], b[1], 1e-12 * (1 + std::abs(a[1])));
  }
}

// Manifolds and fields ------------------------------------------------------

TEST(ManifoldResidual, Examples) {
  const ModelParams p = make(2, 1, 0, 1);
  EXPECT_NEAR(manifold_residual(ManifoldId::K0_case3, Vec{0.6, 0.3, 0.1}, p), 0.0, 1e-15);
  EXPECT_NEAR(manifold_residual(ManifoldId::L0_largeC, Vec{0.5, 0.2}, p), 0.3, 1e-15);
  EXPECT_THROW(manifold_residual(ManifoldId::L0_largeC, Vec{0.5, 0.2, 0.0}, p), Error);
}

TEST(SlowFastField, FastIsEpsTimesSlow) {
  ParamGen gen(47);
  for (int k = 0; k < 60; ++k) {
    const Regime r = static_cast<Regime>(k % 3);
    const double eps = gen.uniform(0.001, 0.1);
    const ModelParams p = gen.next(r).with_epsilon(eps);
    const Vec x{gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(-1, 1)};
    const Vec slow = slow_fast_field(r, Form::Slow, eps, p)(x);
    const Vec fast = slow_fast_field(r, Form::Fast, eps, p)(x);
    const Vec ref = rhs_reduced3(PhaseState(SystemId::Reduced3, x), p).coords;
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(slow[i], ref[i], 1e-9 * (1 + std::abs(ref[i])));
      EXPECT_NEAR(fast[i], eps * slow[i], 1e-12 * (1 + std::abs(slow[i])));
    }
  }
  EXPECT_THROW(slow_fast_field(Regime::Case2SlowInfected, Form::Slow, 0.0, make(2, 1, 0)), Error);
}

TEST(SlowFastField, K0IsCriticalSetOfCase3Fast) {
  const ModelParams p = make(2, 0.5, 0.5, 2.5, 0.01, 1, Regime::Case3FastInfected);
  const VectorField f = slow_fast_field(Regime::Case3FastInfected, Form::Fast, 0.0, p);
  for (double I = 0.05; I < 1; I += 0.1)
    for (double V = -0.5; V < 0.5; V += 0.1) {
      const Vec x{1 - I - V / p.c(), I, V};
      EXPECT_LT(manifold_residual(ManifoldId::K0_case3, x, p), 1e-14);
      for (double v : f(x)) EXPECT_LT(std::abs(v), 1e-12);
    }
}

TEST(SlowFastField, N0IsCriticalSetOfCase2Fast) {
  const ModelParams p = make(2, 0.5, 0.5, 1.5);
  const VectorField f = slow_fast_field(Regime::Case2SlowInfected, Form::Fast, 0.0, p);
  for (double S = 0.1; S < 1; S += 0.1)
    for (double I = 0.05; I < 1; I += 0.1) {
      const double V = -(p.beta() / p.c()) * (saturation(S, p.sigma()) - p.gamma() / p.beta()) * I;
      const Vec x{S, I, V};
      EXPECT_LT(manifold_residual(ManifoldId::N0_case2, x, p), 1e-14);
      for (double v : f(x)) EXPECT_LT(std::abs(v), 1e-12);
    }
}
