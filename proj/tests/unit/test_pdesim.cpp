#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sisfront/connect.hpp"
#include "sisfront/error.hpp"
#include "sisfront/pdesim.hpp"
#include "support.hpp"

using namespace sisfront;
using sisfront::testing::make;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

SimConfig config(double dt, double T, std::size_t stride) {
  SimConfig c;
  c.dt = dt;
  c.T = T;
  c.stride = stride;
  return c;
}

double max_dev(const std::vector<double>& v, double ref) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x - ref));
  return m;
}

FrontProfile case2_profile(const ModelParams& p) {
  ShootSpec spec;
  spec.system = ShootSystem::Case2Plane;
  return shoot_heteroclinic(spec, p);
}

}  // namespace

TEST(Grid, MakeAndSpacing) {
  const Grid1D g = Grid1D::make(0, 100, 201);
  EXPECT_DOUBLE_EQ(g.dx(), 0.5);
  EXPECT_DOUBLE_EQ(g.x(200), 100.0);
  EXPECT_THROW(Grid1D::make(0, 100, 99), Error);
  EXPECT_THROW(Grid1D::make(1, 1, 200), Error);
  EXPECT_DOUBLE_EQ(min_domain_length(0.01, 1), 50.0);
  EXPECT_DOUBLE_EQ(min_domain_length(4, 1), 100.0);
}

TEST(Simulate, EquilibriaStayConstant) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  const auto eq = equilibria(p);
  for (const auto& e : {eq.A, eq.B}) {
    const SimResult r = simulate(p, g, constant_field(g, e.S(), e.I()), config(0.05, 10, 50));
    EXPECT_EQ(r.steps, 200u);
    EXPECT_EQ(r.snapshots.size(), 5u);
    EXPECT_LT(max_dev(r.snapshots.back().S, e.S()), 1e-10);
    EXPECT_LT(max_dev(r.snapshots.back().I, e.I()), 1e-10);
    EXPECT_DOUBLE_EQ(r.snapshots.back().t, 10.0);
  }
}

TEST(Simulate, DtUsedDividesHorizon) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  const SimResult r = simulate(p, g, constant_field(g, 1, 0), config(0.03, 1.0, 10));
  EXPECT_EQ(r.steps, 34u);
  EXPECT_DOUBLE_EQ(r.dt_used * 34, 1.0);
  EXPECT_LE(r.dt_used, 0.03);
}

TEST(Simulate, CflAndDomainChecks) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  const Field f = constant_field(g, 1, 0);
  EXPECT_EQ(code_of([&] { simulate(p, g, f, config(0.2, 1, 1)); }), ErrorCode::CFLViolation);
  EXPECT_EQ(code_of([&] { simulate(make(20, 1, 0), g, f, config(0.08, 1, 1)); }), ErrorCode::CFLViolation);
  SimConfig moving = config(0.05, 1, 1);
  moving.frame = Frame::CoMoving;
  moving.frame_speed = 20;
  EXPECT_EQ(code_of([&] { simulate(p, g, f, moving); }), ErrorCode::CFLViolation);
  const Grid1D short_grid = Grid1D::make(0, 40, 201);
  EXPECT_EQ(code_of([&] { simulate(p, short_grid, constant_field(short_grid, 1, 0), config(0.01, 1, 1)); }),
            ErrorCode::InvalidArgument);
  Field bad = f;
  bad.I.pop_back();
  EXPECT_EQ(code_of([&] { simulate(p, g, bad, config(0.05, 1, 1)); }), ErrorCode::InvalidArgument);
}

TEST(Simulate, BlowUpDetected) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  Field f = constant_field(g, 1, 0);
  f.S[100] = 1e200;
  f.I[100] = 1e200;
  EXPECT_EQ(code_of([&] { simulate(p, g, f, config(0.05, 10, 10)); }), ErrorCode::NonFiniteField);
}

TEST(InitialFront, EndsAndMidpoint) {
  const ModelParams p = make(2, 0.5, 0.5);
  const Grid1D g = Grid1D::make(0, 200, 2001);
  const Field f = initial_front(g, p, 50.0, 2.0);
  EXPECT_NEAR(f.S.front(), endemic_susceptible(p), 1e-12);
  EXPECT_NEAR(f.I.front(), endemic_infected(p), 1e-12);
  EXPECT_NEAR(f.S.back(), 1.0, 1e-12);
  EXPECT_NEAR(f.I.back(), 0.0, 1e-12);
  EXPECT_NEAR(f.I[500], 0.5 * endemic_infected(p), 1e-12);
  EXPECT_NEAR(rightmost_crossing(g, f, 0.5 * endemic_infected(p)), 50.0, 1e-9);
  EXPECT_THROW(initial_front(g, p, 250.0, 2.0), Error);
  EXPECT_THROW(initial_front(g, p, 50.0, 0.1), Error);
}

TEST(Simulate, StepInitMovesRight) {
  const ModelParams p = make(2, 1, 0, 1, 0.01, 1, Regime::Case3FastInfected);
  const Grid1D g = Grid1D::make(0, 100, 501);
  const SimResult r = simulate(p, g, initial_front(g, p, 25, 2), config(0.01, 10, 100));
  const double half = 0.5 * endemic_infected(p);
  double prev = -INFINITY;
  for (const Field& f : r.snapshots) {
    const double x = rightmost_crossing(g, f, half);
    EXPECT_GT(x, prev);
    prev = x;
  }
  EXPECT_GT(prev, 35.0);
}

TEST(Simulate, InfectedFreeDataStaysInfectedFree) {
  const ModelParams p = make(2, 0.5, 0.5);
  const Grid1D g = Grid1D::make(0, 100, 201);
  Field f = constant_field(g, 1, 0);
  for (std::size_t i = 0; i < f.S.size(); ++i) f.S[i] = 1 + 0.3 * std::sin(0.1 * g.x(i));
  const SimResult r = simulate(p, g, f, config(0.05, 10, 50));
  for (const Field& s : r.snapshots) EXPECT_LT(max_dev(s.I, 0.0), 1e-12);
}

TEST(Simulate, TotalPopulationConserved) {
  const ModelParams p = make(2, 0.5, 0.5);
  const Grid1D g = Grid1D::make(0, 100, 201);
  const SimResult r = simulate(p, g, initial_front(g, p, 25, 2), config(0.05, 50, 100));
  const double m0 = total_population(g, r.snapshots.front());
  for (const Field& f : r.snapshots) EXPECT_LT(std::abs(total_population(g, f) - m0), 1e-8 * g.length());
}

TEST(Simulate, MovingWindowTracksFront) {
  const ModelParams p = make(2, 1, 0, 1, 0.01, 1, Regime::Case3FastInfected);
  const Grid1D g = Grid1D::make(0, 100, 501);
  SimConfig cfg = config(0.01, 30, 100);
  cfg.recenter = true;
  const SimResult r = simulate(p, g, initial_front(g, p, 25, 2), cfg);
  EXPECT_GT(r.shifts, 0u);
  const Field& last = r.snapshots.back();
  EXPECT_DOUBLE_EQ(last.x_offset, static_cast<double>(r.shifts) * g.dx());
  const double x = rightmost_crossing(g, last, 0.5 * endemic_infected(p));
  EXPECT_GT(x - last.x_offset, 10.0);
  EXPECT_LT(x - last.x_offset, 50.0);
  EXPECT_GT(x, 70.0);
}

TEST(Speed, SyntheticFit) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 1e-6);
  std::vector<double> t, x;
  for (int k = 0; k < 50; ++k) {
    t.push_back(0.2 * k);
    x.push_back(2 * t.back() + noise(rng));
  }
  const SpeedEstimate e = fit_front_speed(t, x);
  EXPECT_NEAR(e.c_hat, 2.0, 1e-4);
  EXPECT_GT(e.r2, 0.9999);
  EXPECT_EQ(e.samples, 50u);
  const std::vector<double> still(50, 3.0);
  const SpeedEstimate s = fit_front_speed(t, still);
  EXPECT_EQ(s.c_hat, 0.0);
  EXPECT_EQ(s.r2, 1.0);
  const double one[] = {1.0};
  EXPECT_THROW(fit_front_speed(one, one), Error);
}

TEST(Speed, StationaryFrontHasZeroSpeed) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  Field f = initial_front(g, p, 50, 2);
  std::vector<Field> snaps;
  for (int k = 0; k < 20; ++k) {
    f.t = k;
    snaps.push_back(f);
  }
  EXPECT_NEAR(measure_front_speed(g, snaps, p).c_hat, 0.0, 1e-12);
}

TEST(Speed, InterfaceLostAndTooFewSnapshots) {
  const ModelParams p = make(2, 1, 0);
  const Grid1D g = Grid1D::make(0, 100, 201);
  std::vector<Field> snaps;
  for (int k = 0; k < 20; ++k) {
    Field f = constant_field(g, endemic_susceptible(p), endemic_infected(p));
    f.t = k;
    snaps.push_back(f);
  }
  EXPECT_EQ(code_of([&] { measure_front_speed(g, snaps, p); }), ErrorCode::InterfaceLost);
  std::vector<Field> edge;
  for (int k = 0; k < 20; ++k) {
    Field f = initial_front(g, p, 98, 2);
    f.t = k;
    edge.push_back(f);
  }
  EXPECT_EQ(code_of([&] { measure_front_speed(g, edge, p); }), ErrorCode::InterfaceLost);
  std::vector<Field> few;
  for (int k = 0; k < 5; ++k) {
    Field f = initial_front(g, p, 50, 2);
    f.t = k;
    few.push_back(f);
  }
  EXPECT_EQ(code_of([&] { measure_front_speed(g, few, p); }), ErrorCode::InvalidArgument);
}

TEST(CompareProfile, SelfComparisonIsSmall) {
  const ModelParams p = make(2, 1, 0, 1);
  const FrontProfile prof = case2_profile(p);
  const double rate = disease_free_tail_rate(prof, p);
  EXPECT_LT(rate, 0.0);
  for (std::size_t n : {601, 1201, 2401}) {
    const Grid1D g = Grid1D::make(-30, 30, n);
    const Field f = field_from_profile(g, prof, 0.37, rate);
    EXPECT_LT(compare_profile(g, f, prof, p), 2 * g.dx() * g.dx()) << "n=" << n;
  }
}

TEST(CompareProfile, MismatchedSpeedsDiffer) {
  const ModelParams p = make(5, 1, 0, 0.5);
  const FrontProfile slow = case2_profile(p);
  const FrontProfile fast = case2_profile(p.with_speed(1.0));
  const Grid1D g = Grid1D::make(-30, 30, 1201);
  const Field f = field_from_profile(g, slow, 0.0, disease_free_tail_rate(slow, p));
  EXPECT_GT(compare_profile(g, f, fast, p), 0.1);
}

TEST(CompareProfile, NoOverlap) {
  const ModelParams p = make(2, 1, 0, 1);
  const FrontProfile prof = case2_profile(p);
  const Grid1D g = Grid1D::make(-30, 30, 601);
  EXPECT_EQ(code_of([&] { compare_profile(g, constant_field(g, 1, 0), prof, p); }), ErrorCode::NoOverlap);
}

TEST(Population, TrapezoidOracle) {
  const Grid1D g = Grid1D::make(0, 100, 201);
  EXPECT_DOUBLE_EQ(total_population(g, constant_field(g, 0.25, 0.5)), 75.0);
}
