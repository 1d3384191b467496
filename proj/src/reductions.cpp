#include "sisfront/reductions.hpp"

#include <cmath>
#include <sstream>

#include "sisfront/error.hpp"

namespace sisfront {

namespace {

// beta*S*I/(1+sigma*S) - gamma*I
inline double net_infection(double S, double I, const ModelParams& p) noexcept {
  return p.beta() * saturation(S, p.sigma()) * I - p.gamma() * I;
}

inline double case3_saturation_arg(double I, double V, double c) noexcept { return 1.0 - I - V / c; }

void require_sigma_zero(const ModelParams& p, const char* what) {
  if (p.sigma() != 0.0) {
    std::ostringstream os;
    os << what << " requires sigma = 0, got sigma = " << p.sigma();
    throw Error(ErrorCode::SigmaNotZero, os.str());
  }
}

}  // namespace

double case1_reduced_flow(double I, const ModelParams& p) {
  // V restricted to M0; equals the third coordinate of case1_manifold_point.
  const double bs = p.beta() - p.sigma() * p.gamma();
  return I * (p.gamma() - bs * (1.0 - I)) / (p.c() * (1.0 + p.sigma() * (1.0 - I)));
}

PhaseState case1_manifold_point(double I, const ModelParams& p) {
  const double S = 1.0 - I;
  const double V = -p.beta() * I * (1.0 - I) / (p.c() * (1.0 + p.sigma() * (1.0 - I))) + p.gamma() * I / p.c();
  return PhaseState(SystemId::Reduced3, {S, I, V});
}

namespace {

void case1_fast(const ModelParams& p, double eps, std::span<const double> x, std::span<double> dx) {
  const double S = x[0], I = x[1], V = x[2];
  const double a = p.alpha();
  dx[0] = -(eps / a) * V - (p.c() / a) * (I + S - 1.0);
  dx[1] = eps * V;
  dx[2] = -p.c() * V - net_infection(S, I, p);
}

void case2_fast(const ModelParams& p, double eps, std::span<const double> x, std::span<double> dx) {
  const double S = x[0], I = x[1], V = x[2];
  dx[0] = -eps * eps * V - eps * p.c() * (I + S - 1.0);
  dx[1] = eps * V;
  dx[2] = -p.c() * V - net_infection(S, I, p);
}

void case3_fast(const ModelParams& p, double eps, std::span<const double> x, std::span<double> dx) {
  const double S = x[0], I = x[1], V = x[2];
  dx[0] = -p.c() * (S + I - 1.0) - V;
  dx[1] = eps * V;
  dx[2] = eps * (-p.c() * V - net_infection(S, I, p));
}

}  // namespace

PhaseState case1_fast_rhs(const PhaseState& state, const ModelParams& p, double eps) {
  if (state.system != SystemId::Reduced3)
    throw Error(ErrorCode::InvalidArgument, "case1_fast_rhs expects a reduced3 state");
  if (!(eps >= 0.0)) throw Error(ErrorCode::BadEpsilon, "case1_fast_rhs needs eps >= 0");
  Vec out(3);
  case1_fast(p, eps, state.coords, out);
  return PhaseState(SystemId::Reduced3, std::move(out));
}

std::array<double, 2> case2_reduced_rhs(double S, double I, const ModelParams& p) noexcept {
  return {-p.c() * (I + S - 1.0),
          -(p.beta() / p.c()) * I * (saturation(S, p.sigma()) - p.gamma() / p.beta())};
}

std::pair<double, double> case2_eigs_B(const ModelParams& p) noexcept {
  const double l1 = -(p.beta() - p.gamma() * (1.0 + p.sigma())) / (p.c() * (1.0 + p.sigma()));
  return {l1, -p.c()};
}

std::pair<double, double> case2_eigs_A(const ModelParams& p) noexcept {
  const double b = p.beta(), g = p.gamma(), s = p.sigma(), c = p.c();
  const double root = std::sqrt(c * c + 4.0 * (b - s * g) * (b - (1.0 + s) * g) / b);
  return {(-c + root) / 2.0, (-c - root) / 2.0};
}

std::array<double, 2> case2_rescaled_rhs(double S, double I, const ModelParams& p, double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "case2_rescaled_rhs needs delta >= 0");
  return {-I - S + 1.0, -delta * p.beta() * I * (saturation(S, p.sigma()) - p.gamma() / p.beta())};
}

double case2_limit_flow(double I, const ModelParams& p) {
  return -p.beta() * I * (saturation(1.0 - I, p.sigma()) - p.gamma() / p.beta());
}

std::array<double, 2> case3_reduced_rhs(double I, double V, const ModelParams& p) {
  const double w = case3_saturation_arg(I, V, p.c());
  const double denom = 1.0 + p.sigma() * w;
  if (denom == 0.0)
    throw Error(ErrorCode::SingularDenominator, "1 + sigma*(1 - I - V/c) vanishes");
  return {V, -p.c() * V - p.beta() * I * (w / denom - p.gamma() / p.beta())};
}

std::pair<double, double> case3_eigs_A(const ModelParams& p) noexcept {
  const double b = p.beta(), g = p.gamma(), s = p.sigma();
  return {-p.c(), (b - (1.0 + s) * g) * (b - g * s) / (p.c() * b)};
}

std::pair<std::complex<double>, std::complex<double>> case3_eigs_B(const ModelParams& p) noexcept {
  const double c = p.c();
  const std::complex<double> root = std::sqrt(std::complex<double>(c * c / 4.0 - invasion_rate(p), 0.0));
  return {-c / 2.0 + root, -c / 2.0 - root};
}

double case3_min_speed(const ModelParams& p) noexcept { return 2.0 * std::sqrt(invasion_rate(p)); }

SlopeInterval case3_slope_interval(const ModelParams& p, double c) {
  const double c_min = case3_min_speed(p);
  if (!(c >= c_min)) {
    std::ostringstream os;
    os << "c = " << c << " is below the minimum speed " << c_min;
    throw Error(ErrorCode::SpeedBelowBound, os.str());
  }
  const double disc = std::max(0.0, c * c - 4.0 * invasion_rate(p));
  const double root = std::sqrt(disc);
  const double lo = std::max(0.0, (c - root) / 2.0);
  const double hi = std::min(c, (c + root) / 2.0);
  return {lo, hi};
}

SpeedBound speed_bound(const ModelParams& p, double c) {
  return {case3_min_speed(p), case3_slope_interval(p, c)};
}

double kpp_second_order_residual(double I, double Iy, double Iyy, const ModelParams& p) {
  const double w = case3_saturation_arg(I, Iy, p.c());
  const double denom = 1.0 + p.sigma() * w;
  if (denom == 0.0)
    throw Error(ErrorCode::SingularDenominator, "1 + sigma*(1 - I - I_y/c) vanishes");
  return Iyy + p.c() * Iy + p.beta() * I * (w / denom - p.gamma() / p.beta());
}

double burgers_fkpp_min_speed(double k) { return k < 2.0 ? 2.0 : k / 2.0 + 2.0 / k; }

FkppParameters fkpp_parameters(const ModelParams& p) {
  require_sigma_zero(p, "fkpp_parameters");
  const double root = std::sqrt(p.beta() - p.gamma());
  const double k = root / p.c();
  return {k, burgers_fkpp_min_speed(k), 2.0 * root};
}

std::array<double, 2> burgers_fkpp_rhs_tw(double I, double V, const ModelParams& p) {
  require_sigma_zero(p, "burgers_fkpp_rhs_tw");
  const double b = p.beta(), c = p.c();
  return {V, (b * I / c - c) * V - b * I * (1.0 - p.gamma() / b - I)};
}

double manifold_residual(ManifoldId manifold, std::span<const double> x, const ModelParams& p) {
  const std::size_t need = manifold == ManifoldId::L0_largeC ? 2 : 3;
  if (x.size() != need)
    throw Error(ErrorCode::InvalidArgument, "manifold_residual: state has the wrong dimension");
  switch (manifold) {
    case ManifoldId::M0_case1: {
      const double S = x[0], I = x[1], V = x[2];
      return std::abs(I + S - 1.0) + std::abs(-p.c() * V - net_infection(S, I, p));
    }
    case ManifoldId::N0_case2: {
      const double S = x[0], I = x[1], V = x[2];
      return std::abs(V + (p.beta() / p.c()) * (saturation(S, p.sigma()) - p.gamma() / p.beta()) * I);
    }
    case ManifoldId::K0_case3: {
      const double S = x[0], I = x[1], V = x[2];
      return std::abs(S - (1.0 - I - V / p.c()));
    }
    case ManifoldId::L0_largeC:
      return std::abs(1.0 - x[1] - x[0]);
  }
  return 0.0;
}

ManifoldId critical_manifold(Regime regime) noexcept {
  switch (regime) {
    case Regime::Case1ComparableSmall: return ManifoldId::M0_case1;
    case Regime::Case2SlowInfected: return ManifoldId::N0_case2;
    case Regime::Case3FastInfected: return ManifoldId::K0_case3;
  }
  return ManifoldId::N0_case2;
}

VectorField slow_fast_field(Regime regime, Form form, double eps, const ModelParams& p) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::BadEpsilon, "eps must be finite and >= 0");
  if (form == Form::Slow && !(eps > 0.0))
    throw Error(ErrorCode::BadEpsilon, "the slow form divides by eps; use the reduced systems at eps = 0");

  using Kernel = void (*)(const ModelParams&, double, std::span<const double>, std::span<double>);
  Kernel kernel = nullptr;
  switch (regime) {
    case Regime::Case1ComparableSmall: kernel = case1_fast; break;
    case Regime::Case2SlowInfected: kernel = case2_fast; break;
    case Regime::Case3FastInfected: kernel = case3_fast; break;
  }
  if (form == Form::Fast)
    return {SystemId::Reduced3, 3,
            [p, eps, kernel](std::span<const double> x, std::span<double> dx) { kernel(p, eps, x, dx); }};
  const double inv = 1.0 / eps;
  return {SystemId::Reduced3, 3, [p, eps, inv, kernel](std::span<const double> x, std::span<double> dx) {
            kernel(p, eps, x, dx);
            dx[0] *= inv;
            dx[1] *= inv;
            dx[2] *= inv;
          }};
}

VectorField field_for(SystemId id, const ModelParams& p) {
  switch (id) {
    case SystemId::Full4: return full4_field(p);
    case SystemId::Reduced3: return reduced3_field(p);
    case SystemId::Case1Line:
      return {id, 1, [p](std::span<const double> x, std::span<double> dx) { dx[0] = case1_reduced_flow(x[0], p); }};
    case SystemId::Case2Plane:
      return {id, 2, [p](std::span<const double> x, std::span<double> dx) {
                const auto f = case2_reduced_rhs(x[0], x[1], p);
                dx[0] = f[0];
                dx[1] = f[1];
              }};
    case SystemId::Case2Rescaled: {
      const double delta = 1.0 / (p.c() * p.c());
      return {id, 2, [p, delta](std::span<const double> x, std::span<double> dx) {
                const auto f = case2_rescaled_rhs(x[0], x[1], p, delta);
                dx[0] = f[0];
                dx[1] = f[1];
              }};
    }
    case SystemId::Case3Plane:
      return {id, 2, [p](std::span<const double> x, std::span<double> dx) {
                const auto f = case3_reduced_rhs(x[0], x[1], p);
                dx[0] = f[0];
                dx[1] = f[1];
              }};
    case SystemId::BurgersPlane:
      require_sigma_zero(p, "burgers plane field");
      return {id, 2, [p](std::span<const double> x, std::span<double> dx) {
                const auto f = burgers_fkpp_rhs_tw(x[0], x[1], p);
                dx[0] = f[0];
                dx[1] = f[1];
              }};
  }
  throw Error(ErrorCode::InvalidArgument, "field_for: unknown system");
}

}  // namespace sisfront
