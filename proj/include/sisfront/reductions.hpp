#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>

#include "sisfront/model.hpp"
#include "sisfront/phasespace.hpp"

namespace sisfront {

/// Critical / invariant manifolds of the singular limits.
///   M0: I + S - 1 = 0 and -cV - beta*S*I/(1+sigma*S) + gamma*I = 0   (Case 1, in (S,I,V))
///   N0: V = -(beta/c) * (S/(1+sigma*S) - gamma/beta) * I           (Case 2, in (S,I,V))
///   K0: S = 1 - I - V/c                                            (Case 3, in (S,I,V))
///   L0: S = 1 - I                                                  (large c, in (S,I))
enum class ManifoldId { M0_case1, N0_case2, K0_case3, L0_largeC };

struct SlopeInterval {
  double lo;
  double hi;
};

struct SpeedBound {
  double c_min;
  SlopeInterval r_interval;
};

// Case 1 -------------------------------------------------------------------

/// Flow of I along the critical manifold M0 in the variable z.
double case1_reduced_flow(double I, const ModelParams& p);

/// Point of M0 parameterized by I: (1 - I, I, V(I)).
PhaseState case1_manifold_point(double I, const ModelParams& p);

/// Fast-form Case-1 field in xi = z/eps:
///   S' = -(eps/alpha) V - (c/alpha)(I + S - 1),  I' = eps V,  V' = -cV - beta S I/(1+sigma S) + gamma I.
PhaseState case1_fast_rhs(const PhaseState& state, const ModelParams& p, double eps);

// Case 2 -------------------------------------------------------------------

/// Planar flow on N0: (-c(I+S-1), -(beta/c) I (S/(1+sigma S) - gamma/beta)).
std::array<double, 2> case2_reduced_rhs(double S, double I, const ModelParams& p) noexcept;

/// Eigenvalues at B~ = (1,0): (-(beta-gamma(1+sigma))/(c(1+sigma)), -c).
std::pair<double, double> case2_eigs_B(const ModelParams& p) noexcept;

/// Eigenvalues at the saddle A~, unstable first.
std::pair<double, double> case2_eigs_A(const ModelParams& p) noexcept;

/// Field in eta with delta = 1/c^2: (-I - S + 1, -delta beta I (S/(1+sigma S) - gamma/beta)).
std::array<double, 2> case2_rescaled_rhs(double S, double I, const ModelParams& p, double delta);

/// Limit flow on L0 in zeta = z/c.
double case2_limit_flow(double I, const ModelParams& p);

// Case 3 -------------------------------------------------------------------

/// Planar flow on K0 in y. Throws SingularDenominator when
/// 1 + sigma(1 - I - V/c) vanishes.
std::array<double, 2> case3_reduced_rhs(double I, double V, const ModelParams& p);

/// Eigenvalues at the saddle A-bar: (-c, (beta-(1+sigma)gamma)(beta-gamma sigma)/(c beta)).
std::pair<double, double> case3_eigs_A(const ModelParams& p) noexcept;

/// Eigenvalues at B-bar = (0,0): -c/2 +- sqrt(c^2/4 - m), m = invasion_rate.
/// Complex below the minimum speed.
std::pair<std::complex<double>, std::complex<double>> case3_eigs_B(const ModelParams& p) noexcept;

/// 2 sqrt((beta-(1+sigma)gamma)/(1+sigma)).
double case3_min_speed(const ModelParams& p) noexcept;

/// Open interval of trapping slopes r at speed c, intersected with (0, c].
/// Throws SpeedBelowBound when c < case3_min_speed.
SlopeInterval case3_slope_interval(const ModelParams& p, double c);

SpeedBound speed_bound(const ModelParams& p, double c);

/// I_yy + c I_y + beta I (w/(1+sigma w) - gamma/beta), w = 1 - I - I_y/c.
double kpp_second_order_residual(double I, double Iy, double Iyy, const ModelParams& p);

// sigma = 0 specialization ------------------------------------------------

struct FkppParameters {
  double k;                  ///< sqrt(beta - gamma)/c, convection strength after rescaling
  double c_tilde;            ///< minimum front speed of u_t + k u u_x = u_xx + u(1-u)
  double c_min_original;     ///< 2 sqrt(beta - gamma), in the original variables
};

/// Minimum speed of u_t + k u u_x = u_xx + u(1 - u): 2 for k < 2, k/2 + 2/k otherwise.
double burgers_fkpp_min_speed(double k);

FkppParameters fkpp_parameters(const ModelParams& p);

/// First-order form of I_yy - (beta I/c - c) I_y + beta I (1 - gamma/beta - I) = 0.
std::array<double, 2> burgers_fkpp_rhs_tw(double I, double V, const ModelParams& p);

// Manifolds and vector-field construction -----------------------------------

/// Absolute value of the defining relation(s). M0 has two and reports their
/// sum. M0/N0/K0 take (S, I, V); L0 takes (S, I).
double manifold_residual(ManifoldId manifold, std::span<const double> state, const ModelParams& p);

ManifoldId critical_manifold(Regime regime) noexcept;

/// The regime's reduced 3D traveling-wave system in slow form (independent
/// variable z, requires eps > 0) or fast form (xi = z/eps, defined at eps = 0).
/// The fast form is the slow form multiplied by eps, written so eps = 0 is exact.
VectorField slow_fast_field(Regime regime, Form form, double eps, const ModelParams& p);

/// Field for any SystemId using the speed and diffusivities in `p`
/// (Reduced3 uses the slow form; Case2Rescaled uses delta = 1/c^2).
VectorField field_for(SystemId id, const ModelParams& p);

}  // namespace sisfront
