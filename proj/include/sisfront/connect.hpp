#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sisfront/integrate.hpp"
#include "sisfront/model.hpp"
#include "sisfront/phasespace.hpp"
#include "sisfront/reductions.hpp"

namespace sisfront {

/// Systems a heteroclinic connection can be shot in. The *Full variants are
/// the regime's reduced 3D traveling-wave system in slow form at eps > 0.
enum class ShootSystem {
  Case1Line,
  Case2Plane,
  Case3Plane,
  BurgersPlane,
  Case1Full,
  Case2Full,
  Case3Full,
};

std::string_view to_string(ShootSystem s) noexcept;
SystemId system_id(ShootSystem s) noexcept;
Regime regime_of(ShootSystem s) noexcept;
bool is_full(ShootSystem s) noexcept;

/// Shooting system for a regime: the planar/line reduction when `reduced`,
/// the 3D system otherwise.
ShootSystem shoot_system(Regime regime, bool reduced) noexcept;

/// The vector field integrated for `s` (uses p.epsilon() for the 3D systems).
VectorField shoot_field(ShootSystem s, const ModelParams& p);

/// Coordinates of an equilibrium in the phase space of `s`.
Vec equilibrium_point(ShootSystem s, const Equilibrium& eq);

struct ShootSpec {
  ShootSystem system = ShootSystem::Case2Plane;
  EquilibriumLabel source = EquilibriumLabel::A_endemic;
  EquilibriumLabel target = EquilibriumLabel::B_diseaseFree;
  double offset = 1e-6;       ///< launch distance along the unstable eigenvector
  double ball_radius = 1e-6;  ///< success radius around the target
  double max_span = 1e4;
  double escape_norm = 1e3;
  double tol = 1e-10;
  /// Re-shoot at offset/10 and require the endpoint gaps to agree within 10x.
  bool verify = true;
};

/// A front re-expressed as (z, S, I) samples. z is shifted so that I crosses
/// half the endemic infected level at z = 0. The first sample is the exact
/// saddle, standing in for z -> -infinity.
struct FrontProfile {
  ShootSystem system = ShootSystem::Case2Plane;
  Regime regime = Regime::Case2SlowInfected;
  double c = 0.0;
  double epsilon = 0.0;  ///< 0 for the reduced systems

  std::vector<double> z, S, I;
  std::vector<std::string> reduced_names;
  std::vector<Vec> reduced;

  double endpoint_gap = std::numeric_limits<double>::quiet_NaN();
  double launch_offset = 0.0;
  double verify_gap = std::numeric_limits<double>::quiet_NaN();
  /// Max over the orbit of the regime's critical-manifold residual (3D systems only).
  double max_manifold_residual = std::numeric_limits<double>::quiet_NaN();
  Termination reason = Termination::EnterBall;
  std::size_t accepted_steps = 0;

  std::size_t size() const noexcept { return z.size(); }
};

/// Unit eigenvector for the single eigenvalue with positive real part at the
/// saddle, oriented so the infected density decreases. Throws NotASaddle
/// unless exactly one real eigenvalue has positive real part.
Vec unstable_direction(ShootSystem s, const Equilibrium& saddle, const ModelParams& p);

/// Number of eigenvalues with positive real part at `eq`.
std::size_t unstable_count(ShootSystem s, const Equilibrium& eq, const ModelParams& p);

/// Launches from saddle + offset * unstable_direction and integrates until the
/// target ball is entered. Throws NoConnection on escape or span exhaustion,
/// SpeedBelowBound for the Case-3 systems below the minimum speed.
FrontProfile shoot_heteroclinic(const ShootSpec& spec, const ModelParams& p);

/// Eliminated susceptible coordinate from the regime's manifold relation.
double susceptible_from_reduced(ShootSystem s, std::span<const double> coords, const ModelParams& p);

/// Builds a profile from a reduced-coordinate trajectory (no recentering).
FrontProfile reconstruct_susceptible(ShootSystem s, const Trajectory& traj, const ModelParams& p);

/// Connection in the 3D system of `regime` at `eps` in (0, 0.1]. Throws
/// BadEpsilon, SpeedBelowBound (Case 3), EigenstructureChanged, NoConnection.
FrontProfile full_system_connection(const ModelParams& p, Regime regime, double eps,
                                    const ShootSpec& base = {});

/// Max |d1 U + d2 V + c S + c I - c| over a 3D profile lifted to 4D.
double max_conservation_residual(const FrontProfile& profile, const ModelParams& p);

/// Linear interpolation of (S, I) at z; clamps to the end samples outside.
std::array<double, 2> profile_at(const FrontProfile& profile, double z);

}  // namespace sisfront
