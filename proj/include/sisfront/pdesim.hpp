#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sisfront/connect.hpp"
#include "sisfront/model.hpp"

namespace sisfront {

/// Uniform node-centred grid: n nodes from x_min to x_max inclusive.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 200.0;
  std::size_t n = 2001;

  /// Throws InvalidArgument for n < 100 or x_max <= x_min.
  static Grid1D make(double x_min, double x_max, std::size_t n);

  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n - 1); }
  double length() const noexcept { return x_max - x_min; }
  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx(); }
};

/// Smallest domain length accepted for diffusivities (d1, d2): 50 sqrt(max d).
double min_domain_length(double d1, double d2) noexcept;

/// Node values at time t. A moving window shifts the grid by x_offset, so
/// node i sits at grid.x(i) + x_offset.
struct Field {
  std::vector<double> S, I;
  double t = 0.0;
  double x_offset = 0.0;
};

enum class Frame { Stationary, CoMoving };

struct SimConfig {
  double dt = 1e-3;
  double T = 10.0;
  std::size_t stride = 1000;  ///< steps between snapshots
  Frame frame = Frame::Stationary;
  double frame_speed = 0.0;   ///< c in the co-moving frame (adds c u_z)
  /// Shift the window by whole nodes to keep the rightmost level crossing
  /// near recenter_fraction of the domain. Checked at every snapshot.
  bool recenter = false;
  double recenter_fraction = 0.25;
  double recenter_level = 0.5;  ///< fraction of I_A that marks the front
};

struct SimResult {
  std::vector<Field> snapshots;  ///< initial state first, final state last
  std::size_t steps = 0;
  double dt_used = 0.0;          ///< T / steps, never larger than config.dt
  std::size_t shifts = 0;        ///< total nodes shifted by the moving window
};

/// Method of lines for
///   S_t = d1 S_xx - beta S I/(1+sigma S) + gamma I,
///   I_t = d2 I_xx + beta S I/(1+sigma S) - gamma I
/// with central differences, reflecting boundaries and classical RK4. The
/// co-moving frame adds c u_x by a first-order upwind difference.
/// Throws CFLViolation unless dt <= 0.4 dx^2/max(d1, d2), dt <= 0.1/beta
/// (and c dt <= dx when co-moving), InvalidArgument for a grid too short for
/// the diffusivities or a size mismatch, NonFiniteField on blow-up.
SimResult simulate(const ModelParams& p, const Grid1D& grid, const Field& init, const SimConfig& config);

/// Smooth ramp from the endemic state (left) to the disease-free state
/// (right), I = I_A/2 exactly at interface_x. Throws InvalidArgument unless
/// interface_x is inside the grid and width > 2 dx.
Field initial_front(const Grid1D& grid, const ModelParams& p, double interface_x, double width);

/// Spatially constant field.
Field constant_field(const Grid1D& grid, double S, double I);

/// Renders a front profile onto the grid with its z = 0 at x = shift. Beyond
/// the last profile sample the deviation from (1, 0) decays like
/// exp(tail_rate (z - z_end)); left of the first sample the end value is held.
Field field_from_profile(const Grid1D& grid, const FrontProfile& profile, double shift, double tail_rate);

/// Slowest decay rate (closest to zero, negative) of the profile's system at
/// the disease-free state.
double disease_free_tail_rate(const FrontProfile& profile, const ModelParams& p);

/// Trapezoidal integral of S + I.
double total_population(const Grid1D& grid, const Field& field);

/// Rightmost x (including x_offset) where I crosses `value` by linear
/// interpolation, or NaN if there is none.
double rightmost_crossing(const Grid1D& grid, const Field& field, double value);

struct SpeedEstimate {
  double c_hat = 0.0;
  double r2 = 0.0;
  double level = 0.5;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of positions(times). r2 is 1 when the positions have
/// no spread. Throws InvalidArgument for fewer than two points.
SpeedEstimate fit_front_speed(std::span<const double> times, std::span<const double> positions);

/// Fits the rightmost level*I_A crossing over the last `window` fraction of
/// the simulated span. Throws InvalidArgument for fewer than 10 snapshots in
/// the window and InterfaceLost when a snapshot has no crossing or the
/// crossing is within 10 dx of a boundary.
SpeedEstimate measure_front_speed(const Grid1D& grid, std::span<const Field> snapshots, const ModelParams& p,
                                  double level = 0.5, double window = 0.5);

/// Sup over nodes with I in [0.05 I_A, 0.95 I_A] of max(|dS|, |dI|) after
/// aligning the half-I_A crossings. Throws NoOverlap when the snapshot has no
/// crossing or no node falls in the window.
double compare_profile(const Grid1D& grid, const Field& snapshot, const FrontProfile& profile,
                       const ModelParams& p);

}  // namespace sisfront
