#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sisfront/model.hpp"

namespace sisfront {

using Point2 = std::array<double, 2>;

enum class TriangleId {
  Case2,  ///< D, B~, A~ in the (S, I) plane
  Case3,  ///< B-bar, M, A-bar in the (I, V) plane
};

std::string_view to_string(TriangleId id) noexcept;

/// Triangle with counter-clockwise vertices. Side k runs from vertex k to
/// vertex k+1 (mod 3).
struct TriangleSpec {
  TriangleId id = TriangleId::Case2;
  std::array<Point2, 3> vertices{};
  std::array<std::string, 3> side_names;
  int invariant_side = -1;  ///< index of a side that is an invariant line, or -1
  double slope = std::numeric_limits<double>::quiet_NaN();  ///< Case 3 only

  /// Outward unit normal of side k.
  Point2 outward_normal(std::size_t k) const;
  /// Point at parameter t in [0, 1] along side k.
  Point2 on_side(std::size_t k, double t) const;
};

/// D = (S_A, 0), B~ = (1, 0), A~ = (S_A, I_A). Sides l3 (I = 0), l2 (S = 1 - I), l1 (S = S_A).
TriangleSpec case2_triangle(const ModelParams& p);
/// B-bar = (0, 0), M = (I_A, -r I_A), A-bar = (I_A, 0). Sides s3 (V = -rI), s2 (I = I_A), s1 (V = 0).
/// Throws InvalidArgument unless r > 0 and finite.
TriangleSpec case3_triangle(const ModelParams& p, double r);

/// Signed distances from `x` to the three side lines, positive on the inside.
std::array<double, 3> side_distances(const TriangleSpec& tri, const Point2& x);
/// Smallest of side_distances: > 0 strictly inside, 0 on the boundary.
double inside_margin(const TriangleSpec& tri, const Point2& x);

struct SegmentReport {
  std::string name;
  std::size_t samples = 0;
  bool invariant = false;
  /// Min over samples of -(outward unit normal . field); positive = inward.
  /// For an invariant side, the max |normal flux| instead.
  double min_margin = std::numeric_limits<double>::infinity();
  Point2 worst{};
  bool pass = false;
};

struct TrapReport {
  TriangleId region = TriangleId::Case2;
  double c = 0.0;
  double slope = std::numeric_limits<double>::quiet_NaN();
  std::array<SegmentReport, 3> segments;
  std::size_t worst_segment = 0;  ///< non-invariant side with the smallest margin
  bool pass = false;
};

/// Flux tolerance for the invariant line I = 0.
inline constexpr double kInvariantFluxTol = 1e-12;

/// Samples each side at t in [1/(n+1), n/(n+1)] and evaluates the inward
/// component of case2_reduced_rhs. Throws InvalidArgument for n < 10.
TrapReport trap_check_case2(const ModelParams& p, std::size_t n);

/// Same for case3_reduced_rhs at speed c and slope r. Throws SpeedBelowBound
/// when c < case3_min_speed and SlopeOutOfInterval when r <= 0. With
/// `enforce_interval` any r outside case3_slope_interval is rejected too;
/// otherwise such slopes are evaluated and reported as failing.
TrapReport trap_check_case3(const ModelParams& p, double c, double r, std::size_t n,
                            bool enforce_interval = false);

/// Midpoint of case3_slope_interval.
double case3_default_slope(const ModelParams& p, double c);

/// (I + S - 1) I (S/(1+sigma S) - gamma/beta): sign of F ^ dF/d(delta) for the
/// rescaled Case-2 field. Throws OutsideTriangle unless (S, I) is strictly
/// inside the Case-2 triangle.
double wedge_rotation(double S, double I, const ModelParams& p);

/// Angle of case2_rescaled_rhs against the S-axis.
double rescaled_field_angle(double S, double I, const ModelParams& p, double delta);

struct RotationScan {
  std::vector<Point2> probes;
  std::vector<double> deltas;
  std::vector<std::vector<double>> angles;  ///< angles[probe][delta], unwrapped
  std::vector<double> wedges;               ///< wedge_rotation per probe
  /// Largest consecutive angle increment over all probes (negative on pass).
  double max_increment = -std::numeric_limits<double>::infinity();
  std::size_t worst_probe = 0;
  bool pass = false;
};

/// Checks that the field angle strictly decreases along `deltas` at every
/// probe and that wedge_rotation < 0 there. Throws InvalidArgument unless the
/// deltas are positive and strictly increasing, OutsideTriangle for a probe
/// not strictly inside the Case-2 triangle.
RotationScan rotation_monotonicity_scan(const ModelParams& p, std::span<const Point2> probes,
                                        std::span<const double> deltas);

/// nu x nv interior points S = S_A + (1 - S_A) u, I = v (1 - S) with u, v on
/// the inset grid k/(n+1).
std::vector<Point2> interior_probe_grid(const ModelParams& p, std::size_t nu, std::size_t nv);

/// n values logarithmically spaced from 10^lo to 10^hi.
std::vector<double> logspace(double lo, double hi, std::size_t n);

// Polyline distances for limit-shape checks -------------------------------

double distance_to_segment(const Point2& x, const Point2& a, const Point2& b);
double distance_to_polyline(const Point2& x, std::span<const Point2> path);
/// max over points of distance_to_polyline.
double directed_distance(std::span<const Point2> points, std::span<const Point2> path);
/// Symmetric Hausdorff distance; each path is resampled with `per_segment`
/// points per segment before taking directed distances.
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b, std::size_t per_segment = 200);

/// A~ -> D -> B~, the small-c limit shape of the Case-2 front.
std::vector<Point2> case2_corner_path(const ModelParams& p);
/// A~ -> B~ along S = 1 - I, the large-c limit shape.
std::vector<Point2> case2_diagonal_path(const ModelParams& p);

}  // namespace sisfront
