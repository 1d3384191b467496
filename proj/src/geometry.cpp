#include "sisfront/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sisfront/error.hpp"
#include "sisfront/reductions.hpp"

namespace sisfront {

std::string_view to_string(TriangleId id) noexcept {
  switch (id) {
    case TriangleId::Case2: return "case2";
    case TriangleId::Case3: return "case3";
  }
  return "unknown";
}

Point2 TriangleSpec::outward_normal(std::size_t k) const {
  const Point2& a = vertices[k % 3];
  const Point2& b = vertices[(k + 1) % 3];
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len = std::hypot(dx, dy);
  return {dy / len, -dx / len};
}

Point2 TriangleSpec::on_side(std::size_t k, double t) const {
  const Point2& a = vertices[k % 3];
  const Point2& b = vertices[(k + 1) % 3];
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

TriangleSpec case2_triangle(const ModelParams& p) {
  const double sa = endemic_susceptible(p), ia = endemic_infected(p);
  TriangleSpec tri;
  tri.id = TriangleId::Case2;
  tri.vertices = {Point2{sa, 0.0}, Point2{1.0, 0.0}, Point2{sa, ia}};
  tri.side_names = {"l3", "l2", "l1"};
  tri.invariant_side = 0;
  return tri;
}

TriangleSpec case3_triangle(const ModelParams& p, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorCode::InvalidArgument, "case3 triangle slope must be positive and finite");
  const double ia = endemic_infected(p);
  TriangleSpec tri;
  tri.id = TriangleId::Case3;
  tri.vertices = {Point2{0.0, 0.0}, Point2{ia, -r * ia}, Point2{ia, 0.0}};
  tri.side_names = {"s3", "s2", "s1"};
  tri.slope = r;
  return tri;
}

std::array<double, 3> side_distances(const TriangleSpec& tri, const Point2& x) {
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const Point2 n = tri.outward_normal(k);
    const Point2& a = tri.vertices[k];
    out[k] = -((x[0] - a[0]) * n[0] + (x[1] - a[1]) * n[1]);
  }
  return out;
}

double inside_margin(const TriangleSpec& tri, const Point2& x) {
  const auto d = side_distances(tri, x);
  return std::min({d[0], d[1], d[2]});
}

namespace {

template <typename Field>
TrapReport sample_sides(const TriangleSpec& tri, std::size_t n, Field&& field) {
  TrapReport rep;
  rep.region = tri.id;
  rep.slope = tri.slope;
  double worst = std::numeric_limits<double>::infinity();
  bool all = true;
  for (std::size_t k = 0; k < 3; ++k) {
    SegmentReport& seg = rep.segments[k];
    seg.name = tri.side_names[k];
    seg.samples = n;
    seg.invariant = static_cast<int>(k) == tri.invariant_side;
    const Point2 nrm = tri.outward_normal(k);
    double flux_max = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n + 1);
      const Point2 x = tri.on_side(k, t);
      const Point2 f = field(x);
      const double inward = -(nrm[0] * f[0] + nrm[1] * f[1]);
      if (seg.invariant) {
        if (std::abs(inward) >= flux_max) {
          flux_max = std::abs(inward);
          seg.worst = x;
        }
      } else if (!(inward >= seg.min_margin)) {
        seg.min_margin = inward;
        seg.worst = x;
      }
    }
    if (seg.invariant) {
      seg.min_margin = flux_max;
      seg.pass = flux_max < kInvariantFluxTol;
    } else {
      seg.pass = seg.min_margin > 0.0;
      if (!(seg.min_margin >= worst)) {
        worst = seg.min_margin;
        rep.worst_segment = k;
      }
    }
    all = all && seg.pass;
  }
  rep.pass = all;
  return rep;
}

void require_samples(std::size_t n) {
  if (n < 10) throw Error(ErrorCode::InvalidArgument, "trap checks need at least 10 samples per side");
}

}  // namespace

TrapReport trap_check_case2(const ModelParams& p, std::size_t n) {
  require_samples(n);
  TrapReport rep = sample_sides(case2_triangle(p), n, [&](const Point2& x) {
    const auto f = case2_reduced_rhs(x[0], x[1], p);
    return Point2{f[0], f[1]};
  });
  rep.c = p.c();
  return rep;
}

TrapReport trap_check_case3(const ModelParams& p, double c, double r, std::size_t n, bool enforce_interval) {
  require_samples(n);
  const ModelParams q = p.with_speed(c);
  const SlopeInterval band = case3_slope_interval(q, c);
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "slope r = " << r << " must be positive";
    throw Error(ErrorCode::SlopeOutOfInterval, os.str());
  }
  if (enforce_interval && !(r > band.lo && r < band.hi)) {
    std::ostringstream os;
    os << "slope r = " << r << " is outside the admissible interval (" << band.lo << ", " << band.hi << ")";
    throw Error(ErrorCode::SlopeOutOfInterval, os.str());
  }
  TrapReport rep = sample_sides(case3_triangle(q, r), n, [&](const Point2& x) {
    const auto f = case3_reduced_rhs(x[0], x[1], q);
    return Point2{f[0], f[1]};
  });
  rep.c = c;
  return rep;
}

double case3_default_slope(const ModelParams& p, double c) {
  const SlopeInterval band = case3_slope_interval(p, c);
  return 0.5 * (band.lo + band.hi);
}

namespace {

bool strictly_inside_case2(double S, double I, const ModelParams& p) {
  return S > endemic_susceptible(p) && I > 0.0 && S + I < 1.0;
}

}  // namespace

double wedge_rotation(double S, double I, const ModelParams& p) {
  if (!strictly_inside_case2(S, I, p)) {
    std::ostringstream os;
    os << "(S, I) = (" << S << ", " << I << ") is not strictly inside the Case-2 triangle";
    throw Error(ErrorCode::OutsideTriangle, os.str());
  }
  return (I + S - 1.0) * I * (saturation(S, p.sigma()) - p.gamma() / p.beta());
}

double rescaled_field_angle(double S, double I, const ModelParams& p, double delta) {
  const auto f = case2_rescaled_rhs(S, I, p, delta);
  return std::atan2(f[1], f[0]);
}

RotationScan rotation_monotonicity_scan(const ModelParams& p, std::span<const Point2> probes,
                                        std::span<const double> deltas) {
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] > 0.0) || (j > 0 && !(deltas[j] > deltas[j - 1])))
      throw Error(ErrorCode::InvalidArgument, "deltas must be positive and strictly increasing");
  }
  RotationScan scan;
  scan.probes.assign(probes.begin(), probes.end());
  scan.deltas.assign(deltas.begin(), deltas.end());
  bool ok = true;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double S = probes[k][0], I = probes[k][1];
    const double w = wedge_rotation(S, I, p);
    scan.wedges.push_back(w);
    ok = ok && w < 0.0;
    std::vector<double> angles;
    for (double d : deltas) {
      double a = rescaled_field_angle(S, I, p, d);
      if (!angles.empty()) {
        while (a - angles.back() > std::numbers::pi) a -= 2.0 * std::numbers::pi;
        while (a - angles.back() < -std::numbers::pi) a += 2.0 * std::numbers::pi;
        const double step = a - angles.back();
        if (step > scan.max_increment) {
          scan.max_increment = step;
          scan.worst_probe = k;
        }
        ok = ok && step < 0.0;
      }
      angles.push_back(a);
    }
    scan.angles.push_back(std::move(angles));
  }
  scan.pass = ok;
  return scan;
}

std::vector<Point2> interior_probe_grid(const ModelParams& p, std::size_t nu, std::size_t nv) {
  const double sa = endemic_susceptible(p);
  std::vector<Point2> out;
  out.reserve(nu * nv);
  for (std::size_t i = 1; i <= nu; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(nu + 1);
    const double S = sa + (1.0 - sa) * u;
    for (std::size_t j = 1; j <= nv; ++j) {
      const double v = static_cast<double>(j) / static_cast<double>(nv + 1);
      out.push_back({S, v * (1.0 - S)});
    }
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {std::pow(10.0, lo)};
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1)));
  return out;
}

double distance_to_segment(const Point2& x, const Point2& a, const Point2& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / len2, 0.0, 1.0);
  return std::hypot(x[0] - (a[0] + t * dx), x[1] - (a[1] + t * dy));
}

double distance_to_polyline(const Point2& x, std::span<const Point2> path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  if (path.size() == 1) return std::hypot(x[0] - path[0][0], x[1] - path[0][1]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < path.size(); ++k) best = std::min(best, distance_to_segment(x, path[k], path[k + 1]));
  return best;
}

double directed_distance(std::span<const Point2> points, std::span<const Point2> path) {
  double worst = 0.0;
  for (const auto& x : points) worst = std::max(worst, distance_to_polyline(x, path));
  return worst;
}

namespace {

std::vector<Point2> resample(std::span<const Point2> path, std::size_t per_segment) {
  std::vector<Point2> out;
  if (path.size() < 2) return {path.begin(), path.end()};
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    for (std::size_t i = 0; i < per_segment; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(per_segment);
      out.push_back({path[k][0] + t * (path[k + 1][0] - path[k][0]), path[k][1] + t * (path[k + 1][1] - path[k][1])});
    }
  }
  out.push_back(path.back());
  return out;
}

}  // namespace

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b, std::size_t per_segment) {
  const auto ra = resample(a, per_segment);
  const auto rb = resample(b, per_segment);
  return std::max(directed_distance(ra, b), directed_distance(rb, a));
}

std::vector<Point2> case2_corner_path(const ModelParams& p) {
  const double sa = endemic_susceptible(p), ia = endemic_infected(p);
  return {Point2{sa, ia}, Point2{sa, 0.0}, Point2{1.0, 0.0}};
}

std::vector<Point2> case2_diagonal_path(const ModelParams& p) {
  const double sa = endemic_susceptible(p), ia = endemic_infected(p);
  return {Point2{sa, ia}, Point2{1.0, 0.0}};
}

}  // namespace sisfront
