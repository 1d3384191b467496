#include "sisfront/connect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisfront/error.hpp"
#include "sisfront/format.hpp"

namespace sisfront {

std::string_view to_string(ShootSystem s) noexcept {
  switch (s) {
    case ShootSystem::Case1Line: return "case1_line";
    case ShootSystem::Case2Plane: return "case2_plane";
    case ShootSystem::Case3Plane: return "case3_plane";
    case ShootSystem::BurgersPlane: return "burgers_plane";
    case ShootSystem::Case1Full: return "case1_full";
    case ShootSystem::Case2Full: return "case2_full";
    case ShootSystem::Case3Full: return "case3_full";
  }
  return "unknown";
}

SystemId system_id(ShootSystem s) noexcept {
  switch (s) {
    case ShootSystem::Case1Line: return SystemId::Case1Line;
    case ShootSystem::Case2Plane: return SystemId::Case2Plane;
    case ShootSystem::Case3Plane: return SystemId::Case3Plane;
    case ShootSystem::BurgersPlane: return SystemId::BurgersPlane;
    case ShootSystem::Case1Full:
    case ShootSystem::Case2Full:
    case ShootSystem::Case3Full: return SystemId::Reduced3;
  }
  return SystemId::Reduced3;
}

Regime regime_of(ShootSystem s) noexcept {
  switch (s) {
    case ShootSystem::Case1Line:
    case ShootSystem::Case1Full: return Regime::Case1ComparableSmall;
    case ShootSystem::Case2Plane:
    case ShootSystem::Case2Full: return Regime::Case2SlowInfected;
    case ShootSystem::Case3Plane:
    case ShootSystem::BurgersPlane:
    case ShootSystem::Case3Full: return Regime::Case3FastInfected;
  }
  return Regime::Case2SlowInfected;
}

bool is_full(ShootSystem s) noexcept {
  return s == ShootSystem::Case1Full || s == ShootSystem::Case2Full || s == ShootSystem::Case3Full;
}

ShootSystem shoot_system(Regime regime, bool reduced) noexcept {
  switch (regime) {
    case Regime::Case1ComparableSmall: return reduced ? ShootSystem::Case1Line : ShootSystem::Case1Full;
    case Regime::Case2SlowInfected: return reduced ? ShootSystem::Case2Plane : ShootSystem::Case2Full;
    case Regime::Case3FastInfected: return reduced ? ShootSystem::Case3Plane : ShootSystem::Case3Full;
  }
  return ShootSystem::Case2Plane;
}

VectorField shoot_field(ShootSystem s, const ModelParams& p) {
  if (is_full(s)) return slow_fast_field(regime_of(s), Form::Slow, p.epsilon(), p);
  return field_for(system_id(s), p);
}

Vec equilibrium_point(ShootSystem s, const Equilibrium& eq) {
  switch (system_id(s)) {
    case SystemId::Case1Line: return {eq.I()};
    case SystemId::Case2Plane: {
      const auto x = eq.case2_plane();
      return {x[0], x[1]};
    }
    case SystemId::Case3Plane:
    case SystemId::BurgersPlane: {
      const auto x = eq.case3_plane();
      return {x[0], x[1]};
    }
    default: {
      const auto x = eq.reduced3();
      return {x[0], x[1], x[2]};
    }
  }
}

namespace {

std::size_t infected_index(ShootSystem s) noexcept {
  switch (system_id(s)) {
    case SystemId::Case2Plane:
    case SystemId::Reduced3: return 1;
    default: return 0;
  }
}

struct UnstableMode {
  double rate;
  Vec direction;
};

std::size_t count_unstable(const Spectrum& spec) {
  double scale = 1.0;
  for (const auto& l : spec) scale = std::max(scale, std::abs(l));
  return static_cast<std::size_t>(
      std::count_if(spec.begin(), spec.end(), [&](const auto& l) { return l.real() > 1e-10 * scale; }));
}

UnstableMode unstable_mode(ShootSystem s, const Equilibrium& saddle, const ModelParams& p) {
  const VectorField f = shoot_field(s, p);
  const Vec x = equilibrium_point(s, saddle);
  const auto modes = eigen_decomposition(jacobian(f, x));
  Spectrum values;
  for (const auto& m : modes) values.push_back(m.value);
  const std::size_t n_unstable = count_unstable(values);
  const auto& top = modes.front();
  if (n_unstable != 1 || std::abs(top.value.imag()) > 1e-12 * std::max(1.0, std::abs(top.value))) {
    std::ostringstream os;
    os << "equilibrium has " << n_unstable << " unstable directions in " << to_string(s);
    throw Error(ErrorCode::NotASaddle, os.str());
  }
  Vec d(x.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = top.vector(static_cast<Eigen::Index>(i)).real();
  double nrm = 0.0;
  for (double v : d) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (double& v : d) v /= nrm;
  const std::size_t k = infected_index(s);
  // Orient so the infected density decreases; if the eigenvector has no
  // infected component, fall back to the last coordinate (V).
  const double key = std::abs(d[k]) > 1e-12 ? d[k] : d.back();
  if (key > 0.0)
    for (double& v : d) v = -v;
  return {top.value.real(), d};
}

void check_speed(ShootSystem s, const ModelParams& p) {
  if (s == ShootSystem::BurgersPlane && p.sigma() != 0.0)
    throw Error(ErrorCode::SigmaNotZero, "the Burgers-FKPP plane needs sigma = 0");
  if (regime_of(s) == Regime::Case3FastInfected && s != ShootSystem::Case1Line) {
    const double c_min = case3_min_speed(p);
    if (p.c() < c_min) {
      std::ostringstream os;
      os << "c = " << p.c() << " is below the minimum speed " << c_min;
      throw Error(ErrorCode::SpeedBelowBound, os.str());
    }
  }
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct ShotResult {
  Trajectory traj;
  double gap;
};

ShotResult shoot_once(const ShootSpec& spec, const ModelParams& p, double offset, const VectorField& f,
                      const Vec& source, const Vec& target, const Vec& direction) {
  Vec y0 = source;
  for (std::size_t i = 0; i < y0.size(); ++i) y0[i] += offset * direction[i];
  const std::array<EventSpec, 3> events{EventSpec::enter_ball(target, spec.ball_radius),
                                        EventSpec::exceed_norm(spec.escape_norm),
                                        EventSpec::max_span(spec.max_span)};
  IntegratorOptions opts;
  opts.tol = spec.tol;
  Trajectory traj = integrate_until(f, y0, events, opts);
  if (traj.meta.reason != Termination::EnterBall) {
    std::ostringstream os;
    os << to_string(spec.system) << " at c = " << p.c() << ": trajectory ended with "
       << to_string(traj.meta.reason) << " at z = " << format_double(traj.times.back()) << ", state (";
    for (std::size_t i = 0; i < traj.back().size(); ++i) os << (i ? ", " : "") << format_double(traj.back()[i]);
    os << ")";
    throw Error(ErrorCode::NoConnection, os.str());
  }
  const double gap = dist(traj.back(), target);
  return {std::move(traj), gap};
}

void recenter(FrontProfile& profile, double half_level) {
  for (std::size_t k = 0; k + 1 < profile.size(); ++k) {
    const double a = profile.I[k], b = profile.I[k + 1];
    if (a >= half_level && b < half_level) {
      const double w = (a - half_level) / (a - b);
      const double z0 = profile.z[k] + w * (profile.z[k + 1] - profile.z[k]);
      for (double& z : profile.z) z -= z0;
      return;
    }
  }
}

}  // namespace

std::size_t unstable_count(ShootSystem s, const Equilibrium& eq, const ModelParams& p) {
  return count_unstable(eigenvalues(jacobian(shoot_field(s, p), equilibrium_point(s, eq))));
}

Vec unstable_direction(ShootSystem s, const Equilibrium& saddle, const ModelParams& p) {
  return unstable_mode(s, saddle, p).direction;
}

double susceptible_from_reduced(ShootSystem s, std::span<const double> x, const ModelParams& p) {
  switch (system_id(s)) {
    case SystemId::Case1Line: return 1.0 - x[0];
    case SystemId::Case2Plane: return x[0];
    case SystemId::Case3Plane:
    case SystemId::BurgersPlane: return 1.0 - x[0] - x[1] / p.c();
    default: return x[0];
  }
}

FrontProfile reconstruct_susceptible(ShootSystem s, const Trajectory& traj, const ModelParams& p) {
  FrontProfile out;
  out.system = s;
  out.regime = regime_of(s);
  out.c = p.c();
  out.epsilon = is_full(s) ? p.epsilon() : 0.0;
  out.reduced_names = coordinate_names(system_id(s));
  const std::size_t k = infected_index(s);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const Vec& x = traj.states[n];
    out.z.push_back(traj.times[n]);
    out.S.push_back(susceptible_from_reduced(s, x, p));
    out.I.push_back(x[k]);
    out.reduced.push_back(x);
  }
  out.reason = traj.meta.reason;
  out.accepted_steps = traj.meta.accepted_steps;
  return out;
}

FrontProfile shoot_heteroclinic(const ShootSpec& spec, const ModelParams& p) {
  if (!(spec.offset > 0.0) || !(spec.ball_radius > 0.0) || !(spec.max_span > 0.0))
    throw Error(ErrorCode::InvalidArgument, "offset, ball_radius and max_span must be > 0");
  if (is_full(spec.system) && !(p.epsilon() > 0.0 && p.epsilon() <= 0.1))
    throw Error(ErrorCode::BadEpsilon, "3D connections need eps in (0, 0.1]");
  check_speed(spec.system, p);

  const auto eq = equilibria(p);
  const Equilibrium& src = spec.source == EquilibriumLabel::A_endemic ? eq.A : eq.B;
  const Equilibrium& dst = spec.target == EquilibriumLabel::A_endemic ? eq.A : eq.B;
  const VectorField f = shoot_field(spec.system, p);
  const Vec source = equilibrium_point(spec.system, src);
  const Vec target = equilibrium_point(spec.system, dst);
  if (!(spec.offset < 0.01 * dist(source, target)))
    throw Error(ErrorCode::InvalidArgument, "offset must be small compared to the equilibrium separation");

  const UnstableMode mode = unstable_mode(spec.system, src, p);
  ShotResult shot = shoot_once(spec, p, spec.offset, f, source, target, mode.direction);

  double verify_gap = std::numeric_limits<double>::quiet_NaN();
  if (spec.verify) {
    const ShotResult check = shoot_once(spec, p, spec.offset / 10.0, f, source, target, mode.direction);
    verify_gap = check.gap;
    const double lo = std::min(shot.gap, check.gap), hi = std::max(shot.gap, check.gap);
    if (!(hi <= 10.0 * lo)) {
      std::ostringstream os;
      os << "endpoint gaps at offsets " << spec.offset << " and " << spec.offset / 10.0
         << " disagree: " << shot.gap << " vs " << check.gap;
      throw Error(ErrorCode::NoConnection, os.str());
    }
  }

  // Saddle marker one e-folding of the unstable mode before launch.
  Trajectory& traj = shot.traj;
  traj.times.insert(traj.times.begin(), -1.0 / mode.rate);
  traj.states.insert(traj.states.begin(), source);

  FrontProfile profile = reconstruct_susceptible(spec.system, traj, p);
  profile.endpoint_gap = shot.gap;
  profile.launch_offset = spec.offset;
  profile.verify_gap = verify_gap;
  if (is_full(spec.system)) {
    const ManifoldId m = critical_manifold(regime_of(spec.system));
    double worst = 0.0;
    for (const auto& x : profile.reduced) worst = std::max(worst, manifold_residual(m, x, p));
    profile.max_manifold_residual = worst;
  }
  recenter(profile, 0.5 * endemic_infected(p));
  return profile;
}

FrontProfile full_system_connection(const ModelParams& p, Regime regime, double eps, const ShootSpec& base) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw Error(ErrorCode::BadEpsilon, "3D connections need eps in (0, 0.1]; use the reduced systems at eps = 0");
  const ModelParams q = p.with_regime(regime).with_epsilon(eps);
  ShootSpec spec = base;
  spec.system = shoot_system(regime, false);
  check_speed(spec.system, q);

  const auto eq = equilibria(q);
  const std::size_t n_unstable = unstable_count(spec.system, eq.A, q);
  if (n_unstable != 1) {
    std::ostringstream os;
    os << "endemic state has " << n_unstable << " unstable directions at eps = " << eps
       << " (the eps = 0 reduction predicts 1)";
    throw Error(ErrorCode::EigenstructureChanged, os.str());
  }
  return shoot_heteroclinic(spec, q);
}

double max_conservation_residual(const FrontProfile& profile, const ModelParams& p) {
  if (!is_full(profile.system))
    throw Error(ErrorCode::InvalidArgument, "conservation residual needs a 3D profile");
  const ModelParams q = p.with_regime(profile.regime).with_epsilon(profile.epsilon);
  double worst = 0.0;
  for (const auto& x : profile.reduced) {
    const PhaseState full = lift_to_full4(PhaseState(SystemId::Reduced3, x), q);
    worst = std::max(worst, std::abs(conservation_residual(full, q).value));
  }
  return worst;
}

std::array<double, 2> profile_at(const FrontProfile& profile, double z) {
  const auto& zs = profile.z;
  if (zs.empty()) throw Error(ErrorCode::NoOverlap, "empty profile");
  if (z <= zs.front()) return {profile.S.front(), profile.I.front()};
  if (z >= zs.back()) return {profile.S.back(), profile.I.back()};
  const auto it = std::upper_bound(zs.begin(), zs.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - zs.begin()) - 1;
  const double w = (z - zs[k]) / (zs[k + 1] - zs[k]);
  return {profile.S[k] + w * (profile.S[k + 1] - profile.S[k]),
          profile.I[k] + w * (profile.I[k + 1] - profile.I[k])};
}

}  // namespace sisfront
