#include "sisfront/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisfront/error.hpp"

namespace sisfront {

Grid1D Grid1D::make(double x_min, double x_max, std::size_t n) {
  if (n < 100) throw Error(ErrorCode::InvalidArgument, "grid needs at least 100 nodes");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw Error(ErrorCode::InvalidArgument, "grid needs finite x_min < x_max");
  return {x_min, x_max, n};
}

double min_domain_length(double d1, double d2) noexcept { return 50.0 * std::sqrt(std::max(d1, d2)); }

namespace {

struct Workspace {
  std::vector<double> kS[4], kI[4], tS, tI;
  explicit Workspace(std::size_t n) : tS(n), tI(n) {
    for (int s = 0; s < 4; ++s) {
      kS[s].resize(n);
      kI[s].resize(n);
    }
  }
};

class Stepper {
 public:
  Stepper(const ModelParams& p, const Grid1D& grid, const SimConfig& cfg)
      : beta_(p.beta()), gamma_(p.gamma()), sigma_(p.sigma()), d1_(p.d1()), d2_(p.d2()), n_(grid.n),
        inv_dx2_(1.0 / (grid.dx() * grid.dx())),
        adv_(cfg.frame == Frame::CoMoving ? cfg.frame_speed / grid.dx() : 0.0), ws_(grid.n) {}

  void rhs(const double* S, const double* I, double* fS, double* fI) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
      const double sl = i == 0 ? S[1] : S[i - 1];
      const double sr = i + 1 == n ? S[n - 2] : S[i + 1];
      const double il = i == 0 ? I[1] : I[i - 1];
      const double ir = i + 1 == n ? I[n - 2] : I[i + 1];
      const double r = beta_ * S[i] * I[i] / (1.0 + sigma_ * S[i]) - gamma_ * I[i];
      fS[i] = d1_ * (sl - 2.0 * S[i] + sr) * inv_dx2_ - r;
      fI[i] = d2_ * (il - 2.0 * I[i] + ir) * inv_dx2_ + r;
      if (adv_ != 0.0) {
        // Upwind for c u_z: information moves toward -z in the co-moving frame.
        const double sn = i + 1 == n ? S[i] : S[i + 1];
        const double in = i + 1 == n ? I[i] : I[i + 1];
        fS[i] += adv_ * (sn - S[i]);
        fI[i] += adv_ * (in - I[i]);
      }
    }
  }

  void step(std::vector<double>& S, std::vector<double>& I, double dt) {
    static constexpr double a[3] = {0.5, 0.5, 1.0};
    rhs(S.data(), I.data(), ws_.kS[0].data(), ws_.kI[0].data());
    for (int s = 1; s < 4; ++s) {
      const double h = a[s - 1] * dt;
      for (std::size_t i = 0; i < n_; ++i) {
        ws_.tS[i] = S[i] + h * ws_.kS[s - 1][i];
        ws_.tI[i] = I[i] + h * ws_.kI[s - 1][i];
      }
      rhs(ws_.tS.data(), ws_.tI.data(), ws_.kS[s].data(), ws_.kI[s].data());
    }
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n_; ++i) {
      S[i] += w * (ws_.kS[0][i] + 2.0 * ws_.kS[1][i] + 2.0 * ws_.kS[2][i] + ws_.kS[3][i]);
      I[i] += w * (ws_.kI[0][i] + 2.0 * ws_.kI[1][i] + 2.0 * ws_.kI[2][i] + ws_.kI[3][i]);
    }
  }

 private:
  double beta_, gamma_, sigma_, d1_, d2_;
  std::size_t n_;
  double inv_dx2_, adv_;
  Workspace ws_;
};

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::size_t rightmost_crossing_index(const std::vector<double>& I, double value) {
  for (std::size_t k = I.size() - 1; k > 0; --k)
    if (I[k - 1] >= value && I[k] < value) return k - 1;
  return I.size();
}

void shift_left(std::vector<double>& u, std::size_t k) {
  const double last = u.back();
  std::copy(u.begin() + static_cast<std::ptrdiff_t>(k), u.end(), u.begin());
  std::fill(u.end() - static_cast<std::ptrdiff_t>(k), u.end(), last);
}

}  // namespace

SimResult simulate(const ModelParams& p, const Grid1D& grid, const Field& init, const SimConfig& cfg) {
  if (init.S.size() != grid.n || init.I.size() != grid.n)
    throw Error(ErrorCode::InvalidArgument, "initial field size does not match the grid");
  if (!all_finite(init.S) || !all_finite(init.I))
    throw Error(ErrorCode::NonFiniteField, "initial field is not finite");
  if (!(cfg.T > 0.0) || !(cfg.dt > 0.0) || cfg.stride == 0)
    throw Error(ErrorCode::InvalidArgument, "simulate needs T > 0, dt > 0 and stride >= 1");
  const double need = min_domain_length(p.d1(), p.d2());
  if (grid.length() < need) {
    std::ostringstream os;
    os << "domain length " << grid.length() << " is below 50 diffusion lengths (" << need << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const double dx = grid.dx();
  const double dt_diff = 0.4 * dx * dx / std::max(p.d1(), p.d2());
  const double dt_react = 0.1 / p.beta();
  const bool comoving = cfg.frame == Frame::CoMoving;
  const double dt_adv = comoving && cfg.frame_speed != 0.0 ? dx / std::abs(cfg.frame_speed)
                                                           : std::numeric_limits<double>::infinity();
  if (cfg.dt > dt_diff || cfg.dt > dt_react || cfg.dt > dt_adv) {
    std::ostringstream os;
    os << "dt = " << cfg.dt << " exceeds the stability limit " << std::min({dt_diff, dt_react, dt_adv});
    throw Error(ErrorCode::CFLViolation, os.str());
  }

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.T / cfg.dt - 1e-12));
  const double dt = cfg.T / static_cast<double>(steps);
  const double front_value = cfg.recenter_level * endemic_infected(p);
  const auto target_node = static_cast<std::size_t>(cfg.recenter_fraction * static_cast<double>(grid.n - 1));
  const std::size_t slack = std::max<std::size_t>(1, grid.n / 10);

  SimResult out;
  out.steps = steps;
  out.dt_used = dt;
  Field f = init;
  out.snapshots.push_back(f);
  Stepper stepper(p, grid, cfg);
  const double t0 = init.t;
  for (std::size_t s = 1; s <= steps; ++s) {
    stepper.step(f.S, f.I, dt);
    f.t = t0 + static_cast<double>(s) * dt;
    if (!all_finite(f.S) || !all_finite(f.I)) {
      std::ostringstream os;
      os << "field became non-finite at t = " << f.t;
      throw Error(ErrorCode::NonFiniteField, os.str());
    }
    if (s % cfg.stride == 0 || s == steps) {
      if (cfg.recenter) {
        const std::size_t k = rightmost_crossing_index(f.I, front_value);
        if (k < grid.n && k > target_node + slack) {
          const std::size_t shift = k - target_node;
          shift_left(f.S, shift);
          shift_left(f.I, shift);
          f.x_offset += static_cast<double>(shift) * dx;
          out.shifts += shift;
        }
      }
      out.snapshots.push_back(f);
    }
  }
  return out;
}

Field initial_front(const Grid1D& grid, const ModelParams& p, double interface_x, double width) {
  if (!(interface_x > grid.x_min && interface_x < grid.x_max))
    throw Error(ErrorCode::InvalidArgument, "interface must lie inside the domain");
  if (!(width > 2.0 * grid.dx())) throw Error(ErrorCode::InvalidArgument, "ramp width must exceed 2 dx");
  const double sa = endemic_susceptible(p), ia = endemic_infected(p);
  Field f;
  f.S.resize(grid.n);
  f.I.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double w = 0.5 * (1.0 + std::tanh((grid.x(i) - interface_x) / width));
    f.S[i] = sa + (1.0 - sa) * w;
    f.I[i] = ia * (1.0 - w);
  }
  return f;
}

Field constant_field(const Grid1D& grid, double S, double I) {
  Field f;
  f.S.assign(grid.n, S);
  f.I.assign(grid.n, I);
  return f;
}

Field field_from_profile(const Grid1D& grid, const FrontProfile& profile, double shift, double tail_rate) {
  if (profile.size() < 2) throw Error(ErrorCode::NoOverlap, "profile has fewer than two samples");
  if (!(tail_rate < 0.0)) throw Error(ErrorCode::InvalidArgument, "tail rate must be negative");
  const double z_end = profile.z.back();
  const double dS = profile.S.back() - 1.0, dI = profile.I.back();
  Field f;
  f.S.resize(grid.n);
  f.I.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double z = grid.x(i) - shift;
    if (z <= z_end) {
      const auto v = profile_at(profile, z);
      f.S[i] = v[0];
      f.I[i] = v[1];
    } else {
      const double decay = std::exp(tail_rate * (z - z_end));
      f.S[i] = 1.0 + dS * decay;
      f.I[i] = dI * decay;
    }
  }
  return f;
}

double disease_free_tail_rate(const FrontProfile& profile, const ModelParams& p) {
  ModelParams q = p.with_speed(profile.c).with_regime(profile.regime);
  if (profile.epsilon > 0.0) q = q.with_epsilon(profile.epsilon);
  const auto eq = equilibria(q);
  const Spectrum spec = eigenvalues(jacobian(shoot_field(profile.system, q), equilibrium_point(profile.system, eq.B)));
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& l : spec)
    if (l.real() < 0.0) best = std::max(best, l.real());
  if (!std::isfinite(best)) throw Error(ErrorCode::NotASaddle, "disease-free state has no decaying direction");
  return best;
}

double total_population(const Grid1D& grid, const Field& field) {
  double sum = 0.0;
  const std::size_t n = field.S.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * (field.S[i] + field.I[i]);
  }
  return sum * grid.dx();
}

double rightmost_crossing(const Grid1D& grid, const Field& field, double value) {
  const std::size_t k = rightmost_crossing_index(field.I, value);
  if (k >= field.I.size()) return std::numeric_limits<double>::quiet_NaN();
  const double a = field.I[k], b = field.I[k + 1];
  const double w = a == b ? 0.0 : (a - value) / (a - b);
  return grid.x(k) + w * grid.dx() + field.x_offset;
}

SpeedEstimate fit_front_speed(std::span<const double> times, std::span<const double> positions) {
  if (times.size() != positions.size() || times.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "speed fit needs at least two (t, x) pairs");
  const auto n = static_cast<double>(times.size());
  double tm = 0.0, xm = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    tm += times[k];
    xm += positions[k];
  }
  tm /= n;
  xm /= n;
  double stt = 0.0, stx = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - tm, dx = positions[k] - xm;
    stt += dt * dt;
    stx += dt * dx;
    sxx += dx * dx;
  }
  if (!(stt > 0.0)) throw Error(ErrorCode::InvalidArgument, "speed fit needs distinct times");
  SpeedEstimate est;
  est.c_hat = stx / stt;
  est.r2 = sxx > 0.0 ? std::clamp(stx * stx / (stt * sxx), 0.0, 1.0) : 1.0;
  est.t_start = times.front();
  est.t_end = times.back();
  est.samples = times.size();
  return est;
}

SpeedEstimate measure_front_speed(const Grid1D& grid, std::span<const Field> snapshots, const ModelParams& p,
                                  double level, double window) {
  if (snapshots.empty()) throw Error(ErrorCode::InvalidArgument, "no snapshots");
  if (!(level > 0.0 && level < 1.0) || !(window > 0.0 && window <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "level and window must lie in (0, 1)");
  const double t_first = snapshots.front().t, t_last = snapshots.back().t;
  const double t_cut = t_last - window * (t_last - t_first);
  const double value = level * endemic_infected(p);
  const double guard = 10.0 * grid.dx();
  std::vector<double> ts, xs;
  for (const Field& f : snapshots) {
    if (f.t < t_cut - 1e-12 * std::max(1.0, std::abs(t_cut))) continue;
    const double x = rightmost_crossing(grid, f, value);
    if (std::isnan(x)) {
      std::ostringstream os;
      os << "no crossing of I = " << value << " at t = " << f.t;
      throw Error(ErrorCode::InterfaceLost, os.str());
    }
    const double local = x - f.x_offset;
    if (local - grid.x_min < guard || grid.x_max - local < guard) {
      std::ostringstream os;
      os << "front at x = " << x << " is within 10 dx of the boundary at t = " << f.t;
      throw Error(ErrorCode::InterfaceLost, os.str());
    }
    ts.push_back(f.t);
    xs.push_back(x);
  }
  if (ts.size() < 10) throw Error(ErrorCode::InvalidArgument, "speed fit needs at least 10 snapshots in the window");
  SpeedEstimate est = fit_front_speed(ts, xs);
  est.level = level;
  return est;
}

double compare_profile(const Grid1D& grid, const Field& snapshot, const FrontProfile& profile, const ModelParams& p) {
  const double ia = endemic_infected(p);
  const double x0 = rightmost_crossing(grid, snapshot, 0.5 * ia);
  if (std::isnan(x0)) throw Error(ErrorCode::NoOverlap, "snapshot has no half-level crossing");
  if (profile.size() < 2) throw Error(ErrorCode::NoOverlap, "profile has fewer than two samples");
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double I = snapshot.I[i];
    if (I < 0.05 * ia || I > 0.95 * ia) continue;
    const double z = grid.x(i) + snapshot.x_offset - x0;
    const auto v = profile_at(profile, z);
    worst = std::max({worst, std::abs(snapshot.S[i] - v[0]), std::abs(I - v[1])});
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::NoOverlap, "no node has I within [0.05, 0.95] I_A");
  return worst;
}

}  // namespace sisfront
