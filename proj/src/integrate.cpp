#include "sisfront/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sisfront/error.hpp"
#include "sisfront/format.hpp"

namespace sisfront {

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::SpanCompleted: return "span-completed";
    case Termination::EnterBall: return "enter-ball";
    case Termination::ExceedNorm: return "exceed-norm";
    case Termination::SpanExhausted: return "span-exhausted";
  }
  return "unknown";
}

EventSpec EventSpec::enter_ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "enter-ball radius must be > 0");
  EventSpec e;
  e.kind = Kind::EnterBall;
  e.center = std::move(center);
  e.radius = radius;
  return e;
}

EventSpec EventSpec::exceed_norm(double bound) {
  if (!(bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "exceed-norm bound must be > 0");
  EventSpec e;
  e.kind = Kind::ExceedNorm;
  e.bound = bound;
  return e;
}

EventSpec EventSpec::max_span(double span) {
  if (!(span > 0.0)) throw Error(ErrorCode::InvalidArgument, "max-span must be > 0");
  EventSpec e;
  e.kind = Kind::MaxSpan;
  e.span = span;
  return e;
}

namespace {

// Dormand & Prince (1980) RK5(4)7M; fields are autonomous so the nodes c_i are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class DormandPrince {
 public:
  DormandPrince(const VectorField& f, double tol) : f_(f), tol_(tol), n_(f.dim) {
    for (auto* v : {&k2_, &k3_, &k4_, &k5_, &k6_, &tmp_}) v->resize(n_);
  }

  void eval(const Vec& y, Vec& out) {
    f_.eval(y, out);
    ++evaluations;
  }

  /// One trial step from (y, k1). Writes the 5th-order solution into y_new
  /// and f(y_new) into k7. Returns the scaled error norm (inf when the trial
  /// produced non-finite values).
  double step(const Vec& y, const Vec& k1, double h, Vec& y_new, Vec& k7) {
    y_new.resize(n_);
    k7.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    eval(tmp_, k2_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2_[i]);
    eval(tmp_, k3_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2_[i] + a43 * k3_[i]);
    eval(tmp_, k4_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    eval(tmp_, k5_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
    eval(tmp_, k6_);
    for (std::size_t i = 0; i < n_; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] + b6 * k6_[i]);
    for (double v : y_new)
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    eval(y_new, k7);
    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7[i]);
      const double scale = tol_ * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) return std::numeric_limits<double>::infinity();
    return err;
  }

  std::size_t evaluations = 0;

 private:
  const VectorField& f_;
  double tol_;
  std::size_t n_;
  Vec k2_, k3_, k4_, k5_, k6_, tmp_;
};

double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

bool triggered(const EventSpec& e, const Vec& y) {
  switch (e.kind) {
    case EventSpec::Kind::EnterBall: return distance(y, e.center) <= e.radius;
    case EventSpec::Kind::ExceedNorm: return norm(y) >= e.bound;
    case EventSpec::Kind::MaxSpan: return false;
  }
  return false;
}

Termination reason_of(const EventSpec& e) {
  switch (e.kind) {
    case EventSpec::Kind::EnterBall: return Termination::EnterBall;
    case EventSpec::Kind::ExceedNorm: return Termination::ExceedNorm;
    case EventSpec::Kind::MaxSpan: return Termination::SpanExhausted;
  }
  return Termination::SpanExhausted;
}

void check_tol(double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-3))
    throw Error(ErrorCode::InvalidArgument, "tolerance must lie in [1e-13, 1e-3]");
}

Trajectory run(const VectorField& rhs, const Vec& y0, double span, std::span<const EventSpec> events,
               const IntegratorOptions& opts, Termination at_span_end) {
  check_tol(opts.tol);
  if (!(span > 0.0) || !std::isfinite(span)) throw Error(ErrorCode::InvalidArgument, "span must be > 0");
  if (y0.size() != rhs.dim) throw Error(ErrorCode::InvalidArgument, "initial state dimension mismatch");
  for (double v : y0)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteState, "initial state is not finite");

  DormandPrince dp(rhs, opts.tol);
  Trajectory traj;
  traj.system = rhs.system;
  traj.meta.tol = opts.tol;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  Vec y = y0, k1(rhs.dim), y_new, k7;
  dp.eval(y, k1);
  for (double v : k1)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteState, "vector field is not finite at the initial state");

  const double h_min = 1e-14 * span;
  double t = 0.0;
  double h = opts.initial_step > 0.0 ? opts.initial_step : span / 1000.0;
  h = std::min(h, opts.max_step);
  bool last_trial_nonfinite = false;

  while (true) {
    if (traj.meta.accepted_steps + traj.meta.rejected_steps >= opts.max_steps)
      throw Error(ErrorCode::StepUnderflow, "step budget exhausted before the end of the span");
    bool final_step = false;
    if (t + h >= span) {
      h = span - t;
      final_step = true;
    }
    if (h < h_min && !final_step) {
      if (last_trial_nonfinite)
        throw Error(ErrorCode::NonFiniteState, "trajectory left the domain of the vector field");
      throw Error(ErrorCode::StepUnderflow, "step size fell below 1e-14 * span at t = " + format_double(t));
    }

    const double err = dp.step(y, k1, h, y_new, k7);
    if (!(err <= 1.0)) {
      ++traj.meta.rejected_steps;
      last_trial_nonfinite = !std::isfinite(err);
      const double fac = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0) : 0.2;
      h *= fac;
      continue;
    }
    last_trial_nonfinite = false;
    ++traj.meta.accepted_steps;

    // Events, in the order given; the earliest localized one wins.
    const EventSpec* fired = nullptr;
    for (const auto& e : events)
      if (triggered(e, y_new)) {
        fired = &e;
        break;
      }
    if (fired != nullptr) {
      double lo = 0.0, hi = h;
      Vec y_hi = y_new, y_mid, k_mid;
      const EventSpec* fired_hi = fired;
      while (hi - lo > 1e-10 * h) {
        const double mid = 0.5 * (lo + hi);
        dp.step(y, k1, mid, y_mid, k_mid);
        const EventSpec* f_mid = nullptr;
        for (const auto& e : events)
          if (triggered(e, y_mid)) {
            f_mid = &e;
            break;
          }
        if (f_mid != nullptr) {
          hi = mid;
          y_hi = y_mid;
          fired_hi = f_mid;
        } else {
          lo = mid;
        }
      }
      traj.times.push_back(t + hi);
      traj.states.push_back(std::move(y_hi));
      traj.meta.reason = reason_of(*fired_hi);
      break;
    }

    t = final_step ? span : t + h;
    traj.times.push_back(t);
    traj.states.push_back(y_new);
    y.swap(y_new);
    k1.swap(k7);

    if (final_step) {
      traj.meta.reason = at_span_end;
      break;
    }
    const double fac = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h = std::min(h * fac, opts.max_step);
  }
  traj.meta.evaluations = dp.evaluations;
  return traj;
}

}  // namespace

Trajectory integrate(const VectorField& rhs, const Vec& y0, double span, double tol) {
  IntegratorOptions opts;
  opts.tol = tol;
  return integrate(rhs, y0, span, opts);
}

Trajectory integrate(const VectorField& rhs, const Vec& y0, double span, const IntegratorOptions& opts) {
  return run(rhs, y0, span, {}, opts, Termination::SpanCompleted);
}

Trajectory integrate_until(const VectorField& rhs, const Vec& y0, std::span<const EventSpec> events,
                           double tol) {
  IntegratorOptions opts;
  opts.tol = tol;
  return integrate_until(rhs, y0, events, opts);
}

Trajectory integrate_until(const VectorField& rhs, const Vec& y0, std::span<const EventSpec> events,
                           const IntegratorOptions& opts) {
  double span = 0.0;
  std::size_t n_span = 0;
  for (const auto& e : events) {
    if (e.kind == EventSpec::Kind::MaxSpan) {
      span = e.span;
      ++n_span;
    }
    if (e.kind == EventSpec::Kind::EnterBall && e.center.size() != rhs.dim)
      throw Error(ErrorCode::InvalidArgument, "enter-ball center dimension mismatch");
  }
  if (n_span != 1) throw Error(ErrorCode::InvalidArgument, "integrate_until needs exactly one max-span event");
  return run(rhs, y0, span, events, opts, Termination::SpanExhausted);
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  auto names = coordinate_names(traj.system);
  const std::size_t dim = traj.states.empty() ? names.size() : traj.states.front().size();
  if (names.size() != dim) {
    names.clear();
    for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
  }
  os << "t";
  for (const auto& name : names) os << ',' << name;
  os << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times[k]);
    for (double v : traj.states[k]) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace sisfront
