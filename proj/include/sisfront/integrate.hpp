#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sisfront/phasespace.hpp"

namespace sisfront {

enum class Termination {
  SpanCompleted,  ///< integrate() reached the end of the requested span
  EnterBall,
  ExceedNorm,
  SpanExhausted,  ///< integrate_until() ran out of span before any target event
};

std::string_view to_string(Termination t) noexcept;

struct TrajectoryMeta {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t evaluations = 0;
  double tol = 0.0;
  Termination reason = Termination::SpanCompleted;
};

/// Accepted steps of one integration. times[0] is 0 and states[0] is y0.
struct Trajectory {
  SystemId system = SystemId::Reduced3;
  std::vector<double> times;
  std::vector<Vec> states;
  TrajectoryMeta meta;

  std::size_t size() const noexcept { return times.size(); }
  const Vec& back() const { return states.back(); }
};

/// Termination predicate for integrate_until.
struct EventSpec {
  enum class Kind { EnterBall, ExceedNorm, MaxSpan };

  Kind kind = Kind::MaxSpan;
  Vec center;          // EnterBall
  double radius = 0;   // EnterBall
  double bound = 0;    // ExceedNorm
  double span = 0;     // MaxSpan

  static EventSpec enter_ball(Vec center, double radius);
  static EventSpec exceed_norm(double bound);
  static EventSpec max_span(double span);
};

struct IntegratorOptions {
  double tol = 1e-10;
  /// 0 selects span/1000.
  double initial_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

/// Dormand-Prince 5(4) with local extrapolation. Per-step error control is
/// |err_i| <= tol * (1 + |y_i|) in every component.
Trajectory integrate(const VectorField& rhs, const Vec& y0, double span, double tol = 1e-10);
Trajectory integrate(const VectorField& rhs, const Vec& y0, double span, const IntegratorOptions& opts);

/// Integrates until the first event fires. Exactly one MaxSpan event is
/// required; when it is the one that fires the trajectory ends with
/// Termination::SpanExhausted. Event times are localized by bisection on the
/// last step to 1e-10 of its length, and the returned final state is on the
/// triggered side.
Trajectory integrate_until(const VectorField& rhs, const Vec& y0, std::span<const EventSpec> events,
                           double tol = 1e-10);
Trajectory integrate_until(const VectorField& rhs, const Vec& y0, std::span<const EventSpec> events,
                           const IntegratorOptions& opts);

/// CSV with a header "t,<coordinate names>" and one row per accepted step.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace sisfront
