#include "sisfront/model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "sisfront/error.hpp"

namespace sisfront {

Regime parse_regime(std::string_view text) {
  if (text == "case1") return Regime::Case1ComparableSmall;
  if (text == "case2") return Regime::Case2SlowInfected;
  if (text == "case3") return Regime::Case3FastInfected;
  throw Error(ErrorCode::InvalidArgument,
              "unknown regime '" + std::string(text) + "' (expected case1|case2|case3)");
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Case1ComparableSmall: return "case1";
    case Regime::Case2SlowInfected: return "case2";
    case Regime::Case3FastInfected: return "case3";
  }
  return "unknown";
}

namespace {

std::string fmt_value(const char* name, double v) {
  std::ostringstream os;
  os << name << " = " << v;
  return os.str();
}

}  // namespace

ModelParams validate_params(const RawParams& raw) {
  std::vector<ValidationIssue> issues;

  auto require_finite = [&](const char* name, double v) {
    if (!std::isfinite(v)) {
      issues.push_back({ErrorCode::NonPositiveParameter, fmt_value(name, v) + " is not finite"});
      return false;
    }
    return true;
  };

  for (auto [name, v] : {std::pair{"beta", raw.beta}, std::pair{"gamma", raw.gamma},
                         std::pair{"c", raw.c}}) {
    if (require_finite(name, v) && !(v > 0.0))
      issues.push_back({ErrorCode::NonPositiveParameter, fmt_value(name, v) + " must be > 0"});
  }
  if (require_finite("sigma", raw.sigma) && raw.sigma < 0.0)
    issues.push_back({ErrorCode::NonPositiveParameter, fmt_value("sigma", raw.sigma) + " must be >= 0"});
  if (!std::isfinite(raw.epsilon) || !(raw.epsilon > 0.0))
    issues.push_back({ErrorCode::BadEpsilon, fmt_value("epsilon", raw.epsilon) + " must be > 0"});
  if (raw.regime == Regime::Case1ComparableSmall) {
    if (require_finite("alpha", raw.alpha) && !(raw.alpha > 0.0))
      issues.push_back({ErrorCode::NonPositiveParameter, fmt_value("alpha", raw.alpha) + " must be > 0"});
  }

  const bool rates_ok = std::isfinite(raw.beta) && std::isfinite(raw.gamma) &&
                        std::isfinite(raw.sigma) && raw.beta > 0 && raw.gamma > 0 && raw.sigma >= 0;
  if (rates_ok && !(raw.beta > raw.gamma * (1.0 + raw.sigma))) {
    std::ostringstream os;
    os << "beta = " << raw.beta << " must exceed gamma*(1+sigma) = " << raw.gamma * (1.0 + raw.sigma);
    issues.push_back({ErrorCode::AdmissibilityViolation, os.str()});
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));

  ModelParams p;
  p.beta_ = raw.beta;
  p.gamma_ = raw.gamma;
  p.sigma_ = raw.sigma;
  p.c_ = raw.c;
  p.epsilon_ = raw.epsilon;
  p.alpha_ = raw.alpha;
  p.regime_ = raw.regime;
  switch (raw.regime) {
    case Regime::Case1ComparableSmall:
      p.d1_ = raw.alpha * raw.epsilon;
      p.d2_ = raw.epsilon;
      break;
    case Regime::Case2SlowInfected:
      p.d1_ = 1.0;
      p.d2_ = raw.epsilon;
      break;
    case Regime::Case3FastInfected:
      p.d1_ = raw.epsilon;
      p.d2_ = 1.0;
      break;
  }
  return p;
}

RawParams ModelParams::raw() const noexcept {
  return RawParams{beta_, gamma_, sigma_, c_, epsilon_, alpha_, regime_};
}

ModelParams ModelParams::with_speed(double c) const {
  RawParams r = raw();
  r.c = c;
  return validate_params(r);
}

ModelParams ModelParams::with_epsilon(double epsilon) const {
  RawParams r = raw();
  r.epsilon = epsilon;
  return validate_params(r);
}

ModelParams ModelParams::with_regime(Regime regime) const {
  RawParams r = raw();
  r.regime = regime;
  return validate_params(r);
}

double incidence_rate(double S, const ModelParams& p) {
  if (S < 0.0 || std::isnan(S))
    throw Error(ErrorCode::NegativeDensity, fmt_value("S", S) + " must be >= 0");
  return p.beta() * saturation(S, p.sigma());
}

double endemic_susceptible(const ModelParams& p) noexcept {
  return p.gamma() / (p.beta() - p.gamma() * p.sigma());
}

double endemic_infected(const ModelParams& p) noexcept { return 1.0 - endemic_susceptible(p); }

double invasion_rate(const ModelParams& p) noexcept {
  return (p.beta() - (1.0 + p.sigma()) * p.gamma()) / (1.0 + p.sigma());
}

EquilibriumPair equilibria(const ModelParams& p) {
  const double sa = endemic_susceptible(p);
  return {Equilibrium{EquilibriumLabel::A_endemic, {sa, 0.0, 1.0 - sa, 0.0}},
          Equilibrium{EquilibriumLabel::B_diseaseFree, {1.0, 0.0, 0.0, 0.0}}};
}

std::array<double, 2> reaction_terms(double S, double I, const ModelParams& p) noexcept {
  const double r = p.beta() * saturation(S, p.sigma()) * I - p.gamma() * I;
  return {-r, r};
}

}  // namespace sisfront
