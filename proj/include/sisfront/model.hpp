#pragma once

#include <array>
#include <string>
#include <string_view>

namespace sisfront {

/// Diffusion regime. Determines (d1, d2) and which reduction applies.
enum class Regime {
  Case1ComparableSmall,  ///< d1 = alpha*eps, d2 = eps
  Case2SlowInfected,     ///< d1 = 1, d2 = eps
  Case3FastInfected,     ///< d1 = eps, d2 = 1
};

/// Parses "case1" | "case2" | "case3". Throws InvalidArgument otherwise.
Regime parse_regime(std::string_view text);
std::string_view to_string(Regime regime) noexcept;

/// Unvalidated parameter record, as read from a config file or flags.
struct RawParams {
  double beta = 2.0;
  double gamma = 1.0;
  double sigma = 0.0;
  double c = 1.0;
  double epsilon = 0.01;
  double alpha = 1.0;
  Regime regime = Regime::Case2SlowInfected;
};

class ModelParams;

/// Checks every constraint on `raw` and collects all violations into a single
/// ValidationError. On success the diffusivities are derived from the regime.
ModelParams validate_params(const RawParams& raw);

/// Validated epidemiological and diffusion parameters. Only obtainable through
/// validate_params, so holding one means beta > gamma*(1+sigma) etc. hold.
class ModelParams {
 public:
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double sigma() const noexcept { return sigma_; }
  double c() const noexcept { return c_; }
  double epsilon() const noexcept { return epsilon_; }
  double alpha() const noexcept { return alpha_; }
  double d1() const noexcept { return d1_; }
  double d2() const noexcept { return d2_; }
  Regime regime() const noexcept { return regime_; }

  RawParams raw() const noexcept;

  ModelParams with_speed(double c) const;
  ModelParams with_epsilon(double epsilon) const;
  ModelParams with_regime(Regime regime) const;

 private:
  friend ModelParams validate_params(const RawParams& raw);
  ModelParams() = default;

  double beta_ = 0, gamma_ = 0, sigma_ = 0, c_ = 0, epsilon_ = 0, alpha_ = 0;
  double d1_ = 0, d2_ = 0;
  Regime regime_ = Regime::Case2SlowInfected;
};

/// beta*S/(1+sigma*S): incidence per infected individual. Throws
/// NegativeDensity for S < 0.
double incidence_rate(double S, const ModelParams& p);

/// S/(1+sigma*S) without argument checks; used inside vector fields where
/// trajectories may wander slightly outside the physical range.
inline double saturation(double S, double sigma) noexcept { return S / (1.0 + sigma * S); }

/// Susceptible density of the endemic state, gamma/(beta - gamma*sigma).
double endemic_susceptible(const ModelParams& p) noexcept;
/// Infected density of the endemic state, 1 - gamma/(beta - gamma*sigma).
double endemic_infected(const ModelParams& p) noexcept;

/// beta/(1+sigma) - gamma: linear growth rate of I at the disease-free state.
double invasion_rate(const ModelParams& p) noexcept;

enum class EquilibriumLabel { A_endemic, B_diseaseFree };

struct Equilibrium {
  EquilibriumLabel label;
  std::array<double, 4> full;  // (S, U, I, V)

  double S() const noexcept { return full[0]; }
  double I() const noexcept { return full[2]; }

  std::array<double, 3> reduced3() const noexcept { return {full[0], full[2], full[3]}; }
  /// (S, I) plane of the Case-2 reduction.
  std::array<double, 2> case2_plane() const noexcept { return {full[0], full[2]}; }
  /// (I, V) plane of the Case-3 reduction.
  std::array<double, 2> case3_plane() const noexcept { return {full[2], full[3]}; }
};

struct EquilibriumPair {
  Equilibrium A;
  Equilibrium B;
};

EquilibriumPair equilibria(const ModelParams& p);

/// Reaction terms of the traveling-wave equations at a spatially constant
/// state: (-beta*S*I/(1+sigma*S) + gamma*I, +beta*S*I/(1+sigma*S) - gamma*I).
std::array<double, 2> reaction_terms(double S, double I, const ModelParams& p) noexcept;

}  // namespace sisfront
