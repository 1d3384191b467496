#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sisfront/model.hpp"

namespace sisfront {

using Vec = std::vector<double>;

/// Identifies which traveling-wave system a set of coordinates belongs to.
enum class SystemId {
  Full4,          ///< (S, U, I, V), U = S_z, V = I_z
  Reduced3,       ///< (S, I, V) after eliminating U with the conserved quantity
  Case1Line,      ///< I on the critical manifold M0
  Case2Plane,     ///< (S, I) on the slow manifold N0
  Case2Rescaled,  ///< (S, I) in the rescaled variable eta, delta = 1/c^2
  Case3Plane,     ///< (I, V) on the slow manifold K0
  BurgersPlane,   ///< (I, V) of the sigma = 0 Burgers-FKPP traveling-wave ODE
};

std::size_t dimension(SystemId id) noexcept;
std::vector<std::string> coordinate_names(SystemId id);
std::string_view to_string(SystemId id) noexcept;

/// A point in one of the traveling-wave phase spaces.
struct PhaseState {
  SystemId system;
  Vec coords;

  /// Throws InvalidArgument on a coordinate-count mismatch and NonFiniteState
  /// when any coordinate is not finite.
  PhaseState(SystemId system, Vec coords);

  double operator[](std::size_t i) const { return coords[i]; }
};

/// Signed residual of the first integral d1*U + d2*V + c*S + c*I - c.
struct ConservationResidual {
  double value;
};

/// Which independent variable a reduced 3D field is written in.
enum class Form { Slow, Fast };

/// Autonomous vector field x' = f(x) of fixed dimension.
struct VectorField {
  SystemId system;
  std::size_t dim;
  std::function<void(std::span<const double>, std::span<double>)> eval;

  Vec operator()(std::span<const double> x) const;
};

PhaseState rhs_full4(const PhaseState& state, const ModelParams& p);
PhaseState rhs_reduced3(const PhaseState& state, const ModelParams& p);
ConservationResidual conservation_residual(const PhaseState& state, const ModelParams& p);

/// Fields for rhs_full4 / rhs_reduced3 using the diffusivities stored in `p`.
VectorField full4_field(const ModelParams& p);
VectorField reduced3_field(const ModelParams& p);

/// Lifts a Reduced3 state to Full4 by recovering U from the conserved
/// quantity: U = (-d2*V - c*(I + S - 1)) / d1.
PhaseState lift_to_full4(const PhaseState& reduced, const ModelParams& p);

/// Central-difference Jacobian with step h_j = max(1e-6, 1e-6*|x_j|).
Eigen::MatrixXd jacobian(const VectorField& field, std::span<const double> point);

using Spectrum = std::vector<std::complex<double>>;

/// Eigenvalues sorted by descending real part, ties by descending imaginary part.
Spectrum eigenvalues(const Eigen::MatrixXd& m);

struct EigenPair {
  std::complex<double> value;
  Eigen::VectorXcd vector;
};

/// Eigen-decomposition sorted like eigenvalues(); vectors are unit-norm.
std::vector<EigenPair> eigen_decomposition(const Eigen::MatrixXd& m);

}  // namespace sisfront
