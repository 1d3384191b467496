#include "sisfront/phasespace.hpp"

#include <algorithm>
#include <cmath>

#include "sisfront/error.hpp"

namespace sisfront {

std::size_t dimension(SystemId id) noexcept {
  switch (id) {
    case SystemId::Full4: return 4;
    case SystemId::Reduced3: return 3;
    case SystemId::Case1Line: return 1;
    case SystemId::Case2Plane:
    case SystemId::Case2Rescaled:
    case SystemId::Case3Plane:
    case SystemId::BurgersPlane: return 2;
  }
  return 0;
}

std::vector<std::string> coordinate_names(SystemId id) {
  switch (id) {
    case SystemId::Full4: return {"S", "U", "I", "V"};
    case SystemId::Reduced3: return {"S", "I", "V"};
    case SystemId::Case1Line: return {"I"};
    case SystemId::Case2Plane:
    case SystemId::Case2Rescaled: return {"S", "I"};
    case SystemId::Case3Plane:
    case SystemId::BurgersPlane: return {"I", "V"};
  }
  return {};
}

std::string_view to_string(SystemId id) noexcept {
  switch (id) {
    case SystemId::Full4: return "full4";
    case SystemId::Reduced3: return "reduced3";
    case SystemId::Case1Line: return "case1_line";
    case SystemId::Case2Plane: return "case2_plane";
    case SystemId::Case2Rescaled: return "case2_rescaled";
    case SystemId::Case3Plane: return "case3_plane";
    case SystemId::BurgersPlane: return "burgers_plane";
  }
  return "unknown";
}

PhaseState::PhaseState(SystemId system_, Vec coords_) : system(system_), coords(std::move(coords_)) {
  if (coords.size() != dimension(system))
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(system)) + " expects " +
                                                std::to_string(dimension(system)) + " coordinates, got " +
                                                std::to_string(coords.size()));
  for (double v : coords)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteState, "phase state has a non-finite coordinate");
}

Vec VectorField::operator()(std::span<const double> x) const {
  Vec out(dim);
  eval(x, out);
  return out;
}

namespace {

void require_system(const PhaseState& s, SystemId id) {
  if (s.system != id)
    throw Error(ErrorCode::InvalidArgument, "expected a " + std::string(to_string(id)) + " state, got " +
                                                std::string(to_string(s.system)));
}

void full4_rhs(const ModelParams& p, std::span<const double> x, std::span<double> dx) {
  const double S = x[0], U = x[1], I = x[2], V = x[3];
  const double r = p.beta() * saturation(S, p.sigma()) * I - p.gamma() * I;
  dx[0] = U;
  dx[1] = (-p.c() * U + r) / p.d1();
  dx[2] = V;
  dx[3] = (-p.c() * V - r) / p.d2();
}

void reduced3_rhs(const ModelParams& p, std::span<const double> x, std::span<double> dx) {
  const double S = x[0], I = x[1], V = x[2];
  const double r = p.beta() * saturation(S, p.sigma()) * I - p.gamma() * I;
  dx[0] = (-p.d2() * V - p.c() * (I + S - 1.0)) / p.d1();
  dx[1] = V;
  dx[2] = (-p.c() * V - r) / p.d2();
}

}  // namespace

PhaseState rhs_full4(const PhaseState& state, const ModelParams& p) {
  require_system(state, SystemId::Full4);
  if (p.d1() == 0.0 || p.d2() == 0.0)
    throw Error(ErrorCode::ZeroDiffusivity, "the 4D system needs d1 > 0 and d2 > 0");
  Vec out(4);
  full4_rhs(p, state.coords, out);
  return PhaseState(SystemId::Full4, std::move(out));
}

PhaseState rhs_reduced3(const PhaseState& state, const ModelParams& p) {
  require_system(state, SystemId::Reduced3);
  if (p.d1() == 0.0 || p.d2() == 0.0)
    throw Error(ErrorCode::ZeroDiffusivity, "the reduced 3D system divides by d1 and d2");
  Vec out(3);
  reduced3_rhs(p, state.coords, out);
  return PhaseState(SystemId::Reduced3, std::move(out));
}

ConservationResidual conservation_residual(const PhaseState& state, const ModelParams& p) {
  require_system(state, SystemId::Full4);
  const auto& x = state.coords;
  return {p.d1() * x[1] + p.d2() * x[3] + p.c() * x[0] + p.c() * x[2] - p.c()};
}

VectorField full4_field(const ModelParams& p) {
  if (p.d1() == 0.0 || p.d2() == 0.0)
    throw Error(ErrorCode::ZeroDiffusivity, "the 4D system needs d1 > 0 and d2 > 0");
  return {SystemId::Full4, 4, [p](std::span<const double> x, std::span<double> dx) { full4_rhs(p, x, dx); }};
}

VectorField reduced3_field(const ModelParams& p) {
  if (p.d1() == 0.0 || p.d2() == 0.0)
    throw Error(ErrorCode::ZeroDiffusivity, "the reduced 3D system divides by d1 and d2");
  return {SystemId::Reduced3, 3,
          [p](std::span<const double> x, std::span<double> dx) { reduced3_rhs(p, x, dx); }};
}

PhaseState lift_to_full4(const PhaseState& reduced, const ModelParams& p) {
  require_system(reduced, SystemId::Reduced3);
  const double S = reduced[0], I = reduced[1], V = reduced[2];
  const double U = (-p.d2() * V - p.c() * (I + S - 1.0)) / p.d1();
  return PhaseState(SystemId::Full4, {S, U, I, V});
}

Eigen::MatrixXd jacobian(const VectorField& field, std::span<const double> point) {
  const std::size_t n = field.dim;
  if (point.size() != n) throw Error(ErrorCode::InvalidArgument, "jacobian: point dimension mismatch");
  Eigen::MatrixXd J(n, n);
  Vec x(point.begin(), point.end());
  Vec fp(n), fm(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = std::max(1e-6, 1e-6 * std::abs(point[j]));
    x[j] = point[j] + h;
    field.eval(x, fp);
    x[j] = point[j] - h;
    field.eval(x, fm);
    x[j] = point[j];
    for (std::size_t i = 0; i < n; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

namespace {

bool spectral_order(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

Spectrum eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigenvalue iteration failed");
  Spectrum out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), spectral_order);
  return out;
}

std::vector<EigenPair> eigen_decomposition(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, true);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigenvalue iteration failed");
  std::vector<EigenPair> out;
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    out.push_back({solver.eigenvalues()(k), solver.eigenvectors().col(k).normalized()});
  std::sort(out.begin(), out.end(),
            [](const EigenPair& a, const EigenPair& b) { return spectral_order(a.value, b.value); });
  return out;
}

}  // namespace sisfront
