#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sisfront/cli.hpp"
#include "sisfront/connect.hpp"
#include "sisfront/error.hpp"
#include "sisfront/geometry.hpp"
#include "sisfront/model.hpp"
#include "sisfront/pdesim.hpp"
#include "sisfront/reductions.hpp"

#include <sstream>

namespace py = pybind11;
using namespace sisfront;

namespace {

ModelParams make_params(double beta, double gamma, double sigma, double c, double eps, double alpha,
                        const std::string& regime) {
  RawParams r;
  r.beta = beta;
  r.gamma = gamma;
  r.sigma = sigma;
  r.c = c;
  r.epsilon = eps;
  r.alpha = alpha;
  r.regime = parse_regime(regime);
  return validate_params(r);
}

py::dict profile_dict(const FrontProfile& f) {
  py::dict d;
  d["system"] = std::string(to_string(f.system));
  d["c"] = f.c;
  d["eps"] = f.epsilon;
  d["z"] = f.z;
  d["S"] = f.S;
  d["I"] = f.I;
  d["reduced_names"] = f.reduced_names;
  d["reduced"] = f.reduced;
  d["endpoint_gap"] = f.endpoint_gap;
  d["verify_gap"] = f.verify_gap;
  d["max_manifold_residual"] = f.max_manifold_residual;
  d["termination"] = std::string(to_string(f.reason));
  return d;
}

py::dict trap_dict(const TrapReport& r) {
  py::list segs;
  for (const auto& s : r.segments) {
    py::dict d;
    d["name"] = s.name;
    d["samples"] = s.samples;
    d["invariant"] = s.invariant;
    d["margin"] = s.min_margin;
    d["worst"] = s.worst;
    d["pass"] = s.pass;
    segs.append(d);
  }
  py::dict d;
  d["region"] = std::string(to_string(r.region));
  d["c"] = r.c;
  d["slope"] = r.slope;
  d["segments"] = segs;
  d["worst_segment"] = r.segments[r.worst_segment].name;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sisfront, m) {
  m.doc() = "Traveling fronts of the diffusive SIS model with saturating incidence";

  static py::handle error_type = py::exception<Error>(m, "SisfrontError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error_type.ptr(), py::make_tuple(e.what(), to_string(e.code())).ptr());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def_property_readonly("beta", &ModelParams::beta)
      .def_property_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("sigma", &ModelParams::sigma)
      .def_property_readonly("c", &ModelParams::c)
      .def_property_readonly("eps", &ModelParams::epsilon)
      .def_property_readonly("alpha", &ModelParams::alpha)
      .def_property_readonly("d1", &ModelParams::d1)
      .def_property_readonly("d2", &ModelParams::d2)
      .def_property_readonly("regime", [](const ModelParams& p) { return std::string(to_string(p.regime())); })
      .def("with_speed", &ModelParams::with_speed)
      .def("with_epsilon", &ModelParams::with_epsilon)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream os;
        os << "ModelParams(beta=" << p.beta() << ", gamma=" << p.gamma() << ", sigma=" << p.sigma()
           << ", c=" << p.c() << ", eps=" << p.epsilon() << ", regime=" << to_string(p.regime()) << ")";
        return os.str();
      });

  m.def("params", &make_params, py::arg("beta") = 2.0, py::arg("gamma") = 1.0, py::arg("sigma") = 0.0,
        py::arg("c") = 1.0, py::arg("eps") = 0.01, py::arg("alpha") = 1.0, py::arg("regime") = "case2",
        "Validated parameter set; raises SisfrontError listing every violated constraint.");

  m.def("equilibria", [](const ModelParams& p) {
    const auto e = equilibria(p);
    return py::dict(py::arg("A") = e.A.full, py::arg("B") = e.B.full);
  });
  m.def("invasion_rate", &invasion_rate);
  m.def("case2_eigs_A", &case2_eigs_A);
  m.def("case2_eigs_B", &case2_eigs_B);
  m.def("case3_eigs_A", &case3_eigs_A);
  m.def("case3_eigs_B", &case3_eigs_B);
  m.def("case3_min_speed", &case3_min_speed);
  m.def("case3_slope_interval", [](const ModelParams& p, double c) {
    const auto r = case3_slope_interval(p, c);
    return std::pair{r.lo, r.hi};
  });
  m.def("case2_reduced_rhs", &case2_reduced_rhs, py::arg("S"), py::arg("I"), py::arg("p"));
  m.def("case3_reduced_rhs", &case3_reduced_rhs, py::arg("I"), py::arg("V"), py::arg("p"));

  m.def(
      "shoot",
      [](const ModelParams& p, bool reduced, double offset, double ball_radius) {
        ShootSpec spec;
        spec.system = shoot_system(p.regime(), reduced);
        spec.offset = offset;
        spec.ball_radius = ball_radius;
        return profile_dict(is_full(spec.system) ? full_system_connection(p, p.regime(), p.epsilon(), spec)
                                                 : shoot_heteroclinic(spec, p));
      },
      py::arg("p"), py::arg("reduced") = true, py::arg("offset") = 1e-6, py::arg("ball_radius") = 1e-6,
      "Front profile of the regime's reduced (eps = 0) or full system as a dict of lists.");

  m.def("trap_check_case2", [](const ModelParams& p, std::size_t n) { return trap_dict(trap_check_case2(p, n)); },
        py::arg("p"), py::arg("n") = 100);
  m.def(
      "trap_check_case3",
      [](const ModelParams& p, double c, double r, std::size_t n) {
        return trap_dict(trap_check_case3(p, c, r, n));
      },
      py::arg("p"), py::arg("c"), py::arg("r"), py::arg("n") = 100);
  m.def("wedge_rotation", &wedge_rotation, py::arg("S"), py::arg("I"), py::arg("p"));

  m.def(
      "simulate_front_speed",
      [](const ModelParams& p, double x_max, std::size_t n, double T, bool recenter) {
        const Grid1D g = Grid1D::make(0.0, x_max, n);
        SimConfig cfg;
        cfg.dt = 0.99 * std::min(0.4 * g.dx() * g.dx() / std::max(p.d1(), p.d2()), 0.1 / p.beta());
        cfg.T = T;
        cfg.stride = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / cfg.dt));
        cfg.recenter = recenter;
        const SimResult r = simulate(p, g, initial_front(g, p, 0.25 * x_max, 2.0), cfg);
        const SpeedEstimate e = measure_front_speed(g, r.snapshots, p);
        return py::dict(py::arg("c_hat") = e.c_hat, py::arg("r2") = e.r2, py::arg("steps") = r.steps);
      },
      py::arg("p"), py::arg("x_max") = 200.0, py::arg("n") = 2001, py::arg("T") = 50.0, py::arg("recenter") = true,
      "Stationary-frame simulation from a smoothed step; fitted speed of the half-I_A crossing.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
