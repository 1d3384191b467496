#include "sisfront/io.hpp"

#include <fstream>
#include <ostream>

#include "sisfront/error.hpp"
#include "sisfront/format.hpp"

namespace sisfront {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json point(const Point2& x) { return Json::array({number(x[0]), number(x[1])}); }

}  // namespace

Json to_json(const ModelParams& p) {
  return {{"beta", p.beta()},   {"gamma", p.gamma()}, {"sigma", p.sigma()},
          {"c", p.c()},         {"eps", p.epsilon()}, {"alpha", p.alpha()},
          {"d1", p.d1()},       {"d2", p.d2()},       {"regime", std::string(to_string(p.regime()))}};
}

Json to_json(const Equilibrium& eq) {
  return {{"label", eq.label == EquilibriumLabel::A_endemic ? "A" : "B"},
          {"S", eq.full[0]},
          {"U", eq.full[1]},
          {"I", eq.full[2]},
          {"V", eq.full[3]}};
}

Json to_json(const Grid1D& grid) {
  return {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n", grid.n}, {"dx", grid.dx()}};
}

Json to_json(const SpeedEstimate& est) {
  return {{"c_hat", number(est.c_hat)}, {"r2", number(est.r2)},       {"level", est.level},
          {"t_start", est.t_start},     {"t_end", est.t_end},         {"samples", est.samples}};
}

Json to_json(const TrapReport& rep) {
  Json segs = Json::array();
  for (const auto& s : rep.segments) {
    segs.push_back({{"name", s.name},
                    {"samples", s.samples},
                    {"invariant", s.invariant},
                    {s.invariant ? "max_normal_flux" : "min_inward_margin", number(s.min_margin)},
                    {"worst_sample", point(s.worst)},
                    {"pass", s.pass}});
  }
  return {{"region", std::string(to_string(rep.region))},
          {"c", rep.c},
          {"slope", number(rep.slope)},
          {"segments", segs},
          {"worst_segment", rep.segments[rep.worst_segment].name},
          {"verdict", rep.pass ? "pass" : "fail"}};
}

Json profile_summary(const FrontProfile& profile) {
  return {{"system", std::string(to_string(profile.system))},
          {"regime", std::string(to_string(profile.regime))},
          {"c", profile.c},
          {"eps", profile.epsilon},
          {"samples", profile.size()},
          {"endpoint_gap", number(profile.endpoint_gap)},
          {"launch_offset", profile.launch_offset},
          {"verify_gap", number(profile.verify_gap)},
          {"max_manifold_residual", number(profile.max_manifold_residual)},
          {"termination", std::string(to_string(profile.reason))},
          {"accepted_steps", profile.accepted_steps},
          {"z_range", Json::array({number(profile.z.empty() ? NAN : profile.z.front()),
                                   number(profile.z.empty() ? NAN : profile.z.back())})}};
}

Json to_json(const RotationScan& scan) {
  Json probes = Json::array();
  for (std::size_t k = 0; k < scan.probes.size(); ++k) {
    const auto& a = scan.angles[k];
    probes.push_back({{"S", scan.probes[k][0]},
                      {"I", scan.probes[k][1]},
                      {"wedge", scan.wedges[k]},
                      {"angle_first", number(a.empty() ? NAN : a.front())},
                      {"angle_last", number(a.empty() ? NAN : a.back())}});
  }
  return {{"deltas", scan.deltas},
          {"max_increment", number(scan.max_increment)},
          {"worst_probe", scan.worst_probe},
          {"pass", scan.pass},
          {"probes", probes}};
}

void write_profile_csv(std::ostream& os, const FrontProfile& profile) {
  os << "z,S,I";
  for (const auto& name : profile.reduced_names) os << ",r_" << name;
  os << '\n';
  for (std::size_t k = 0; k < profile.size(); ++k) {
    os << format_double(profile.z[k]) << ',' << format_double(profile.S[k]) << ',' << format_double(profile.I[k]);
    if (k < profile.reduced.size())
      for (double v : profile.reduced[k]) os << ',' << format_double(v);
    os << '\n';
  }
}

void write_field_csv(std::ostream& os, const Grid1D& grid, const Field& field) {
  os << "x,S,I\n";
  for (std::size_t i = 0; i < field.S.size(); ++i)
    os << format_double(grid.x(i) + field.x_offset) << ',' << format_double(field.S[i]) << ','
       << format_double(field.I[i]) << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sisfront
