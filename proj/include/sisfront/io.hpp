#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sisfront/connect.hpp"
#include "sisfront/geometry.hpp"
#include "sisfront/model.hpp"
#include "sisfront/pdesim.hpp"

namespace sisfront {

using Json = nlohmann::ordered_json;

Json to_json(const ModelParams& p);
Json to_json(const Equilibrium& eq);
Json to_json(const Grid1D& grid);
Json to_json(const SpeedEstimate& est);
Json to_json(const TrapReport& rep);
/// Summary without the samples: params of the run, gaps, residual, reason.
Json profile_summary(const FrontProfile& profile);
/// Per-probe angle ranges and the worst increment.
Json to_json(const RotationScan& scan);

/// Columns z, S, I followed by the reduced coordinates.
void write_profile_csv(std::ostream& os, const FrontProfile& profile);
/// Columns x, S, I (x includes the moving-window offset).
void write_field_csv(std::ostream& os, const Grid1D& grid, const Field& field);

/// Writes `text` to `path`, creating parent directories. Throws Io on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
/// Indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace sisfront
