#pragma once

// Run configuration, the E/Z/Q preset catalogue, the end-to-end pipeline and the
// OBJ / JSON / SVG writers.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfd/analogues.hpp"
#include "lfd/domain_carver.hpp"
#include "lfd/group_builder.hpp"

namespace lfd {

struct RunConfig {
    std::optional<std::string> preset;
    TriangleSignature signature{2, 3, 7};
    int level = 1;
    /// nullopt means "auto": search with find_lift_offsets.
    std::optional<Offsets> offsets;
    int offset_bound = 6;
    /// 0-based vertex index, -1 for auto.
    int vertex = -1;
    double epsilon = 0.1;
    double epsilon_floor = 1e-3;
    double geom_tol = kGeomTol;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    double tiling_radius = 1.0;
    double tiling_alpha = kPi;
    std::string out = "out";
    std::set<std::string> formats{"obj", "json", "svg"};
};

/// Applies one key=value setting; throws InvalidConfig on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
/// Flat key=value lines; '#' starts a comment. Later lines win.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);
/// Checks the configuration against the group builder preconditions.
void validate(const RunConfig& config);

struct Preset {
    std::string name;
    char type = 'E';
    int n = 0;
    int k = 1;
    TriangleSignature signature;
    bool realizable = false;
    std::optional<Offsets> offsets;
    /// Why an entry is not realizable.
    std::string note;
};

/// Rows of the E/Z/Q table for levels 1..4 whose residue condition on n holds.
std::vector<Preset> presets();
std::optional<Preset> find_preset(const std::string& name);
/// Loads the preset's signature and level into the config.
void apply_preset(RunConfig& config, const std::string& name);

/// Rounds to 12 significant digits; non-finite values become null.
nlohmann::json json_number(double x);

enum class RunStatus { Ok, Unrealizable, VerificationFailed };
const char* to_string(RunStatus status);

struct PipelineResult {
    RunStatus status = RunStatus::Ok;
    std::string message;
    nlohmann::json report;
    std::optional<LiftedGroup> group;
    std::optional<CarveRun> run;
    std::optional<FacePairing> pairing;
    std::optional<Mesh> mesh;
};

/// group -> atlas -> carve -> pairing -> tiling and symmetry checks -> report.
/// Unrealizable levels and failed verifications are reported, not thrown; bad
/// configurations throw InvalidConfig.
PipelineResult run_pipeline(const RunConfig& config);

/// Tiling check only.
struct TilingRun {
    LiftedGroup group;
    CarveRun run;
    TilingReport tiling;
};
TilingRun run_tiling(const RunConfig& config);

/// Resolves offsets ("auto" searches); nullopt when the level is unrealizable.
std::optional<Offsets> resolve_offsets(const RunConfig& config);

std::string format_obj(const PolyComplex& complex, const Mesh& mesh);
std::string format_report(const nlohmann::json& report);
/// Orthographic views along the axis (x, y) and across it (x, t) and (y, t).
std::string format_svg(const PolyComplex& complex);
std::string format_so2_svg(const So2Domain& domain);
std::string format_so11_svg(const So11Domain& domain);

/// Writes the requested formats to `dir`; returns the written paths.
std::vector<std::filesystem::path> export_result(const PipelineResult& result, const std::filesystem::path& dir,
                                                 const std::set<std::string>& formats);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lfd
