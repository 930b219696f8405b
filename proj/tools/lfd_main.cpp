#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "lfd/cli_io.hpp"
#include "lfd/error.hpp"

namespace {

enum Exit { kOk = 0, kInvalidConfig = 2, kUnrealizable = 3, kVerificationFailed = 4 };

struct Flags {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> settings;
    std::optional<std::string> seed;
};

// Registers the shared run flags; each one becomes a key=value override.
void add_run_flags(CLI::App* app, Flags& f) {
    auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
               flag, [&f, key](const std::string& v) { f.settings.emplace_back(key, v); }, help)
            ->type_name("VALUE");
    };
    app->add_option("--config", f.config_file, "flat key=value config file");
    add("--preset", "preset", "E/Z/Q preset name, e.g. E_12");
    add("--signature", "signature", "a,b,c");
    add("--level", "level", "covering level k");
    add("--offsets", "offsets", "s1,s2,s3 or auto");
    add("--vertex", "vertex", "auto, 1, 2 or 3");
    add("--epsilon", "epsilon", "initial atlas cutoff");
    add("--samples", "samples", "tiling samples");
    add("--out", "out", "output directory");
    add("--format", "format", "comma list of obj,json,svg");
    app->add_option_function<std::string>(
        "--seed", [&f](const std::string& v) { f.seed = v; }, "tiling seed (overrides LFD_SEED)");
}

lfd::RunConfig resolve(const Flags& f) {
    lfd::RunConfig c;
    // a preset given anywhere is applied first so explicit keys refine it
    auto apply_presets = [&](const std::vector<std::pair<std::string, std::string>>& kv) {
        for (const auto& [k, v] : kv)
            if (k == "preset") lfd::apply_setting(c, k, v);
    };
    std::vector<std::pair<std::string, std::string>> file;
    if (!f.config_file.empty()) file = lfd::read_config_file(f.config_file);
    apply_presets(file);
    apply_presets(f.settings);
    for (const auto& [k, v] : file)
        if (k != "preset") lfd::apply_setting(c, k, v);
    if (const char* env = std::getenv("LFD_SEED"); env && *env) lfd::apply_setting(c, "seed", env);
    for (const auto& [k, v] : f.settings)
        if (k != "preset") lfd::apply_setting(c, k, v);
    if (f.seed) lfd::apply_setting(c, "seed", *f.seed);
    return c;
}

int exit_for(lfd::RunStatus s) {
    switch (s) {
        case lfd::RunStatus::Ok:
            return kOk;
        case lfd::RunStatus::Unrealizable:
            return kUnrealizable;
        case lfd::RunStatus::VerificationFailed:
            return kVerificationFailed;
    }
    return kVerificationFailed;
}

void print_summary(const lfd::PipelineResult& r) {
    const auto& j = r.report;
    std::cout << "status: " << lfd::to_string(r.status) << "\n";
    if (!r.message.empty()) std::cout << "message: " << r.message << "\n";
    if (!r.group) return;
    std::cout << "signature: " << r.group->signature.to_string() << "  level: " << r.group->level
              << "  offsets: " << j["group"]["offsets"].dump() << "  vertex: " << r.group->fixed_vertex + 1
              << "  p: " << r.group->p << "\n";
    if (!r.run) return;
    const auto& cx = j["complex"];
    std::cout << "atlas: " << j["atlas"]["points"] << " points at epsilon " << j["atlas"]["epsilon"] << "\n";
    std::cout << "faces: " << cx["faces"] << "  V-E-F: " << cx["vertices"] << "-" << cx["edges"] << "-"
              << cx["face_patches"] << "  chi: " << cx["euler_characteristic"] << "  components: "
              << cx["components"] << "\n";
    std::cout << "invariant volume: " << j["volume"]["invariant"] << "  expected: "
              << j["volume"]["expected_invariant"] << "\n";
    std::cout << "tiling: " << j["tiling"]["covered"] << "/" << j["tiling"]["samples"]
              << " covered, double interior " << j["tiling"]["double_interior"] << "\n";
    for (const auto& [name, ok] : j["checks"].items()) std::cout << "check " << name << ": " << (ok ? "ok" : "FAIL") << "\n";
}

int cmd_presets() {
    std::cout << std::left << std::setw(7) << "name" << std::setw(4) << "k" << std::setw(12) << "signature"
              << std::setw(12) << "realizable" << "offsets\n";
    for (const lfd::Preset& p : lfd::presets()) {
        std::cout << std::setw(7) << p.name << std::setw(4) << p.k << std::setw(12) << p.signature.to_string()
                  << std::setw(12) << (p.realizable ? "yes" : "no");
        if (p.offsets)
            std::cout << (*p.offsets)[0] << "," << (*p.offsets)[1] << "," << (*p.offsets)[2];
        else
            std::cout << "-  " << p.note;
        std::cout << "\n";
    }
    return kOk;
}

int cmd_compute(const Flags& f, bool write_files) {
    const lfd::RunConfig c = resolve(f);
    const lfd::PipelineResult r = lfd::run_pipeline(c);
    if (write_files) {
        for (const auto& path : lfd::export_result(r, c.out, c.formats)) std::cout << "wrote " << path.string() << "\n";
    } else {
        lfd::export_result(r, c.out, {"json"});
    }
    print_summary(r);
    return exit_for(r.status);
}

int cmd_tiling(const Flags& f) {
    const lfd::RunConfig c = resolve(f);
    lfd::validate(c);
    if (!lfd::resolve_offsets(c)) {
        std::cout << "unrealizable level " << c.level << " for " << c.signature.to_string() << "\n";
        return kUnrealizable;
    }
    try {
        const lfd::TilingRun t = lfd::run_tiling(c);
        std::cout << "samples: " << t.tiling.samples << "  covered: " << t.tiling.covered
                  << "  double interior: " << t.tiling.double_interior << "  max achievers: " << t.tiling.max_achievers
                  << "  seed: " << c.seed << "\n";
        const bool ok = t.tiling.covered == t.tiling.samples && t.tiling.double_interior == 0;
        std::cout << (ok ? "tiling ok" : "tiling FAILED") << "\n";
        return ok ? kOk : kVerificationFailed;
    } catch (const lfd::Error& e) {
        if (e.kind() == lfd::ErrorKind::NoAdmissibleFixedPoint || e.kind() == lfd::ErrorKind::InvalidArgument) {
            std::cout << e.what() << "\n";
            return kUnrealizable;
        }
        if (e.kind() == lfd::ErrorKind::CutoffTooLarge || e.kind() == lfd::ErrorKind::NonCompact) {
            std::cout << e.what() << "\n";
            return kVerificationFailed;
        }
        throw;
    }
}

int cmd_so2(int m, const std::string& out) {
    const lfd::So2Domain d = lfd::so2_domain(m);
    nlohmann::json j;
    j["m"] = m;
    for (const auto& v : d.vertices) j["vertices"].push_back({lfd::json_number(v.x), lfd::json_number(v.y)});
    for (const auto& a : d.arcs) j["arcs"].push_back({lfd::json_number(a.start), lfd::json_number(a.end)});
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        lfd::write_text(std::filesystem::path(out) / "so2.json", j.dump(2) + "\n");
        lfd::write_text(std::filesystem::path(out) / "so2.svg", lfd::format_so2_svg(d));
    }
    return kOk;
}

int cmd_so11(double dist, int n, const std::string& out) {
    const lfd::So11Domain d = lfd::so11_domain(dist, n);
    nlohmann::json j;
    j["d"] = lfd::json_number(dist);
    j["n"] = n;
    for (const auto& v : d.vertices) j["vertices"].push_back({lfd::json_number(v.x), lfd::json_number(v.y)});
    for (const auto& f : d.faces)
        j["faces"].push_back({{"k", f.k},
                              {"image", {lfd::json_number(f.image.start), lfd::json_number(f.image.end)}}});
    j["full_intersection_diameter"] = lfd::json_number(d.full_intersection_diameter);
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        lfd::write_text(std::filesystem::path(out) / "so11.json", j.dump(2) + "\n");
        lfd::write_text(std::filesystem::path(out) / "so11.svg", lfd::format_so11_svg(d));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fundamental domains for lifted triangle groups acting on the universal cover of SU(1,1)"};
    app.require_subcommand(1);

    auto* presets = app.add_subcommand("presets", "preset catalogue");
    presets->add_subcommand("list", "list E/Z/Q presets")->final_callback([] {});
    presets->require_subcommand(1);

    Flags compute_flags, export_flags, tiling_flags;
    auto* compute = app.add_subcommand("compute", "build the domain, verify it and write report.json");
    add_run_flags(compute, compute_flags);
    auto* exp = app.add_subcommand("export", "build the domain and write the --format files");
    add_run_flags(exp, export_flags);

    auto* verify = app.add_subcommand("verify", "verification checks");
    verify->require_subcommand(1);
    auto* tiling = verify->add_subcommand("tiling", "sampled tiling check");
    add_run_flags(tiling, tiling_flags);

    auto* analogue = app.add_subcommand("analogue", "planar analogues");
    analogue->require_subcommand(1);
    int so2_m = 6;
    std::string so2_out, so11_out;
    auto* so2 = analogue->add_subcommand("so2", "rotations of order m on the Euclidean plane");
    so2->add_option("--m", so2_m, "group order");
    so2->add_option("--out", so2_out, "output directory for json and svg");
    double so11_d = 1.0;
    int so11_n = 3;
    auto* so11 = analogue->add_subcommand("so11", "boosts on the Minkowski plane");
    so11->add_option("--d", so11_d, "boost length");
    so11->add_option("--n", so11_n, "truncation");
    so11->add_option("--out", so11_out, "output directory for json and svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (*presets) return cmd_presets();
        if (*compute) return cmd_compute(compute_flags, false);
        if (*exp) return cmd_compute(export_flags, true);
        if (*tiling) return cmd_tiling(tiling_flags);
        if (*so2) return cmd_so2(so2_m, so2_out);
        if (*so11) return cmd_so11(so11_d, so11_n, so11_out);
    } catch (const lfd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case lfd::ErrorKind::CutoffTooLarge:
            case lfd::ErrorKind::NonCompact:
            case lfd::ErrorKind::PairingIncomplete:
                return kVerificationFailed;
            case lfd::ErrorKind::Io:
                return 1;
            default:
                return kInvalidConfig;
        }
    }
    return kInvalidConfig;
}
