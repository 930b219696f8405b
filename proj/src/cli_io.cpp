#include "lfd/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lfd/error.hpp"

namespace lfd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
    throw Error(ErrorKind::InvalidConfig, key + " = '" + value + "': " + why);
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) bad(key, v, "not an integer");
        return x;
    } catch (const std::logic_error&) {
        bad(key, v, "not an integer");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) bad(key, v, "not a finite number");
        return x;
    } catch (const std::logic_error&) {
        bad(key, v, "not a number");
    }
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    std::string s = buf;
    // -0.000 prints as 0.000
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string label_kind(CutterLabel::Kind k) {
    switch (k) {
        case CutterLabel::Kind::Wedge:
            return "wedge";
        case CutterLabel::Kind::Prism:
            return "prism";
        case CutterLabel::Kind::Box:
            return "box";
    }
    return "?";
}

nlohmann::json vec_json(const Vec3& v) { return {json_number(v.x), json_number(v.y), json_number(v.z)}; }

nlohmann::json offsets_json(const Offsets& o) { return {o[0], o[1], o[2]}; }

nlohmann::json signature_json(const TriangleSignature& s) { return {s.alpha1, s.alpha2, s.alpha3}; }

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j;
    j["preset"] = c.preset ? nlohmann::json(*c.preset) : nlohmann::json(nullptr);
    j["signature"] = signature_json(c.signature);
    j["level"] = c.level;
    j["offsets"] = c.offsets ? offsets_json(*c.offsets) : nlohmann::json("auto");
    j["vertex"] = c.vertex < 0 ? nlohmann::json("auto") : nlohmann::json(c.vertex + 1);
    j["epsilon"] = json_number(c.epsilon);
    j["epsilon_floor"] = json_number(c.epsilon_floor);
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    return j;
}

nlohmann::json group_json(const LiftedGroup& g) {
    nlohmann::json j;
    j["signature"] = signature_json(g.signature);
    j["offsets"] = offsets_json(g.offsets);
    j["level"] = g.level;
    j["triangle_exponent"] = g.triangle_exponent;
    j["relator_exponents"] = g.relator_exponents;
    j["orientation"] = g.orientation;
    j["fixed_vertex"] = g.fixed_vertex + 1;
    j["p"] = g.p;
    j["theta"] = json_number(g.theta);
    std::string rd = "G" + std::to_string(g.fixed_vertex + 1) + "^" + std::to_string(g.rd_gen_power);
    if (g.rd_central_power != 0) rd += " z0^" + std::to_string(g.rd_central_power);
    j["rd_word"] = rd;
    return j;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), value = trim(value_in);
    if (key == "preset") {
        apply_preset(c, value);
    } else if (key == "signature") {
        const auto parts = split(value, ',');
        if (parts.size() != 3) bad(key, value, "expected a,b,c");
        TriangleSignature s{static_cast<int>(parse_int(key, parts[0])), static_cast<int>(parse_int(key, parts[1])),
                            static_cast<int>(parse_int(key, parts[2]))};
        if (s.alpha1 < 2 || s.alpha2 < 2 || s.alpha3 < 2) bad(key, value, "orders must be >= 2");
        c.signature = s;
    } else if (key == "level") {
        const long long k = parse_int(key, value);
        if (k < 1) bad(key, value, "level must be >= 1");
        c.level = static_cast<int>(k);
    } else if (key == "offsets") {
        if (value == "auto") {
            c.offsets.reset();
        } else {
            const auto parts = split(value, ',');
            if (parts.size() != 3) bad(key, value, "expected s1,s2,s3 or auto");
            c.offsets = Offsets{parse_int(key, parts[0]), parse_int(key, parts[1]), parse_int(key, parts[2])};
        }
    } else if (key == "offset_bound") {
        const long long b = parse_int(key, value);
        if (b < 1 || b > 50) bad(key, value, "bound must be in 1..50");
        c.offset_bound = static_cast<int>(b);
    } else if (key == "vertex") {
        if (value == "auto") {
            c.vertex = -1;
        } else {
            const long long v = parse_int(key, value);
            if (v < 1 || v > 3) bad(key, value, "expected auto, 1, 2 or 3");
            c.vertex = static_cast<int>(v - 1);
        }
    } else if (key == "epsilon") {
        const double e = parse_double(key, value);
        if (!(e > 0.0 && e < 1.0)) bad(key, value, "epsilon must be in (0, 1)");
        c.epsilon = e;
    } else if (key == "epsilon_floor") {
        const double e = parse_double(key, value);
        if (!(e > 0.0)) bad(key, value, "must be positive");
        c.epsilon_floor = e;
    } else if (key == "geom_tol") {
        const double e = parse_double(key, value);
        if (!(e > 0.0 && e < 1e-3)) bad(key, value, "must be in (0, 1e-3)");
        c.geom_tol = e;
    } else if (key == "samples") {
        const long long n = parse_int(key, value);
        if (n < 0) bad(key, value, "must be >= 0");
        c.samples = static_cast<std::size_t>(n);
    } else if (key == "seed") {
        const long long n = parse_int(key, value);
        if (n < 0) bad(key, value, "must be >= 0");
        c.seed = static_cast<std::uint64_t>(n);
    } else if (key == "tiling_radius") {
        const double r = parse_double(key, value);
        if (!(r > 0.0)) bad(key, value, "must be positive");
        c.tiling_radius = r;
    } else if (key == "tiling_alpha") {
        const double a = parse_double(key, value);
        if (!(a > 0.0)) bad(key, value, "must be positive");
        c.tiling_alpha = a;
    } else if (key == "out") {
        if (value.empty()) bad(key, value, "empty path");
        c.out = value;
    } else if (key == "format") {
        std::set<std::string> f;
        for (const auto& p : split(value, ',')) {
            if (p != "obj" && p != "json" && p != "svg") bad(key, value, "formats are obj, json, svg");
            f.insert(p);
        }
        if (f.empty()) bad(key, value, "no format");
        c.formats = f;
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const RunConfig& c) {
    if (!c.signature.is_hyperbolic())
        throw Error(ErrorKind::InvalidConfig, "signature " + c.signature.to_string() + " is not hyperbolic");
    if (c.epsilon_floor > c.epsilon) throw Error(ErrorKind::InvalidConfig, "epsilon_floor exceeds epsilon");
    if (c.vertex >= 0) {
        const int order = c.signature[static_cast<std::size_t>(c.vertex)];
        if (!(order > c.level && std::gcd(order, c.level) == 1))
            throw Error(ErrorKind::InvalidConfig, "vertex " + std::to_string(c.vertex + 1) + " of order " +
                                                      std::to_string(order) + " is not admissible at level " +
                                                      std::to_string(c.level));
    }
}

std::vector<Preset> presets() {
    struct Row {
        char type;
        int base;
        int mult;
        std::array<int, 3> sig_const;
        int sig_mult;
        std::vector<int> residues;
        int step;  // n = step * k + base
    };
    // (type, n offset, signature a,b,c + sig_mult k in the last slot, allowed n mod 4)
    const std::vector<Row> rows{
        {'E', 10, 0, {2, 3, 6}, 1, {0}, 2},    {'E', 10, 0, {3, 3, 3}, 1, {2}, 4},
        {'E', 10, 0, {2, 4, 4}, 1, {1, 3}, 3}, {'Z', 9, 0, {2, 3, 6}, 2, {3}, 2},
        {'Z', 9, 0, {3, 3, 3}, 2, {1}, 4},     {'Z', 9, 0, {2, 4, 4}, 2, {0, 2}, 3},
        {'Q', 8, 0, {2, 3, 6}, 3, {2}, 2},     {'Q', 8, 0, {3, 3, 3}, 3, {0}, 4},
        {'Q', 8, 0, {2, 4, 4}, 3, {1, 3}, 3},
    };
    std::vector<Preset> out;
    for (const Row& r : rows)
        for (int k = 1; k <= 4; ++k) {
            const int n = r.step * k + r.base;
            if (std::find(r.residues.begin(), r.residues.end(), n % 4) == r.residues.end()) continue;
            Preset p;
            p.type = r.type;
            p.n = n;
            p.k = k;
            p.name = std::string(1, r.type) + "_" + std::to_string(n);
            p.signature = {r.sig_const[0], r.sig_const[1], r.sig_const[2] + r.sig_mult * k};
            p.offsets = find_lift_offsets(p.signature, k, 6);
            if (!p.offsets) {
                p.note = "no offsets in [-6,6]^3 give level " + std::to_string(k);
            } else {
                try {
                    lifted_group(p.signature, *p.offsets);
                    p.realizable = true;
                } catch (const Error& e) {
                    p.note = e.what();
                    p.offsets.reset();
                }
            }
            out.push_back(std::move(p));
        }
    std::sort(out.begin(), out.end(), [](const Preset& a, const Preset& b) {
        return a.type != b.type ? a.type < b.type : a.n < b.n;
    });
    return out;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (Preset& p : presets())
        if (p.name == name) return p;
    return std::nullopt;
}

void apply_preset(RunConfig& c, const std::string& name) {
    const auto p = find_preset(name);
    if (!p) throw Error(ErrorKind::InvalidConfig, "unknown preset '" + name + "'");
    c.preset = name;
    c.signature = p->signature;
    c.level = p->k;
    c.offsets.reset();
}

nlohmann::json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double y = std::strtod(buf, nullptr);
    if (y == 0.0) y = 0.0;
    return y;
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Ok:
            return "ok";
        case RunStatus::Unrealizable:
            return "unrealizable";
        case RunStatus::VerificationFailed:
            return "verification_failed";
    }
    return "?";
}

std::optional<Offsets> resolve_offsets(const RunConfig& c) {
    if (c.offsets) {
        const int k = level_for_offsets(c.signature, *c.offsets, triangle_central_exponent(c.signature));
        if (k != c.level)
            throw Error(ErrorKind::InvalidConfig, "offsets give level " + std::to_string(k) + ", not " +
                                                      std::to_string(c.level));
        return c.offsets;
    }
    return find_lift_offsets(c.signature, c.level, c.offset_bound);
}

namespace {

// Builds the group, or returns an unrealizable message.
std::optional<LiftedGroup> build_group(const RunConfig& c, std::string& why) {
    const auto offsets = resolve_offsets(c);
    if (!offsets) {
        why = "level " + std::to_string(c.level) + " is unrealizable for " + c.signature.to_string() +
              ": no offsets in [-" + std::to_string(c.offset_bound) + "," + std::to_string(c.offset_bound) + "]^3";
        return std::nullopt;
    }
    try {
        return lifted_group(c.signature, *offsets, c.vertex);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoAdmissibleFixedPoint) throw;
        why = e.what();
        return std::nullopt;
    }
}

}  // namespace

TilingRun run_tiling(const RunConfig& c) {
    validate(c);
    std::string why;
    const auto g = build_group(c, why);
    if (!g) throw Error(ErrorKind::InvalidArgument, why);
    TilingRun out{*g, carve_adaptive(*g, c.epsilon, c.epsilon_floor), {}};
    TilingOptions opt;
    opt.samples = c.samples;
    opt.seed = c.seed;
    opt.max_abs_z = c.tiling_radius;
    opt.max_abs_alpha = c.tiling_alpha;
    out.tiling = verify_tiling(out.group, out.run.atlas, out.run.complex, opt);
    return out;
}

PipelineResult run_pipeline(const RunConfig& c) {
    validate(c);
    PipelineResult res;
    nlohmann::json& rep = res.report;
    rep["schema_version"] = 1;
    rep["config"] = config_json(c);

    std::string why;
    res.group = build_group(c, why);
    if (!res.group) {
        res.status = RunStatus::Unrealizable;
        res.message = why;
        rep["status"] = to_string(res.status);
        rep["message"] = why;
        return res;
    }
    const LiftedGroup& g = *res.group;
    rep["group"] = group_json(g);

    try {
        res.run = carve_adaptive(g, c.epsilon, c.epsilon_floor);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CutoffTooLarge && e.kind() != ErrorKind::NonCompact) throw;
        res.status = RunStatus::VerificationFailed;
        res.message = e.what();
        rep["status"] = to_string(res.status);
        rep["message"] = res.message;
        return res;
    }
    const CarveRun& run = *res.run;
    const PolyComplex& cx = run.complex;

    nlohmann::json atlas;
    atlas["epsilon"] = json_number(run.atlas.epsilon);
    atlas["tried_epsilons"] = nlohmann::json::array();
    for (double e : run.tried_epsilons) atlas["tried_epsilons"].push_back(json_number(e));
    atlas["points"] = run.atlas.points.size();
    rep["atlas"] = atlas;

    const int window = window_for_argument(g.theta / 2.0, g.theta);
    rep["cutters"] = {{"count", cutter_set(g, run.atlas, window).size()},
                      {"window", window},
                      {"prisms_used", cx.prisms_used},
                      {"planes", cx.registry.size()}};

    res.mesh = euclideanize(cx);
    const Mesh& mesh = *res.mesh;
    rep["complex"] = {{"cells", cx.cells.size()},
                      {"vertices", cx.vertices.size()},
                      {"edges", cx.edges.size()},
                      {"faces", cx.faces.size()},
                      {"face_patches", cx.face_patches},
                      {"euler_characteristic", cx.euler_characteristic()},
                      {"components", cx.components},
                      {"min_margin", json_number(cx.min_margin)},
                      {"mesh",
                       {{"vertices", mesh.vertices.size()},
                        {"triangles", mesh.triangles.size()},
                        {"closed", mesh.is_closed()},
                        {"euler_characteristic", mesh.euler_characteristic()}}}};

    const double vol = invariant_volume(cx), cvol = chart_volume(cx);
    const double denom = g.level * g.signature.defect();
    rep["volume"] = {{"invariant", json_number(vol)},
                     {"expected_invariant", json_number(expected_invariant_volume(g))},
                     {"ratio", json_number(vol / denom)},
                     {"chart", json_number(cvol)},
                     {"chart_ratio", json_number(cvol / denom)}};

    res.pairing = face_pairing(g, run.atlas, cx);
    const FacePairing& fp = *res.pairing;
    std::map<std::size_t, std::size_t> partner;
    for (const PairingEntry& e : fp.entries) partner[e.face] = e.partner;
    nlohmann::json faces = nlohmann::json::array();
    for (std::size_t i = 0; i < cx.faces.size(); ++i) {
        const Face& f = cx.faces[i];
        nlohmann::json jf;
        jf["index"] = i;
        jf["kind"] = label_kind(f.label.kind);
        jf["point"] = f.label.point;
        jf["m"] = f.label.m;
        jf["word"] = f.label.word;
        jf["area"] = json_number(f.area);
        jf["pieces"] = f.pieces.size();
        jf["corners"] = f.corners.size();
        jf["partner"] = partner.count(i) ? nlohmann::json(partner[i]) : nlohmann::json(nullptr);
        faces.push_back(jf);
    }
    rep["faces"] = faces;
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairingEntry& e : fp.entries) {
        pairs.push_back({{"face", e.face},
                         {"partner", e.partner},
                         {"mapping", "(" + cx.faces[e.face].label.word + ")^-1"},
                         {"residual", json_number(e.residual)},
                         {"flag", {vec_json(e.flag[0]), vec_json(e.flag[1])}},
                         {"flag_image", {vec_json(e.flag_image[0]), vec_json(e.flag_image[1])}}});
    }
    rep["pairing"] = {{"complete", fp.unmatched.empty()},
                      {"involution", fp.is_involution()},
                      {"unmatched", fp.unmatched},
                      {"pairs", pairs}};

    TilingOptions opt;
    opt.samples = c.samples;
    opt.seed = c.seed;
    opt.max_abs_z = c.tiling_radius;
    opt.max_abs_alpha = c.tiling_alpha;
    const TilingReport tr = verify_tiling(g, run.atlas, cx, opt);
    rep["tiling"] = {{"samples", tr.samples},
                     {"covered", tr.covered},
                     {"double_interior", tr.double_interior},
                     {"max_achievers", tr.max_achievers},
                     {"seed", c.seed},
                     {"radius", json_number(c.tiling_radius)},
                     {"max_abs_alpha", json_number(c.tiling_alpha)}};

    const double angle = 2.0 * kPi * g.level / g.p;
    const double rot = rotation_residual(cx, angle);
    rep["symmetry"] = {{"rotation_angle", json_number(angle)},
                       {"rotation_residual", json_number(rot)},
                       {"reflection_residual", json_number(reflection_residual(cx))}};

    const bool closed = mesh.is_closed();
    const bool paired = fp.unmatched.empty() && fp.is_involution();
    const bool covered = tr.covered == tr.samples;
    const bool single = tr.double_interior == 0;
    const bool symmetric = rot <= 1e-6;
    rep["checks"] = {{"closed_mesh", closed},
                     {"pairing_complete", paired},
                     {"tiling_covered", covered},
                     {"tiling_no_double_interior", single},
                     {"rotational_symmetry", symmetric}};
    if (!(closed && paired && covered && single && symmetric)) {
        res.status = RunStatus::VerificationFailed;
        res.message = "one or more checks failed";
    }
    rep["status"] = to_string(res.status);
    if (!res.message.empty()) rep["message"] = res.message;
    return res;
}

std::string format_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

std::string format_obj(const PolyComplex& cx, const Mesh& mesh) {
    std::ostringstream os;
    os << "# fundamental polyhedron in chart coordinates (Re z, Im z, t)\n";
    os << "# " << cx.faces.size() << " faces, " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
       << " triangles\n";
    for (std::size_t i = 0; i < cx.faces.size(); ++i) {
        const Face& f = cx.faces[i];
        os << "# face_" << i << " " << label_kind(f.label.kind) << " point " << f.label.point << " m " << f.label.m
           << ": " << f.label.word << "\n";
    }
    for (const Vec3& v : mesh.vertices) os << "v " << fixed(v.x, 9) << " " << fixed(v.y, 9) << " " << fixed(v.z, 9) << "\n";
    for (std::size_t i = 0; i < cx.faces.size(); ++i) {
        os << "g face_" << i << "\n";
        os << "# " << cx.faces[i].label.word << "\n";
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            if (mesh.triangle_face[t] != static_cast<int>(i)) continue;
            const auto& tri = mesh.triangles[t];
            os << "f " << tri[0] + 1 << " " << tri[1] + 1 << " " << tri[2] + 1 << "\n";
        }
    }
    return os.str();
}

namespace {

struct Panel {
    std::string title;
    int axis_u;
    int axis_v;
};

}  // namespace

std::string format_svg(const PolyComplex& cx) {
    const std::vector<Panel> panels{{"along the axis: (Re z, Im z)", 0, 1},
                                    {"across the axis: (Re z, t)", 0, 2},
                                    {"across the axis: (Im z, t)", 1, 2}};
    const double size = 360.0, pad = 20.0;
    double extent = 1e-9;
    for (const Vec3& v : cx.vertices) extent = std::max({extent, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    const double scale = (size / 2.0 - pad) / extent;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size * panels.size() << "\" height=\"" << size + 30
       << "\" viewBox=\"0 0 " << size * panels.size() << " " << size + 30 << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double cx0 = size * p + size / 2.0, cy0 = size / 2.0 + 30;
        os << "<g>\n<text x=\"" << fixed(size * p + 10, 1) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">"
           << panels[p].title << "</text>\n";
        os << "<rect x=\"" << fixed(size * p + 4, 1) << "\" y=\"34\" width=\"" << fixed(size - 8, 1) << "\" height=\""
           << fixed(size - 8, 1) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
        if (p == 0)
            os << "<circle cx=\"" << fixed(cx0, 3) << "\" cy=\"" << fixed(cy0, 3) << "\" r=\"" << fixed(scale, 3)
               << "\" fill=\"none\" stroke=\"#9ab\" stroke-dasharray=\"4 3\"/>\n";
        for (const auto& e : cx.edges) {
            const Vec3& a = cx.vertices[static_cast<std::size_t>(e[0])];
            const Vec3& b = cx.vertices[static_cast<std::size_t>(e[1])];
            os << "<line x1=\"" << fixed(cx0 + scale * a[panels[p].axis_u], 3) << "\" y1=\""
               << fixed(cy0 - scale * a[panels[p].axis_v], 3) << "\" x2=\"" << fixed(cx0 + scale * b[panels[p].axis_u], 3)
               << "\" y2=\"" << fixed(cy0 - scale * b[panels[p].axis_v], 3)
               << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string format_so2_svg(const So2Domain& d) {
    const double size = 400.0, scale = 140.0, c = size / 2.0;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<circle cx=\"200\" cy=\"200\" r=\"" << fixed(scale, 3) << "\" fill=\"none\" stroke=\"#9ab\"/>\n";
    os << "<polygon fill=\"#eef\" stroke=\"black\" points=\"";
    for (const PlanePoint& v : d.vertices) os << fixed(c + scale * v.x, 3) << "," << fixed(c - scale * v.y, 3) << " ";
    os << "\"/>\n";
    for (std::size_t k = 0; k < d.arcs.size(); ++k) {
        const Arc& a = d.arcs[k];
        const double r = scale * 1.08;
        os << "<path d=\"M " << fixed(c + r * std::cos(a.start), 3) << " " << fixed(c - r * std::sin(a.start), 3)
           << " A " << fixed(r, 3) << " " << fixed(r, 3) << " 0 0 0 " << fixed(c + r * std::cos(a.end), 3) << " "
           << fixed(c - r * std::sin(a.end), 3) << "\" fill=\"none\" stroke=\"" << (k % 2 ? "#c33" : "#36c")
           << "\" stroke-width=\"3\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string format_so11_svg(const So11Domain& d) {
    double ymax = 0.0, xmax = 0.0;
    for (const So11Face& f : d.faces)
        for (const PlanePoint& p : f.ends) {
            ymax = std::max(ymax, p.y);
            xmax = std::max(xmax, std::abs(p.x));
        }
    const double w = 600.0, h = 400.0;
    const double scale = std::min((w / 2.0 - 20.0) / std::max(xmax, 1.0), (h - 40.0) / std::max(ymax, 1.0));
    auto X = [&](double x) { return fixed(w / 2.0 + scale * x, 3); };
    auto Y = [&](double y) { return fixed(h - 20.0 - scale * y, 3); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" viewBox=\"0 0 600 400\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // the hyperbola branch y = cosh s
    os << "<polyline fill=\"none\" stroke=\"#9ab\" points=\"";
    const double smax = std::asinh(xmax) + 0.2;
    for (int i = 0; i <= 200; ++i) {
        const double s = -smax + 2.0 * smax * i / 200.0;
        os << X(std::sinh(s)) << "," << Y(std::cosh(s)) << " ";
    }
    os << "\"/>\n";
    for (std::size_t k = 0; k < d.faces.size(); ++k) {
        const So11Face& f = d.faces[k];
        os << "<line x1=\"" << X(f.ends[0].x) << "\" y1=\"" << Y(f.ends[0].y) << "\" x2=\"" << X(f.ends[1].x)
           << "\" y2=\"" << Y(f.ends[1].y) << "\" stroke=\"" << (k % 2 ? "#c33" : "#36c") << "\" stroke-width=\"2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::vector<std::filesystem::path> export_result(const PipelineResult& res, const std::filesystem::path& dir,
                                                 const std::set<std::string>& formats) {
    std::vector<std::filesystem::path> written;
    if (formats.count("json")) {
        written.push_back(dir / "report.json");
        write_text(written.back(), format_report(res.report));
    }
    if (!res.run || !res.mesh) return written;
    if (formats.count("obj")) {
        written.push_back(dir / "domain.obj");
        write_text(written.back(), format_obj(res.run->complex, *res.mesh));
    }
    if (formats.count("svg")) {
        written.push_back(dir / "domain.svg");
        write_text(written.back(), format_svg(res.run->complex));
    }
    return written;
}

}  // namespace lfd
