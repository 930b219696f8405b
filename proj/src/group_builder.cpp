#include "lfd/group_builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lfd/error.hpp"

namespace lfd {

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
        return std::hash<std::int64_t>()(k.first * 1000003LL) ^ std::hash<std::int64_t>()(k.second);
    }
};

// Extended Euclid: returns g = gcd(a, b) >= 0 and x, y with a x + b y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

Word inverse_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) append_letter(out, {it->gen, -it->power});
    return out;
}

bool projects_to_identity(const GroupElement& g, double tol) {
    const PseudoVector v = project_pi(g);
    return std::abs(v.z) <= tol &&
           (std::abs(v.w - Complex{1.0, 0.0}) <= tol || std::abs(v.w + Complex{1.0, 0.0}) <= tol);
}

std::array<GroupElement, 3> offset_generators(const TrianglePlacement& placement,
                                              const Offsets& offsets) {
    std::array<GroupElement, 3> out;
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = mul(placement.rotations[i], central_power(offsets[i]));
    return out;
}

}  // namespace

bool TriangleSignature::is_hyperbolic() const {
    return alpha1 >= 2 && alpha2 >= 2 && alpha3 >= 2 &&
           // 1/a + 1/b + 1/c < 1  <=>  bc + ac + ab < abc, exact in integers
           static_cast<long long>(alpha2) * alpha3 + static_cast<long long>(alpha1) * alpha3 +
                   static_cast<long long>(alpha1) * alpha2 <
               static_cast<long long>(alpha1) * alpha2 * alpha3;
}

std::string TriangleSignature::to_string() const {
    std::ostringstream os;
    os << "(" << alpha1 << "," << alpha2 << "," << alpha3 << ")";
    return os.str();
}

void append_letter(Word& word, Letter letter) {
    if (letter.power == 0) return;
    if (!word.empty() && word.back().gen == letter.gen) {
        word.back().power += letter.power;
        if (word.back().power == 0) word.pop_back();
        return;
    }
    word.push_back(letter);
}

std::string word_to_string(const Word& word) {
    if (word.empty()) return "e";
    std::ostringstream os;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) os << ' ';
        os << 'G' << (word[i].gen + 1);
        if (word[i].power != 1) os << '^' << word[i].power;
    }
    return os.str();
}

GroupElement evaluate_word(const Word& word, const std::array<GroupElement, 3>& gens) {
    GroupElement acc = GroupElement::identity();
    for (const Letter& l : word) acc = mul(acc, power(gens.at(static_cast<std::size_t>(l.gen)), l.power));
    return acc;
}

TrianglePlacement build_triangle(const TriangleSignature& signature) {
    if (!signature.is_hyperbolic())
        throw Error(ErrorKind::SignatureNotHyperbolic,
                    "signature " + signature.to_string() + " is not hyperbolic");
    const double a = kPi / signature.alpha1;
    const double b = kPi / signature.alpha2;
    const double c = kPi / signature.alpha3;
    // Hyperbolic law of cosines for the sides x1x2 and x1x3.
    const double side12 = std::acosh((std::cos(a) * std::cos(b) + std::cos(c)) / (std::sin(a) * std::sin(b)));
    const double side13 = std::acosh((std::cos(a) * std::cos(c) + std::cos(b)) / (std::sin(a) * std::sin(c)));

    TrianglePlacement out;
    out.signature = signature;
    out.vertices = {Complex{0.0, 0.0}, Complex{std::tanh(side12 / 2.0), 0.0},
                    std::polar(std::tanh(side13 / 2.0), a)};

    for (int orientation : {1, -1}) {
        std::array<GroupElement, 3> rot;
        for (std::size_t i = 0; i < 3; ++i)
            rot[i] = rotation_rx(out.vertices[i], orientation * 2.0 * kPi / signature[i]);
        if (projects_to_identity(mul(mul(rot[0], rot[1]), rot[2]), 1e-9)) {
            out.orientation = orientation;
            out.rotations = rot;
            return out;
        }
    }
    throw Error(ErrorKind::NotARelator, "no orientation satisfies the triangle relation");
}

std::int64_t central_exponent(const Word& word, const std::array<GroupElement, 3>& gens) {
    const GroupElement value = evaluate_word(word, gens);
    if (!projects_to_identity(value, 1e-6))
        throw Error(ErrorKind::NotARelator, "word " + word_to_string(word) + " is not central");
    const double m = -value.alpha / kPi;
    const double rounded = std::round(m);
    if (std::abs(m - rounded) >= 1e-6)
        throw Error(ErrorKind::NotARelator, "argument of " + word_to_string(word) + " is not a multiple of pi");
    return static_cast<std::int64_t>(rounded);
}

std::array<Word, 4> LiftedGroup::relators() const {
    return {Word{{0, signature.alpha1}}, Word{{1, signature.alpha2}}, Word{{2, signature.alpha3}},
            Word{{0, 1}, {1, 1}, {2, 1}}};
}

std::int64_t triangle_central_exponent(const TriangleSignature& signature) {
    const TrianglePlacement placement = build_triangle(signature);
    return central_exponent(Word{{0, 1}, {1, 1}, {2, 1}}, placement.rotations);
}

int level_for_offsets(const TriangleSignature& signature, const Offsets& s,
                      std::int64_t triangle_exponent) {
    std::int64_t g = triangle_exponent + s[0] + s[1] + s[2];
    for (std::size_t i = 0; i < 3; ++i) g = std::gcd(g, 1 + signature[i] * s[i]);
    return static_cast<int>(std::abs(g));
}

LiftedGroup lifted_group(const TriangleSignature& signature, const Offsets& offsets, int fixed_vertex) {
    const TrianglePlacement placement = build_triangle(signature);
    const std::array<GroupElement, 3> gens = offset_generators(placement, offsets);

    LiftedGroup out;
    out.signature = signature;
    out.offsets = offsets;
    out.orientation = placement.orientation;
    out.triangle_exponent = central_exponent(Word{{0, 1}, {1, 1}, {2, 1}}, placement.rotations);
    const std::array<Word, 4> rel = out.relators();
    std::int64_t g = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        out.relator_exponents[i] = central_exponent(rel[i], gens);
        g = std::gcd(g, out.relator_exponents[i]);
    }
    if (g == 0) throw Error(ErrorKind::InvalidArgument, "lift has infinite level");
    out.level = static_cast<int>(g);

    auto admissible = [&](int i) {
        const int order = signature[static_cast<std::size_t>(i)];
        return order > out.level && std::gcd(order, out.level) == 1;
    };
    if (fixed_vertex < 0) {
        for (int i = 0; i < 3; ++i)
            if (admissible(i) && (fixed_vertex < 0 || signature[static_cast<std::size_t>(i)] >
                                                          signature[static_cast<std::size_t>(fixed_vertex)]))
                fixed_vertex = i;
        if (fixed_vertex < 0)
            throw Error(ErrorKind::NoAdmissibleFixedPoint,
                        "no vertex of " + signature.to_string() + " has order > level " +
                            std::to_string(out.level) + " and coprime to it");
    } else if (fixed_vertex > 2 || !admissible(fixed_vertex)) {
        throw Error(ErrorKind::NoAdmissibleFixedPoint,
                    "vertex " + std::to_string(fixed_vertex + 1) + " is not admissible at level " +
                        std::to_string(out.level));
    }
    out.fixed_vertex = fixed_vertex;

    const GroupElement h = inverse(translation_to(placement.vertices[static_cast<std::size_t>(fixed_vertex)]));
    const GroupElement h_inv = inverse(h);
    for (std::size_t i = 0; i < 3; ++i) {
        out.generators[i] = mul(mul(h, gens[i]), h_inv);
        out.vertices[i] = mobius(h, placement.vertices[i]);
    }
    out.vertices[static_cast<std::size_t>(fixed_vertex)] = Complex{0.0, 0.0};
    out.generators[static_cast<std::size_t>(fixed_vertex)].z = Complex{0.0, 0.0};

    out.p = signature[static_cast<std::size_t>(fixed_vertex)];
    out.theta = kPi * out.level / out.p;
    out.rd = rotation_r0(2.0 * out.theta);

    // G_u = (0, -pi e_u / p, 1), so G_u^a z0^{k b} = rd iff a (e_u / k) + b p = 1.
    const std::int64_t eu = out.relator_exponents[static_cast<std::size_t>(fixed_vertex)];
    std::int64_t a = 0, b = 0;
    ext_gcd(eu / out.level, out.p, a, b);
    out.rd_gen_power = a;
    out.rd_central_power = out.level * b;
    return out;
}

std::optional<Offsets> find_lift_offsets(const TriangleSignature& signature, int level, int bound) {
    if (bound < 1) throw Error(ErrorKind::InvalidArgument, "search bound must be >= 1");
    const std::int64_t m = triangle_central_exponent(signature);
    std::vector<Offsets> candidates;
    for (std::int64_t s1 = -bound; s1 <= bound; ++s1)
        for (std::int64_t s2 = -bound; s2 <= bound; ++s2)
            for (std::int64_t s3 = -bound; s3 <= bound; ++s3) candidates.push_back({s1, s2, s3});
    auto l1 = [](const Offsets& s) { return std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]); };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Offsets& x, const Offsets& y) { return l1(x) < l1(y); });
    for (const Offsets& s : candidates)
        if (level_for_offsets(signature, s, m) == level) return s;
    return std::nullopt;
}

Word central_witness(const LiftedGroup& group) {
    // Fold the extended gcd over the four relator exponents.
    std::array<std::int64_t, 4> coeff{};
    std::int64_t g = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        std::int64_t x = 0, y = 0;
        const std::int64_t ng = ext_gcd(g, group.relator_exponents[i], x, y);
        for (std::size_t j = 0; j < i; ++j) coeff[j] *= x;
        coeff[i] = y;
        g = ng;
    }
    const std::array<Word, 4> rel = group.relators();
    Word out;
    for (std::size_t i = 0; i < 4; ++i) {
        const Word piece = coeff[i] < 0 ? inverse_word(rel[i]) : rel[i];
        for (std::int64_t n = 0; n < std::abs(coeff[i]); ++n)
            for (const Letter& l : piece) append_letter(out, l);
    }
    return out;
}

std::vector<std::int64_t> central_exponents_within(const LiftedGroup& group, int depth) {
    auto key = [](const GroupElement& g) {
        return std::array<std::int64_t, 3>{std::llround(g.z.real() * 1e6), std::llround(g.z.imag() * 1e6),
                                           std::llround(g.alpha * 1e6)};
    };
    std::map<std::array<std::int64_t, 3>, int> seen;
    std::vector<GroupElement> frontier{GroupElement::identity()};
    seen[key(frontier.front())] = 0;
    std::vector<std::int64_t> found;
    for (int d = 0; d < depth; ++d) {
        std::vector<GroupElement> next;
        for (const GroupElement& g : frontier) {
            for (std::size_t i = 0; i < 3; ++i) {
                for (int sign : {1, -1}) {
                    const GroupElement h = mul(g, sign > 0 ? group.generators[i] : inverse(group.generators[i]));
                    if (seen.emplace(key(h), d + 1).second) {
                        next.push_back(h);
                        if (is_central(h, 1e-6)) found.push_back(std::llround(-h.alpha / kPi));
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::string OrbitPoint::label() const {
    std::string s = word_to_string(word);
    if (rd_shift != 0) s += " rd^" + std::to_string(rd_shift);
    return s;
}

std::optional<std::size_t> OrbitAtlas::find(Complex x, double tol) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (std::abs(points[i].x - x) < tol) return i;
    return std::nullopt;
}

double prism_bound(double t, double theta) {
    return std::sqrt(std::max(0.0, 1.0 - t * t)) / std::cos(theta / 2.0);
}

OrbitAtlas orbit_enumerate(const LiftedGroup& group, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidCutoff, "cutoff must be positive");
    const double c = std::cos(group.theta / 2.0);
    if (!(prism_bound(0.0, group.theta) > epsilon))
        throw Error(ErrorKind::InvalidCutoff, "cutoff excludes the fixed point itself");
    // f(|x|) > eps  <=>  |x| < keep_radius.
    const double keep_radius = std::sqrt(1.0 - (epsilon * c) * (epsilon * c));

    std::array<GroupElement, 6> steps;
    double max_step = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        steps[2 * i] = group.generators[i];
        steps[2 * i + 1] = inverse(group.generators[i]);
        max_step = std::max(max_step, disk_distance({0.0, 0.0}, orbit_point(group.generators[i])));
    }
    const double explore = 2.0 * std::atanh(keep_radius) + 2.0 * max_step;

    struct Node {
        Complex x;
        Word word;
        GroupElement value;
    };
    std::vector<Node> nodes{{Complex{0.0, 0.0}, Word{}, GroupElement::identity()}};
    const double cell = 1e-6;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, PairHash> grid;
    auto cell_of = [&](Complex x) {
        return std::make_pair(static_cast<std::int64_t>(std::floor(x.real() / cell)),
                              static_cast<std::int64_t>(std::floor(x.imag() / cell)));
    };
    auto lookup = [&](Complex x) -> bool {
        const auto [cx, cy] = cell_of(x);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({cx + dx, cy + dy});
                if (it == grid.end()) continue;
                for (std::size_t idx : it->second)
                    if (std::abs(nodes[idx].x - x) < kOrbitDedupTol) return true;
            }
        return false;
    };
    grid[cell_of(nodes[0].x)].push_back(0);

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        // The node stands for its whole coset v Stab(u); Stab(u) is generated by G_u.
        const int u = group.fixed_vertex;
        GroupElement base = nodes[cur].value;
        for (int j = 0; j < group.signature[static_cast<std::size_t>(u)]; ++j) {
            for (std::size_t s = 0; s < steps.size(); ++s) {
                if (static_cast<int>(s / 2) == u) continue;
                const GroupElement value = mul(base, steps[s]);
                const Complex x = orbit_point(value);
                if (disk_distance({0.0, 0.0}, x) > explore || lookup(x)) continue;
                Word word = nodes[cur].word;
                if (j != 0) append_letter(word, {u, j});
                append_letter(word, {static_cast<int>(s / 2), s % 2 == 0 ? 1 : -1});
                nodes.push_back({x, std::move(word), value});
                grid[cell_of(x)].push_back(nodes.size() - 1);
                queue.push_back(nodes.size() - 1);
            }
            base = mul(base, group.generators[static_cast<std::size_t>(u)]);
        }
    }

    OrbitAtlas atlas;
    atlas.epsilon = epsilon;
    atlas.theta = group.theta;
    for (const Node& n : nodes) {
        const double f = prism_bound(std::abs(n.x), group.theta);
        if (!(f > epsilon)) continue;
        OrbitPoint pt;
        pt.x = n.x;
        pt.word = n.word;
        pt.word_value = n.value;
        pt.rd_shift = std::llround(n.value.alpha / group.theta);
        pt.rep = mul(n.value, power(group.rd, pt.rd_shift));
        pt.f = f;
        atlas.points.push_back(std::move(pt));
    }
    std::sort(atlas.points.begin(), atlas.points.end(), [](const OrbitPoint& a, const OrbitPoint& b) {
        const auto ka = std::llround(std::abs(a.x) * 1e9), kb = std::llround(std::abs(b.x) * 1e9);
        if (ka != kb) return ka < kb;
        return std::arg(a.x) < std::arg(b.x);
    });
    return atlas;
}

}  // namespace lfd
