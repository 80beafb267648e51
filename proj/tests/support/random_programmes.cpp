#include "support/random_programmes.hpp"

#include <map>
#include <string>
#include <vector>

#include "chc/errors.hpp"

namespace chc::testing {

namespace {

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % n); }

struct Ids {
    int curve = 1, white = 1, gray = 1, core = 1;
    std::string t() { return "t" + std::to_string(curve++); }
    std::string w() { return "W" + std::to_string(white++); }
    std::string g() { return "G" + std::to_string(gray++); }
    std::string c() { return "c" + std::to_string(core++); }
};

// One-curve torus: a single class-0 curve between a white disk and a gray
// once-punctured torus.
ColouredManifold torus_single(Ids& ids) {
    std::string core = ids.c(), t = ids.t(), w = ids.w(), g = ids.g();
    return solid_torus(core, {{t, {}, w, g}},
                       {{w, Colour::white, 1, {t}, -1}, {g, Colour::gray, -1, {t}, -1}});
}

// Hourglass style: two curves of classes +-m*c between two annuli.
ColouredManifold torus_pair(Ids& ids, long long m, bool opposite) {
    std::string core = ids.c(), t1 = ids.t(), t2 = ids.t(), w = ids.w(), g = ids.g();
    std::map<std::string, std::int64_t> k1{{core, m}};
    std::map<std::string, std::int64_t> k2{{core, opposite ? -m : m}};
    return solid_torus(core, {{t1, k1, w, g}, {t2, k2, w, g}},
                       {{w, Colour::white, 0, {t1, t2}, -1},
                        {g, Colour::gray, 0, {t1, t2}, -1}});
}

// Three curves: one nullhomologous, two of classes +-m*c; white disk plus
// annulus against a gray pair of pants.
ColouredManifold torus_triple(Ids& ids, long long m) {
    std::string core = ids.c();
    std::string t0 = ids.t(), t1 = ids.t(), t2 = ids.t();
    std::string w1 = ids.w(), g = ids.g(), w2 = ids.w();
    std::map<std::string, std::int64_t> k1{{core, m}}, k2{{core, -m}};
    return solid_torus(core,
                       {{t0, {}, w1, g}, {t1, k1, w2, g}, {t2, k2, w2, g}},
                       {{w1, Colour::white, 1, {t0}, -1},
                        {w2, Colour::white, 0, {t1, t2}, -1},
                        {g, Colour::gray, -1, {t0, t1, t2}, -1}});
}

// Four +-m*c curves; the annuli interleave so the regions stay connected.
ColouredManifold torus_quad(Ids& ids, long long m) {
    std::string core = ids.c();
    std::string t1 = ids.t(), t2 = ids.t(), t3 = ids.t(), t4 = ids.t();
    std::string w1 = ids.w(), g1 = ids.g(), w2 = ids.w(), g2 = ids.g();
    std::map<std::string, std::int64_t> plus{{core, m}}, minus{{core, -m}};
    return solid_torus(core,
                       {{t1, plus, w1, g1},
                        {t2, minus, w1, g2},
                        {t3, minus, w2, g1},
                        {t4, plus, w2, g2}},
                       {{w1, Colour::white, 0, {t1, t2}, -1},
                        {w2, Colour::white, 0, {t3, t4}, -1},
                        {g1, Colour::gray, 0, {t1, t3}, -1},
                        {g2, Colour::gray, 0, {t2, t4}, -1}});
}

ColouredManifold random_torus(std::mt19937_64& rng, Ids& ids) {
    long long m = 1 + pick(rng, 3);
    switch (pick(rng, 4)) {
        case 0: return torus_single(ids);
        case 1: return torus_pair(ids, m, pick(rng, 2) == 0);
        case 2: return torus_triple(ids, m);
        default: return torus_quad(ids, m);
    }
}

// A ball (rank 0) or a genus-two handlebody (rank 2) block.
ColouredManifold random_block(std::mt19937_64& rng, Ids& ids) {
    if (pick(rng, 2) == 0) {
        std::string t = ids.t(), w = ids.w(), g = ids.g();
        return block(0, {{t, {}, w, g}},
                     {{w, Colour::white, 1, {t}, -1}, {g, Colour::gray, 1, {t}, -1}});
    }
    std::string t1 = ids.t(), t2 = ids.t(), w = ids.w(), g = ids.g();
    return block(2, {{t1, {{"b1", 1}}, w, g}, {t2, {{"b2", 1}}, w, g}},
                 {{w, Colour::white, 0, {t1, t2}, -1},
                  {g, Colour::gray, -2, {t1, t2}, -1}});
}

}  // namespace

ProgrammeCase random_programme_case(std::mt19937_64& rng) {
    Ids ids;
    std::vector<ColouredManifold> parts;
    int ntori = 1 + pick(rng, 3);
    for (int i = 0; i < ntori; ++i) parts.push_back(random_torus(rng, ids));
    if (pick(rng, 2) == 0) parts.push_back(random_block(rng, ids));

    ProgrammeCase out;
    out.base = disjoint_union(parts);

    int n1 = pick(rng, 6);
    int n2 = pick(rng, 4);
    while (n1 + n2 > 8) (n1 > n2 ? n1 : n2) -= 1;

    ColouredManifold m = out.base;
    for (int i = 0; i < n1; ++i) {
        internal_check(!m.curves.empty(), "programme generator ran out of curves");
        const std::string a = m.curves[pick(rng, static_cast<int>(m.curves.size()))].id;
        std::string b = a;
        if (m.curves.size() > 1 && pick(rng, 4) != 0)
            while (b == a) b = m.curves[pick(rng, static_cast<int>(m.curves.size()))].id;
        m = attach_1_handle(m, a, b);
        out.programme.steps.push_back({false, a, b});
    }
    for (int i = 0; i < n2 && !m.curves.empty(); ++i) {
        const std::string c = m.curves[pick(rng, static_cast<int>(m.curves.size()))].id;
        m = attach_2_handle(m, c);
        out.programme.steps.push_back({true, c, ""});
    }
    return out;
}

}  // namespace chc::testing
