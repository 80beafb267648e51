#include "chc/trim.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chc/errors.hpp"

namespace chc {

namespace {

void check_off_pattern(const SurfaceComplex& s, int v) {
    for (int t : s.vertex_triangles(v))
        for (int u : s.triangles()[t])
            if (s.marked_vertex(u))
                throw BadWitness("witness at vertex " + std::to_string(v) +
                                 " touches the pattern");
}

// Renumber after dropping a set of triangles; every remaining vertex must
// still be used.  The marked subcomplex is carried across by ids.
struct Compacted {
    SurfaceComplex surface;
    std::vector<int> vertex_map;
};

Compacted compact(const SurfaceComplex& s, const std::vector<char>& keep_triangle) {
    std::vector<char> used(s.vertex_count(), 0);
    std::vector<Triangle> tris;
    for (int t = 0; t < s.triangle_count(); ++t) {
        if (!keep_triangle[t]) continue;
        tris.push_back(s.triangles()[t]);
        for (int v : s.triangles()[t]) used[v] = 1;
    }
    std::vector<int> map(s.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < s.vertex_count(); ++v)
        if (used[v]) map[v] = next++;
    for (auto& t : tris)
        for (int& v : t) v = map[v];

    SubComplex marked = s.marked();
    for (int v : marked.vertices)
        internal_check(map[v] >= 0, "pattern vertex lost while compacting");
    for (int& v : marked.vertices) v = map[v];
    for (auto& e : marked.edges)
        for (int& v : e) v = map[v];
    for (auto& t : marked.triangles)
        for (int& v : t) v = map[v];

    return {SurfaceComplex(next, std::move(tris), std::move(marked)), std::move(map)};
}

}  // namespace

SlitResult slit_path(const SurfaceComplex& s, const std::vector<int>& path, bool closed) {
    const std::size_t n = path.size();
    if (n < (closed ? 3u : 2u)) throw BadWitness("slit path is too short");
    {
        std::set<int> distinct(path.begin(), path.end());
        if (distinct.size() != n) throw BadWitness("slit path repeats a vertex");
    }
    for (int v : path) {
        if (v < 0 || v >= s.vertex_count())
            throw BadWitness("slit path vertex out of range: " + std::to_string(v));
        check_off_pattern(s, v);
    }
    const std::size_t edge_total = closed ? n : n - 1;
    std::vector<int> path_edges(edge_total);
    for (std::size_t i = 0; i < edge_total; ++i) {
        int e = s.edge_id(path[i], path[(i + 1) % n]);
        if (e < 0) throw BadWitness("slit path uses a missing edge");
        if (s.boundary_edge(e)) throw BadWitness("slit path runs along the boundary");
        path_edges[i] = e;
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool endpoint = !closed && (i == 0 || i + 1 == n);
        bool base = closed && i == 0;
        if (endpoint) {
            if (!s.boundary_vertex(path[i]))
                throw BadWitness("slit endpoint is not on the boundary");
        } else if (!base && s.boundary_vertex(path[i])) {
            throw BadWitness("slit interior touches the boundary");
        }
    }

    std::vector<Triangle> tris = s.triangles();
    std::vector<std::vector<int>> copies(n);
    int next_id = s.vertex_count();

    for (std::size_t i = 0; i < n; ++i) {
        int v = path[i];
        std::vector<int> cuts;
        if (closed || i > 0) cuts.push_back(path_edges[(i + edge_total - 1) % edge_total]);
        if (closed || i + 1 < n) cuts.push_back(path_edges[i]);

        VertexFan fan = fan_at_vertex(s, v);
        std::vector<int> cutpos;
        for (std::size_t j = 0; j < fan.edges.size(); ++j)
            if (std::count(cuts.begin(), cuts.end(), fan.edges[j])) cutpos.push_back(j);
        internal_check(cutpos.size() == cuts.size(), "slit edges missing from the vertex fan");

        std::vector<int> sector(fan.tris.size(), 0);
        int sectors;
        if (fan.cyclic) {
            internal_check(cutpos.size() == 2, "interior slit vertex needs two cut edges");
            for (std::size_t j = 0; j < fan.tris.size(); ++j)
                sector[j] = (static_cast<int>(j) >= cutpos[0] && static_cast<int>(j) < cutpos[1])
                                ? 0
                                : 1;
            sectors = 2;
        } else {
            std::size_t ci = 0;
            int sec = 0;
            for (std::size_t j = 0; j < fan.tris.size(); ++j) {
                while (ci < cutpos.size() && cutpos[ci] == static_cast<int>(j)) ++sec, ++ci;
                sector[j] = sec;
            }
            sectors = static_cast<int>(cuts.size()) + 1;
            internal_check(sec + 1 == sectors, "slit cut edges fell outside the fan interior");
        }

        copies[i].push_back(v);
        for (int k = 1; k < sectors; ++k) copies[i].push_back(next_id++);
        for (std::size_t j = 0; j < fan.tris.size(); ++j) {
            if (sector[j] == 0) continue;
            for (int& corner : tris[fan.tris[j]])
                if (corner == v) corner = copies[i][sector[j]];
        }
    }

    SurfaceComplex cut(next_id, std::move(tris), s.marked());
    cut.require_valid();
    return {std::move(cut), std::move(copies)};
}

DiskRemoval remove_disk(const SurfaceComplex& s, int z) {
    if (z < 0 || z >= s.vertex_count())
        throw BadWitness("disk centre out of range: " + std::to_string(z));
    if (s.boundary_vertex(z)) throw BadWitness("disk centre lies on the boundary");
    check_off_pattern(s, z);
    for (int t : s.vertex_triangles(z))
        for (int u : s.triangles()[t])
            if (s.boundary_vertex(u))
                throw BadWitness("disk around vertex " + std::to_string(z) +
                                 " touches the boundary");

    std::vector<char> keep(s.triangle_count(), 1);
    for (int t : s.vertex_triangles(z)) keep[t] = 0;
    Compacted out = compact(s, keep);
    out.surface.require_valid();
    return {std::move(out.surface), std::move(out.vertex_map)};
}

SurfaceComplex cut_strip(const SurfaceComplex& s, const RelativeCurve& curve) {
    if (curve.kind == RelativeCurve::Kind::arc) {
        return slit_path(s, curve.path, false).surface;
    }
    if (curve.detour.empty()) {
        if (!s.boundary_vertex(curve.path.front()))
            throw BadWitness("closed curve without a detour must be based on the boundary");
        return slit_path(s, curve.path, true).surface;
    }

    if (curve.detour.front() != curve.path.front())
        throw BadWitness("detour must start at the front of the closed curve");
    SlitResult first = slit_path(s, curve.path, true);

    // The detour's first edge survives at exactly one copy of the base.
    std::vector<int> detour = curve.detour;
    int owner = -1;
    for (int cand : first.copies.front()) {
        if (first.surface.edge_id(cand, detour[1]) < 0) continue;
        internal_check(owner < 0, "detour edge is attached to two copies of the base");
        owner = cand;
    }
    internal_check(owner >= 0, "detour edge lost during the closed slit");
    detour[0] = owner;
    return slit_path(first.surface, detour, false).surface;
}

SurfaceComplex discard_component(const SurfaceComplex& s, int v) {
    if (v < 0 || v >= s.vertex_count())
        throw BadWitness("component vertex out of range: " + std::to_string(v));
    std::vector<char> in_comp(s.vertex_count(), 0);
    std::vector<int> stack{v};
    in_comp[v] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int e : s.vertex_edges(x)) {
            int u = s.edge(e)[0] == x ? s.edge(e)[1] : s.edge(e)[0];
            if (!in_comp[u]) in_comp[u] = 1, stack.push_back(u);
        }
    }
    for (int u = 0; u < s.vertex_count(); ++u)
        if (in_comp[u] && s.marked_vertex(u))
            throw BadWitness("component of vertex " + std::to_string(v) +
                             " meets the pattern");

    std::vector<char> keep(s.triangle_count(), 1);
    for (int t = 0; t < s.triangle_count(); ++t)
        if (in_comp[s.triangles()[t][0]]) keep[t] = 0;
    SurfaceComplex out = compact(s, keep).surface;
    out.require_valid();
    return out;
}

std::string to_string(TrimStep::Kind k) {
    switch (k) {
        case TrimStep::Kind::remove_disk: return "remove_disk";
        case TrimStep::Kind::cut_strip: return "cut_strip";
        case TrimStep::Kind::discard_component: return "discard_component";
    }
    return "?";
}

namespace {

void check_law(const RelativeRanks& before, const RelativeRanks& after, TrimStep::Kind kind) {
    RelativeRanks want = before;
    switch (kind) {
        case TrimStep::Kind::remove_disk: --want.r0; break;
        case TrimStep::Kind::cut_strip: --want.r1; break;
        case TrimStep::Kind::discard_component: --want.r2; break;
    }
    internal_check(after == want,
                   "trim step " + to_string(kind) + " changed the ranks unexpectedly");
}

// Lowest vertex of the lowest surface component that misses the pattern.
int lowest_patternless_component(const SurfaceComplex& s) {
    std::vector<int> parent(s.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < s.edge_count(); ++e) {
        int a = find(s.edge(e)[0]), b = find(s.edge(e)[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<char> has_pattern(s.vertex_count(), 0);
    for (int v = 0; v < s.vertex_count(); ++v)
        if (s.marked_vertex(v)) has_pattern[find(v)] = 1;
    for (int v = 0; v < s.vertex_count(); ++v)
        if (find(v) == v && !has_pattern[v]) return v;
    return -1;
}

void check_frame(const Complement& c) {
    const auto& w = c.ambient;
    int comps = 0;
    for (int x : c.component) comps = std::max(comps, x + 1);
    std::vector<int> vs(comps, 0), es(comps, 0), fs(comps, 0), circles(comps, 0);
    for (int v = 0; v < w.vertex_count(); ++v)
        if (c.component[v] >= 0) ++vs[c.component[v]];
    for (int e = 0; e < w.edge_count(); ++e)
        if (c.c_edge[e]) ++es[c.component[w.edge(e)[0]]];
    for (int t = 0; t < w.triangle_count(); ++t)
        if (c.c_triangle[t]) ++fs[c.component[w.triangles()[t][0]]];

    // Boundary circles per complement component.
    std::vector<int> parent(w.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < w.edge_count(); ++e) {
        if (!c.m_edge[e]) continue;
        int a = find(w.edge(e)[0]), b = find(w.edge(e)[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (int v = 0; v < w.vertex_count(); ++v)
        if (c.m_vertex[v] && find(v) == v) ++circles[c.component[v]];

    for (int k = 0; k < comps; ++k) {
        internal_check(circles[k] == 1 && vs[k] - es[k] + fs[k] == 0,
                       "trimmed frame is not a union of once-punctured disks");
    }
}

}  // namespace

TrimReport trim(const SurfaceComplex& s) {
    s.require_valid();
    Complement comp = complement_complex(s);
    TrimReport report;
    report.initial = comp.ranks;

    int refines = 0;
    while (comp.ranks.r0 > 0) {
        auto seed = find_isolated_component(comp);
        internal_check(seed.has_value(), "positive rank but no isolated component");
        int target = comp.component[*seed];

        const auto& w = comp.ambient;
        std::vector<char> star = pattern_star_vertices(w);
        int z = -1;
        for (int v = 0; v < w.vertex_count() && z < 0; ++v) {
            if (comp.component[v] != target) continue;
            bool clear = true;
            for (int e : w.vertex_edges(v)) {
                int u = w.edge(e)[0] == v ? w.edge(e)[1] : w.edge(e)[0];
                if (star[u]) {
                    clear = false;
                    break;
                }
            }
            if (clear) z = v;
        }
        if (z < 0) {
            // The component is too thin to hold a full disk; one refinement
            // makes the star of every current complement vertex eligible.
            internal_check(++refines < 2, "refinement failed to free up a disk");
            RelativeRanks before = comp.ranks;
            comp = mark_complement(barycentric_subdivision(comp.ambient));
            internal_check(comp.ranks == before, "refinement changed the relative ranks");
            internal_check(find_isolated_component(comp).has_value(),
                           "isolated component vanished under refinement");
            continue;
        }
        refines = 0;

        RelativeRanks before = comp.ranks;
        DiskRemoval removal = remove_disk(comp.ambient, z);
        comp = mark_complement(std::move(removal.surface));
        check_law(before, comp.ranks, TrimStep::Kind::remove_disk);
        report.steps.push_back({TrimStep::Kind::remove_disk, {z}, before, comp.ranks});
    }

    while (comp.ranks.r1 > 0) {
        RelativeCurve curve = find_relative_curve(comp);
        RelativeRanks before = comp.ranks;
        std::vector<int> witness = curve.path;
        if (!curve.detour.empty()) {
            witness.push_back(-1);
            witness.insert(witness.end(), curve.detour.begin(), curve.detour.end());
        }
        comp = mark_complement(cut_strip(comp.ambient, curve));
        check_law(before, comp.ranks, TrimStep::Kind::cut_strip);
        report.steps.push_back(
            {TrimStep::Kind::cut_strip, std::move(witness), before, comp.ranks});
    }

    while (true) {
        int v = lowest_patternless_component(comp.ambient);
        if (v < 0) break;
        RelativeRanks before = comp.ranks;
        comp = mark_complement(discard_component(comp.ambient, v));
        check_law(before, comp.ranks, TrimStep::Kind::discard_component);
        report.steps.push_back({TrimStep::Kind::discard_component, {v}, before, comp.ranks});
    }

    internal_check(comp.ranks == RelativeRanks{},
                   "trimming finished with nonzero relative ranks");
    check_frame(comp);
    report.result = std::move(comp.ambient);
    return report;
}

}  // namespace chc
