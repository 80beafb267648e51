#include "support/random_surfaces.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

#include "chc/errors.hpp"
#include "support/builders.hpp"

namespace chc::testing {

namespace {

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % n); }

SurfaceComplex stellar_subdivision(const SurfaceComplex& s, int t) {
    std::vector<Triangle> tris = s.triangles();
    Triangle old = tris[t];
    int w = s.vertex_count();
    tris[t] = {old[0], old[1], w};
    tris.push_back({old[1], old[2], w});
    tris.push_back({old[2], old[0], w});
    return SurfaceComplex(w + 1, std::move(tris), s.marked());
}

SurfaceComplex random_template(std::mt19937_64& rng) {
    switch (pick(rng, 6)) {
        case 0: return octahedron();
        case 1: return minimal_torus();
        case 2: return grid_torus(3 + pick(rng, 3), 3 + pick(rng, 3));
        case 3: return klein_grid();
        case 4: return disk_fan(3 + pick(rng, 5));
        default: return annulus_grid();
    }
}

bool interior_edge(const SurfaceComplex& s, int e) {
    auto [a, b] = s.edge(e);
    return !s.boundary_edge(e) && !s.boundary_vertex(a) && !s.boundary_vertex(b);
}

bool interior_triangle(const SurfaceComplex& s, int t) {
    for (int v : s.triangles()[t])
        if (s.boundary_vertex(v)) return false;
    for (int e : s.triangle_edges(t))
        if (s.boundary_edge(e)) return false;
    return true;
}

void merge_into(SubComplex& into, const SubComplex& piece) {
    into.vertices.insert(into.vertices.end(), piece.vertices.begin(), piece.vertices.end());
    into.edges.insert(into.edges.end(), piece.edges.begin(), piece.edges.end());
    into.triangles.insert(into.triangles.end(), piece.triangles.begin(),
                          piece.triangles.end());
}

std::array<int, 2> sorted_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// The closed pieces L may be built from: one vertex, one interior edge with
// its endpoints, or one interior triangle with its full boundary.
std::optional<SubComplex> random_pattern_piece(std::mt19937_64& rng, const SurfaceComplex& s,
                                               const std::vector<char>& used) {
    auto vertex_free = [&](int v) { return !used[v]; };

    std::vector<int> vert_cands, edge_cands, tri_cands;
    for (int v = 0; v < s.vertex_count(); ++v)
        if (!s.boundary_vertex(v) && vertex_free(v)) vert_cands.push_back(v);
    for (int e = 0; e < s.edge_count(); ++e)
        if (interior_edge(s, e) && vertex_free(s.edge(e)[0]) && vertex_free(s.edge(e)[1]))
            edge_cands.push_back(e);
    for (int t = 0; t < s.triangle_count(); ++t) {
        if (!interior_triangle(s, t)) continue;
        bool free = true;
        for (int v : s.triangles()[t]) free = free && vertex_free(v);
        if (free) tri_cands.push_back(t);
    }

    std::vector<int> kinds;
    if (!vert_cands.empty()) kinds.push_back(0);
    if (!edge_cands.empty()) kinds.push_back(1);
    if (!tri_cands.empty()) kinds.push_back(2);
    if (kinds.empty()) return std::nullopt;

    SubComplex piece;
    switch (kinds[pick(rng, static_cast<int>(kinds.size()))]) {
        case 0: {
            piece.vertices = {vert_cands[pick(rng, static_cast<int>(vert_cands.size()))]};
            break;
        }
        case 1: {
            auto [a, b] = s.edge(edge_cands[pick(rng, static_cast<int>(edge_cands.size()))]);
            piece.vertices = {a, b};
            piece.edges = {sorted_edge(a, b)};
            break;
        }
        default: {
            Triangle t = s.triangles()[tri_cands[pick(rng, static_cast<int>(tri_cands.size()))]];
            piece.vertices = {t[0], t[1], t[2]};
            piece.edges = {sorted_edge(t[0], t[1]), sorted_edge(t[1], t[2]),
                           sorted_edge(t[2], t[0])};
            piece.triangles = {t};
            break;
        }
    }
    return piece;
}

std::optional<SubComplex> random_pattern(std::mt19937_64& rng, const SurfaceComplex& s) {
    std::vector<char> used(s.vertex_count(), 0);
    auto first = random_pattern_piece(rng, s, used);
    if (!first) return std::nullopt;
    SubComplex pattern = *first;
    if (rng() % 3 == 0) {
        std::vector<char> taken = used;
        for (int v : pattern.vertices) taken[v] = 1;
        // Keep disjoint pieces a vertex apart so L's pieces stay separate
        // components after the neighbourhood is carved out.
        for (int v = 0; v < s.vertex_count(); ++v) {
            if (!taken[v]) continue;
            for (int e : s.vertex_edges(v)) {
                taken[s.edge(e)[0]] = 1;
                taken[s.edge(e)[1]] = 1;
            }
        }
        if (auto second = random_pattern_piece(rng, s, taken)) merge_into(pattern, *second);
    }
    return pattern;
}

}  // namespace

SurfaceComplex random_marked_surface(std::mt19937_64& rng, int max_triangles) {
    int ncomp = 1 + pick(rng, 3);
    int total = 0;

    std::vector<SurfaceComplex> pieces;
    for (int i = 0; i < ncomp; ++i) {
        SurfaceComplex s = random_template(rng);
        if (rng() % 2 == 0) {
            SurfaceComplex finer = barycentric_subdivision(s);
            if (total + finer.triangle_count() <= max_triangles)
                s = std::move(finer);
        }
        int pokes = pick(rng, 4);
        for (int k = 0; k < pokes && total + s.triangle_count() + 2 <= max_triangles; ++k)
            s = stellar_subdivision(s, pick(rng, s.triangle_count()));

        if (total + s.triangle_count() > max_triangles) {
            if (i > 0) break;
            s = octahedron();
        }

        bool want_pattern = (i == 0) || rng() % 3 != 0;
        std::optional<SubComplex> pattern;
        if (want_pattern) {
            pattern = random_pattern(rng, s);
            if (!pattern) {
                // Template too coarse for an interior pattern; refine it.
                SurfaceComplex finer = barycentric_subdivision(s);
                if (total + finer.triangle_count() <= max_triangles)
                    s = std::move(finer);
                else
                    s = octahedron();
                pattern = random_pattern(rng, s);
                internal_check(pattern.has_value(),
                               "refined template still has no interior pattern slot");
            }
        }

        if (pattern)
            s = SurfaceComplex(s.vertex_count(), s.triangles(), *pattern);
        total += s.triangle_count();
        pieces.push_back(std::move(s));
    }

    // Assemble the disjoint union with a running vertex offset.
    int vertices = 0;
    std::vector<Triangle> tris;
    SubComplex marked;
    for (const auto& p : pieces) {
        int off = vertices;
        for (Triangle t : p.triangles()) tris.push_back({t[0] + off, t[1] + off, t[2] + off});
        SubComplex m = p.marked();
        for (int& v : m.vertices) v += off;
        for (auto& e : m.edges) e = {e[0] + off, e[1] + off};
        for (auto& t : m.triangles) t = {t[0] + off, t[1] + off, t[2] + off};
        merge_into(marked, m);
        vertices += p.vertex_count();
    }

    SurfaceComplex out(vertices, std::move(tris), std::move(marked));
    internal_check(!out.marked_empty(), "random surface lost its pattern");
    auto bad = out.validate();
    internal_check(bad.empty(), "random surface invalid: " + (bad.empty() ? "" : bad.front()));
    return out;
}

}  // namespace chc::testing
