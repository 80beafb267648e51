#include "chc/complement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "chc/errors.hpp"

namespace chc {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

}  // namespace

std::vector<char> pattern_star_vertices(const SurfaceComplex& s) {
    std::vector<char> star(s.vertex_count(), 0);
    for (int v = 0; v < s.vertex_count(); ++v)
        if (s.marked_vertex(v)) star[v] = 1;
    for (int e = 0; e < s.edge_count(); ++e) {
        auto [a, b] = s.edge(e);
        if (s.marked_vertex(a)) star[b] = 1;
        if (s.marked_vertex(b)) star[a] = 1;
    }
    return star;
}

Complement mark_complement(SurfaceComplex ambient) {
    Complement out;
    out.ambient = std::move(ambient);
    const auto& w = out.ambient;
    const int nv = w.vertex_count();
    const int ne = w.edge_count();
    const int nf = w.triangle_count();

    std::vector<char> star = pattern_star_vertices(w);

    out.c_vertex.assign(nv, 0);
    for (int v = 0; v < nv; ++v) out.c_vertex[v] = !star[v];
    out.c_edge.assign(ne, 0);
    for (int e = 0; e < ne; ++e)
        out.c_edge[e] = out.c_vertex[w.edge(e)[0]] && out.c_vertex[w.edge(e)[1]];
    out.c_triangle.assign(nf, 0);
    for (int t = 0; t < nf; ++t) {
        const auto& tr = w.triangles()[t];
        out.c_triangle[t] =
            out.c_vertex[tr[0]] && out.c_vertex[tr[1]] && out.c_vertex[tr[2]];
    }

    out.m_vertex.assign(nv, 0);
    out.m_edge.assign(ne, 0);
    for (int e = 0; e < ne; ++e) {
        if (!w.boundary_edge(e)) continue;
        out.m_edge[e] = 1;
        out.m_vertex[w.edge(e)[0]] = 1;
        out.m_vertex[w.edge(e)[1]] = 1;
        internal_check(out.c_edge[e], "surface boundary touches the star of the pattern");
    }

    UnionFind uf(nv);
    for (int e = 0; e < ne; ++e)
        if (out.c_edge[e]) uf.unite(w.edge(e)[0], w.edge(e)[1]);
    out.component.assign(nv, -1);
    std::map<int, int> comp_of_root;
    for (int v = 0; v < nv; ++v) {
        if (!out.c_vertex[v]) continue;
        int root = uf.find(v);
        auto it = comp_of_root.find(root);
        if (it == comp_of_root.end())
            it = comp_of_root.emplace(root, static_cast<int>(comp_of_root.size())).first;
        out.component[v] = it->second;
    }
    out.component_isolated.assign(comp_of_root.size(), 1);
    for (int v = 0; v < nv; ++v)
        if (out.m_vertex[v]) out.component_isolated[out.component[v]] = 0;

    int n_int = 0, e_int = 0, f_c = 0;
    for (int v = 0; v < nv; ++v)
        if (out.c_vertex[v] && !out.m_vertex[v]) ++n_int;
    for (int e = 0; e < ne; ++e)
        if (out.c_edge[e] && !out.m_edge[e]) ++e_int;
    for (int t = 0; t < nf; ++t)
        if (out.c_triangle[t]) ++f_c;

    int h0 = 0;
    for (char iso : out.component_isolated) h0 += iso;

    // Closed relative 2-cycles: triangle components glued across interior
    // edges shared by two complement triangles, discarded if any interior
    // edge of theirs is covered only once.
    UnionFind dual(nf);
    for (int e = 0; e < ne; ++e) {
        if (!out.c_edge[e] || out.m_edge[e]) continue;
        std::vector<int> ct;
        for (int t : w.edge_triangles(e))
            if (out.c_triangle[t]) ct.push_back(t);
        if (ct.size() == 2) dual.unite(ct[0], ct[1]);
    }
    std::set<int> open_roots;
    for (int e = 0; e < ne; ++e) {
        if (!out.c_edge[e] || out.m_edge[e]) continue;
        std::vector<int> ct;
        for (int t : w.edge_triangles(e))
            if (out.c_triangle[t]) ct.push_back(t);
        if (ct.size() == 1) open_roots.insert(dual.find(ct[0]));
    }
    std::set<int> tri_roots;
    for (int t = 0; t < nf; ++t)
        if (out.c_triangle[t]) tri_roots.insert(dual.find(t));
    int h2 = static_cast<int>(tri_roots.size() - open_roots.size());

    int h1 = e_int - (n_int - h0) - (f_c - h2);
    internal_check(h1 >= 0, "relative rank accounting came out negative");
    out.ranks = {h0, h1, h2};
    return out;
}

Complement complement_complex(const SurfaceComplex& s) {
    s.require_valid();
    return mark_complement(barycentric_subdivision(barycentric_subdivision(s)));
}

RelativeRanks relative_betti(const SurfaceComplex& s) { return complement_complex(s).ranks; }

std::optional<int> find_isolated_component(const Complement& c) {
    for (int v = 0; v < c.ambient.vertex_count(); ++v)
        if (c.component[v] >= 0 && c.component_isolated[c.component[v]]) return v;
    return std::nullopt;
}

namespace {

// Grounded spanning forest of the interior part of C (all boundary vertices
// act as one ground) together with a spanning forest of the dual graph built
// only from non-tree edges.  Leftover edges index a basis of H_1(C, M).
struct TreeCotree {
    std::vector<int> parent_vertex, parent_edge;  // per vertex; -1 at roots
    std::vector<char> in_tree;                    // per edge
    std::vector<int> dual_parent_node, dual_parent_edge;  // per triangle + outside node
    std::vector<int> leftover;                    // ascending edge ids
};

TreeCotree build_tree_cotree(const Complement& c) {
    const auto& w = c.ambient;
    const int nv = w.vertex_count();
    const int ne = w.edge_count();
    const int nf = w.triangle_count();

    auto interior_edge = [&](int e) { return c.c_edge[e] && !c.m_edge[e]; };

    TreeCotree tc;
    tc.parent_vertex.assign(nv, -1);
    tc.parent_edge.assign(nv, -1);
    tc.in_tree.assign(ne, 0);

    std::vector<char> visited(nv, 0);
    std::deque<int> queue;
    for (int v = 0; v < nv; ++v)
        if (c.m_vertex[v]) visited[v] = 1, queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : w.vertex_edges(v)) {
            if (!interior_edge(e)) continue;
            int u = w.edge(e)[0] == v ? w.edge(e)[1] : w.edge(e)[0];
            if (visited[u]) continue;
            visited[u] = 1;
            tc.parent_vertex[u] = v;
            tc.parent_edge[u] = e;
            tc.in_tree[e] = 1;
            queue.push_back(u);
        }
    }
    for (int v = 0; v < nv; ++v)
        internal_check(!c.c_vertex[v] || visited[v],
                       "curve search requires every complement component to meet the boundary");

    // Dual forest over complement triangles plus the outside node, crossing
    // only non-tree interior edges; rooted at the outside node first so open
    // components hang off it, then at the lowest unreached triangle.
    const int outside = nf;
    tc.dual_parent_node.assign(nf + 1, -2);
    tc.dual_parent_edge.assign(nf + 1, -1);
    std::vector<std::vector<std::pair<int, int>>> dual_adj(nf + 1);  // (edge, other node)
    for (int e = 0; e < ne; ++e) {
        if (!interior_edge(e) || tc.in_tree[e]) continue;
        std::vector<int> ct;
        for (int t : w.edge_triangles(e))
            if (c.c_triangle[t]) ct.push_back(t);
        if (ct.empty()) continue;
        int a = ct[0];
        int b = ct.size() == 2 ? ct[1] : outside;
        dual_adj[a].push_back({e, b});
        dual_adj[b].push_back({e, a});
    }
    auto dual_bfs = [&](int root) {
        tc.dual_parent_node[root] = -1;
        std::deque<int> dq{root};
        while (!dq.empty()) {
            int x = dq.front();
            dq.pop_front();
            for (auto [e, y] : dual_adj[x]) {
                if (tc.dual_parent_node[y] != -2) continue;
                tc.dual_parent_node[y] = x;
                tc.dual_parent_edge[y] = e;
                dq.push_back(y);
            }
        }
    };
    dual_bfs(outside);
    for (int t = 0; t < nf; ++t)
        if (c.c_triangle[t] && tc.dual_parent_node[t] == -2) dual_bfs(t);

    std::vector<char> in_cotree(ne, 0);
    for (int x = 0; x <= nf; ++x)
        if (tc.dual_parent_edge[x] >= 0) in_cotree[tc.dual_parent_edge[x]] = 1;
    for (int e = 0; e < ne; ++e)
        if (interior_edge(e) && !tc.in_tree[e] && !in_cotree[e]) tc.leftover.push_back(e);
    return tc;
}

// Cocycle certificate of a leftover edge: the edge plus the primal edges
// crossed by the dual-forest path between its two sides.
std::vector<int> certificate_for(const Complement& c, const TreeCotree& tc, int e) {
    const auto& w = c.ambient;
    const int outside = w.triangle_count();
    std::vector<int> ct;
    for (int t : w.edge_triangles(e))
        if (c.c_triangle[t]) ct.push_back(t);
    std::set<int> edges{e};
    if (!ct.empty()) {
        int a = ct[0];
        int b = ct.size() == 2 ? ct[1] : outside;
        auto walk = [&](int x) {
            while (tc.dual_parent_node[x] >= 0) {
                int pe = tc.dual_parent_edge[x];
                if (edges.count(pe))
                    edges.erase(pe);
                else
                    edges.insert(pe);
                x = tc.dual_parent_node[x];
            }
            return x;
        };
        int ra = walk(a), rb = walk(b);
        internal_check(ra == rb, "leftover edge spans two dual trees");
    }
    return {edges.begin(), edges.end()};
}

// Fundamental relative cycle of a leftover edge as an edge set.
std::vector<char> fundamental_cycle(const Complement& c, const TreeCotree& tc, int e) {
    std::vector<char> z(c.ambient.edge_count(), 0);
    z[e] = 1;
    for (int v : {c.ambient.edge(e)[0], c.ambient.edge(e)[1]}) {
        int x = v;
        while (tc.parent_edge[x] >= 0) {
            z[tc.parent_edge[x]] ^= 1;
            x = tc.parent_vertex[x];
        }
    }
    return z;
}

struct Piece {
    std::vector<int> path;  // open: v0..vk; closed: cycle without repeated front
    bool closed = false;
};

// Split an edge set with even interior degrees into vertex-simple pieces:
// arcs between boundary vertices, loops based at a boundary vertex, and
// closed interior loops.
std::vector<Piece> split_into_pieces(const Complement& c, const std::vector<char>& z) {
    const auto& w = c.ambient;
    std::vector<std::vector<int>> adj(w.vertex_count());
    for (int e = 0; e < w.edge_count(); ++e)
        if (z[e]) {
            adj[w.edge(e)[0]].push_back(e);
            adj[w.edge(e)[1]].push_back(e);
        }
    std::vector<char> used(w.edge_count(), 0);
    auto next_edge = [&](int v) {
        for (int e : adj[v])
            if (!used[e]) return e;
        return -1;
    };

    // Trails: from boundary vertices until hitting the boundary again, then
    // closed trails from what remains.
    std::vector<std::vector<int>> trails;
    auto walk = [&](int start, bool stop_at_marked) {
        std::vector<int> trail{start};
        int v = start;
        while (true) {
            int e = next_edge(v);
            if (e < 0) break;
            used[e] = 1;
            v = w.edge(e)[0] == v ? w.edge(e)[1] : w.edge(e)[0];
            trail.push_back(v);
            if (stop_at_marked && c.m_vertex[v]) break;
            if (!stop_at_marked && v == start) break;
        }
        return trail;
    };
    for (int v = 0; v < w.vertex_count(); ++v) {
        if (!c.m_vertex[v]) continue;
        while (next_edge(v) >= 0) trails.push_back(walk(v, true));
    }
    for (int v = 0; v < w.vertex_count(); ++v)
        while (next_edge(v) >= 0) trails.push_back(walk(v, false));

    // Simplify each trail: repeated vertices pinch off closed loops.
    std::vector<Piece> pieces;
    for (const auto& trail : trails) {
        std::vector<int> stack;
        std::vector<int> pos(w.vertex_count(), -1);
        stack.push_back(trail[0]);
        pos[trail[0]] = 0;
        for (std::size_t i = 1; i < trail.size(); ++i) {
            int x = trail[i];
            if (pos[x] >= 0) {
                Piece p;
                p.closed = true;
                p.path.assign(stack.begin() + pos[x], stack.end());
                for (std::size_t k = pos[x] + 1; k < stack.size(); ++k)
                    pos[stack[k]] = -1;
                stack.resize(static_cast<std::size_t>(pos[x]) + 1);
                pieces.push_back(std::move(p));
            } else {
                pos[x] = static_cast<int>(stack.size());
                stack.push_back(x);
            }
        }
        if (stack.size() >= 2) {
            Piece p;
            p.path = stack;
            pieces.push_back(std::move(p));
        }
    }
    return pieces;
}

std::vector<int> piece_edges(const SurfaceComplex& w, const Piece& p) {
    std::vector<int> edges;
    std::size_t n = p.path.size();
    std::size_t count = p.closed ? n : n - 1;
    for (std::size_t i = 0; i < count; ++i) {
        int e = w.edge_id(p.path[i], p.path[(i + 1) % n]);
        internal_check(e >= 0, "curve piece uses a missing edge");
        edges.push_back(e);
    }
    return edges;
}

}  // namespace

RelativeCurve find_relative_curve(const Complement& c) {
    internal_check(c.ranks.r0 == 0, "curve search before isolated components were removed");
    if (c.ranks.r1 == 0) throw NoCurve("no curve with nonzero relative class exists");
    const auto& w = c.ambient;

    TreeCotree tc = build_tree_cotree(c);
    internal_check(static_cast<int>(tc.leftover.size()) == c.ranks.r1,
                   "leftover edge count disagrees with the first relative rank");

    int e0 = tc.leftover.front();
    std::vector<int> cert = certificate_for(c, tc, e0);
    std::vector<char> cycle = fundamental_cycle(c, tc, e0);

    auto pairing = [&](const std::vector<int>& edges) {
        int s = 0;
        for (int e : edges) s ^= std::binary_search(cert.begin(), cert.end(), e) ? 1 : 0;
        return s;
    };

    auto pieces = split_into_pieces(c, cycle);
    const Piece* best = nullptr;
    std::vector<int> best_key;
    for (const auto& p : pieces) {
        if (!pairing(piece_edges(w, p))) continue;
        std::vector<int> key = p.path;
        std::sort(key.begin(), key.end());
        if (!best || key < best_key) best = &p, best_key = std::move(key);
    }
    internal_check(best != nullptr, "no piece of the fundamental cycle pairs with its cocycle");

    RelativeCurve curve;
    curve.certificate = cert;
    if (!best->closed) {
        curve.kind = RelativeCurve::Kind::arc;
        curve.path = best->path;
    } else {
        curve.kind = RelativeCurve::Kind::closed;
        curve.path = best->path;
        // Canonical rotation for interior loops, then a shortest detour to
        // the boundary; a loop already based at a boundary vertex keeps its
        // base and needs no detour.
        bool based = c.m_vertex[curve.path.front()];
        if (!based) {
            auto mn = std::min_element(curve.path.begin(), curve.path.end());
            std::rotate(curve.path.begin(), mn, curve.path.end());
            int prev = curve.path.back(), next = curve.path[1];
            if (prev < next) {
                std::reverse(curve.path.begin() + 1, curve.path.end());
            }

            std::vector<int> dist(w.vertex_count(), -1), from_edge(w.vertex_count(), -1),
                from_vertex(w.vertex_count(), -1);
            std::deque<int> queue;
            for (int v : curve.path) dist[v] = 0, queue.push_back(v);
            int reached = -1;
            while (!queue.empty() && reached < 0) {
                int v = queue.front();
                queue.pop_front();
                for (int e : w.vertex_edges(v)) {
                    if (!c.c_edge[e] || c.m_edge[e]) continue;
                    int u = w.edge(e)[0] == v ? w.edge(e)[1] : w.edge(e)[0];
                    if (dist[u] >= 0) continue;
                    dist[u] = dist[v] + 1;
                    from_edge[u] = e;
                    from_vertex[u] = v;
                    queue.push_back(u);
                    if (c.m_vertex[u]) {
                        reached = u;
                        break;
                    }
                }
            }
            internal_check(reached >= 0, "closed curve component misses the boundary");
            std::vector<int> detour;
            for (int x = reached; x >= 0; x = from_vertex[x]) detour.push_back(x);
            std::reverse(detour.begin(), detour.end());
            std::rotate(curve.path.begin(),
                        std::find(curve.path.begin(), curve.path.end(), detour.front()),
                        curve.path.end());
            curve.detour = std::move(detour);
        }
    }

    internal_check(verify_curve_certificate(c, curve), "curve certificate failed verification");
    return curve;
}

bool verify_curve_certificate(const Complement& c, const RelativeCurve& curve) {
    const auto& w = c.ambient;
    for (int e : curve.certificate) {
        if (e < 0 || e >= w.edge_count()) return false;
        if (!c.c_edge[e] || c.m_edge[e]) return false;
    }
    std::vector<char> in_cert(w.edge_count(), 0);
    for (int e : curve.certificate) in_cert[e] = 1;

    for (int t = 0; t < w.triangle_count(); ++t) {
        if (!c.c_triangle[t]) continue;
        int count = 0;
        for (int e : w.triangle_edges(t)) count += in_cert[e];
        if (count % 2) return false;
    }

    Piece p{curve.path, curve.kind == RelativeCurve::Kind::closed};
    int s = 0;
    for (int e : piece_edges(w, p)) s ^= in_cert[e];
    return s == 1;
}

}  // namespace chc
