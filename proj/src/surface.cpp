#include "chc/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chc/errors.hpp"

namespace chc {

namespace {

Triangle sorted_triangle(Triangle t) {
    std::sort(t.begin(), t.end());
    return t;
}

std::array<int, 2> sorted_edge(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

}  // namespace

SurfaceComplex::SurfaceComplex(int vertex_count, std::vector<Triangle> tris, SubComplex marked)
    : vertex_count_(vertex_count), triangles_(std::move(tris)) {
    if (vertex_count_ < 0) throw ValidationError("negative vertex count");
    for (auto& t : triangles_) {
        for (int v : t) {
            if (v < 0 || v >= vertex_count_)
                throw ValidationError("triangle vertex id out of range: " + std::to_string(v));
        }
        t = sorted_triangle(t);
        if (t[0] == t[1] || t[1] == t[2])
            throw ValidationError("degenerate triangle with repeated vertex " +
                                  std::to_string(t[0] == t[1] ? t[0] : t[1]));
    }

    edges_.reserve(triangles_.size() * 3);
    for (const auto& t : triangles_) {
        edges_.push_back({t[0], t[1]});
        edges_.push_back({t[0], t[2]});
        edges_.push_back({t[1], t[2]});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    edge_tris_.assign(edges_.size(), {});
    vertex_edges_.assign(vertex_count_, {});
    vertex_tris_.assign(vertex_count_, {});
    for (int ti = 0; ti < triangle_count(); ++ti) {
        const auto& t = triangles_[ti];
        for (int k = 0; k < 3; ++k) {
            vertex_tris_[t[k]].push_back(ti);
            int e = edge_id(t[k], t[(k + 1) % 3]);
            if (edge_tris_[e].empty() || edge_tris_[e].back() != ti) edge_tris_[e].push_back(ti);
        }
    }
    for (int e = 0; e < edge_count(); ++e) {
        vertex_edges_[edges_[e][0]].push_back(e);
        vertex_edges_[edges_[e][1]].push_back(e);
    }

    boundary_vertex_.assign(vertex_count_, 0);
    for (int e = 0; e < edge_count(); ++e) {
        if (edge_tris_[e].size() == 1) {
            boundary_vertex_[edges_[e][0]] = 1;
            boundary_vertex_[edges_[e][1]] = 1;
        }
    }

    l_vertex_.assign(vertex_count_, 0);
    l_edge_.assign(edges_.size(), 0);
    l_triangle_.assign(triangles_.size(), 0);
    for (int v : marked.vertices) {
        if (v < 0 || v >= vertex_count_)
            throw ValidationError("marked vertex id out of range: " + std::to_string(v));
        l_vertex_[v] = 1;
    }
    for (auto e : marked.edges) {
        int id = edge_id(e[0], e[1]);
        if (id < 0)
            throw ValidationError("marked edge (" + std::to_string(e[0]) + "," +
                                  std::to_string(e[1]) + ") is not an edge of the complex");
        l_edge_[id] = 1;
    }
    for (auto t : marked.triangles) {
        t = sorted_triangle(t);
        auto it = std::find(triangles_.begin(), triangles_.end(), t);
        if (it == triangles_.end())
            throw ValidationError("marked triangle (" + std::to_string(t[0]) + "," +
                                  std::to_string(t[1]) + "," + std::to_string(t[2]) +
                                  ") is not a triangle of the complex");
        l_triangle_[it - triangles_.begin()] = 1;
    }
}

int SurfaceComplex::edge_id(int a, int b) const {
    auto key = sorted_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
}

std::array<int, 3> SurfaceComplex::triangle_edges(int t) const {
    const auto& tr = triangles_[t];
    return {edge_id(tr[0], tr[1]), edge_id(tr[0], tr[2]), edge_id(tr[1], tr[2])};
}

SubComplex SurfaceComplex::marked() const {
    SubComplex out;
    for (int v = 0; v < vertex_count_; ++v)
        if (l_vertex_[v]) out.vertices.push_back(v);
    for (int e = 0; e < edge_count(); ++e)
        if (l_edge_[e]) out.edges.push_back(edges_[e]);
    for (int t = 0; t < triangle_count(); ++t)
        if (l_triangle_[t]) out.triangles.push_back(triangles_[t]);
    return out;
}

bool SurfaceComplex::marked_empty() const {
    return std::none_of(l_vertex_.begin(), l_vertex_.end(), [](char c) { return c != 0; });
}

std::vector<std::string> SurfaceComplex::validate() const {
    std::vector<std::string> bad;

    std::set<Triangle> seen;
    for (const auto& t : triangles_) {
        if (!seen.insert(t).second) {
            std::ostringstream os;
            os << "duplicate triangle (" << t[0] << "," << t[1] << "," << t[2] << ")";
            bad.push_back(os.str());
        }
    }

    for (int e = 0; e < edge_count(); ++e) {
        if (edge_tris_[e].size() > 2) {
            std::ostringstream os;
            os << "edge (" << edges_[e][0] << "," << edges_[e][1] << ") lies in "
               << edge_tris_[e].size() << " triangles";
            bad.push_back(os.str());
        }
    }

    for (int v = 0; v < vertex_count_; ++v) {
        if (vertex_tris_[v].empty()) {
            bad.push_back("vertex " + std::to_string(v) + " has an empty link");
            continue;
        }
        // Link graph: nodes are the incident edges, each incident triangle
        // joins its two edges at v.  A surface needs a single path or cycle.
        const auto& ve = vertex_edges_[v];
        std::map<int, int> node;
        for (int i = 0; i < static_cast<int>(ve.size()); ++i) node[ve[i]] = i;
        std::vector<int> deg(ve.size(), 0);
        std::vector<std::vector<int>> adj(ve.size());
        bool local_ok = true;
        for (int ti : vertex_tris_[v]) {
            const auto& t = triangles_[ti];
            std::array<int, 2> at{-1, -1};
            int n = 0;
            for (int k = 0; k < 3; ++k) {
                if (t[k] == v) continue;
                at[n++] = edge_id(v, t[k]);
            }
            int a = node[at[0]], b = node[at[1]];
            ++deg[a], ++deg[b];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        int deg1 = 0;
        for (std::size_t i = 0; i < deg.size(); ++i) {
            if (deg[i] == 1)
                ++deg1;
            else if (deg[i] != 2)
                local_ok = false;
        }
        if (deg1 != 0 && deg1 != 2) local_ok = false;
        // connectivity
        std::vector<char> vis(ve.size(), 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (!vis[y]) vis[y] = 1, stack.push_back(y);
        }
        if (std::count(vis.begin(), vis.end(), 1) != static_cast<long>(ve.size()))
            local_ok = false;
        if (!local_ok)
            bad.push_back("link of vertex " + std::to_string(v) +
                          " is not a single path or cycle");
    }

    // L must be closed under faces and must exist in the complex (existence
    // was enforced at construction).
    for (int t = 0; t < triangle_count(); ++t) {
        if (!l_triangle_[t]) continue;
        const auto& tr = triangles_[t];
        for (int v : tr)
            if (!l_vertex_[v])
                bad.push_back("marked triangle misses marked vertex " + std::to_string(v));
        for (int e : triangle_edges(t))
            if (!l_edge_[e])
                bad.push_back("marked triangle misses marked edge (" +
                              std::to_string(edges_[e][0]) + "," + std::to_string(edges_[e][1]) +
                              ")");
    }
    for (int e = 0; e < edge_count(); ++e) {
        if (!l_edge_[e]) continue;
        for (int v : edges_[e])
            if (!l_vertex_[v])
                bad.push_back("marked edge misses marked vertex " + std::to_string(v));
    }

    // L must avoid the boundary.
    for (int v = 0; v < vertex_count_; ++v)
        if (l_vertex_[v] && boundary_vertex_[v])
            bad.push_back("marked vertex " + std::to_string(v) + " lies on the boundary");
    for (int e = 0; e < edge_count(); ++e)
        if (l_edge_[e] && boundary_edge(e))
            bad.push_back("marked edge (" + std::to_string(edges_[e][0]) + "," +
                          std::to_string(edges_[e][1]) + ") lies on the boundary");

    return bad;
}

void SurfaceComplex::require_valid() const {
    auto bad = validate();
    if (bad.empty()) return;
    std::string msg = "invalid surface complex:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ValidationError(msg);
}

int SurfaceComplex::euler_characteristic() const {
    return vertex_count_ - edge_count() + triangle_count();
}

SurfaceComplex barycentric_subdivision(const SurfaceComplex& s) {
    const int V = s.vertex_count();
    const int E = s.edge_count();
    auto edge_mid = [V](int e) { return V + e; };
    auto tri_mid = [V, E](int t) { return V + E + t; };

    std::vector<Triangle> tris;
    tris.reserve(static_cast<std::size_t>(s.triangle_count()) * 6);
    for (int t = 0; t < s.triangle_count(); ++t) {
        const auto& tr = s.triangles()[t];
        int c = tri_mid(t);
        for (int k = 0; k < 3; ++k) {
            int a = tr[k], b = tr[(k + 1) % 3];
            int m = edge_mid(s.edge_id(a, b));
            tris.push_back({a, m, c});
            tris.push_back({b, m, c});
        }
    }

    SubComplex marked;
    for (int v = 0; v < V; ++v)
        if (s.marked_vertex(v)) marked.vertices.push_back(v);
    for (int e = 0; e < E; ++e) {
        if (!s.marked_edge(e)) continue;
        int m = edge_mid(e);
        marked.vertices.push_back(m);
        marked.edges.push_back({s.edge(e)[0], m});
        marked.edges.push_back({s.edge(e)[1], m});
    }
    for (int t = 0; t < s.triangle_count(); ++t) {
        if (!s.marked_triangle(t)) continue;
        const auto& tr = s.triangles()[t];
        int c = tri_mid(t);
        marked.vertices.push_back(c);
        for (int v : tr) marked.edges.push_back({v, c});
        for (int e : s.triangle_edges(t)) marked.edges.push_back({edge_mid(e), c});
        for (int k = 0; k < 3; ++k) {
            int a = tr[k], b = tr[(k + 1) % 3];
            int m = edge_mid(s.edge_id(a, b));
            marked.triangles.push_back({a, m, c});
            marked.triangles.push_back({b, m, c});
        }
    }

    return SurfaceComplex(V + E + s.triangle_count(), std::move(tris), std::move(marked));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // keep the lowest id as representative
        return true;
    }
};

}  // namespace

std::array<int, 3> absolute_betti(const SurfaceComplex& s) {
    const int V = s.vertex_count();
    const int E = s.edge_count();
    const int F = s.triangle_count();

    UnionFind comp(V);
    for (int e = 0; e < E; ++e) comp.unite(s.edge(e)[0], s.edge(e)[1]);
    std::set<int> roots;
    for (int v = 0; v < V; ++v) roots.insert(comp.find(v));
    int b0 = static_cast<int>(roots.size());

    // Triangle components glued across interior edges; a component with a
    // boundary edge has nonzero boundary, so only closed ones count for b2.
    UnionFind dual(F);
    for (int e = 0; e < E; ++e) {
        const auto& et = s.edge_triangles(e);
        if (et.size() == 2) dual.unite(et[0], et[1]);
    }
    std::set<int> open_roots;
    for (int e = 0; e < E; ++e)
        if (s.boundary_edge(e)) open_roots.insert(dual.find(s.edge_triangles(e)[0]));
    std::set<int> tri_roots;
    for (int t = 0; t < F; ++t) tri_roots.insert(dual.find(t));
    int b2 = static_cast<int>(tri_roots.size() - open_roots.size());

    int b1 = E - (V - b0) - (F - b2);
    internal_check(b1 >= 0, "negative first Betti number");
    return {b0, b1, b2};
}

VertexFan fan_at_vertex(const SurfaceComplex& s, int v) {
    VertexFan fan;
    const auto& ve = s.vertex_edges(v);
    internal_check(!ve.empty(), "fan requested at a vertex with empty link");

    auto other_edge = [&](int tri, int e) {
        const auto& t = s.triangles()[tri];
        for (int k = 0; k < 3; ++k) {
            if (t[k] == v) continue;
            int cand = s.edge_id(v, t[k]);
            if (cand != e) return cand;
        }
        internal_check(false, "triangle fan is locally broken");
        return -1;
    };
    auto tris_at = [&](int e) {
        std::vector<int> out;
        for (int t : s.edge_triangles(e)) {
            const auto& tr = s.triangles()[t];
            if (tr[0] == v || tr[1] == v || tr[2] == v) out.push_back(t);
        }
        return out;
    };

    int start = -1;
    for (int e : ve)
        if (s.boundary_edge(e) && (start < 0 || e < start)) start = e;
    fan.cyclic = start < 0;
    if (start < 0) {
        start = *std::min_element(ve.begin(), ve.end());
    }

    int e = start;
    int prev_tri = -1;
    fan.edges.push_back(e);
    while (true) {
        auto et = tris_at(e);
        int next_tri = -1;
        for (int t : et)
            if (t != prev_tri && (next_tri < 0 || t < next_tri)) next_tri = t;
        if (next_tri < 0) break;  // boundary fan ends
        fan.tris.push_back(next_tri);
        e = other_edge(next_tri, e);
        if (fan.cyclic && e == start) break;
        fan.edges.push_back(e);
        prev_tri = next_tri;
    }
    internal_check(fan.tris.size() == s.vertex_triangles(v).size(),
                   "vertex link is not a single path or cycle");
    return fan;
}

}  // namespace chc
