#include "chc/mesh_colouring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chc/errors.hpp"

namespace chc {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double k, const Vec3& v) { return {k * v.x, k * v.y, k * v.z}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

TriMesh read_off(std::istream& in) {
    auto next_token = [&in]() -> std::string {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw ValidationError("truncated OFF data");
    };

    std::string magic = next_token();
    if (magic != "OFF") throw ValidationError("not an OFF file (header '" + magic + "')");
    long nv = std::stol(next_token());
    long nf = std::stol(next_token());
    next_token();  // edge count, ignored

    if (nv < 0 || nf < 0) throw ValidationError("negative counts in OFF header");
    TriMesh mesh;
    mesh.vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        Vec3 p;
        p.x = std::stod(next_token());
        p.y = std::stod(next_token());
        p.z = std::stod(next_token());
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw ValidationError("non-finite vertex coordinate");
        mesh.vertices.push_back(p);
    }
    for (long i = 0; i < nf; ++i) {
        long arity = std::stol(next_token());
        if (arity != 3) throw ValidationError("face with " + std::to_string(arity) +
                                              " sides; only triangles are supported");
        Triangle t;
        for (int k = 0; k < 3; ++k) {
            long v = std::stol(next_token());
            if (v < 0 || v >= nv) throw ValidationError("face references missing vertex");
            t[k] = static_cast<int>(v);
        }
        mesh.triangles.push_back(t);
    }
    return mesh;
}

TriMesh read_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return read_off(in);
}

void write_off(std::ostream& out, const TriMesh& mesh,
               const std::vector<Colour>* triangle_colours) {
    out.precision(17);
    out << (triangle_colours ? "COFF" : "OFF") << "\n";
    out << mesh.vertices.size() << " " << mesh.triangles.size() << " 0\n";
    for (const auto& p : mesh.vertices) out << p.x << " " << p.y << " " << p.z << "\n";
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& t = mesh.triangles[i];
        out << "3 " << t[0] << " " << t[1] << " " << t[2];
        if (triangle_colours) {
            bool white = (*triangle_colours)[i] == Colour::white;
            out << (white ? " 255 255 255 255" : " 128 128 128 255");
        }
        out << "\n";
    }
}

void validate_mesh(const TriMesh& mesh) {
    int n = static_cast<int>(mesh.vertices.size());
    std::set<std::pair<int, int>> directed;
    for (const auto& t : mesh.triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ValidationError("degenerate triangle");
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= n) throw ValidationError("triangle references missing vertex");
            int u = t[k], v = t[(k + 1) % 3];
            if (!directed.insert({u, v}).second)
                throw NotClosed("directed edge " + std::to_string(u) + "->" + std::to_string(v) +
                                " appears twice; mesh is not consistently oriented");
        }
    }
    for (const auto& [u, v] : directed)
        if (!directed.count({v, u}))
            throw NotClosed("edge " + std::to_string(u) + "-" + std::to_string(v) +
                            " borders only one triangle; mesh is not closed");
}

VectorField constant_field(double x, double y, double z) {
    VectorField f;
    f.components[0] = {{x, {0, 0, 0}}};
    f.components[1] = {{y, {0, 0, 0}}};
    f.components[2] = {{z, {0, 0, 0}}};
    return f;
}

namespace {

double eval_component(const std::vector<FieldTerm>& terms, const Vec3& p) {
    double total = 0;
    for (const auto& t : terms) {
        double value = t.coefficient;
        for (int i = 0; i < t.exponents[0]; ++i) value *= p.x;
        for (int i = 0; i < t.exponents[1]; ++i) value *= p.y;
        for (int i = 0; i < t.exponents[2]; ++i) value *= p.z;
        total += value;
    }
    return total;
}

}  // namespace

Vec3 eval(const VectorField& field, const Vec3& p) {
    return {eval_component(field.components[0], p), eval_component(field.components[1], p),
            eval_component(field.components[2], p)};
}

namespace {

struct SplitPiece {
    Triangle tri;
    Colour colour;
};

// Subdivide one original triangle whose corner signs disagree. The lone
// vertex is the one whose sign differs from the other two.
void split_triangle(const Triangle& t, const std::vector<int>& sign,
                    const std::map<std::pair<int, int>, int>& crossing,
                    std::vector<SplitPiece>& out, std::vector<std::pair<int, int>>& chords) {
    int lone = -1;
    for (int k = 0; k < 3; ++k)
        if (sign[t[k]] != sign[t[(k + 1) % 3]] && sign[t[k]] != sign[t[(k + 2) % 3]]) lone = k;
    if (lone < 0) {
        out.push_back({t, sign[t[0]] < 0 ? Colour::white : Colour::gray});
        return;
    }
    int x = t[lone], y = t[(lone + 1) % 3], z = t[(lone + 2) % 3];
    auto cut = [&crossing](int u, int v) {
        return crossing.at({std::min(u, v), std::max(u, v)});
    };
    int pxy = cut(x, y), pzx = cut(z, x);
    Colour lone_colour = sign[x] < 0 ? Colour::white : Colour::gray;
    Colour pair_colour = sign[y] < 0 ? Colour::white : Colour::gray;
    out.push_back({{x, pxy, pzx}, lone_colour});
    out.push_back({{pxy, y, z}, pair_colour});
    out.push_back({{pxy, z, pzx}, pair_colour});
    chords.push_back({std::min(pxy, pzx), std::max(pxy, pzx)});
}

struct Roots {
    std::vector<int> parent;
    explicit Roots(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

int euler_of_triangles(const TriMesh& split, const std::vector<int>& tris) {
    std::set<int> vs;
    std::set<std::pair<int, int>> es;
    for (int ti : tris) {
        const auto& t = split.triangles[ti];
        for (int k = 0; k < 3; ++k) {
            vs.insert(t[k]);
            es.insert({std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3])});
        }
    }
    return static_cast<int>(vs.size()) - static_cast<int>(es.size()) +
           static_cast<int>(tris.size());
}

}  // namespace

ColouredSurfaceMesh colour_mesh(const TriMesh& mesh, const VectorField& field, double epsilon) {
    if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
    validate_mesh(mesh);

    ColouredSurfaceMesh cm;
    cm.epsilon = epsilon;
    int n = static_cast<int>(mesh.vertices.size());

    // Area-weighted vertex normals: sum of incident face cross products.
    std::vector<Vec3> normal(n);
    for (const auto& t : mesh.triangles) {
        Vec3 f = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                       mesh.vertices[t[2]] - mesh.vertices[t[0]]);
        for (int k = 0; k < 3; ++k) normal[t[k]] = normal[t[k]] + f;
    }

    cm.vertex_sign.resize(n);
    std::vector<int> sign(n);
    for (int v = 0; v < n; ++v) {
        double len = norm(normal[v]);
        if (!(len > 0)) throw ValidationError("vertex " + std::to_string(v) +
                                              " has a degenerate normal");
        double s = dot(eval(field, mesh.vertices[v]), (1.0 / len) * normal[v]);
        if (!std::isfinite(s) || std::abs(s) <= epsilon)
            throw AmbiguousTangency("field is tangent at vertex " + std::to_string(v) +
                                    " (s = " + std::to_string(s) + ")");
        cm.vertex_sign[v] = s;
        sign[v] = s < 0 ? -1 : 1;
    }

    // One interpolated vertex per sign-changing edge, keyed by the sorted
    // edge so both sides agree exactly.
    cm.split.vertices = mesh.vertices;
    std::map<std::pair<int, int>, int> crossing;
    {
        std::set<std::pair<int, int>> edges;
        for (const auto& t : mesh.triangles)
            for (int k = 0; k < 3; ++k)
                edges.insert({std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3])});
        for (const auto& [u, v] : edges) {
            if (sign[u] == sign[v]) continue;
            double su = cm.vertex_sign[u], sv = cm.vertex_sign[v];
            double frac = su / (su - sv);
            crossing[{u, v}] = static_cast<int>(cm.split.vertices.size());
            cm.split.vertices.push_back(mesh.vertices[u] +
                                        frac * (mesh.vertices[v] - mesh.vertices[u]));
        }
    }

    std::vector<SplitPiece> pieces;
    std::vector<std::pair<int, int>> chords;
    for (const auto& t : mesh.triangles) split_triangle(t, sign, crossing, pieces, chords);
    for (const auto& p : pieces) {
        cm.split.triangles.push_back(p.tri);
        cm.triangle_colour.push_back(p.colour);
    }

    // Chain the chords into closed polylines. Every crossing vertex meets
    // exactly two chords because its edge borders exactly two triangles.
    std::map<int, std::vector<int>> link;
    for (const auto& [a, b] : chords) {
        link[a].push_back(b);
        link[b].push_back(a);
    }
    for (const auto& [v, nb] : link)
        internal_check(nb.size() == 2,
                       "crossing vertex " + std::to_string(v) + " meets " +
                           std::to_string(nb.size()) + " chords");
    std::vector<std::vector<int>> loops;
    std::map<int, int> loop_of;
    {
        std::set<int> used;
        for (const auto& [start, nb] : link) {
            if (used.count(start)) continue;
            std::vector<int> loop{start};
            used.insert(start);
            int cur = std::min(nb[0], nb[1]);
            int prev = start;
            while (cur != start) {
                loop.push_back(cur);
                used.insert(cur);
                const auto& two = link.at(cur);
                int nxt = two[0] == prev ? two[1] : two[0];
                prev = cur;
                cur = nxt;
            }
            internal_check(loop.size() >= 3, "degenerate t-curve polyline");
            for (int v : loop) loop_of[v] = static_cast<int>(loops.size());
            loops.push_back(std::move(loop));
        }
    }
    for (const auto& loop : loops) {
        std::vector<Vec3> pts;
        for (int v : loop) pts.push_back(cm.split.vertices[v]);
        cm.polylines.push_back(std::move(pts));
    }

    // Colour-respecting components are the regions; all-edge components are
    // the manifold components.
    int nt = static_cast<int>(cm.split.triangles.size());
    Roots region_roots(nt), comp_roots(nt);
    {
        std::map<std::pair<int, int>, int> owner;
        for (int ti = 0; ti < nt; ++ti) {
            const auto& t = cm.split.triangles[ti];
            for (int k = 0; k < 3; ++k) {
                std::pair<int, int> e{std::min(t[k], t[(k + 1) % 3]),
                                      std::max(t[k], t[(k + 1) % 3])};
                auto it = owner.find(e);
                if (it == owner.end()) {
                    owner[e] = ti;
                    continue;
                }
                comp_roots.unite(it->second, ti);
                if (cm.triangle_colour[it->second] == cm.triangle_colour[ti])
                    region_roots.unite(it->second, ti);
            }
        }
    }

    std::map<int, int> region_index;  // root -> index into cm.regions
    std::map<int, int> comp_index;
    std::vector<std::vector<int>> region_tris;
    for (int ti = 0; ti < nt; ++ti) {
        int r = region_roots.find(ti);
        if (!region_index.count(r)) {
            region_index[r] = static_cast<int>(region_tris.size());
            region_tris.push_back({});
        }
        region_tris[region_index[r]].push_back(ti);
        int c = comp_roots.find(ti);
        if (!comp_index.count(c)) {
            int fresh = static_cast<int>(comp_index.size());
            comp_index[c] = fresh;
        }
    }

    int whites = 0, grays = 0;
    std::vector<std::set<int>> touching(region_tris.size());  // loop ids per region
    {
        std::set<std::pair<int, int>> chord_set(chords.begin(), chords.end());
        for (int ti = 0; ti < nt; ++ti) {
            const auto& t = cm.split.triangles[ti];
            for (int k = 0; k < 3; ++k) {
                std::pair<int, int> e{std::min(t[k], t[(k + 1) % 3]),
                                      std::max(t[k], t[(k + 1) % 3])};
                if (chord_set.count(e))
                    touching[region_index.at(region_roots.find(ti))].insert(loop_of.at(e.first));
            }
        }
    }

    for (std::size_t ri = 0; ri < region_tris.size(); ++ri) {
        MeshRegion region;
        region.colour = cm.triangle_colour[region_tris[ri][0]];
        region.id = (region.colour == Colour::white ? "P" : "Q") +
                    std::to_string(region.colour == Colour::white ? ++whites : ++grays);
        region.euler = euler_of_triangles(cm.split, region_tris[ri]);
        region.component = comp_index.at(comp_roots.find(region_tris[ri][0]));
        for (int loop : touching[ri]) region.boundary.push_back("t" + std::to_string(loop + 1));
        (region.colour == Colour::white ? cm.chi_white : cm.chi_gray) += region.euler;
        cm.regions.push_back(std::move(region));
    }

    // Each t-curve must border exactly one region of each colour.
    for (std::size_t li = 0; li < loops.size(); ++li) {
        int white = 0, gray = 0;
        for (std::size_t ri = 0; ri < region_tris.size(); ++ri)
            if (touching[ri].count(static_cast<int>(li)))
                (cm.regions[ri].colour == Colour::white ? white : gray) += 1;
        internal_check(white == 1 && gray == 1,
                       "t-curve " + std::to_string(li + 1) + " borders " +
                           std::to_string(white) + " white and " + std::to_string(gray) +
                           " gray regions");
    }

    {
        std::set<std::pair<int, int>> all_edges;
        std::set<int> all_vertices;
        for (const auto& t : cm.split.triangles)
            for (int k = 0; k < 3; ++k) {
                all_vertices.insert(t[k]);
                all_edges.insert({std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3])});
            }
        int chi = static_cast<int>(all_vertices.size()) - static_cast<int>(all_edges.size()) + nt;
        internal_check(cm.chi_white + cm.chi_gray == chi,
                       "region Euler characteristics do not add up to the mesh");
    }
    return cm;
}

MeshLedger summarize(const ColouredSurfaceMesh& cm) {
    MeshLedger ledger;
    for (std::size_t li = 0; li < cm.polylines.size(); ++li) {
        CurveSpec c;
        c.id = "t" + std::to_string(li + 1);
        for (const auto& r : cm.regions) {
            if (!std::count(r.boundary.begin(), r.boundary.end(), c.id)) continue;
            (r.colour == Colour::white ? c.white : c.gray) = r.id;
        }
        internal_check(!c.white.empty() && !c.gray.empty(), "t-curve missing a side");
        ledger.curves.push_back(std::move(c));
    }
    for (const auto& r : cm.regions) {
        RegionSpec spec;
        spec.id = r.id;
        spec.colour = r.colour;
        spec.euler = r.euler;
        spec.boundary = r.boundary;
        spec.component = r.component;
        ledger.regions.push_back(std::move(spec));
    }
    return ledger;
}

}  // namespace chc
