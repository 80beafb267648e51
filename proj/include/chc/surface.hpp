#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace chc {

using Triangle = std::array<int, 3>;

// A marked subcomplex (the pattern L): must be closed under faces and stay
// away from the boundary of the ambient surface.
struct SubComplex {
    std::vector<int> vertices;
    std::vector<std::array<int, 2>> edges;
    std::vector<Triangle> triangles;

    bool empty() const { return vertices.empty() && edges.empty() && triangles.empty(); }
};

// Pure simplicial 2-complex required (by validate) to be a surface with
// boundary: every edge borders one or two triangles and every vertex link is
// a single path or cycle.  Carries the marked subcomplex L.
class SurfaceComplex {
public:
    SurfaceComplex() = default;
    SurfaceComplex(int vertex_count, std::vector<Triangle> tris, SubComplex marked = {});

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }

    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::array<int, 2>& edge(int e) const { return edges_[e]; }
    int edge_id(int a, int b) const;  // -1 if absent
    const std::vector<int>& edge_triangles(int e) const { return edge_tris_[e]; }
    const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }
    const std::vector<int>& vertex_triangles(int v) const { return vertex_tris_[v]; }
    std::array<int, 3> triangle_edges(int t) const;

    bool boundary_edge(int e) const { return edge_tris_[e].size() == 1; }
    bool boundary_vertex(int v) const { return boundary_vertex_[v]; }

    bool marked_vertex(int v) const { return l_vertex_[v]; }
    bool marked_edge(int e) const { return l_edge_[e]; }
    bool marked_triangle(int t) const { return l_triangle_[t]; }
    SubComplex marked() const;
    bool marked_empty() const;

    // Violations as data; empty means the complex is a valid marked surface.
    std::vector<std::string> validate() const;
    void require_valid() const;  // throws ValidationError with the violation list

    int euler_characteristic() const;

private:
    int vertex_count_ = 0;
    std::vector<Triangle> triangles_;
    std::vector<std::array<int, 2>> edges_;           // sorted pairs, lexicographic order
    std::vector<std::vector<int>> edge_tris_;
    std::vector<std::vector<int>> vertex_edges_;
    std::vector<std::vector<int>> vertex_tris_;
    std::vector<char> boundary_vertex_;
    std::vector<char> l_vertex_, l_edge_, l_triangle_;
};

// One barycentric subdivision; L is subdivided along.  New vertex ids:
// originals, then edge barycenters (V + edge id), then triangle barycenters.
SurfaceComplex barycentric_subdivision(const SurfaceComplex& s);

// GF(2) Betti numbers (b0, b1, b2) of the complex itself.
std::array<int, 3> absolute_betti(const SurfaceComplex& s);

// Ordered triangle fan around a vertex.  For an interior vertex the fan is
// cyclic: edges[j], tris[j], edges[j+1 mod n].  For a boundary vertex it is a
// path: edges.size() == tris.size() + 1, first and last edges on the boundary.
struct VertexFan {
    std::vector<int> edges;
    std::vector<int> tris;
    bool cyclic = false;
};
VertexFan fan_at_vertex(const SurfaceComplex& s, int v);

}  // namespace chc
