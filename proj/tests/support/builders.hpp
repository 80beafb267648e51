#pragma once

#include <cstdint>

#include "chc/coloured.hpp"
#include "chc/mesh_colouring.hpp"
#include "chc/surface.hpp"

namespace chc::testing {

// Canonical complexes. Every builder accepts an optional marked subcomplex.
SurfaceComplex octahedron(SubComplex marked = {});
SurfaceComplex minimal_torus(SubComplex marked = {});        // 7 vertices
SurfaceComplex grid_torus(int n, int m, SubComplex marked = {});
SurfaceComplex klein_grid(SubComplex marked = {});           // 16 vertices
SurfaceComplex disk_fan(int rim = 6, SubComplex marked = {});
SurfaceComplex annulus_grid(SubComplex marked = {});         // 12 vertices

// 6x6 grid torus with L the meridian band between rings j=0 and j=1; the
// complement is a single enclosed annulus with relative ranks (1,1,0).
SurfaceComplex torus_with_annulus();

// Marked subcomplex consisting of a single vertex.
SubComplex point_pattern(int v);

// Disjoint union; b's vertices are shifted past a's and both patterns kept.
SurfaceComplex disjoint_union(const SurfaceComplex& a, const SurfaceComplex& b);

// Ledger fixtures.  A solid torus around a knot whose single t-curve t1 has
// class m times the core c and bounds the white disk W1 (gray G1 takes the
// rest of the boundary), and the hourglass torus with two parallel class-c
// curves t1, t2 separating two chi 0 regions.
ColouredManifold one_curve_torus(std::int64_t m = 0);
ColouredManifold hourglass_torus();

// Meshes for the colouring pipeline, positioned so the constant field
// (0,0,-1) is nowhere tangent (except on the box, which is tangent by
// design on its side faces).
TriMesh icosphere(int level);
TriMesh torus_mesh(int nu, int nv);
TriMesh box_mesh();

}  // namespace chc::testing
