#pragma once

#include <optional>
#include <vector>

#include "chc/surface.hpp"

namespace chc {

// Ranks of H_*(S - L, dS) over GF(2).
struct RelativeRanks {
    int r0 = 0;
    int r1 = 0;
    int r2 = 0;
    bool operator==(const RelativeRanks&) const = default;
};

// The complement complex C: all simplices of a refined copy of S spanned by
// vertices outside the closed star of L.  The boundary of S is marked inside
// C; (C, marked part) computes the homology of the pair (S - L, dS).
struct Complement {
    SurfaceComplex ambient;  // refined surface, still carries L
    std::vector<char> c_vertex, c_edge, c_triangle;
    std::vector<char> m_vertex, m_edge;
    std::vector<int> component;             // per vertex, -1 outside C
    std::vector<char> component_isolated;   // component meets no marked vertex
    RelativeRanks ranks;
};

// Two barycentric subdivisions, then the complement of the star of L.
Complement complement_complex(const SurfaceComplex& s);

// Per-vertex flags for the closed star of L: L's vertices and their
// neighbours.  The complement is spanned by the vertices left unflagged.
std::vector<char> pattern_star_vertices(const SurfaceComplex& s);

// The same bookkeeping on a surface that is already sufficiently refined
// (the boundary must stay clear of the star of L).
Complement mark_complement(SurfaceComplex ambient);

RelativeRanks relative_betti(const SurfaceComplex& s);

// Lowest vertex id lying in a complement component that meets no boundary;
// empty when r0 == 0.
std::optional<int> find_isolated_component(const Complement& c);

// A simple curve in C with nonzero class in H_1(S - L, dS).  Arcs run between
// boundary vertices through the interior.  A closed curve comes with a detour
// to the boundary (empty when the curve is already based at a boundary
// vertex); cutting along curve plus detour is the move that lowers r1.
struct RelativeCurve {
    enum class Kind { arc, closed };
    Kind kind = Kind::arc;
    std::vector<int> path;         // arc: v0..vk; closed: cycle, no repeated front
    std::vector<int> detour;       // closed only: path[0]', u.., w with w on the boundary
    std::vector<int> certificate;  // cocycle edge ids pairing oddly with the curve
};

// Requires r0 == 0; throws NoCurve when r1 == 0.
RelativeCurve find_relative_curve(const Complement& c);

// Checks that the certificate is a relative cocycle of C pairing oddly with
// the curve, which proves the curve's class nonzero.
bool verify_curve_certificate(const Complement& c, const RelativeCurve& curve);

}  // namespace chc
