#pragma once

#include <string>
#include <vector>

#include "chc/complement.hpp"
#include "chc/surface.hpp"

namespace chc {

// Cut a surface open along a vertex-simple path (open == endpoints on the
// boundary, interior vertices interior) or cycle (closed == true; at most the
// front vertex may lie on the boundary).  Path edges must be interior edges
// and the path must stay off L.  Vertices keep their ids on one side of the
// cut; copies records every id each path vertex turned into.
struct SlitResult {
    SurfaceComplex surface;
    std::vector<std::vector<int>> copies;  // per path position
};
SlitResult slit_path(const SurfaceComplex& s, const std::vector<int>& path, bool closed);

// Remove the open star of an interior vertex whose star touches neither L
// nor the boundary.  Remaining vertices are renumbered in order; the returned
// map sends old ids to new ones (-1 for the removed vertex).
struct DiskRemoval {
    SurfaceComplex surface;
    std::vector<int> vertex_map;
};
DiskRemoval remove_disk(const SurfaceComplex& s, int z);

// Cut out a neighbourhood of a curve found by find_relative_curve: an arc is
// slit directly, a closed curve is slit and then opened to the boundary
// along its detour.
SurfaceComplex cut_strip(const SurfaceComplex& s, const RelativeCurve& curve);

// Drop the connected component containing the given vertex; remaining
// vertices are renumbered in order.
SurfaceComplex discard_component(const SurfaceComplex& s, int v);

struct TrimStep {
    enum class Kind { remove_disk, cut_strip, discard_component };
    Kind kind;
    // Witness in the coordinates of the working surface at that step: the
    // removed vertex, the curve path (with detour appended after -1 when
    // present), or the lowest vertex of the discarded component.
    std::vector<int> witness;
    RelativeRanks before, after;
};

std::string to_string(TrimStep::Kind k);

struct TrimReport {
    RelativeRanks initial;
    std::vector<TrimStep> steps;
    SurfaceComplex result;  // the frame: working surface after all steps
};

// Full trimming pass: disk removals while r0 > 0, strip cuts while r1 > 0,
// then one sweep discarding components missing L.  Each step is checked to
// lower exactly its own rank; the result is checked to be a disjoint union
// of once-punctured disks around L.
TrimReport trim(const SurfaceComplex& s);

}  // namespace chc
