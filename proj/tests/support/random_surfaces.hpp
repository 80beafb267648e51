#pragma once

#include <random>

#include "chc/surface.hpp"

namespace chc::testing {

// A valid marked surface of at most max_triangles triangles: one to three
// components drawn from the canonical templates, roughened by barycentric and
// stellar subdivisions, with patterns (points, interior edges or triangles)
// marked away from the boundary.  At least one component carries a pattern;
// some are deliberately left bare so trimming has components to discard.
SurfaceComplex random_marked_surface(std::mt19937_64& rng, int max_triangles = 500);

}  // namespace chc::testing
