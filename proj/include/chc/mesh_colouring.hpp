#pragma once

#include "chc/coloured.hpp"
#include "chc/surface.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace chc {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    bool operator==(const Vec3&) const = default;
};

Vec3 operator+(const Vec3&, const Vec3&);
Vec3 operator-(const Vec3&, const Vec3&);
Vec3 operator*(double, const Vec3&);
Vec3 cross(const Vec3&, const Vec3&);
double dot(const Vec3&, const Vec3&);
double norm(const Vec3&);

// Closed, consistently oriented triangle mesh embedded in space.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
};

TriMesh read_off(std::istream& in);
TriMesh read_off_file(const std::string& path);
void write_off(std::ostream& out, const TriMesh& mesh,
               const std::vector<Colour>* triangle_colours = nullptr);

// Throws NotClosed unless every directed edge appears exactly once together
// with its reverse.
void validate_mesh(const TriMesh& mesh);

struct FieldTerm {
    double coefficient = 0;
    std::array<int, 3> exponents{0, 0, 0};
};

// Three polynomial components; a constant field is three one-term components.
struct VectorField {
    std::array<std::vector<FieldTerm>, 3> components;
};

VectorField constant_field(double x, double y, double z);
Vec3 eval(const VectorField& field, const Vec3& p);

struct MeshRegion {
    std::string id;
    Colour colour = Colour::white;
    int euler = 0;
    std::vector<std::string> boundary;
    int component = 0;
};

struct ColouredSurfaceMesh {
    TriMesh split;                              // every triangle single-coloured
    std::vector<Colour> triangle_colour;        // per split triangle
    std::vector<double> vertex_sign;            // per original vertex
    std::vector<std::vector<Vec3>> polylines;   // closed; first point not repeated
    std::vector<MeshRegion> regions;
    int chi_white = 0;
    int chi_gray = 0;
    double epsilon = 0;
};

// Classifies the boundary by the sign of field . outward normal: negative is
// the entry (white) side, positive the exit (gray) side. Triangles straddling
// the zero set are split along the interpolated chord and the chords are
// chained into closed t-curve polylines.
ColouredSurfaceMesh colour_mesh(const TriMesh& mesh, const VectorField& field,
                                double epsilon = 1e-9);

// Region ledger of the colouring, ready to adopt as coloured-manifold input
// once homology classes are supplied. Curve ids follow the polyline order.
struct MeshLedger {
    std::vector<CurveSpec> curves;    // classes left empty
    std::vector<RegionSpec> regions;
};

MeshLedger summarize(const ColouredSurfaceMesh& cm);

}  // namespace chc
