#pragma once

#include "chc/coloured.hpp"
#include "chc/detector.hpp"
#include "chc/mesh_colouring.hpp"
#include "chc/surface.hpp"
#include "chc/trim.hpp"

#include <array>
#include <string>

namespace chc {

// All parsers throw ValidationError on malformed input; all dumps are
// deterministic (keys sorted, two-space indent, trailing newline).

SurfaceComplex parse_complex(const std::string& text);
std::string dump_complex(const SurfaceComplex& s);

ColouredManifold parse_manifold(const std::string& text);
std::string dump_manifold(const ColouredManifold& m);

HandleProgramme parse_programme(const std::string& text);
std::string dump_programme(const HandleProgramme& p);

Scenario parse_scenario(const std::string& text);
std::string dump_verdict(const Verdict& v);

std::string dump_trim_report(const TrimReport& report);
std::string dump_trace(const RunResult& run);

VectorField parse_field(const std::string& text);
std::string dump_coloured_mesh(const ColouredSurfaceMesh& cm);

std::string dump_betti(const std::array<int, 3>& betti);
std::string dump_betti_pair(const std::array<int, 3>& betti, const RelativeRanks& relative);

}  // namespace chc
