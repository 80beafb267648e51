#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chc/abelian.hpp"
#include "chc/integer_matrix.hpp"

namespace chc {

enum class GeneratorKind { core, block, handle };
enum class Colour { white, gray };

std::string to_string(GeneratorKind k);
std::string to_string(Colour c);

struct Generator {
    std::string name;
    GeneratorKind kind = GeneratorKind::core;
};

// A boundary circle where white meets gray, carrying its integer homology
// class over the manifold's current generators.
struct TCurve {
    std::string id;
    std::vector<std::int64_t> klass;
    int component = 0;
    std::string white, gray;  // region ids on each side
};

struct Region {
    std::string id;
    Colour colour = Colour::white;
    int euler = 0;
    std::vector<std::string> boundary;  // t-curve ids; empty for closed regions
    int component = 0;
};

struct Attachment {
    bool two_handle = false;
    std::string a, b;  // feet; b empty for a 2-handle
};

// Symbolic coloured manifold: H1 presentation plus the t-curve and region
// ledgers.  Values are immutable under the attachment operations, which
// return updated copies.
struct ColouredManifold {
    std::vector<Generator> generators;
    IntMatrix relations{0, 0};  // rows are relators over the generators
    std::vector<TCurve> curves;
    std::vector<Region> regions;
    std::set<int> components;
    std::vector<Attachment> history;
    int curve_serial = 1;   // feeds fresh t<N> ids
    int handle_serial = 1;  // feeds fresh h<N> generator names

    int generator_index(const std::string& name) const;  // -1 if absent
    const TCurve* find_curve(const std::string& id) const;
    const Region* find_region(const std::string& id) const;
};

struct CurveSpec {
    std::string id;
    std::map<std::string, std::int64_t> klass;
    std::string white, gray;
};

struct RegionSpec {
    std::string id;
    Colour colour = Colour::white;
    int euler = 0;
    std::vector<std::string> boundary;
    int component = -1;  // closed regions of a multi-part manifold need one
};

// Throws ValidationError (NameClash, UnknownCurve, BadEuler, ...) when the
// ledgers are inconsistent; resolves region components as a side effect.
void validate_manifold(ColouredManifold& m);

// Solid torus with core generator c: every nonzero t-curve class must be a
// common multiple +-m*c.
ColouredManifold solid_torus(const std::string& core_name,
                             const std::vector<CurveSpec>& curves,
                             const std::vector<RegionSpec>& regions);

// Generic block with free H1 of the given rank (generators prefix1..prefixN).
ColouredManifold block(int free_rank, const std::vector<CurveSpec>& curves,
                       const std::vector<RegionSpec>& regions,
                       const std::string& prefix = "b");

ColouredManifold disjoint_union(const std::vector<ColouredManifold>& parts);

// Coloured 1-handle with feet on two t-curves (possibly the same curve).
// Distinct curves merge into one of class [t1]+[t2]; a repeated curve splits
// into classes h and [t]-h with a fresh handle generator h.  White regions at
// the feet merge (or lose 1 from their Euler characteristic); likewise gray.
ColouredManifold attach_1_handle(const ColouredManifold& m, const std::string& foot_a,
                                 const std::string& foot_b);

// Coloured 2-handle along a t-curve: kills its class (new relation row),
// removes the curve and caps both adjacent regions (chi += 1 each).
ColouredManifold attach_2_handle(const ColouredManifold& m, const std::string& curve);

struct ProgrammeStep {
    bool two_handle = false;
    std::string a, b;
};

struct HandleProgramme {
    std::vector<ProgrammeStep> steps;
};

struct LedgerSummary {
    int generators = 0;
    int relations = 0;
    int curves = 0;
    int chi_white = 0;
    int chi_gray = 0;
    bool operator==(const LedgerSummary&) const = default;
};

LedgerSummary summarize(const ColouredManifold& m);

struct RunResult {
    ColouredManifold manifold;
    std::vector<LedgerSummary> trace;  // initial state, then one entry per step
};

// Applies the steps in order; 1-handles must all precede 2-handles.
RunResult run_programme(const ColouredManifold& m, const HandleProgramme& programme);

AbelianGroup homology_of(const ColouredManifold& m);

GroupElement class_of(const ColouredManifold& m, const std::string& generator);
GroupElement class_of(const ColouredManifold& m, const std::vector<std::int64_t>& vec);

// True when that colour's regions can only carry trivial links: every region
// is a disk (chi 1, one boundary curve) or a sphere (chi 2, closed).
bool white_link_trivial_only(const ColouredManifold& m);
bool gray_link_trivial_only(const ColouredManifold& m);

}  // namespace chc
