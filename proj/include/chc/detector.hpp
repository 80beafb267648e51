#pragma once

#include "chc/coloured.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chc {

struct Assertions {
    bool contractible = false;
    bool nontrivial_link = false;
};

// A target colouring is a region ledger for the would-be ambient manifold
// together with a declaration about its first homology; nothing about it is
// recomputed, which is why the declaration travels next to the ledger.
struct TargetSummary {
    ColouredManifold colouring;
    bool h1_trivial = false;
};

struct Scenario {
    ColouredManifold base;
    std::optional<HandleProgramme> programme;
    std::optional<TargetSummary> target;
    Assertions assertions;
};

enum class VerdictKind {
    consistent,
    inconsistent_contractibility,
    forced_additional_structure,
    undecided,
};

std::string to_string(VerdictKind k);

struct CoreClassEvidence {
    std::string core;
    std::string value;
    bool zero = false;

    bool operator==(const CoreClassEvidence&) const = default;
};

// A boundary-parallel copy of one core: the t-curve realising it and the two
// regions it can be pushed into.
struct LinkWitness {
    std::string core;
    std::string curve;
    std::string white_region;
    std::string gray_region;

    bool operator==(const LinkWitness&) const = default;
};

struct Verdict {
    VerdictKind kind = VerdictKind::undecided;
    std::string rule;
    std::string h1;
    std::vector<CoreClassEvidence> classes;
    std::vector<LinkWitness> witnesses;
};

Verdict check_programme(const Scenario& scenario);
Verdict check_target(const ColouredManifold& colouring, bool declared_h1_trivial,
                     const Assertions& assertions);

// Dispatches on what the scenario carries; a programme wins when both a
// programme and a target are present.
Verdict evaluate(const Scenario& scenario);

}  // namespace chc
