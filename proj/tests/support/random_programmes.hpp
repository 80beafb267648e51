#pragma once

#include <random>

#include "chc/coloured.hpp"

namespace chc::testing {

struct ProgrammeCase {
    ColouredManifold base;
    HandleProgramme programme;
};

// A base of one to three solid tori (multipliers 0 through 3, mixed curve
// counts) plus sometimes a block, with a valid programme of at most eight
// handles (1-handles first).  Every step references curves by the ids the
// real attachment operations produce, so the case replays cleanly.
ProgrammeCase random_programme_case(std::mt19937_64& rng);

}  // namespace chc::testing
