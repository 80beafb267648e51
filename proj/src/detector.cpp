#include "chc/detector.hpp"

#include "chc/errors.hpp"

namespace chc {

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::consistent: return "CONSISTENT";
        case VerdictKind::inconsistent_contractibility: return "INCONSISTENT_CONTRACTIBILITY";
        case VerdictKind::forced_additional_structure: return "FORCED_ADDITIONAL_STRUCTURE";
        case VerdictKind::undecided: return "UNDECIDED";
    }
    return "?";
}

namespace {

// An original t-curve whose class is plus or minus the bare core generator.
const TCurve* parallel_witness(const ColouredManifold& base, int core_index) {
    for (const auto& c : base.curves) {
        bool hit = true;
        for (std::size_t j = 0; j < c.klass.size(); ++j) {
            std::int64_t want = static_cast<int>(j) == core_index ? 1 : 0;
            std::int64_t have = c.klass[j] < 0 ? -c.klass[j] : c.klass[j];
            if (have != want) {
                hit = false;
                break;
            }
        }
        if (hit) return &c;
    }
    return nullptr;
}

void require_core(const ColouredManifold& base) {
    for (const auto& g : base.generators)
        if (g.kind == GeneratorKind::core) return;
    throw ValidationError("scenario base has no core generator");
}

}  // namespace

Verdict check_programme(const Scenario& scenario) {
    if (!scenario.programme) throw ValidationError("scenario carries no programme");
    require_core(scenario.base);

    RunResult run = run_programme(scenario.base, *scenario.programme);
    const ColouredManifold& final_m = run.manifold;
    AbelianGroup h1 = homology_of(final_m);

    Verdict v;
    v.h1 = h1.to_string();
    bool all_zero = true;
    for (const auto& g : final_m.generators) {
        if (g.kind != GeneratorKind::core) continue;
        GroupElement e = class_of(final_m, g.name);
        bool zero = e.is_zero();
        v.classes.push_back({g.name, e.to_string(), zero});
        if (!zero) all_zero = false;
    }

    if (scenario.assertions.contractible && !all_zero) {
        v.kind = VerdictKind::inconsistent_contractibility;
        v.rule = "contractibility-obstruction";
        return v;
    }

    if (all_zero) {
        // Every nullhomologous core is realised by one of the original
        // t-curves, which stays parallel to the link on either side.
        for (const auto& g : scenario.base.generators) {
            if (g.kind != GeneratorKind::core) continue;
            const TCurve* wit =
                parallel_witness(scenario.base, scenario.base.generator_index(g.name));
            internal_check(wit != nullptr,
                           "no boundary-parallel t-curve realises core " + g.name);
            v.witnesses.push_back({g.name, wit->id, wit->white, wit->gray});
        }
        if (scenario.assertions.nontrivial_link) {
            if (white_link_trivial_only(final_m)) {
                v.kind = VerdictKind::forced_additional_structure;
                v.rule = "disk-rule-white";
                return v;
            }
            if (gray_link_trivial_only(final_m)) {
                v.kind = VerdictKind::forced_additional_structure;
                v.rule = "disk-rule-gray";
                return v;
            }
        }
    }

    v.kind = VerdictKind::consistent;
    v.rule = "no-objection";
    return v;
}

Verdict check_target(const ColouredManifold& colouring, bool declared_h1_trivial,
                     const Assertions& assertions) {
    Verdict v;
    v.h1 = declared_h1_trivial ? "declared trivial" : "undeclared";
    if (declared_h1_trivial && assertions.contractible && assertions.nontrivial_link) {
        if (white_link_trivial_only(colouring)) {
            v.kind = VerdictKind::forced_additional_structure;
            v.rule = "target-disk-rule-white";
            return v;
        }
        if (gray_link_trivial_only(colouring)) {
            v.kind = VerdictKind::forced_additional_structure;
            v.rule = "target-disk-rule-gray";
            return v;
        }
    }
    v.kind = VerdictKind::undecided;
    v.rule = "out-of-scope";
    return v;
}

Verdict evaluate(const Scenario& scenario) {
    require_core(scenario.base);
    if (!scenario.programme && !scenario.target)
        throw ValidationError("scenario carries neither a programme nor a target");
    if (scenario.programme) return check_programme(scenario);
    return check_target(scenario.target->colouring, scenario.target->h1_trivial,
                        scenario.assertions);
}

}  // namespace chc
