#include "chc/coloured.hpp"

#include <algorithm>
#include <array>

#include "chc/errors.hpp"

namespace chc {

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::core: return "core";
        case GeneratorKind::block: return "block";
        case GeneratorKind::handle: return "handle";
    }
    return "?";
}

std::string to_string(Colour c) { return c == Colour::white ? "white" : "gray"; }

int ColouredManifold::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    return -1;
}

const TCurve* ColouredManifold::find_curve(const std::string& id) const {
    for (const auto& c : curves)
        if (c.id == id) return &c;
    return nullptr;
}

const Region* ColouredManifold::find_region(const std::string& id) const {
    for (const auto& r : regions)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw ValidationError("t-curve class coefficient overflow");
    return out;
}

std::vector<std::int64_t> add_classes(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
    internal_check(a.size() == b.size(), "class vectors of different widths");
    std::vector<std::int64_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
    return out;
}

void append_generator(ColouredManifold& m, const std::string& name, GeneratorKind kind) {
    m.generators.push_back({name, kind});
    for (auto& c : m.curves) c.klass.push_back(0);
    IntMatrix wider(m.relations.rows(), m.relations.cols() + 1);
    for (std::size_t r = 0; r < m.relations.rows(); ++r)
        for (std::size_t c = 0; c < m.relations.cols(); ++c) wider.at(r, c) = m.relations.at(r, c);
    m.relations = std::move(wider);
}

void append_relation(ColouredManifold& m, const std::vector<std::int64_t>& row) {
    internal_check(row.size() == m.relations.cols(), "relation width mismatch");
    IntMatrix taller(m.relations.rows() + 1, m.relations.cols());
    for (std::size_t r = 0; r < m.relations.rows(); ++r)
        for (std::size_t c = 0; c < m.relations.cols(); ++c)
            taller.at(r, c) = m.relations.at(r, c);
    for (std::size_t c = 0; c < row.size(); ++c)
        taller.at(m.relations.rows(), c) = row[c];
    m.relations = std::move(taller);
}

std::string fresh_curve_id(ColouredManifold& m) {
    while (true) {
        std::string cand = "t" + std::to_string(m.curve_serial++);
        if (!m.find_curve(cand)) return cand;
    }
}

std::string fresh_handle_name(ColouredManifold& m) {
    while (true) {
        std::string cand = "h" + std::to_string(m.handle_serial++);
        if (m.generator_index(cand) < 0) return cand;
    }
}

TCurve& curve_ref(ColouredManifold& m, const std::string& id) {
    for (auto& c : m.curves)
        if (c.id == id) return c;
    throw InternalError("t-curve vanished: " + id);
}

Region& region_ref(ColouredManifold& m, const std::string& id) {
    for (auto& r : m.regions)
        if (r.id == id) return r;
    throw InternalError("region vanished: " + id);
}

void erase_curve(ColouredManifold& m, const std::string& id) {
    std::erase_if(m.curves, [&](const TCurve& c) { return c.id == id; });
}

void remove_from_boundary(Region& r, const std::string& id) {
    std::erase(r.boundary, id);
}

void revalidate(ColouredManifold& m, const char* op) {
    try {
        validate_manifold(m);
    } catch (const ValidationError& e) {
        throw InternalError(std::string(op) + " broke the ledger: " + e.what());
    }
}

ColouredManifold build_manifold(std::vector<Generator> gens,
                                const std::vector<CurveSpec>& curves,
                                const std::vector<RegionSpec>& regions) {
    ColouredManifold m;
    m.generators = std::move(gens);
    m.relations = IntMatrix(0, m.generators.size());
    m.components = {0};
    for (const auto& spec : curves) {
        TCurve c;
        c.id = spec.id;
        c.klass.assign(m.generators.size(), 0);
        for (const auto& [name, coeff] : spec.klass) {
            int idx = m.generator_index(name);
            if (idx < 0) throw UnknownGenerator("t-curve " + spec.id + " uses unknown generator " + name);
            c.klass[idx] = coeff;
        }
        c.component = 0;
        c.white = spec.white;
        c.gray = spec.gray;
        m.curves.push_back(std::move(c));
    }
    for (const auto& spec : regions) {
        if (spec.component > 0)
            throw ValidationError("region " + spec.id + " names component " +
                                  std::to_string(spec.component) +
                                  " in a one-component manifold");
        m.regions.push_back({spec.id, spec.colour, spec.euler, spec.boundary, 0});
    }
    return m;
}

}  // namespace

void validate_manifold(ColouredManifold& m) {
    {
        std::set<std::string> names;
        for (const auto& g : m.generators)
            if (!names.insert(g.name).second)
                throw NameClash("duplicate generator name " + g.name);
    }
    if (m.relations.cols() != m.generators.size())
        throw ValidationError("relation width disagrees with the generator count");
    {
        std::set<std::string> ids;
        for (const auto& c : m.curves)
            if (!ids.insert(c.id).second) throw NameClash("duplicate t-curve id " + c.id);
    }
    {
        std::set<std::string> ids;
        for (const auto& r : m.regions)
            if (!ids.insert(r.id).second) throw NameClash("duplicate region id " + r.id);
    }

    for (const auto& r : m.regions) {
        std::set<std::string> seen;
        for (const auto& id : r.boundary) {
            if (!seen.insert(id).second)
                throw ValidationError("region " + r.id + " lists t-curve " + id + " twice");
            const TCurve* c = m.find_curve(id);
            if (!c) throw ValidationError("region " + r.id + " bounds missing t-curve " + id);
            const std::string& back = r.colour == Colour::white ? c->white : c->gray;
            if (back != r.id)
                throw ValidationError("region " + r.id + " lists t-curve " + id +
                                      " which does not name it back");
        }
    }

    for (const auto& c : m.curves) {
        if (c.klass.size() != m.generators.size())
            throw ValidationError("t-curve " + c.id + " has a class of the wrong width");
        if (!m.components.count(c.component))
            throw ValidationError("t-curve " + c.id + " sits in unknown component " +
                                  std::to_string(c.component));
        const Region* w = m.find_region(c.white);
        const Region* g = m.find_region(c.gray);
        if (!w || w->colour != Colour::white)
            throw ValidationError("t-curve " + c.id + " has no white region " + c.white);
        if (!g || g->colour != Colour::gray)
            throw ValidationError("t-curve " + c.id + " has no gray region " + c.gray);
        if (!std::count(w->boundary.begin(), w->boundary.end(), c.id) ||
            !std::count(g->boundary.begin(), g->boundary.end(), c.id))
            throw ValidationError("t-curve " + c.id + " is missing from a region boundary");
    }

    // Resolve region components from their boundary curves; closed regions
    // keep their declared component.
    for (auto& r : m.regions) {
        if (!r.boundary.empty()) {
            int comp = m.find_curve(r.boundary.front())->component;
            for (const auto& id : r.boundary)
                if (m.find_curve(id)->component != comp)
                    throw ValidationError("region " + r.id + " spans two components");
            r.component = comp;
        }
        if (!m.components.count(r.component))
            throw ValidationError("region " + r.id + " sits in unknown component " +
                                  std::to_string(r.component));
    }

    // chi parity per component: white and gray totals must both match the
    // t-curve count (boundary-count parity of orientable surfaces).
    for (int comp : m.components) {
        long white = 0, gray = 0, count = 0;
        for (const auto& r : m.regions)
            if (r.component == comp) (r.colour == Colour::white ? white : gray) += r.euler;
        for (const auto& c : m.curves)
            if (c.component == comp) ++count;
        if ((white - count) % 2 != 0 || (gray - count) % 2 != 0)
            throw BadEuler("component " + std::to_string(comp) +
                           " has Euler characteristics inconsistent with its t-curve count");
    }
}

ColouredManifold solid_torus(const std::string& core_name,
                             const std::vector<CurveSpec>& curves,
                             const std::vector<RegionSpec>& regions) {
    for (const auto& spec : curves)
        for (const auto& [name, coeff] : spec.klass)
            if (name != core_name && coeff != 0)
                throw Lemma62Violation("t-curve " + spec.id + " uses generator " + name +
                                       " other than the core");
    ColouredManifold m =
        build_manifold({{core_name, GeneratorKind::core}}, curves, regions);

    std::set<std::int64_t> magnitudes;
    for (const auto& c : m.curves)
        if (c.klass[0] != 0)
            magnitudes.insert(c.klass[0] < 0 ? -c.klass[0] : c.klass[0]);
    if (magnitudes.size() > 1)
        throw Lemma62Violation("nonzero t-curve classes are not a single multiple of the core");

    int chi = 0;
    for (const auto& r : m.regions) chi += r.euler;
    if (chi != 0)
        throw BadEuler("solid torus boundary needs total Euler characteristic 0, got " +
                       std::to_string(chi));
    validate_manifold(m);
    return m;
}

ColouredManifold block(int free_rank, const std::vector<CurveSpec>& curves,
                       const std::vector<RegionSpec>& regions, const std::string& prefix) {
    if (free_rank < 0) throw ValidationError("negative block rank");
    std::vector<Generator> gens;
    for (int i = 1; i <= free_rank; ++i)
        gens.push_back({prefix + std::to_string(i), GeneratorKind::block});
    ColouredManifold m = build_manifold(std::move(gens), curves, regions);

    int chi = 0;
    for (const auto& r : m.regions) chi += r.euler;
    if (chi % 2 != 0)
        throw BadEuler("block boundary has odd total Euler characteristic " +
                       std::to_string(chi));
    validate_manifold(m);
    return m;
}

ColouredManifold disjoint_union(const std::vector<ColouredManifold>& parts) {
    ColouredManifold out;
    std::size_t total_gens = 0, total_rows = 0;
    for (const auto& p : parts) {
        total_gens += p.generators.size();
        total_rows += p.relations.rows();
    }
    out.relations = IntMatrix(total_rows, total_gens);

    std::set<std::string> gen_names, curve_ids, region_ids;
    std::size_t gen_offset = 0, row_offset = 0;
    int comp_offset = 0;
    for (const auto& p : parts) {
        for (const auto& g : p.generators) {
            if (!gen_names.insert(g.name).second)
                throw NameClash("generator " + g.name + " appears in two parts");
            out.generators.push_back(g);
        }
        for (std::size_t r = 0; r < p.relations.rows(); ++r)
            for (std::size_t c = 0; c < p.relations.cols(); ++c)
                out.relations.at(row_offset + r, gen_offset + c) = p.relations.at(r, c);

        std::map<int, int> comp_map;
        for (int comp : p.components) {
            comp_map[comp] = comp_offset + static_cast<int>(comp_map.size());
            out.components.insert(comp_map[comp]);
        }
        for (const auto& c : p.curves) {
            if (!curve_ids.insert(c.id).second)
                throw NameClash("t-curve " + c.id + " appears in two parts");
            TCurve moved = c;
            moved.klass.assign(total_gens, 0);
            for (std::size_t i = 0; i < c.klass.size(); ++i)
                moved.klass[gen_offset + i] = c.klass[i];
            moved.component = comp_map.at(c.component);
            out.curves.push_back(std::move(moved));
        }
        for (const auto& r : p.regions) {
            if (!region_ids.insert(r.id).second)
                throw NameClash("region " + r.id + " appears in two parts");
            Region moved = r;
            moved.component = comp_map.at(r.component);
            out.regions.push_back(std::move(moved));
        }
        out.history.insert(out.history.end(), p.history.begin(), p.history.end());
        out.curve_serial = std::max(out.curve_serial, p.curve_serial);
        out.handle_serial = std::max(out.handle_serial, p.handle_serial);
        gen_offset += p.generators.size();
        row_offset += p.relations.rows();
        comp_offset += static_cast<int>(p.components.size());
    }
    validate_manifold(out);
    return out;
}

namespace {

// Merge the two regions of one colour under the feet of a 1-handle, or lower
// the shared region's chi when the feet agree; returns the surviving id.
std::string merge_foot_regions(ColouredManifold& m, const std::string& ra,
                               const std::string& rb, Colour colour,
                               const std::string& gone_a, const std::string& gone_b,
                               const std::string& fresh) {
    if (ra == rb) {
        Region& r = region_ref(m, ra);
        r.euler -= 1;
        remove_from_boundary(r, gone_a);
        remove_from_boundary(r, gone_b);
        r.boundary.push_back(fresh);
        return ra;
    }
    Region absorbed = region_ref(m, rb);
    Region& keep = region_ref(m, ra);
    internal_check(keep.colour == colour && absorbed.colour == colour,
                   "foot regions changed colour");
    keep.euler = keep.euler + absorbed.euler - 1;
    remove_from_boundary(keep, gone_a);
    for (const auto& id : absorbed.boundary)
        if (id != gone_b) keep.boundary.push_back(id);
    keep.boundary.push_back(fresh);
    std::erase_if(m.regions, [&](const Region& r) { return r.id == rb; });
    for (auto& c : m.curves) {
        auto& side = colour == Colour::white ? c.white : c.gray;
        if (side == rb) side = ra;
    }
    return ra;
}

}  // namespace

ColouredManifold attach_1_handle(const ColouredManifold& m, const std::string& foot_a,
                                 const std::string& foot_b) {
    for (const auto& h : m.history)
        if (h.two_handle) throw OrderViolation("1-handle attached after a 2-handle");
    if (!m.find_curve(foot_a)) throw UnknownCurve("no t-curve " + foot_a);
    if (!m.find_curve(foot_b)) throw UnknownCurve("no t-curve " + foot_b);

    ColouredManifold next = m;

    if (foot_a == foot_b) {
        // Both feet on one curve: the curve splits and the class splits with
        // it through a fresh handle generator.
        append_generator(next, fresh_handle_name(next), GeneratorKind::handle);
        TCurve old = curve_ref(next, foot_a);
        std::string id1 = fresh_curve_id(next);
        std::string id2 = fresh_curve_id(next);

        TCurve first = old, second = old;
        first.id = id1;
        second.id = id2;
        first.klass.assign(next.generators.size(), 0);
        first.klass.back() = 1;
        second.klass.back() = checked_add(second.klass.back(), -1);

        Region& white = region_ref(next, old.white);
        white.euler -= 1;
        remove_from_boundary(white, foot_a);
        white.boundary.push_back(id1);
        white.boundary.push_back(id2);
        Region& gray = region_ref(next, old.gray);
        gray.euler -= 1;
        remove_from_boundary(gray, foot_a);
        gray.boundary.push_back(id1);
        gray.boundary.push_back(id2);

        erase_curve(next, foot_a);
        next.curves.push_back(std::move(first));
        next.curves.push_back(std::move(second));
    } else {
        TCurve a = curve_ref(next, foot_a);
        TCurve b = curve_ref(next, foot_b);
        if (a.component != b.component) {
            int keep = std::min(a.component, b.component);
            int drop = std::max(a.component, b.component);
            for (auto& c : next.curves)
                if (c.component == drop) c.component = keep;
            for (auto& r : next.regions)
                if (r.component == drop) r.component = keep;
            next.components.erase(drop);
        } else {
            // A handle from a component to itself contributes a free loop.
            append_generator(next, fresh_handle_name(next), GeneratorKind::handle);
        }

        TCurve ta = curve_ref(next, foot_a);
        TCurve tb = curve_ref(next, foot_b);
        std::string fresh = fresh_curve_id(next);
        TCurve merged;
        merged.id = fresh;
        merged.klass = add_classes(ta.klass, tb.klass);
        merged.component = ta.component;
        merged.white = merge_foot_regions(next, ta.white, tb.white, Colour::white, foot_a,
                                          foot_b, fresh);
        merged.gray =
            merge_foot_regions(next, ta.gray, tb.gray, Colour::gray, foot_a, foot_b, fresh);
        erase_curve(next, foot_a);
        erase_curve(next, foot_b);
        next.curves.push_back(std::move(merged));
    }

    next.history.push_back({false, foot_a, foot_b});
    revalidate(next, "attach_1_handle");
    return next;
}

ColouredManifold attach_2_handle(const ColouredManifold& m, const std::string& curve) {
    const TCurve* c = m.find_curve(curve);
    if (!c) throw UnknownCurve("no t-curve " + curve);

    ColouredManifold next = m;
    append_relation(next, c->klass);
    Region& white = region_ref(next, c->white);
    white.euler += 1;
    remove_from_boundary(white, curve);
    Region& gray = region_ref(next, c->gray);
    gray.euler += 1;
    remove_from_boundary(gray, curve);
    erase_curve(next, curve);

    next.history.push_back({true, curve, ""});
    revalidate(next, "attach_2_handle");
    return next;
}

LedgerSummary summarize(const ColouredManifold& m) {
    LedgerSummary s;
    s.generators = static_cast<int>(m.generators.size());
    s.relations = static_cast<int>(m.relations.rows());
    s.curves = static_cast<int>(m.curves.size());
    for (const auto& r : m.regions)
        (r.colour == Colour::white ? s.chi_white : s.chi_gray) += r.euler;
    return s;
}

RunResult run_programme(const ColouredManifold& m, const HandleProgramme& programme) {
    bool saw_two_handle = false;
    for (std::size_t i = 0; i < programme.steps.size(); ++i) {
        if (programme.steps[i].two_handle)
            saw_two_handle = true;
        else if (saw_two_handle)
            throw OrderViolation("step " + std::to_string(i) +
                                 ": 1-handle scheduled after a 2-handle");
    }

    RunResult out{m, {summarize(m)}};
    for (std::size_t i = 0; i < programme.steps.size(); ++i) {
        const auto& step = programme.steps[i];
        try {
            out.manifold = step.two_handle
                               ? attach_2_handle(out.manifold, step.a)
                               : attach_1_handle(out.manifold, step.a, step.b);
        } catch (const InternalError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ValidationError("step " + std::to_string(i) + ": " + e.what());
        }
        out.trace.push_back(summarize(out.manifold));
    }
    return out;
}

AbelianGroup homology_of(const ColouredManifold& m) {
    return AbelianGroup::quotient(m.generators.size(), m.relations);
}

GroupElement class_of(const ColouredManifold& m, const std::string& generator) {
    int idx = m.generator_index(generator);
    if (idx < 0) throw UnknownGenerator("no generator named " + generator);
    std::vector<std::int64_t> v(m.generators.size(), 0);
    v[idx] = 1;
    return class_of(m, v);
}

GroupElement class_of(const ColouredManifold& m, const std::vector<std::int64_t>& vec) {
    if (vec.size() != m.generators.size())
        throw ValidationError("class vector width disagrees with the generator count");
    return homology_of(m).project64(vec);
}

namespace {

bool trivial_only(const ColouredManifold& m, Colour colour) {
    for (const auto& r : m.regions) {
        if (r.colour != colour) continue;
        bool disk = r.euler == 1 && r.boundary.size() == 1;
        bool sphere = r.euler == 2 && r.boundary.empty();
        if (!disk && !sphere) return false;
    }
    return true;
}

}  // namespace

bool white_link_trivial_only(const ColouredManifold& m) {
    return trivial_only(m, Colour::white);
}

bool gray_link_trivial_only(const ColouredManifold& m) {
    return trivial_only(m, Colour::gray);
}

}  // namespace chc
