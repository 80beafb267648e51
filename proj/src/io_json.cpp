#include "chc/io_json.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "chc/errors.hpp"

namespace chc {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad JSON: ") + e.what());
    }
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string("missing field \"") + key + "\"");
    return *it;
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw ValidationError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::int64_t as_int64(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw ValidationError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const char* what) {
    if (!j.is_boolean()) throw ValidationError(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

const json& as_array(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    return j;
}

std::vector<int> int_list(const json& j, const char* what) {
    std::vector<int> out;
    for (const auto& item : as_array(j, what)) out.push_back(as_int(item, what));
    return out;
}

Triangle as_triangle(const json& j) {
    auto v = int_list(j, "triangle");
    if (v.size() != 3) throw ValidationError("triangle needs exactly 3 vertices");
    return {v[0], v[1], v[2]};
}

}  // namespace

SurfaceComplex parse_complex(const std::string& text) {
    json j = parse_text(text);
    int n = as_int(field(j, "vertices"), "\"vertices\"");
    std::vector<Triangle> tris;
    for (const auto& t : as_array(field(j, "triangles"), "\"triangles\""))
        tris.push_back(as_triangle(t));
    SubComplex marked;
    if (j.contains("L") && !j["L"].is_null()) {
        const json& l = j["L"];
        if (l.contains("vertices")) marked.vertices = int_list(l["vertices"], "L vertex");
        if (l.contains("edges"))
            for (const auto& e : as_array(l["edges"], "\"L.edges\"")) {
                auto pair = int_list(e, "L edge");
                if (pair.size() != 2) throw ValidationError("L edge needs exactly 2 vertices");
                marked.edges.push_back({pair[0], pair[1]});
            }
        if (l.contains("triangles"))
            for (const auto& t : as_array(l["triangles"], "\"L.triangles\""))
                marked.triangles.push_back(as_triangle(t));
    }
    return SurfaceComplex(n, std::move(tris), std::move(marked));
}

std::string dump_complex(const SurfaceComplex& s) {
    json j;
    j["vertices"] = s.vertex_count();
    j["triangles"] = json::array();
    for (const auto& t : s.triangles()) j["triangles"].push_back({t[0], t[1], t[2]});
    SubComplex l = s.marked();
    json jl;
    jl["vertices"] = l.vertices;
    jl["edges"] = json::array();
    for (const auto& e : l.edges) jl["edges"].push_back({e[0], e[1]});
    jl["triangles"] = json::array();
    for (const auto& t : l.triangles) jl["triangles"].push_back({t[0], t[1], t[2]});
    j["L"] = std::move(jl);
    return finish(j);
}

namespace {

GeneratorKind parse_kind(const std::string& s) {
    if (s == "core") return GeneratorKind::core;
    if (s == "block") return GeneratorKind::block;
    if (s == "handle") return GeneratorKind::handle;
    throw ValidationError("unknown generator kind \"" + s + "\"");
}

Colour parse_colour(const std::string& s) {
    if (s == "white") return Colour::white;
    if (s == "gray") return Colour::gray;
    throw ValidationError("unknown colour \"" + s + "\"");
}

int numeric_suffix(const std::string& name, char prefix) {
    if (name.size() < 2 || name[0] != prefix) return -1;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    try {
        return std::stoi(name.substr(1));
    } catch (...) {
        return -1;
    }
}

}  // namespace

ColouredManifold parse_manifold(const std::string& text) {
    json j = parse_text(text);
    ColouredManifold m;
    for (const auto& g : as_array(field(j, "generators"), "\"generators\""))
        m.generators.push_back({as_string(field(g, "name"), "generator name"),
                                parse_kind(as_string(field(g, "kind"), "generator kind"))});

    const json& rel = as_array(field(j, "relations"), "\"relations\"");
    m.relations = IntMatrix(rel.size(), m.generators.size());
    for (std::size_t r = 0; r < rel.size(); ++r) {
        const json& row = as_array(rel[r], "relation row");
        if (row.size() != m.generators.size())
            throw ValidationError("relation row width disagrees with the generator count");
        for (std::size_t c = 0; c < row.size(); ++c)
            m.relations.at(r, c) = as_int64(row[c], "relation entry");
    }

    for (const auto& jc : as_array(field(j, "t_curves"), "\"t_curves\"")) {
        TCurve c;
        c.id = as_string(field(jc, "id"), "t-curve id");
        c.klass.assign(m.generators.size(), 0);
        const json& cls = field(jc, "class");
        if (!cls.is_object()) throw ValidationError("t-curve class must be an object");
        for (const auto& [name, coeff] : cls.items()) {
            int idx = m.generator_index(name);
            if (idx < 0)
                throw UnknownGenerator("t-curve " + c.id + " uses unknown generator " + name);
            c.klass[idx] = as_int64(coeff, "class coefficient");
        }
        c.component = as_int(field(jc, "component"), "t-curve component");
        c.white = as_string(field(jc, "white"), "t-curve white side");
        c.gray = as_string(field(jc, "gray"), "t-curve gray side");
        m.components.insert(c.component);
        m.curves.push_back(std::move(c));
    }

    for (const auto& jr : as_array(field(j, "regions"), "\"regions\"")) {
        Region r;
        r.id = as_string(field(jr, "id"), "region id");
        r.colour = parse_colour(as_string(field(jr, "colour"), "region colour"));
        r.euler = as_int(field(jr, "euler"), "region euler");
        for (const auto& b : as_array(field(jr, "boundary"), "region boundary"))
            r.boundary.push_back(as_string(b, "boundary entry"));
        if (jr.contains("component")) {
            r.component = as_int(jr["component"], "region component");
            m.components.insert(r.component);
        } else if (r.boundary.empty()) {
            throw ValidationError("closed region " + r.id +
                                  " needs an explicit \"component\"");
        } else {
            r.component = -1;  // resolved from its boundary curves by validation
        }
        m.regions.push_back(std::move(r));
    }

    for (const auto& g : m.generators)
        m.handle_serial = std::max(m.handle_serial, numeric_suffix(g.name, 'h') + 1);
    for (const auto& c : m.curves)
        m.curve_serial = std::max(m.curve_serial, numeric_suffix(c.id, 't') + 1);

    validate_manifold(m);
    return m;
}

std::string dump_manifold(const ColouredManifold& m) {
    json j;
    j["generators"] = json::array();
    for (const auto& g : m.generators)
        j["generators"].push_back({{"name", g.name}, {"kind", to_string(g.kind)}});
    j["relations"] = json::array();
    for (std::size_t r = 0; r < m.relations.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.relations.cols(); ++c) {
            const mpz_class& v = m.relations.at(r, c);
            if (!v.fits_slong_p())
                throw ValidationError("relation entry too large to serialize");
            row.push_back(static_cast<std::int64_t>(v.get_si()));
        }
        j["relations"].push_back(std::move(row));
    }
    j["t_curves"] = json::array();
    for (const auto& c : m.curves) {
        json cls = json::object();
        for (std::size_t i = 0; i < c.klass.size(); ++i)
            if (c.klass[i] != 0) cls[m.generators[i].name] = c.klass[i];
        j["t_curves"].push_back({{"id", c.id},
                                 {"class", std::move(cls)},
                                 {"component", c.component},
                                 {"white", c.white},
                                 {"gray", c.gray}});
    }
    j["regions"] = json::array();
    for (const auto& r : m.regions) {
        json jb = json::array();
        for (const auto& b : r.boundary) jb.push_back(b);
        j["regions"].push_back({{"id", r.id},
                                {"colour", to_string(r.colour)},
                                {"euler", r.euler},
                                {"boundary", std::move(jb)},
                                {"component", r.component}});
    }
    return finish(j);
}

HandleProgramme parse_programme(const std::string& text) {
    json j = parse_text(text);
    HandleProgramme p;
    for (const auto& js : as_array(field(j, "steps"), "\"steps\"")) {
        std::string op = as_string(field(js, "op"), "step op");
        ProgrammeStep step;
        if (op == "attach1") {
            const json& feet = as_array(field(js, "feet"), "\"feet\"");
            if (feet.size() != 2) throw ValidationError("attach1 needs exactly 2 feet");
            step.two_handle = false;
            step.a = as_string(feet[0], "foot");
            step.b = as_string(feet[1], "foot");
        } else if (op == "attach2") {
            step.two_handle = true;
            step.a = as_string(field(js, "curve"), "\"curve\"");
        } else {
            throw ValidationError("unknown programme op \"" + op + "\"");
        }
        p.steps.push_back(std::move(step));
    }
    return p;
}

std::string dump_programme(const HandleProgramme& p) {
    json j;
    j["steps"] = json::array();
    for (const auto& s : p.steps) {
        if (s.two_handle)
            j["steps"].push_back({{"op", "attach2"}, {"curve", s.a}});
        else
            j["steps"].push_back({{"op", "attach1"}, {"feet", {s.a, s.b}}});
    }
    return finish(j);
}

Scenario parse_scenario(const std::string& text) {
    json j = parse_text(text);
    Scenario sc;
    sc.base = parse_manifold(field(j, "base").dump());
    if (j.contains("programme") && !j["programme"].is_null())
        sc.programme = parse_programme(j["programme"].dump());
    if (j.contains("target") && !j["target"].is_null()) {
        const json& t = j["target"];
        TargetSummary target;
        target.colouring = parse_manifold(field(t, "colouring").dump());
        target.h1_trivial = as_bool(field(t, "h1_trivial"), "\"h1_trivial\"");
        sc.target = std::move(target);
    }
    if (j.contains("assertions") && !j["assertions"].is_null()) {
        const json& a = j["assertions"];
        if (a.contains("contractible"))
            sc.assertions.contractible = as_bool(a["contractible"], "\"contractible\"");
        if (a.contains("nontrivial_link"))
            sc.assertions.nontrivial_link = as_bool(a["nontrivial_link"], "\"nontrivial_link\"");
    }
    if (!sc.programme && !sc.target)
        throw ValidationError("scenario carries neither a programme nor a target");
    return sc;
}

std::string dump_verdict(const Verdict& v) {
    json j;
    j["verdict"] = to_string(v.kind);
    json evidence;
    evidence["rule"] = v.rule;
    evidence["h1"] = v.h1;
    evidence["classes"] = json::array();
    for (const auto& c : v.classes)
        evidence["classes"].push_back(
            {{"core", c.core}, {"class", c.value}, {"zero", c.zero}});
    evidence["witnesses"] = json::array();
    for (const auto& w : v.witnesses)
        evidence["witnesses"].push_back({{"core", w.core},
                                         {"curve", w.curve},
                                         {"white_region", w.white_region},
                                         {"gray_region", w.gray_region}});
    j["evidence"] = std::move(evidence);
    return finish(j);
}

namespace {

json ranks_json(const RelativeRanks& r) {
    return {{"r0", r.r0}, {"r1", r.r1}, {"r2", r.r2}};
}

}  // namespace

std::string dump_trim_report(const TrimReport& report) {
    json j;
    j["initial"] = ranks_json(report.initial);
    j["steps"] = json::array();
    for (const auto& s : report.steps) {
        json js;
        js["op"] = to_string(s.kind);
        json w;
        switch (s.kind) {
            case TrimStep::Kind::remove_disk:
            case TrimStep::Kind::discard_component:
                w["vertex"] = s.witness.at(0);
                break;
            case TrimStep::Kind::cut_strip: {
                json path = json::array(), detour = json::array();
                bool after_break = false;
                for (int v : s.witness) {
                    if (v == -1) {
                        after_break = true;
                        continue;
                    }
                    (after_break ? detour : path).push_back(v);
                }
                w["path"] = std::move(path);
                w["detour"] = std::move(detour);
                break;
            }
        }
        js["witness"] = std::move(w);
        js["before"] = ranks_json(s.before);
        js["after"] = ranks_json(s.after);
        j["steps"].push_back(std::move(js));
    }
    j["result"] = json::parse(dump_complex(report.result));
    return finish(j);
}

namespace {

json summary_json(const LedgerSummary& s) {
    return {{"generators", s.generators},
            {"relations", s.relations},
            {"curves", s.curves},
            {"chi_white", s.chi_white},
            {"chi_gray", s.chi_gray}};
}

}  // namespace

std::string dump_trace(const RunResult& run) {
    json j;
    j["trace"] = json::array();
    for (const auto& s : run.trace) j["trace"].push_back(summary_json(s));
    return finish(j);
}

VectorField parse_field(const std::string& text) {
    json j = parse_text(text);
    std::string kind = as_string(field(j, "kind"), "\"kind\"");
    const json& comps = as_array(field(j, "components"), "\"components\"");
    if (comps.size() != 3) throw ValidationError("field needs exactly 3 components");
    VectorField f;
    if (kind == "constant") {
        for (int i = 0; i < 3; ++i) {
            if (!comps[i].is_number()) throw ValidationError("constant component must be a number");
            f.components[i] = {{comps[i].get<double>(), {0, 0, 0}}};
        }
    } else if (kind == "polynomial") {
        for (int i = 0; i < 3; ++i) {
            for (const auto& jt : as_array(comps[i], "field component")) {
                FieldTerm term;
                const json& c = field(jt, "coefficient");
                if (!c.is_number()) throw ValidationError("coefficient must be a number");
                term.coefficient = c.get<double>();
                auto exps = int_list(field(jt, "exponents"), "exponent");
                if (exps.size() != 3) throw ValidationError("exponents need exactly 3 entries");
                for (int k = 0; k < 3; ++k) {
                    if (exps[k] < 0) throw ValidationError("exponents must be non-negative");
                    term.exponents[k] = exps[k];
                }
                f.components[i].push_back(term);
            }
        }
    } else {
        throw ValidationError("unknown field kind \"" + kind + "\"");
    }
    return f;
}

namespace {

json vec_json(const Vec3& p) { return {p.x, p.y, p.z}; }

}  // namespace

std::string dump_coloured_mesh(const ColouredSurfaceMesh& cm) {
    json j;
    j["summary"] = {{"chi_white", cm.chi_white},
                    {"chi_gray", cm.chi_gray},
                    {"t_curves", cm.polylines.size()},
                    {"regions", cm.regions.size()},
                    {"tangency_type", "unverified"}};
    j["epsilon"] = cm.epsilon;
    j["vertex_signs"] = cm.vertex_sign;
    json split;
    split["vertices"] = json::array();
    for (const auto& p : cm.split.vertices) split["vertices"].push_back(vec_json(p));
    split["triangles"] = json::array();
    for (const auto& t : cm.split.triangles) split["triangles"].push_back({t[0], t[1], t[2]});
    j["split"] = std::move(split);
    j["triangle_colours"] = json::array();
    for (Colour c : cm.triangle_colour) j["triangle_colours"].push_back(to_string(c));
    j["t_curves"] = json::array();
    for (std::size_t i = 0; i < cm.polylines.size(); ++i) {
        json pts = json::array();
        for (const auto& p : cm.polylines[i]) pts.push_back(vec_json(p));
        j["t_curves"].push_back(
            {{"id", "t" + std::to_string(i + 1)}, {"points", std::move(pts)}});
    }

    MeshLedger ledger = summarize(cm);
    json jl;
    jl["generators"] = json::array();
    jl["relations"] = json::array();
    jl["t_curves"] = json::array();
    for (const auto& c : ledger.curves) {
        int component = 0;
        for (const auto& r : ledger.regions)
            if (r.id == c.white) component = r.component;
        jl["t_curves"].push_back({{"id", c.id},
                                  {"class", json::object()},
                                  {"component", component},
                                  {"white", c.white},
                                  {"gray", c.gray}});
    }
    jl["regions"] = json::array();
    for (const auto& r : ledger.regions) {
        json jb = json::array();
        for (const auto& b : r.boundary) jb.push_back(b);
        jl["regions"].push_back({{"id", r.id},
                                 {"colour", to_string(r.colour)},
                                 {"euler", r.euler},
                                 {"boundary", std::move(jb)},
                                 {"component", r.component}});
    }
    j["ledger"] = std::move(jl);
    return finish(j);
}

std::string dump_betti(const std::array<int, 3>& betti) {
    json j;
    j["betti"] = {betti[0], betti[1], betti[2]};
    return finish(j);
}

std::string dump_betti_pair(const std::array<int, 3>& betti, const RelativeRanks& relative) {
    json j;
    j["betti"] = {betti[0], betti[1], betti[2]};
    j["relative"] = ranks_json(relative);
    return finish(j);
}

}  // namespace chc
