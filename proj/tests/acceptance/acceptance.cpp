// Acceptance harness: pins the project's ten exit criteria and prints one
// pass/fail line for each.  Exits nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "chc/complement.hpp"
#include "chc/detector.hpp"
#include "chc/errors.hpp"
#include "chc/io_json.hpp"
#include "chc/mesh_colouring.hpp"
#include "chc/surface.hpp"
#include "chc/trim.hpp"
#include "support/builders.hpp"
#include "support/oracle_cw.hpp"
#include "support/random_programmes.hpp"
#include "support/random_surfaces.hpp"

#ifndef CHC_CLI_PATH
#define CHC_CLI_PATH ""
#endif
#ifndef CHC_DATA_DIR
#define CHC_DATA_DIR ""
#endif

namespace {

namespace fs = std::filesystem;
using namespace chc;
using namespace chc::testing;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string setting(const char* compiled, const char* env_name) {
    if (compiled && *compiled) return compiled;
    const char* env = std::getenv(env_name);
    return env ? env : "";
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw ValidationError("cannot write " + path.string());
}

struct Outcome {
    bool ok = false;
    std::string detail;
};

Outcome pass(const std::string& detail) { return {true, detail}; }
Outcome fail(const std::string& detail) { return {false, detail}; }

std::string format_ms(double s) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << s * 1000.0 << " ms";
    return out.str();
}

std::string format_s(double s) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << s << " s";
    return out.str();
}

// ---------------------------------------------------------------------------
// 1. Betti numbers over Z2 for the four classic surfaces.

Outcome criterion_betti_sanity() {
    struct Probe {
        const char* name;
        SurfaceComplex surface;
        std::array<int, 3> want;
    };
    std::vector<Probe> probes;
    probes.push_back({"sphere", octahedron(), {1, 0, 1}});
    probes.push_back({"torus", grid_torus(6, 6), {1, 2, 1}});
    probes.push_back({"Klein bottle", klein_grid(), {1, 2, 1}});
    probes.push_back({"disk", disk_fan(6), {1, 0, 0}});

    double slowest = 0;
    for (const auto& p : probes) {
        auto start = Clock::now();
        std::array<int, 3> got = absolute_betti(p.surface);
        double elapsed = seconds_since(start);
        slowest = std::max(slowest, elapsed);
        if (got != p.want)
            return fail(std::string(p.name) + " gave (" + std::to_string(got[0]) + "," +
                        std::to_string(got[1]) + "," + std::to_string(got[2]) + ")");
        if (elapsed >= 1.0)
            return fail(std::string(p.name) + " took " + format_s(elapsed));
    }
    return pass("sphere (1,0,1), torus (1,2,1), Klein bottle (1,2,1), disk (1,0,0); slowest " +
                format_ms(slowest));
}

// ---------------------------------------------------------------------------
// 2. Step laws of the trimmer on a random corpus of marked surfaces.

Outcome criterion_trim_laws() {
    const int instances = 200;
    std::mt19937_64 rng(916);
    auto start = Clock::now();
    int steps_checked = 0;

    for (int i = 0; i < instances; ++i) {
        SurfaceComplex s = random_marked_surface(rng, 500);
        TrimReport report = trim(s);
        std::string where = "instance " + std::to_string(i);

        if (!(report.initial == relative_betti(s)))
            return fail(where + ": reported initial ranks disagree with recomputation");

        RelativeRanks running = report.initial;
        int used_r0 = 0, used_r1 = 0, used_r2 = 0;
        for (const auto& step : report.steps) {
            if (!(step.before == running))
                return fail(where + ": step chain broken");
            RelativeRanks want = running;
            switch (step.kind) {
                case TrimStep::Kind::remove_disk:
                    want.r0 -= 1;
                    ++used_r0;
                    break;
                case TrimStep::Kind::cut_strip:
                    if (running.r0 != 0)
                        return fail(where + ": strip cut taken before r0 was exhausted");
                    want.r1 -= 1;
                    ++used_r1;
                    break;
                case TrimStep::Kind::discard_component:
                    want.r2 -= 1;
                    ++used_r2;
                    break;
            }
            if (!(step.after == want))
                return fail(where + ": " + to_string(step.kind) + " broke the rank law");
            running = step.after;
            ++steps_checked;
        }

        if (!(running == RelativeRanks{}))
            return fail(where + ": trim did not end at (0,0,0)");
        if (used_r0 > report.initial.r0 || used_r1 > report.initial.r1 ||
            used_r2 > report.initial.r2)
            return fail(where + ": operation count exceeded the initial ranks");
        if (!(mark_complement(report.result).ranks == RelativeRanks{}))
            return fail(where + ": recomputed ranks of the result are nonzero");
    }

    double total = seconds_since(start);
    if (total >= 60.0)
        return fail("laws held but the corpus took " + format_s(total));
    return pass(std::to_string(instances) + " random surfaces, " +
                std::to_string(steps_checked) + " steps obey the R0/R1/R2 laws within budget; " +
                format_s(total) + " total");
}

// ---------------------------------------------------------------------------
// 3. Worked example: the annulus with one enclosed region.

Outcome criterion_worked_example() {
    TrimReport report = trim(torus_with_annulus());
    std::vector<TrimStep::Kind> kinds;
    for (const auto& step : report.steps) kinds.push_back(step.kind);
    std::vector<TrimStep::Kind> want = {TrimStep::Kind::remove_disk,
                                        TrimStep::Kind::cut_strip};
    if (!(report.initial == RelativeRanks{1, 1, 0}))
        return fail("initial ranks are not (1,1,0)");
    if (kinds != want) {
        std::string got;
        for (auto k : kinds) got += (got.empty() ? "" : ", ") + to_string(k);
        return fail("steps were [" + got + "]");
    }
    return pass("exactly one disk removal then one strip cut");
}

// ---------------------------------------------------------------------------
// 4-6. The shared random programme corpus.

std::vector<ProgrammeCase> build_corpus(int cases) {
    std::mt19937_64 rng(2718);
    std::vector<ProgrammeCase> corpus;
    corpus.reserve(cases);
    for (int i = 0; i < cases; ++i) corpus.push_back(random_programme_case(rng));
    return corpus;
}

Outcome criterion_oracle_equivalence(const std::vector<ProgrammeCase>& corpus) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& c = corpus[i];
        AbelianGroup ledger = homology_of(run_programme(c.base, c.programme).manifold);
        CwHomology cw = cw_homology_oracle(c.base, c.programme);
        if (ledger.free_rank() != cw.free_rank || ledger.torsion() != cw.torsion)
            return fail("case " + std::to_string(i) + ": ledger gave " + ledger.to_string() +
                        " but the CW model disagrees");
    }
    return pass("ledger H1 matches the CW-model Smith normal form on " +
                std::to_string(corpus.size()) + " programmes");
}

std::vector<std::int64_t> class_sum(const ColouredManifold& m) {
    std::vector<std::int64_t> sum(m.generators.size(), 0);
    for (const auto& c : m.curves)
        for (std::size_t i = 0; i < c.klass.size(); ++i) sum[i] += c.klass[i];
    return sum;
}

Outcome criterion_ledger_invariants(const std::vector<ProgrammeCase>& corpus) {
    int steps_checked = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& c = corpus[i];
        std::string where = "case " + std::to_string(i);
        ColouredManifold current = c.base;
        for (const auto& step : c.programme.steps) {
            LedgerSummary before = summarize(current);
            std::vector<std::int64_t> before_sum = class_sum(current);
            ColouredManifold next = step.two_handle
                                        ? attach_2_handle(current, step.a)
                                        : attach_1_handle(current, step.a, step.b);
            LedgerSummary after = summarize(next);

            if ((before.curves + after.curves) % 2 == 0)
                return fail(where + ": t-curve count parity did not flip");
            int delta = step.two_handle ? 1 : -1;
            if (after.chi_white != before.chi_white + delta ||
                after.chi_gray != before.chi_gray + delta)
                return fail(where + ": chi(P), chi(Q) law broken");

            if (!step.two_handle) {
                std::vector<std::int64_t> after_sum = class_sum(next);
                for (std::size_t g = 0; g < after_sum.size(); ++g) {
                    std::int64_t want = g < before_sum.size() ? before_sum[g] : 0;
                    if (after_sum[g] != want)
                        return fail(where + ": class sum not conserved across a 1-handle");
                }
            }
            current = std::move(next);
            ++steps_checked;
        }
    }
    return pass("parity flips, chi laws and class-sum conservation hold on " +
                std::to_string(steps_checked) + " steps");
}

Outcome criterion_killed_core_witness(const std::vector<ProgrammeCase>& corpus) {
    int events = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& c = corpus[i];
        ColouredManifold final_state = run_programme(c.base, c.programme).manifold;
        for (const auto& gen : final_state.generators) {
            if (gen.kind != GeneratorKind::core) continue;
            if (!class_of(final_state, gen.name).is_zero()) continue;
            ++events;

            int core = c.base.generator_index(gen.name);
            if (core < 0)
                return fail("case " + std::to_string(i) + ": core " + gen.name +
                            " missing from the base");
            bool witnessed = false;
            for (const auto& curve : c.base.curves) {
                bool parallel = true;
                for (std::size_t g = 0; g < curve.klass.size(); ++g) {
                    std::int64_t magnitude = curve.klass[g] < 0 ? -curve.klass[g] : curve.klass[g];
                    if (magnitude != (static_cast<int>(g) == core ? 1 : 0)) {
                        parallel = false;
                        break;
                    }
                }
                if (parallel) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed)
                return fail("case " + std::to_string(i) + ": core " + gen.name +
                            " died without a boundary-parallel t-curve in the base");
        }
    }
    if (events == 0)
        return fail("corpus never killed a core class; nothing was exercised");
    return pass("every killed core had a class +-c t-curve in the initial ledger (" +
                std::to_string(events) + " events)");
}

// ---------------------------------------------------------------------------
// 7. One-curve golden test.

Outcome criterion_one_curve(const fs::path& data_dir) {
    ColouredManifold base = one_curve_torus(0);
    HandleProgramme cap;
    cap.steps.push_back({true, "t1", ""});
    ColouredManifold final_state = run_programme(base, cap).manifold;

    AbelianGroup h1 = homology_of(final_state);
    if (h1.to_string() != "Z") return fail("H1 is " + h1.to_string() + ", wanted Z");
    if (class_of(final_state, "c").is_zero()) return fail("class c became zero");

    Verdict verdict = evaluate(parse_scenario(slurp(data_dir / "one_curve_scenario.json")));
    if (verdict.kind != VerdictKind::inconsistent_contractibility)
        return fail("detector said " + to_string(verdict.kind));
    return pass("H1 = Z with c nonzero; detector says INCONSISTENT_CONTRACTIBILITY");
}

// ---------------------------------------------------------------------------
// 8. Hourglass golden test.

Outcome criterion_hourglass(const fs::path& data_dir) {
    ColouredManifold base = hourglass_torus();
    HandleProgramme cap;
    cap.steps.push_back({true, "t1", ""});
    ColouredManifold final_state = run_programme(base, cap).manifold;

    if (!homology_of(final_state).trivial())
        return fail("H1 is " + homology_of(final_state).to_string() + ", wanted 0");
    if (final_state.curves.size() != 1)
        return fail(std::to_string(final_state.curves.size()) + " t-curves remain, wanted 1");
    if (final_state.regions.size() != 2)
        return fail(std::to_string(final_state.regions.size()) + " regions, wanted 2");
    for (const auto& region : final_state.regions)
        if (region.euler != 1 || region.boundary.size() != 1)
            return fail("region " + region.id + " is not a disk");

    Verdict verdict = evaluate(parse_scenario(slurp(data_dir / "hourglass_scenario.json")));
    if (verdict.kind != VerdictKind::forced_additional_structure)
        return fail("detector said " + to_string(verdict.kind));
    return pass("trivial H1, one t-curve, two disks; detector says FORCED_ADDITIONAL_STRUCTURE");
}

// ---------------------------------------------------------------------------
// 9. Flow colouring of the three probe meshes.

Outcome criterion_flow_colouring() {
    VectorField down = constant_field(0, 0, -1);
    double slowest = 0;
    int largest = 0;

    TriMesh sphere = icosphere(4);
    largest = std::max(largest, static_cast<int>(sphere.triangles.size()));
    auto start = Clock::now();
    ColouredSurfaceMesh sc = colour_mesh(sphere, down);
    double elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    if (elapsed >= 1.0) return fail("sphere colouring took " + format_s(elapsed));
    if (sc.polylines.size() != 1)
        return fail("sphere gave " + std::to_string(sc.polylines.size()) + " t-curves");
    if (sc.chi_white != 1 || sc.chi_gray != 1)
        return fail("sphere hemispheres have chi (" + std::to_string(sc.chi_white) + "," +
                    std::to_string(sc.chi_gray) + ")");

    TriMesh torus = torus_mesh(70, 70);
    largest = std::max(largest, static_cast<int>(torus.triangles.size()));
    start = Clock::now();
    ColouredSurfaceMesh tc = colour_mesh(torus, down);
    elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    if (elapsed >= 1.0) return fail("torus colouring took " + format_s(elapsed));
    if (tc.polylines.size() != 2)
        return fail("torus gave " + std::to_string(tc.polylines.size()) + " t-curves");

    start = Clock::now();
    bool raised = false;
    try {
        colour_mesh(box_mesh(), down);
    } catch (const AmbiguousTangency&) {
        raised = true;
    }
    elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    if (!raised) return fail("box mesh did not raise the tangency error");

    return pass("sphere 1 curve chi 1/1, torus 2 curves, box tangency raised; slowest " +
                format_ms(slowest) + " at " + std::to_string(largest) + " triangles");
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CLI golden runs.

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

class CliRunner {
public:
    CliRunner(std::string bin, fs::path scratch)
        : bin_(std::move(bin)), scratch_(std::move(scratch)) {}

    CliRun run(const std::string& args) {
        fs::path out_path = scratch_ / ("stdout_" + std::to_string(serial_));
        fs::path err_path = scratch_ / ("stderr_" + std::to_string(serial_));
        ++serial_;
        std::string cmd = "'" + bin_ + "' " + args + " > '" + out_path.string() +
                          "' 2> '" + err_path.string() + "'";
        int status = std::system(cmd.c_str());
        CliRun r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out_path);
        r.err = slurp(err_path);
        return r;
    }

private:
    std::string bin_;
    fs::path scratch_;
    int serial_ = 0;
};

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Runs every golden command once, storing stdout and each declared output
// file under its own key.  Returns false (with a message) on any failure.
bool run_goldens(CliRunner& cli, const fs::path& dir, const fs::path& data_dir,
                 const fs::path& trim_input, const fs::path& ball_off,
                 std::map<std::string, std::string>& bytes, std::string& error) {
    fs::create_directories(dir);
    auto capture = [&](const std::string& key, const std::string& args,
                       const std::vector<std::pair<std::string, fs::path>>& files) {
        CliRun r = cli.run(args);
        if (r.exit_code != 0) {
            error = key + " exited " + std::to_string(r.exit_code) + ": " + r.err;
            return false;
        }
        bytes[key + ".stdout"] = r.out;
        for (const auto& [label, path] : files) {
            if (!fs::exists(path)) {
                error = key + " did not write " + label;
                return false;
            }
            bytes[key + "." + label] = slurp(path);
        }
        return true;
    };

    return capture("homology", "homology " + q(data_dir / "sphere_point.json"), {}) &&
           capture("homology_pair", "homology --pair " + q(data_dir / "sphere_point.json"),
                   {}) &&
           capture("trim",
                   "trim " + q(trim_input) + " -o " + q(dir / "frame.json") + " --log " +
                       q(dir / "report.json"),
                   {{"frame", dir / "frame.json"}, {"report", dir / "report.json"}}) &&
           capture("run",
                   "run " + q(data_dir / "hourglass_manifold.json") + " " +
                       q(data_dir / "hourglass_programme.json") + " -o " +
                       q(dir / "final.json") + " --trace " + q(dir / "trace.json"),
                   {{"final", dir / "final.json"}, {"trace", dir / "trace.json"}}) &&
           capture("detect_one", "detect " + q(data_dir / "one_curve_scenario.json"), {}) &&
           capture("detect_hourglass", "detect " + q(data_dir / "hourglass_scenario.json"),
                   {}) &&
           capture("detect_ball", "detect " + q(data_dir / "ball_target_scenario.json"),
                   {}) &&
           capture("colour",
                   "colour " + q(ball_off) + " --field " + q(data_dir / "field_down.json") +
                       " -o " + q(dir / "coloured.json") + " --off " + q(dir / "split.off"),
                   {{"coloured", dir / "coloured.json"}, {"split", dir / "split.off"}});
}

Outcome criterion_cli_determinism(const std::string& cli_path, const fs::path& data_dir) {
    if (cli_path.empty()) return fail("CLI path is not configured");
    if (!fs::exists(cli_path)) return fail("CLI binary missing at " + cli_path);

    fs::path scratch =
        fs::temp_directory_path() / ("chc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(scratch);
    CliRunner cli(cli_path, scratch);

    fs::path trim_input = scratch / "trim_input.json";
    spill(trim_input, dump_complex(torus_with_annulus()));
    fs::path ball_off = scratch / "ball.off";
    std::ostringstream off;
    write_off(off, icosphere(1));
    spill(ball_off, off.str());

    std::map<std::string, std::string> first, second;
    std::string error;
    bool ok = run_goldens(cli, scratch / "pass1", data_dir, trim_input, ball_off, first,
                          error) &&
              run_goldens(cli, scratch / "pass2", data_dir, trim_input, ball_off, second,
                          error);
    fs::remove_all(scratch);
    if (!ok) return fail(error);

    if (first.size() != second.size()) return fail("the two passes captured different sets");
    int compared = 0;
    for (const auto& [key, content] : first) {
        auto it = second.find(key);
        if (it == second.end()) return fail(key + " missing from the second pass");
        if (it->second != content) return fail(key + " differs between runs");
        if (content.empty() && key.find("stdout") == std::string::npos)
            return fail(key + " is empty");
        ++compared;
    }
    return pass(std::to_string(compared) +
                " captured outputs byte-identical across two full runs");
}

}  // namespace

int main() {
    std::string cli_path = setting(CHC_CLI_PATH, "CHC_CLI_PATH");
    fs::path data_dir = setting(CHC_DATA_DIR, "CHC_DATA_DIR");

    bool all_ok = true;
    int number = 0;
    auto report = [&](const std::string& title, const std::function<Outcome()>& body) {
        ++number;
        Outcome outcome;
        try {
            outcome = body();
        } catch (const std::exception& e) {
            outcome = fail(std::string("unexpected exception: ") + e.what());
        }
        all_ok = all_ok && outcome.ok;
        std::printf("%s  %2d  %s: %s\n", outcome.ok ? "PASS" : "FAIL", number, title.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    };

    report("Z2 homology sanity", criterion_betti_sanity);
    report("trim step laws on random surfaces", criterion_trim_laws);
    report("worked example trims R0 then R1", criterion_worked_example);

    std::vector<ProgrammeCase> corpus = build_corpus(500);
    report("ledger H1 equals the CW oracle",
           [&] { return criterion_oracle_equivalence(corpus); });
    report("ledger step invariants", [&] { return criterion_ledger_invariants(corpus); });
    report("killed cores are boundary-parallel",
           [&] { return criterion_killed_core_witness(corpus); });

    report("one-curve golden test", [&] { return criterion_one_curve(data_dir); });
    report("hourglass golden test", [&] { return criterion_hourglass(data_dir); });
    report("flow colouring probes", criterion_flow_colouring);
    report("CLI determinism",
           [&] { return criterion_cli_determinism(cli_path, data_dir); });

    std::printf("%s\n", all_ok ? "all 10 criteria passed" : "ACCEPTANCE FAILED");
    return all_ok ? 0 : 1;
}
