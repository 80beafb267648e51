#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chc/complement.hpp"
#include "chc/errors.hpp"
#include "chc/io_json.hpp"
#include "chc/mesh_colouring.hpp"
#include "chc/trim.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw chc::ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw chc::ValidationError("cannot write " + path);
    out << content;
    if (!out) throw chc::ValidationError("failed writing " + path);
}

struct Options {
    std::string input, second, output, log, trace, field, off_export;
    double eps = 1e-9;
    bool pair = false;
};

int run_homology(const Options& opt) {
    chc::SurfaceComplex s = chc::parse_complex(read_file(opt.input));
    s.require_valid();
    if (opt.pair)
        std::cout << chc::dump_betti_pair(chc::absolute_betti(s), chc::relative_betti(s));
    else
        std::cout << chc::dump_betti(chc::absolute_betti(s));
    return 0;
}

int run_trim(const Options& opt) {
    chc::SurfaceComplex s = chc::parse_complex(read_file(opt.input));
    chc::TrimReport report = chc::trim(s);
    std::string serialized = chc::dump_trim_report(report);
    if (!opt.output.empty()) write_file(opt.output, chc::dump_complex(report.result));
    if (!opt.log.empty())
        write_file(opt.log, serialized);
    else if (opt.output.empty())
        std::cout << serialized;
    return 0;
}

int run_programme_cmd(const Options& opt) {
    chc::ColouredManifold base = chc::parse_manifold(read_file(opt.input));
    chc::HandleProgramme programme = chc::parse_programme(read_file(opt.second));
    chc::RunResult result = chc::run_programme(base, programme);
    std::string manifold = chc::dump_manifold(result.manifold);
    if (!opt.output.empty())
        write_file(opt.output, manifold);
    else
        std::cout << manifold;
    if (!opt.trace.empty()) write_file(opt.trace, chc::dump_trace(result));
    return 0;
}

int run_detect(const Options& opt) {
    chc::Scenario scenario = chc::parse_scenario(read_file(opt.input));
    std::cout << chc::dump_verdict(chc::evaluate(scenario));
    return 0;
}

int run_colour(const Options& opt) {
    chc::TriMesh mesh = chc::read_off_file(opt.input);
    chc::VectorField field = chc::parse_field(read_file(opt.field));
    chc::ColouredSurfaceMesh cm = chc::colour_mesh(mesh, field, opt.eps);
    std::string serialized = chc::dump_coloured_mesh(cm);
    if (!opt.output.empty())
        write_file(opt.output, serialized);
    else
        std::cout << serialized;
    if (!opt.off_export.empty()) {
        std::ostringstream off;
        chc::write_off(off, cm.split, &cm.triangle_colour);
        write_file(opt.off_export, off.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coloured-handle calculus toolkit"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* homology = app.add_subcommand("homology", "Betti numbers of a complex");
    homology->add_option("complex", opt.input, "complex JSON file")->required();
    homology->add_flag("--pair", opt.pair, "also print ranks of the pair (S - L, boundary)");

    CLI::App* trim = app.add_subcommand("trim", "trim a marked surface to a frame");
    trim->add_option("complex", opt.input, "complex JSON file")->required();
    trim->add_option("-o,--output", opt.output, "write the trimmed frame here");
    trim->add_option("--log", opt.log, "write the full step report here");

    CLI::App* run = app.add_subcommand("run", "run a handle programme");
    run->add_option("manifold", opt.input, "base manifold JSON file")->required();
    run->add_option("programme", opt.second, "programme JSON file")->required();
    run->add_option("-o,--output", opt.output, "write the final manifold here");
    run->add_option("--trace", opt.trace, "write per-step ledger summaries here");

    CLI::App* detect = app.add_subcommand("detect", "evaluate a detection scenario");
    detect->add_option("scenario", opt.input, "scenario JSON file")->required();

    CLI::App* colour = app.add_subcommand("colour", "colour a mesh by a vector field");
    colour->add_option("mesh", opt.input, "OFF mesh file")->required();
    colour->add_option("--field", opt.field, "vector field JSON file")->required();
    colour->add_option("--eps", opt.eps, "tangency tolerance");
    colour->add_option("-o,--output", opt.output, "write the coloured mesh here");
    colour->add_option("--off", opt.off_export, "also export the split mesh as OFF");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (homology->parsed()) return run_homology(opt);
        if (trim->parsed()) return run_trim(opt);
        if (run->parsed()) return run_programme_cmd(opt);
        if (detect->parsed()) return run_detect(opt);
        if (colour->parsed()) return run_colour(opt);
    } catch (const chc::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const chc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
