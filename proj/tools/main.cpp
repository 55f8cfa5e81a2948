#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "report.hpp"

#include "lyap/errors.hpp"
#include "lyap/inflection.hpp"
#include "lyap/mapspec.hpp"
#include "lyap/spectrum.hpp"

namespace {

namespace fs = std::filesystem;

struct InputOpts {
    std::string preset;
    std::string spec_path;
    std::vector<std::string> two_branch;
    int tn = 0;

    void attach(CLI::App* cmd) {
        auto* group = cmd->add_option_group("input", "map selection");
        group->add_option("--preset", preset, "bundled map: s4 s6 s8 fig4 fig6");
        group->add_option("--spec", spec_path, "spec file path");
        group->add_option("--two-branch", two_branch, "two branch lengths")
            ->expected(2);
        group->add_option("--tn", tn, "doubling-family map T_N (6 <= N <= 60)");
        group->require_option(1);
    }

    lyap::MapSpec resolve() const {
        if (!preset.empty()) {
            auto which = lyap::preset_from_name(preset);
            if (!which)
                throw lyap::ValidationError("unknown preset: " + preset);
            return lyap::preset(*which);
        }
        if (!spec_path.empty()) {
            std::ifstream in(spec_path);
            if (!in)
                throw lyap::IoError("cannot read spec file: " + spec_path);
            std::stringstream buf;
            buf << in.rdbuf();
            if (in.bad())
                throw lyap::IoError("read failed: " + spec_path);
            return lyap::parse_spec(buf.str(), fs::path(spec_path).stem().string());
        }
        if (!two_branch.empty())
            return lyap::make_two_branch(two_branch[0], two_branch[1]);
        return lyap::construct_tn(tn);
    }
};

// Writes to stdout when path is "-".
void write_output(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        if (!std::cout)
            throw lyap::IoError("write to stdout failed");
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw lyap::IoError("cannot open output file: " + path);
    out << payload;
    out.flush();
    if (!out)
        throw lyap::IoError("write failed: " + path);
}

int run(int argc, char** argv) {
    CLI::App app{"Lyapunov spectra of piecewise linear expanding maps"};
    app.require_subcommand(1);

    InputOpts analyze_in, spectrum_in, inflections_in, plot_in;
    std::size_t analyze_grid = 65536, inflections_grid = 65536,
                verify_grid = 65536, plot_grid = 65536;
    std::size_t samples = 1000;
    double margin = 1e-4;
    std::string spectrum_out = "-", plot_out = "-";
    std::string verify_target;

    auto* analyze = app.add_subcommand(
        "analyze", "dimension, domain, critical point, inflections (JSON)");
    analyze_in.attach(analyze);
    analyze->add_option("--grid", analyze_grid, "inflection scan grid size");

    auto* spectrum = app.add_subcommand(
        "spectrum", "sample alpha,L,dL,d2L over the domain interior (CSV)");
    spectrum_in.attach(spectrum);
    spectrum->add_option("-n,--samples", samples, "number of rows");
    spectrum->add_option("--margin", margin, "endpoint margin fraction");
    spectrum->add_option("-o,--out", spectrum_out, "output path (- = stdout)");

    auto* inflections = app.add_subcommand(
        "inflections", "key-equation roots with brackets and residuals (JSON)");
    inflections_in.attach(inflections);
    inflections->add_option("--grid", inflections_grid, "scan grid size");

    auto* verify = app.add_subcommand(
        "verify", "check documented properties; nonzero exit on failure");
    verify
        ->add_option("target", verify_target,
                     "s4|s6|s8|fig4|fig6|two-branch-threshold|phi|tn:<N>|all")
        ->required();
    verify->add_option("--grid", verify_grid, "scan grid size");

    auto* plot = app.add_subcommand("plot", "spectrum curve with inflection "
                                            "markers (SVG)");
    plot_in.attach(plot);
    plot->add_option("-o,--out", plot_out, "output path (- = stdout)");
    plot->add_option("--grid", plot_grid, "scan grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (analyze->parsed()) {
        auto report = lyapcli::analyze(analyze_in.resolve(), analyze_grid);
        std::cout << lyapcli::to_json(report).dump(2) << '\n';
        return 0;
    }
    if (spectrum->parsed()) {
        auto points = lyap::sample_spectrum(spectrum_in.resolve(), samples, margin);
        std::ostringstream csv;
        lyapcli::write_spectrum_csv(csv, points);
        write_output(spectrum_out, csv.str());
        return 0;
    }
    if (inflections->parsed()) {
        auto roots =
            lyap::find_inflections(inflections_in.resolve(), inflections_grid);
        std::cout << lyapcli::to_json(roots).dump(2) << '\n';
        return 0;
    }
    if (verify->parsed()) {
        std::vector<std::string> targets;
        if (verify_target == "all")
            targets = lyapcli::default_verify_targets();
        else
            targets.push_back(verify_target);

        nlohmann::json out;
        out["targets"] = nlohmann::json::array();
        bool pass = true;
        for (const auto& t : targets) {
            auto report = lyapcli::run_verify_target(t, verify_grid);
            pass = pass && report.pass;
            out["targets"].push_back(lyapcli::to_json(report));
        }
        out["pass"] = pass;
        std::cout << out.dump(2) << '\n';
        return pass ? 0 : 4;
    }
    if (plot->parsed()) {
        write_output(plot_out, lyapcli::render_svg(plot_in.resolve(), plot_grid));
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lyap::DegenerateSpectrum& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const lyap::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const lyap::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
