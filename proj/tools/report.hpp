#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lyap/inflection.hpp"
#include "lyap/mapspec.hpp"
#include "lyap/spectrum.hpp"

namespace lyapcli {

// Aggregated per-map analysis: dimension, domain, critical point, inflection
// list (sorted by decreasing alpha), and the two-branch classification when
// the map has exactly two branches.
struct AnalysisReport {
    std::string label;
    double branch_count_log2 = 0.0;
    double dimension = 0.0;
    lyap::DomainInterval domain{0.0, 0.0};
    double critical_alpha = 0.0;
    std::vector<lyap::InflectionPoint> inflections;
    std::optional<lyap::TwoBranchClass> classification;
};

AnalysisReport analyze(const lyap::MapSpec& spec, std::size_t grid_points);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const std::vector<lyap::InflectionPoint>& roots);
nlohmann::json to_json(const lyap::InterlacingReport& report);

void write_spectrum_csv(std::ostream& os,
                        const std::vector<lyap::SpectrumPoint>& points);

// Standalone 800x600 SVG: spectrum polyline over 2000 samples, inflection
// points circled and joined pairwise by dashed segments.
std::string render_svg(const lyap::MapSpec& spec, std::size_t grid_points);

// One claimed-vs-computed comparison inside a verification target.
struct VerifyCheck {
    std::string name;
    double claimed = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string target;
    bool pass = false;
    std::vector<VerifyCheck> checks;
    nlohmann::json detail; // e.g. interlacing rows; null when unused
};

// Targets: s4 s6 s8 fig4 fig6 two-branch-threshold phi tn:<N> all.
VerifyReport run_verify_target(const std::string& target,
                               std::size_t grid_points);
nlohmann::json to_json(const VerifyReport& report);

const std::vector<std::string>& default_verify_targets();

} // namespace lyapcli
