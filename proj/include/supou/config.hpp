#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supou/growth_lab.hpp"
#include "supou/measures.hpp"

namespace supou {

// Fully typed run configuration. The on-disk format is strict `key = value`
// lines (dotted key paths, `#` comments); unknown keys are rejected so a
// typo in a measure parameter can never silently change an experiment.
struct RunConfig {
    std::string command;  // recorded in manifests; optional in hand-written files

    std::optional<LevyMeasureSpec> levy;
    std::optional<MixingMeasureSpec> pi;

    std::optional<double> eps;      // nullopt = auto (0, or 1e-4 for bounded_infinite)
    double prune_tol = 1e-12;
    std::optional<double> horizon;  // window.T
    std::optional<double> burn_in;  // window.B; nullopt = auto
    std::uint64_t seed = 42;
    int replicates = 32;
    int threads = 0;  // 0 = auto; SUPOU_THREADS env var overrides
    std::string output_dir = "supou_out";

    std::optional<NormalizerSpec> normalizer;

    double grid_rmin = 1.0;
    double grid_rmax = 1e6;
    int grid_points = 40;

    double integral_k = 1.0;
    IntegralSide integral_side = IntegralSide::Lower;
    double integral_tmax = 1e12;

    std::vector<double> largexi_m_grid;
    std::vector<double> moment_betas;

    int path_points = 1000;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Canonical emission; parse_config_text(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

// Existence conditions for the process behind the config:
// (i) the jump measure integrates log z above 1, (ii) m_-1(pi) < inf.
// Throws ConfigError naming the violated condition.
void validate_existence(const RunConfig& config);

// Small-jump truncation default: 0 for finite-mass jump measures, 1e-4 for
// the infinite-mass bounded_infinite member.
double resolve_eps(const RunConfig& config);

const char* levy_kind_name(LevyKind kind);
const char* mixing_kind_name(MixingKind kind);
const char* normalizer_family_name(NormalizerFamily family);

}  // namespace supou
