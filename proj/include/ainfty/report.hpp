#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainfty/constructors.hpp"
#include "ainfty/criteria.hpp"
#include "ainfty/grid.hpp"

namespace ainfty {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    FamilyMode family_mode = FamilyMode::all;
    std::optional<std::int64_t> max_side;
    double lambda = 0.5;
    double p = 2.0;
    double r = 0.5;      // prop1_chain power
    double s = 2.0;      // neugebauer exponent
    double delta = 0.5;  // weak-Ainfty delta
    double weak_r = 1.5; // weak-Ainfty RHI exponent
    double rhi_r = 2.0;  // reported RHI constant exponent
    int truncation = 40;
    int kmax = 4;
    Thresholds thresholds;
    bool apply_floor = false;

    CubeFamilySpec family() const { return CubeFamilySpec{family_mode, max_side}; }
};

/// Full analysis report (constants, criteria verdicts, per-cell series),
/// serialized deterministically: same weight + config -> same bytes.
std::string analyze_weight(const WeightGrid& w, const RunConfig& config,
                           const std::string& weight_id);

/// Plot-ready CSV from an analysis report's series block.
std::string plotdata_csv(const std::string& report_json);

/// Deterministic JSON for a constructed A1 weight: output values, the
/// measured A1 constant, ingredients, certificates and the corrector.
std::string construction_to_json(const A1Construction& c);

/// The command-line front end; returns the process exit code
/// (0 ok, 1 usage, 2 invalid input, 3 oracle refused).
int run_cli(const std::vector<std::string>& args);

}  // namespace ainfty
