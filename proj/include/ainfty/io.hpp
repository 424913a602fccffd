#pragma once

#include <string>

#include "ainfty/fixtures.hpp"
#include "ainfty/grid.hpp"

namespace ainfty {

/// Weight file: JSON ({"dim", "cells", "box", "values"}) or, for 1D, CSV
/// with one value per line on the unit box. Non-positive values throw
/// unless apply_floor is set, in which case they are floored and reported.
WeightGrid load_weight(const std::string& path, bool apply_floor = false,
                       bool* floored = nullptr);
WeightGrid parse_weight_json(const std::string& text, bool apply_floor = false,
                             bool* floored = nullptr);

std::string weight_to_json(const WeightGrid& w);
void save_weight(const WeightGrid& w, const std::string& path);

/// Generator spec file: a single JSON object, e.g.
/// {"kind":"STEP","levels":[1,3,2,6],"dim":1,"cells":4,"box":[[0,1]]}.
WeightSpec parse_weight_spec(const std::string& text);
WeightSpec load_weight_spec(const std::string& path);

/// Fixture manifest: a JSON array of generator specs.
std::vector<WeightSpec> parse_weight_manifest(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ainfty
