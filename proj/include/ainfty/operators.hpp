#pragma once

#include <vector>

#include "ainfty/grid.hpp"

namespace ainfty {

/// Hardy-Littlewood maximal function together with, for every cell, the cube
/// achieving the supremum (first in family order among ties).
struct MaximalResult {
    WeightGrid output;
    std::vector<Cube> witness;  // one per cell
};

/// Mf(x) = max over family cubes containing x of the cube average.
/// Sliding-window maxima over per-side average arrays; ties resolve to the
/// family-order-first cube.
MaximalResult maximal(const WeightGrid& w, const CubeFamilySpec& family);

/// (M(w^s))^(1/s), cell-wise. s == 1 reduces to maximal. The result is
/// floored at maximal(w): the power mean dominates the arithmetic mean, and
/// the floor keeps that inequality exact after rounding.
WeightGrid maximal_power(const WeightGrid& w, double s, const CubeFamilySpec& family);

/// M applied k times.
WeightGrid maximal_iterate(const WeightGrid& w, int k, const CubeFamilySpec& family);

}  // namespace ainfty
