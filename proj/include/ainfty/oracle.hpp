#pragma once

#include "ainfty/grid.hpp"
#include "ainfty/operators.hpp"
#include "ainfty/weight_classes.hpp"

namespace ainfty::oracle {

/// Oracles enumerate the family cube by cube straight from the definitions;
/// they share only the canonical scalar kernels (exact means, pow_value,
/// order-statistic indices) with the fast paths, so agreement is bit-exact.
/// Grids beyond 64 cells/axis (1D) or 16 (2D) are refused.
void check_size(const Grid& g);
bool size_ok(const Grid& g);

MaximalResult maximal(const WeightGrid& w, const CubeFamilySpec& family);
WeightGrid maximal_power(const WeightGrid& w, double s, const CubeFamilySpec& family);
WeightGrid maximal_iterate(const WeightGrid& w, int k, const CubeFamilySpec& family);
double rearrangement(const WeightGrid& w, const Cube& q, double t);
WeightGrid local_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family);
WeightGrid sharp_maximal(const WeightGrid& w, const CubeFamilySpec& family);
WeightGrid local_sharp_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family);

ConstantReport a1_constant(const WeightGrid& w, const CubeFamilySpec& family);
ConstantReport ap_constant(const WeightGrid& w, double p, const CubeFamilySpec& family);
ConstantReport rhi_constant(const WeightGrid& w, double r, const CubeFamilySpec& family);
ConstantReport ainf_sublevel_beta(const WeightGrid& w, double alpha, const CubeFamilySpec& family);
ConstantReport weak_ainf_constant(const WeightGrid& w, double delta, const CubeFamilySpec& family);

}  // namespace ainfty::oracle
