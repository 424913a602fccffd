#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ainfty/grid.hpp"
#include "ainfty/operators.hpp"

namespace ainfty {

/// A named constant estimate with the witness achieving it.
struct ConstantReport {
    std::string name;
    double value = 0.0;
    std::map<std::string, double> params;
    std::optional<Cube> witness_cube;
    std::optional<std::int64_t> witness_cell;
    std::optional<double> witness_threshold;
};

namespace detail {

/// argmax of numer/denom over cells, decided by exact cross-multiplication
/// (ties keep the first cell). Returns the cell and the fl ratio there.
struct RatioMax {
    std::int64_t cell = 0;
    double ratio = 0.0;
};
RatioMax max_ratio_exact(const WeightGrid& numer, const WeightGrid& denom);

/// Concentric double of a cube: side 2m anchored at a - floor(m/2) per axis.
Cube double_cube(const Cube& q);
bool cube_inside(const Grid& g, const Cube& q);

}  // namespace detail

/// [A1] = max over cells of Mw/w (>= 1; the unit cube makes Mw >= w exact).
ConstantReport a1_constant(const WeightGrid& w, const CubeFamilySpec& family);

/// [Ap] = max over cubes of avg(w) * avg(w^(-1/(p-1)))^(p-1), floored at 1
/// (the power-mean bound; flooring absorbs the last-ulp rounding).
ConstantReport ap_constant(const WeightGrid& w, double p, const CubeFamilySpec& family);

/// Minimal beta for the sublevel condition at this alpha: the largest
/// fraction of cells of a cube with value <= alpha * (cube average).
ConstantReport ainf_sublevel_beta(const WeightGrid& w, double alpha, const CubeFamilySpec& family);

/// Reverse Holder constant: max over cubes of (avg w^r)^(1/r) / avg w,
/// floored at 1.
ConstantReport rhi_constant(const WeightGrid& w, double r, const CubeFamilySpec& family);

/// max over admissible cubes of w(2Q)/w(Q); throws not-computable when no
/// concentric double fits in the box.
ConstantReport doubling_constant(const WeightGrid& w, const CubeFamilySpec& family);

/// Weak-Ainfty constant over superlevel sets E_t = {x in Q : w(x) > t}, t
/// scanned over 0 and the distinct cell values of Q:
/// max of w(E_t) * (|Q|/|E_t|)^delta / w(2Q).
ConstantReport weak_ainf_constant(const WeightGrid& w, double delta,
                                  const CubeFamilySpec& family);

}  // namespace ainfty
