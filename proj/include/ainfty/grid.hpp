#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ainfty/error.hpp"
#include "ainfty/exact.hpp"

namespace ainfty {

/// Regular grid over an axis-aligned box, 1D or 2D. Every cell is a cube of
/// side `cell_size()`, and functions are piecewise constant on cells.
class Grid {
public:
    Grid(int dim, std::int64_t cells_per_axis, std::array<double, 2> lo, std::array<double, 2> hi);

    /// Convenience: the unit box [0,1)^dim.
    static Grid unit(int dim, std::int64_t cells_per_axis);

    int dim() const { return dim_; }
    std::int64_t cells_per_axis() const { return n_; }
    std::int64_t cell_count() const { return dim_ == 1 ? n_ : n_ * n_; }
    double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
    double hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }
    double cell_size() const { return h_; }
    /// Lebesgue measure of one cell, h^dim.
    double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

    /// Center coordinate of a cell along one axis.
    double center(int axis, std::int64_t index) const {
        return lo_[static_cast<std::size_t>(axis)] +
               (static_cast<double>(index) + 0.5) * h_;
    }

    std::int64_t flat_index(std::int64_t row, std::int64_t col) const {
        return dim_ == 1 ? row : row * n_ + col;
    }

    bool operator==(const Grid& other) const = default;

private:
    int dim_;
    std::int64_t n_;
    std::array<double, 2> lo_;
    std::array<double, 2> hi_;
    double h_;
};

/// An axis-aligned cube of grid cells: `anchor` is the lowest cell index per
/// axis and `side` the edge length in cells (the same on every axis).
struct Cube {
    std::array<std::int64_t, 2> anchor{0, 0};
    std::int64_t side = 1;

    std::int64_t cell_count(int dim) const { return dim == 1 ? side : side * side; }
    bool contains(int dim, std::int64_t row, std::int64_t col) const {
        if (row < anchor[0] || row >= anchor[0] + side) return false;
        if (dim == 2 && (col < anchor[1] || col >= anchor[1] + side)) return false;
        return true;
    }
    bool operator==(const Cube&) const = default;
};

/// Sampled function on a grid: one value per cell, row-major. Weights are
/// strictly positive (enforced by this constructor; loaders and generators
/// apply the floor). Operator outputs that can legitimately vanish, like
/// oscillation statistics, go through `nonnegative`.
class WeightGrid {
public:
    WeightGrid(Grid grid, std::vector<double> values);

    static WeightGrid nonnegative(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::int64_t flat) const { return values_[static_cast<std::size_t>(flat)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

    /// Same grid, values mapped cell-wise (results must be >= 0 and finite).
    WeightGrid map(const std::function<double(double)>& f) const;

private:
    struct AllowZeroTag {};
    WeightGrid(Grid grid, std::vector<double> values, AllowZeroTag);

    Grid grid_;
    std::vector<double> values_;
};

enum class FamilyMode { all, dyadic };

/// Description of the cube family the suprema range over.
struct CubeFamilySpec {
    FamilyMode mode = FamilyMode::all;
    std::optional<std::int64_t> max_side;  // cap on the side length, in cells
};

/// Materialized family: every cube, ordered by side then anchor (row-major).
class CubeFamily {
public:
    CubeFamily(const Grid& grid, const CubeFamilySpec& spec);

    const std::vector<Cube>& cubes() const { return cubes_; }
    const CubeFamilySpec& spec() const { return spec_; }
    const std::vector<std::int64_t>& sides() const { return sides_; }
    std::int64_t max_side() const { return sides_.empty() ? 0 : sides_.back(); }

private:
    CubeFamilySpec spec_;
    std::vector<Cube> cubes_;
    std::vector<std::int64_t> sides_;  // ascending side lengths present
};

std::vector<Cube> enumerate_cubes(const Grid& grid, const CubeFamilySpec& spec);

/// Family members whose cell range covers the given cell, in family order.
std::vector<Cube> cubes_containing(const Grid& grid, std::int64_t flat_cell,
                                   const CubeFamilySpec& spec);

/// Prefix sums of the cell values with exact accumulation: box sums are the
/// correctly rounded value of the true sum, so a prefix-difference and a
/// direct pass over the cells agree bit for bit.
class PrefixTable {
public:
    explicit PrefixTable(const WeightGrid& w);
    /// Raw-value variant, e.g. for log-transformed cells (signs unrestricted).
    PrefixTable(const Grid& grid, const std::vector<double>& values);

    /// Exact sum of the cell values in the cube, as an expansion.
    exact::Sum cube_sum_exact(const Cube& q) const;

    /// Correctly rounded sum of the cell values in the cube.
    double cube_sum(const Cube& q) const { return cube_sum_exact(q).round(); }

    /// Arithmetic mean of the cell values, correctly rounded.
    double cube_average(const Cube& q) const;

    int dim() const { return dim_; }

private:
    int dim_;
    std::int64_t n_;
    // 1D: prefix_[i] = sum of cells [0, i). 2D: prefix_[i*(n+1)+j] = sum of
    // the rectangle of rows [0, i) x cols [0, j).
    std::vector<exact::Sum> prefix_;
};

/// Mean of the cell values of `w` inside `q` (builds a throwaway prefix
/// table; use PrefixTable directly in loops).
double cube_average(const WeightGrid& w, const Cube& q);

/// Canonical power helper used for every cell-wise power in the project, so
/// independent code paths produce identical doubles.
double pow_value(double v, double e);

/// Canonical rearrangement index: k = floor(lambda * count), clamped to
/// [0, count-1]. Defined on the IEEE product.
std::int64_t lambda_index(double lambda, std::int64_t count);

void validate_cube(const Grid& grid, const Cube& q);

}  // namespace ainfty
