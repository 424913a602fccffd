#include "ainfty/grid.hpp"

#include <cmath>
#include <string>

namespace ainfty {

Grid::Grid(int dim, std::int64_t cells_per_axis, std::array<double, 2> lo,
           std::array<double, 2> hi)
    : dim_(dim), n_(cells_per_axis), lo_(lo), hi_(hi) {
    if (dim != 1 && dim != 2)
        throw Error(errc::invalid_spec, "dim must be 1 or 2");
    if (n_ < 1) throw Error(errc::invalid_spec, "cells_per_axis must be >= 1");
    for (int a = 0; a < dim; ++a) {
        const auto i = static_cast<std::size_t>(a);
        if (!(hi_[i] > lo_[i]) || !std::isfinite(lo_[i]) || !std::isfinite(hi_[i]))
            throw Error(errc::invalid_spec, "box must satisfy lo < hi");
    }
    h_ = (hi_[0] - lo_[0]) / static_cast<double>(n_);
    if (dim == 2 && hi_[1] - lo_[1] != hi_[0] - lo_[0])
        throw Error(errc::invalid_spec, "box extents must be equal on both axes");
}

Grid Grid::unit(int dim, std::int64_t cells_per_axis) {
    return Grid(dim, cells_per_axis, {0.0, 0.0}, {1.0, 1.0});
}

WeightGrid::WeightGrid(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.cell_count())
        throw Error(errc::invalid_weight, "value count does not match the grid");
    for (double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(errc::invalid_weight, "weights must be strictly positive and finite");
    }
}

WeightGrid::WeightGrid(Grid grid, std::vector<double> values, AllowZeroTag)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.cell_count())
        throw Error(errc::invalid_weight, "value count does not match the grid");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(errc::invalid_weight, "values must be nonnegative and finite");
    }
}

WeightGrid WeightGrid::nonnegative(Grid grid, std::vector<double> values) {
    return WeightGrid(grid, std::move(values), AllowZeroTag{});
}

WeightGrid WeightGrid::map(const std::function<double(double)>& f) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
    return WeightGrid::nonnegative(grid_, std::move(out));
}

namespace {

std::int64_t effective_max_side(const Grid& grid, const CubeFamilySpec& spec) {
    std::int64_t cap = grid.cells_per_axis();
    if (spec.max_side) {
        if (*spec.max_side <= 0)
            throw Error(errc::invalid_family, "max_side must be positive");
        cap = std::min(cap, *spec.max_side);
    }
    return cap;
}

std::vector<std::int64_t> family_sides(const Grid& grid, const CubeFamilySpec& spec) {
    const std::int64_t cap = effective_max_side(grid, spec);
    std::vector<std::int64_t> sides;
    if (spec.mode == FamilyMode::all) {
        for (std::int64_t m = 1; m <= cap; ++m) sides.push_back(m);
    } else {
        for (std::int64_t m = 1; m <= cap; m *= 2) sides.push_back(m);
    }
    return sides;
}

}  // namespace

std::vector<Cube> enumerate_cubes(const Grid& grid, const CubeFamilySpec& spec) {
    const std::int64_t n = grid.cells_per_axis();
    std::vector<Cube> out;
    for (std::int64_t m : family_sides(grid, spec)) {
        const std::int64_t step = spec.mode == FamilyMode::dyadic ? m : 1;
        if (grid.dim() == 1) {
            for (std::int64_t a = 0; a + m <= n; a += step)
                out.push_back(Cube{{a, 0}, m});
        } else {
            for (std::int64_t r = 0; r + m <= n; r += step)
                for (std::int64_t c = 0; c + m <= n; c += step)
                    out.push_back(Cube{{r, c}, m});
        }
    }
    return out;
}

CubeFamily::CubeFamily(const Grid& grid, const CubeFamilySpec& spec)
    : spec_(spec), cubes_(enumerate_cubes(grid, spec)), sides_(family_sides(grid, spec)) {}

std::vector<Cube> cubes_containing(const Grid& grid, std::int64_t flat_cell,
                                   const CubeFamilySpec& spec) {
    const std::int64_t n = grid.cells_per_axis();
    const std::int64_t row = grid.dim() == 1 ? flat_cell : flat_cell / n;
    const std::int64_t col = grid.dim() == 1 ? 0 : flat_cell % n;
    if (row < 0 || row >= n || col < 0 || (grid.dim() == 2 && col >= n))
        throw Error(errc::invalid_spec, "cell index out of range");

    std::vector<Cube> out;
    for (std::int64_t m : family_sides(grid, spec)) {
        const std::int64_t step = spec.mode == FamilyMode::dyadic ? m : 1;
        auto anchors = [&](std::int64_t x) {
            std::vector<std::int64_t> as;
            for (std::int64_t a = 0; a + m <= n; a += step)
                if (a <= x && x < a + m) as.push_back(a);
            return as;
        };
        if (grid.dim() == 1) {
            for (std::int64_t a : anchors(row)) out.push_back(Cube{{a, 0}, m});
        } else {
            for (std::int64_t ar : anchors(row))
                for (std::int64_t ac : anchors(col)) out.push_back(Cube{{ar, ac}, m});
        }
    }
    return out;
}

void validate_cube(const Grid& grid, const Cube& q) {
    const std::int64_t n = grid.cells_per_axis();
    if (q.side < 1 || q.anchor[0] < 0 || q.anchor[0] + q.side > n)
        throw Error(errc::invalid_spec, "cube out of range");
    if (grid.dim() == 2 && (q.anchor[1] < 0 || q.anchor[1] + q.side > n))
        throw Error(errc::invalid_spec, "cube out of range");
}

PrefixTable::PrefixTable(const WeightGrid& w) : PrefixTable(w.grid(), w.values()) {}

PrefixTable::PrefixTable(const Grid& grid, const std::vector<double>& v)
    : dim_(grid.dim()), n_(grid.cells_per_axis()) {
    if (static_cast<std::int64_t>(v.size()) != grid.cell_count())
        throw Error(errc::invalid_weight, "value count does not match the grid");
    if (dim_ == 1) {
        prefix_.resize(static_cast<std::size_t>(n_) + 1);
        for (std::int64_t i = 0; i < n_; ++i) {
            prefix_[static_cast<std::size_t>(i) + 1] = prefix_[static_cast<std::size_t>(i)];
            prefix_[static_cast<std::size_t>(i) + 1].add(v[static_cast<std::size_t>(i)]);
        }
    } else {
        const std::size_t stride = static_cast<std::size_t>(n_) + 1;
        prefix_.resize(stride * stride);
        for (std::int64_t r = 0; r < n_; ++r) {
            exact::Sum row_sum;
            for (std::int64_t c = 0; c < n_; ++c) {
                row_sum.add(v[static_cast<std::size_t>(r * n_ + c)]);
                auto& cell = prefix_[static_cast<std::size_t>(r + 1) * stride +
                                     static_cast<std::size_t>(c + 1)];
                cell = prefix_[static_cast<std::size_t>(r) * stride +
                               static_cast<std::size_t>(c + 1)];
                cell.add(row_sum);
            }
        }
    }
}

exact::Sum PrefixTable::cube_sum_exact(const Cube& q) const {
    if (dim_ == 1) {
        exact::Sum s = prefix_[static_cast<std::size_t>(q.anchor[0] + q.side)];
        s.subtract(prefix_[static_cast<std::size_t>(q.anchor[0])]);
        return s;
    }
    const std::size_t stride = static_cast<std::size_t>(n_) + 1;
    const std::size_t r0 = static_cast<std::size_t>(q.anchor[0]);
    const std::size_t c0 = static_cast<std::size_t>(q.anchor[1]);
    const std::size_t r1 = r0 + static_cast<std::size_t>(q.side);
    const std::size_t c1 = c0 + static_cast<std::size_t>(q.side);
    exact::Sum s = prefix_[r1 * stride + c1];
    s.subtract(prefix_[r0 * stride + c1]);
    s.subtract(prefix_[r1 * stride + c0]);
    s.add(prefix_[r0 * stride + c0]);
    return s;
}

double PrefixTable::cube_average(const Cube& q) const {
    const double cnt = static_cast<double>(dim_ == 1 ? q.side : q.side * q.side);
    return cube_sum_exact(q).divide_rounded(cnt);
}

double cube_average(const WeightGrid& w, const Cube& q) {
    validate_cube(w.grid(), q);
    exact::Sum s;
    const std::int64_t n = w.grid().cells_per_axis();
    if (w.grid().dim() == 1) {
        for (std::int64_t i = q.anchor[0]; i < q.anchor[0] + q.side; ++i)
            s.add(w.value(i));
    } else {
        for (std::int64_t r = q.anchor[0]; r < q.anchor[0] + q.side; ++r)
            for (std::int64_t c = q.anchor[1]; c < q.anchor[1] + q.side; ++c)
                s.add(w.value(r * n + c));
    }
    return s.divide_rounded(static_cast<double>(q.cell_count(w.grid().dim())));
}

double pow_value(double v, double e) {
    if (e == 1.0) return v;
    if (e == 2.0) return v * v;
    if (e == 0.5) return std::sqrt(v);
    if (e == -1.0) return 1.0 / v;
    if (e == 0.0) return 1.0;
    return std::pow(v, e);
}

std::int64_t lambda_index(double lambda, std::int64_t count) {
    const double t = lambda * static_cast<double>(count);
    auto k = static_cast<std::int64_t>(std::floor(t));
    if (k < 0) k = 0;
    if (k > count - 1) k = count - 1;
    return k;
}

}  // namespace ainfty
