#include "ainfty/operators.hpp"

#include <algorithm>
#include <limits>

#include "ainfty/detail/sliding.hpp"
#include "ainfty/parallel.hpp"

namespace ainfty {

namespace {

struct SideResult {
    std::vector<double> value;
    std::vector<Cube> witness;
};

// Per-cell maximum of cube averages over one side length. For ALL families
// this is a sliding-window max over the anchor averages; in a dyadic family
// every cell lies in exactly one cube of each side.
SideResult side_maximal(const WeightGrid& w, const PrefixTable& pt, std::int64_t m,
                        FamilyMode mode) {
    const Grid& g = w.grid();
    const std::int64_t n = g.cells_per_axis();
    const std::int64_t cells = g.cell_count();
    SideResult out;
    out.value.resize(static_cast<std::size_t>(cells));
    out.witness.resize(static_cast<std::size_t>(cells));

    if (mode == FamilyMode::dyadic) {
        // Aligned anchors only; boundary cells of a non-power-of-two grid may
        // be uncovered at this side.
        for (std::int64_t x = 0; x < cells; ++x) {
            const std::int64_t row = g.dim() == 1 ? x : x / n;
            const std::int64_t col = g.dim() == 1 ? 0 : x % n;
            const Cube q{{(row / m) * m, (col / m) * m}, m};
            if (q.anchor[0] + m > n || (g.dim() == 2 && q.anchor[1] + m > n)) {
                out.value[static_cast<std::size_t>(x)] =
                    -std::numeric_limits<double>::infinity();
                out.witness[static_cast<std::size_t>(x)] = Cube{{row, col}, 1};
                continue;
            }
            out.value[static_cast<std::size_t>(x)] = pt.cube_average(q);
            out.witness[static_cast<std::size_t>(x)] = q;
        }
        return out;
    }

    if (g.dim() == 1) {
        const std::int64_t na = n - m + 1;
        std::vector<double> avg(static_cast<std::size_t>(na));
        for (std::int64_t a = 0; a < na; ++a)
            avg[static_cast<std::size_t>(a)] = pt.cube_average(Cube{{a, 0}, m});
        auto sm = detail::sliding_max(avg, m, n);
        out.value = std::move(sm.value);
        for (std::int64_t x = 0; x < n; ++x)
            out.witness[static_cast<std::size_t>(x)] =
                Cube{{sm.argmax[static_cast<std::size_t>(x)], 0}, m};
    } else {
        const std::int64_t na = n - m + 1;
        std::vector<double> avg(static_cast<std::size_t>(na * na));
        for (std::int64_t r = 0; r < na; ++r)
            for (std::int64_t c = 0; c < na; ++c)
                avg[static_cast<std::size_t>(r * na + c)] = pt.cube_average(Cube{{r, c}, m});
        auto sm = detail::sliding_max_2d(avg, na, na, m, n);
        out.value = std::move(sm.value);
        for (std::int64_t i = 0; i < cells; ++i) {
            const auto& a = sm.argmax[static_cast<std::size_t>(i)];
            out.witness[static_cast<std::size_t>(i)] = Cube{{a[0], a[1]}, m};
        }
    }
    return out;
}

}  // namespace

MaximalResult maximal(const WeightGrid& w, const CubeFamilySpec& family) {
    const Grid& g = w.grid();
    const PrefixTable pt(w);
    const CubeFamily fam(g, family);
    const auto& sides = fam.sides();
    const std::int64_t cells = g.cell_count();

    std::vector<double> best(static_cast<std::size_t>(cells),
                             -std::numeric_limits<double>::infinity());
    std::vector<Cube> witness(static_cast<std::size_t>(cells));

    // Sizes run in blocks: each block computed in parallel, merged in
    // ascending side order so ties resolve to the family-order-first cube.
    const std::size_t block = std::max<std::size_t>(thread_budget(), 1);
    for (std::size_t s0 = 0; s0 < sides.size(); s0 += block) {
        const std::size_t s1 = std::min(sides.size(), s0 + block);
        std::vector<SideResult> results(s1 - s0);
        parallel_for(s1 - s0, [&](std::size_t i) {
            results[i] = side_maximal(w, pt, sides[s0 + i], family.mode);
        });
        for (const auto& sr : results) {
            for (std::int64_t x = 0; x < cells; ++x) {
                if (sr.value[static_cast<std::size_t>(x)] > best[static_cast<std::size_t>(x)]) {
                    best[static_cast<std::size_t>(x)] = sr.value[static_cast<std::size_t>(x)];
                    witness[static_cast<std::size_t>(x)] = sr.witness[static_cast<std::size_t>(x)];
                }
            }
        }
    }
    return MaximalResult{WeightGrid::nonnegative(g, std::move(best)), std::move(witness)};
}

WeightGrid maximal_power(const WeightGrid& w, double s, const CubeFamilySpec& family) {
    if (s < 1.0) throw Error(errc::invalid_exponent, "maximal_power needs s >= 1");
    MaximalResult mw = maximal(w, family);
    if (s == 1.0) return mw.output;
    const WeightGrid powered = w.map([s](double v) { return pow_value(v, s); });
    MaximalResult mp = maximal(powered, family);
    const double inv = 1.0 / s;
    std::vector<double> out(static_cast<std::size_t>(w.size()));
    for (std::int64_t i = 0; i < w.size(); ++i) {
        const double root = pow_value(mp.output.value(i), inv);
        out[static_cast<std::size_t>(i)] = std::max(root, mw.output.value(i));
    }
    return WeightGrid::nonnegative(w.grid(), std::move(out));
}

WeightGrid maximal_iterate(const WeightGrid& w, int k, const CubeFamilySpec& family) {
    if (k < 1) throw Error(errc::invalid_exponent, "maximal_iterate needs k >= 1");
    WeightGrid out = maximal(w, family).output;
    for (int i = 1; i < k; ++i) out = maximal(out, family).output;
    return out;
}

}  // namespace ainfty
