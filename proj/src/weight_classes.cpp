#include "ainfty/weight_classes.hpp"

#include <algorithm>
#include <cmath>

namespace ainfty {

namespace detail {

RatioMax max_ratio_exact(const WeightGrid& numer, const WeightGrid& denom) {
    RatioMax best{0, numer.value(0) / denom.value(0)};
    for (std::int64_t i = 1; i < numer.size(); ++i) {
        if (exact::compare_ratios(numer.value(i), denom.value(i), numer.value(best.cell),
                                  denom.value(best.cell)) > 0) {
            best.cell = i;
            best.ratio = numer.value(i) / denom.value(i);
        }
    }
    return best;
}

Cube double_cube(const Cube& q) {
    const std::int64_t off = q.side / 2;
    return Cube{{q.anchor[0] - off, q.anchor[1] - off}, 2 * q.side};
}

bool cube_inside(const Grid& g, const Cube& q) {
    const std::int64_t n = g.cells_per_axis();
    if (q.anchor[0] < 0 || q.anchor[0] + q.side > n) return false;
    if (g.dim() == 2 && (q.anchor[1] < 0 || q.anchor[1] + q.side > n)) return false;
    return true;
}

namespace {

void collect_cells(const Grid& g, const Cube& q, std::vector<double>& out,
                   const std::vector<double>& values) {
    out.clear();
    const std::int64_t n = g.cells_per_axis();
    if (g.dim() == 1) {
        for (std::int64_t i = q.anchor[0]; i < q.anchor[0] + q.side; ++i)
            out.push_back(values[static_cast<std::size_t>(i)]);
    } else {
        for (std::int64_t r = q.anchor[0]; r < q.anchor[0] + q.side; ++r)
            for (std::int64_t c = q.anchor[1]; c < q.anchor[1] + q.side; ++c)
                out.push_back(values[static_cast<std::size_t>(r * n + c)]);
    }
}

}  // namespace

}  // namespace detail

ConstantReport a1_constant(const WeightGrid& w, const CubeFamilySpec& family) {
    const WeightGrid mw = maximal(w, family).output;
    const auto rm = detail::max_ratio_exact(mw, w);
    ConstantReport rep;
    rep.name = "A1";
    rep.value = rm.ratio;
    rep.witness_cell = rm.cell;
    return rep;
}

ConstantReport ap_constant(const WeightGrid& w, double p, const CubeFamilySpec& family) {
    if (!(p > 1.0)) throw Error(errc::invalid_exponent, "Ap needs p > 1");
    const double dual_exp = -1.0 / (p - 1.0);
    const WeightGrid sigma = w.map([&](double v) { return pow_value(v, dual_exp); });
    const PrefixTable pw(w);
    const PrefixTable ps(sigma);

    ConstantReport rep;
    rep.name = "Ap";
    rep.params["p"] = p;
    double best = -1.0;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double term =
            pw.cube_average(q) * pow_value(ps.cube_average(q), p - 1.0);
        if (term > best) {
            best = term;
            rep.witness_cube = q;
        }
    }
    rep.value = std::max(best, 1.0);
    return rep;
}

ConstantReport ainf_sublevel_beta(const WeightGrid& w, double alpha,
                                  const CubeFamilySpec& family) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(errc::invalid_exponent, "alpha must lie in (0,1)");
    const PrefixTable pt(w);
    ConstantReport rep;
    rep.name = "sublevel_beta";
    rep.params["alpha"] = alpha;
    double best = -1.0;
    std::vector<double> cells;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double thr = alpha * pt.cube_average(q);
        detail::collect_cells(w.grid(), q, cells, w.values());
        std::int64_t below = 0;
        for (double v : cells)
            if (v <= thr) ++below;
        const double frac =
            static_cast<double>(below) / static_cast<double>(q.cell_count(w.grid().dim()));
        if (frac > best) {
            best = frac;
            rep.witness_cube = q;
            rep.witness_threshold = thr;
        }
    }
    rep.value = best;
    return rep;
}

ConstantReport rhi_constant(const WeightGrid& w, double r, const CubeFamilySpec& family) {
    if (!(r > 1.0)) throw Error(errc::invalid_exponent, "RHI needs r > 1");
    const WeightGrid powered = w.map([&](double v) { return pow_value(v, r); });
    const PrefixTable pw(w);
    const PrefixTable pr(powered);

    ConstantReport rep;
    rep.name = "RHI";
    rep.params["r"] = r;
    double best = -1.0;
    const double inv = 1.0 / r;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double term = pow_value(pr.cube_average(q), inv) / pw.cube_average(q);
        if (term > best) {
            best = term;
            rep.witness_cube = q;
        }
    }
    rep.value = std::max(best, 1.0);
    return rep;
}

ConstantReport doubling_constant(const WeightGrid& w, const CubeFamilySpec& family) {
    const PrefixTable pt(w);
    ConstantReport rep;
    rep.name = "doubling";
    double best = -1.0;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const Cube dbl = detail::double_cube(q);
        if (!detail::cube_inside(w.grid(), dbl)) continue;
        const double ratio = pt.cube_sum(dbl) / pt.cube_sum(q);
        if (ratio > best) {
            best = ratio;
            rep.witness_cube = q;
        }
    }
    if (best < 0.0)
        throw Error(errc::not_computable, "no cube admits a concentric double inside the box");
    rep.value = best;
    return rep;
}

ConstantReport weak_ainf_constant(const WeightGrid& w, double delta,
                                  const CubeFamilySpec& family) {
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "delta must lie in (0,1)");
    const PrefixTable pt(w);
    ConstantReport rep;
    rep.name = "weak_Ainf";
    rep.params["delta"] = delta;
    double best = -1.0;
    std::vector<double> cells;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const Cube dbl = detail::double_cube(q);
        if (!detail::cube_inside(w.grid(), dbl)) continue;
        const double mass_2q = pt.cube_sum(dbl);
        const auto cnt_q = static_cast<double>(q.cell_count(w.grid().dim()));

        detail::collect_cells(w.grid(), q, cells, w.values());
        std::sort(cells.begin(), cells.end());
        // Thresholds ascending through 0 and the distinct values, with an
        // exact running sum of the strictly-above cells; t = 0 sees all of Q.
        exact::Sum above;
        for (double v : cells) above.add(v);
        std::size_t removed = 0;
        auto consider = [&](double t) {
            while (removed < cells.size() && cells[removed] <= t) above.subtract(cells[removed++]);
            const auto n_above = static_cast<std::int64_t>(cells.size() - removed);
            if (n_above == 0) return;
            const double term = above.round() *
                                pow_value(cnt_q / static_cast<double>(n_above), delta) /
                                mass_2q;
            if (term > best) {
                best = term;
                rep.witness_cube = q;
                rep.witness_threshold = t;
            }
        };
        consider(0.0);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i + 1 < cells.size() && cells[i + 1] == cells[i]) continue;  // distinct only
            consider(cells[i]);
        }
    }
    if (best < 0.0)
        throw Error(errc::not_computable, "no cube admits a concentric double inside the box");
    rep.value = best;
    return rep;
}

}  // namespace ainfty
