#include "ainfty/fixtures.hpp"

#include <cmath>

namespace ainfty {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

double inverse_normal_cdf(double p) {
    // Acklam's rational approximation, |relative error| < 1.15e-9.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {

double floor_value(double v, bool* floored) {
    if (!(v > kWeightFloor)) {
        if (floored) *floored = true;
        return kWeightFloor;
    }
    if (v > 1e300) {  // keeps |x-c|^a with a < 0 finite at the singular cell
        if (floored) *floored = true;
        return 1e300;
    }
    return v;
}

}  // namespace

WeightGrid generate(const WeightSpec& spec, bool* floored) {
    if (floored) *floored = false;
    const Grid grid(spec.dim, spec.cells_per_axis, spec.lo, spec.hi);
    const std::int64_t count = grid.cell_count();
    const std::int64_t n = grid.cells_per_axis();
    std::vector<double> v(static_cast<std::size_t>(count));

    if (const auto* k = std::get_if<ConstantSpec>(&spec.kind)) {
        if (!(k->c > 0.0) || !std::isfinite(k->c))
            throw Error(errc::invalid_spec, "constant must be positive");
        for (auto& x : v) x = k->c;
    } else if (const auto* k = std::get_if<PowerSpec>(&spec.kind)) {
        for (std::int64_t i = 0; i < count; ++i) {
            double dist;
            if (spec.dim == 1) {
                dist = std::abs(grid.center(0, i) - k->center);
            } else {
                const double dx = grid.center(0, i / n) - k->center;
                const double dy = grid.center(1, i % n) - k->center;
                dist = std::hypot(dx, dy);
            }
            v[static_cast<std::size_t>(i)] = floor_value(std::pow(dist, k->a), floored);
        }
    } else if (const auto* k = std::get_if<StepSpec>(&spec.kind)) {
        if (k->levels.empty()) throw Error(errc::invalid_spec, "step needs levels");
        const auto L = static_cast<std::int64_t>(k->levels.size());
        for (std::int64_t i = 0; i < count; ++i) {
            const double lvl = k->levels[static_cast<std::size_t>(i * L / count)];
            v[static_cast<std::size_t>(i)] = floor_value(lvl, floored);
        }
    } else if (const auto* k = std::get_if<SpikeSpec>(&spec.kind)) {
        const std::int64_t pos = k->position < 0 ? count - 1 : k->position;
        if (pos >= count) throw Error(errc::invalid_spec, "spike position out of range");
        for (auto& x : v) x = floor_value(k->eps, floored);
        v[static_cast<std::size_t>(pos)] = floor_value(k->peak, floored);
    } else if (const auto* k = std::get_if<MonotoneSpec>(&spec.kind)) {
        if (!(k->ratio > 0.0)) throw Error(errc::invalid_spec, "ratio must be positive");
        double x = 1.0;
        for (std::int64_t i = 0; i < count; ++i) {
            v[static_cast<std::size_t>(i)] = floor_value(std::min(x, 1e12), floored);
            x *= k->ratio;
            if (x > 1e12) x = 1e12;
            if (x < 1e-12) x = 1e-12;
        }
    } else if (const auto* k = std::get_if<LognormalSpec>(&spec.kind)) {
        std::uint64_t state = k->seed;
        for (auto& x : v)
            x = floor_value(std::exp(k->sigma * inverse_normal_cdf(uniform01(state))), floored);
    }
    return WeightGrid(grid, std::move(v));
}

WeightGrid refine(const WeightGrid& w, std::int64_t factor) {
    if (factor < 2) throw Error(errc::invalid_spec, "refine factor must be >= 2");
    const Grid& g = w.grid();
    const std::int64_t n = g.cells_per_axis();
    const std::int64_t nf = n * factor;
    const Grid fine(g.dim(), nf, {g.lo(0), g.lo(1)}, {g.hi(0), g.hi(1)});
    std::vector<double> v(static_cast<std::size_t>(fine.cell_count()));
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i < nf; ++i)
            v[static_cast<std::size_t>(i)] = w.value(i / factor);
    } else {
        for (std::int64_t r = 0; r < nf; ++r)
            for (std::int64_t c = 0; c < nf; ++c)
                v[static_cast<std::size_t>(r * nf + c)] = w.value((r / factor) * n + c / factor);
    }
    return WeightGrid(fine, std::move(v));
}

WeightGrid fixture_f1() {
    WeightSpec spec;
    spec.dim = 1;
    spec.cells_per_axis = 4;
    spec.kind = StepSpec{{1.0, 3.0, 2.0, 6.0}};
    return generate(spec);
}

WeightGrid random_weight(int dim, std::int64_t cells_per_axis, std::uint64_t seed) {
    std::uint64_t state = seed * 0x9E3779B97F4A7C15ull + 0x42ull;
    const std::uint64_t shape = splitmix64(state) % 4;
    const Grid grid = Grid::unit(dim, cells_per_axis);
    std::vector<double> v(static_cast<std::size_t>(grid.cell_count()));
    switch (shape) {
        case 0: {  // lognormal
            const double sigma = 0.25 + 1.5 * uniform01(state);
            for (auto& x : v) x = std::exp(sigma * inverse_normal_cdf(uniform01(state)));
            break;
        }
        case 1: {  // two-level with a random split
            const double lo = 0.5 + uniform01(state);
            const double hi = lo * (2.0 + 100.0 * uniform01(state));
            for (auto& x : v) x = uniform01(state) < 0.5 ? lo : hi;
            break;
        }
        case 2: {  // spiky lognormal
            for (auto& x : v) {
                x = std::exp(0.5 * inverse_normal_cdf(uniform01(state)));
                if (uniform01(state) < 0.1) x *= 1e4;
            }
            break;
        }
        default: {  // smooth ramp with noise
            const double slope = 0.5 + 4.0 * uniform01(state);
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = 1.0 + slope * static_cast<double>(i) / static_cast<double>(v.size()) +
                       0.2 * uniform01(state);
            break;
        }
    }
    return WeightGrid(grid, std::move(v));
}

std::vector<NamedWeight> standard_suite() {
    std::vector<NamedWeight> suite;
    suite.push_back({"f1", fixture_f1()});

    WeightSpec s;
    s.dim = 1;
    s.cells_per_axis = 4;
    s.kind = ConstantSpec{2.0};
    suite.push_back({"const2_n4", generate(s)});

    s.cells_per_axis = 16;
    s.kind = ConstantSpec{1.0};
    suite.push_back({"const1_n16", generate(s)});

    s.cells_per_axis = 8;
    s.kind = SpikeSpec{1e-6, 1.0, -1};
    suite.push_back({"spike_n8", generate(s)});

    s.cells_per_axis = 8;
    s.kind = MonotoneSpec{2.0};
    suite.push_back({"monotone_n8", generate(s)});

    s.cells_per_axis = 4;
    s.kind = StepSpec{{1.0, 1.0, 100.0, 100.0}};
    suite.push_back({"twolevel_n4", generate(s)});

    s.cells_per_axis = 32;
    s.kind = PowerSpec{0.5, 0.5};
    suite.push_back({"power_half_n32", generate(s)});

    s.cells_per_axis = 32;
    s.kind = PowerSpec{-0.5, 0.25};
    suite.push_back({"power_neg_n32", generate(s)});

    s.cells_per_axis = 32;
    s.kind = LognormalSpec{7, 1.0};
    suite.push_back({"lognormal_n32", generate(s)});

    s.dim = 2;
    s.cells_per_axis = 6;
    s.kind = LognormalSpec{11, 0.8};
    suite.push_back({"lognormal_2d_n6", generate(s)});

    s.dim = 2;
    s.cells_per_axis = 4;
    s.kind = SpikeSpec{1e-4, 1.0, 5};
    suite.push_back({"spike_2d_n4", generate(s)});

    s.dim = 2;
    s.cells_per_axis = 4;
    s.kind = ConstantSpec{3.0};
    suite.push_back({"const3_2d_n4", generate(s)});

    return suite;
}

}  // namespace ainfty
