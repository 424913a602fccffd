#include "ainfty/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ainfty/rearrangement.hpp"

namespace ainfty::oracle {

namespace {

std::vector<double> cube_cells(const WeightGrid& w, const Cube& q) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(q.cell_count(w.grid().dim())));
    const std::int64_t n = w.grid().cells_per_axis();
    if (w.grid().dim() == 1) {
        for (std::int64_t i = q.anchor[0]; i < q.anchor[0] + q.side; ++i)
            out.push_back(w.value(i));
    } else {
        for (std::int64_t r = q.anchor[0]; r < q.anchor[0] + q.side; ++r)
            for (std::int64_t c = q.anchor[1]; c < q.anchor[1] + q.side; ++c)
                out.push_back(w.value(r * n + c));
    }
    return out;
}

// Applies f(flat_index) to every cell of the cube.
template <typename F>
void for_cells(const Grid& g, const Cube& q, F&& f) {
    const std::int64_t n = g.cells_per_axis();
    if (g.dim() == 1) {
        for (std::int64_t i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) f(i);
    } else {
        for (std::int64_t r = q.anchor[0]; r < q.anchor[0] + q.side; ++r)
            for (std::int64_t c = q.anchor[1]; c < q.anchor[1] + q.side; ++c) f(r * n + c);
    }
}

// Cube-by-cube supremum in family order: per cell, strict improvement keeps
// the first cube in family order, matching the fast paths' tie rule.
template <typename Stat>
WeightGrid sup_over_cubes(const WeightGrid& w, const CubeFamilySpec& family, Stat&& stat,
                          std::vector<Cube>* witness = nullptr) {
    const std::int64_t cells = w.grid().cell_count();
    std::vector<double> best(static_cast<std::size_t>(cells),
                             -std::numeric_limits<double>::infinity());
    if (witness) witness->resize(static_cast<std::size_t>(cells));
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double v = stat(q);
        for_cells(w.grid(), q, [&](std::int64_t x) {
            if (v > best[static_cast<std::size_t>(x)]) {
                best[static_cast<std::size_t>(x)] = v;
                if (witness) (*witness)[static_cast<std::size_t>(x)] = q;
            }
        });
    }
    return WeightGrid::nonnegative(w.grid(), std::move(best));
}

// --- stack-based exact helpers for the midpoint scan ------------------------

// Shewchuk grow-expansion with zero elimination; out needs len+1 slots.
inline int grow_small(const double* e, int len, double b, double* out) {
    double q = b;
    int n = 0;
    for (int i = 0; i < len; ++i) {
        double s, err;
        exact::two_sum(q, e[i], s, err);
        if (err != 0.0) out[n++] = err;
        q = s;
    }
    if (q != 0.0) out[n++] = q;
    return n;
}

// Deviation doubled: 2 v_l - v_p - v_q as an exact expansion (<= 3 terms).
struct Dev {
    double e[3];
    int len;
    int sgn;  // -1, 0, +1
};

inline Dev make_dev(double vl2, double vp, double vq) {
    double t1[1] = {vl2};
    double t2[3];
    double t3[4];
    int n = grow_small(t1, 1, -vp, t2);
    n = grow_small(t2, n, -vq, t3);
    Dev d;
    d.len = n;
    for (int i = 0; i < n; ++i) d.e[i] = t3[i];
    d.sgn = n == 0 ? 0 : (d.e[n - 1] > 0.0 ? 1 : -1);
    return d;
}

// sign of (|a| - |b|), exactly. The top components bound the exact values
// within one part in 2^52, so clear separations resolve without the exact
// fallback.
inline int abs_compare(const Dev& a, const Dev& b) {
    const double ta = a.len == 0 ? 0.0 : std::abs(a.e[a.len - 1]);
    const double tb = b.len == 0 ? 0.0 : std::abs(b.e[b.len - 1]);
    if (ta > tb + tb * 1e-15) return 1;
    if (tb > ta + ta * 1e-15) return -1;
    double buf1[8], buf2[8];
    int n = 0;
    double cur[8];
    int cur_len = 0;
    for (int i = 0; i < a.len; ++i) {
        n = grow_small(cur, cur_len, a.sgn < 0 ? -a.e[i] : a.e[i], buf1);
        std::copy(buf1, buf1 + n, cur);
        cur_len = n;
    }
    for (int i = 0; i < b.len; ++i) {
        n = grow_small(cur, cur_len, b.sgn < 0 ? b.e[i] : -b.e[i], buf2);
        std::copy(buf2, buf2 + n, cur);
        cur_len = n;
    }
    if (cur_len == 0) return 0;
    return cur[cur_len - 1] > 0.0 ? 1 : -1;
}

// sign of (|d|/2 - best), exactly; best >= 0 finite.
inline int compare_to_best(const Dev& d, double best) {
    const double td = d.len == 0 ? 0.0 : std::abs(d.e[d.len - 1]);
    const double b2 = 2.0 * best;
    if (td > b2 + b2 * 1e-15) return 1;
    if (b2 > td + td * 1e-15) return -1;
    double buf[8], cur[8];
    int cur_len = 0, n = 0;
    for (int i = 0; i < d.len; ++i) {
        n = grow_small(cur, cur_len, d.sgn < 0 ? -d.e[i] : d.e[i], buf);
        std::copy(buf, buf + n, cur);
        cur_len = n;
    }
    n = grow_small(cur, cur_len, -2.0 * best, buf);
    if (n == 0) return 0;
    return buf[n - 1] > 0.0 ? 1 : -1;
}

inline double round_half(const Dev& d) {
    exact::Sum s;
    for (int i = 0; i < d.len; ++i) s.add(d.e[i]);
    if (d.sgn < 0) s.negate();
    return s.divide_rounded(2.0);
}

// Best-constant residual by definition: scan c over all midpoints of value
// pairs; for each candidate take the k-th largest deviation via the V-shaped
// two-pointer walk. Steps compare in doubles when the separation beats the
// rounding-error bound and fall back to exact expansions near ties.
double local_sharp_window_scan(const std::vector<double>& sorted_asc, std::int64_t k) {
    const auto cnt = static_cast<std::int64_t>(sorted_asc.size());
    double best = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::int64_t p = 0; p < cnt; ++p) {
        for (std::int64_t q = p; q < cnt; ++q) {
            const double vp = sorted_asc[static_cast<std::size_t>(p)];
            const double vq = sorted_asc[static_cast<std::size_t>(q)];
            const double s = vp + vq;
            // |fl(2v - s) - (2v - vp - vq)| <= err(v): one rounding in s, one
            // in the subtraction.
            auto err = [&](double v2) { return 2.3e-16 * (s + std::abs(v2)); };
            auto dev2 = [&](std::int64_t l) {
                return std::abs(2.0 * sorted_asc[static_cast<std::size_t>(l)] - s);
            };
            std::int64_t lo = 0, hi = cnt - 1;
            std::int64_t taken_idx = 0;
            for (std::int64_t step = 0; step <= k; ++step) {
                const double v2lo = 2.0 * sorted_asc[static_cast<std::size_t>(lo)];
                const double v2hi = 2.0 * sorted_asc[static_cast<std::size_t>(hi)];
                const double da = dev2(lo), db = dev2(hi);
                const double margin = err(v2lo) + err(v2hi);
                int cmp;
                if (da > db + margin)
                    cmp = 1;
                else if (db > da + margin)
                    cmp = -1;
                else
                    cmp = abs_compare(make_dev(v2lo, vp, vq), make_dev(v2hi, vp, vq));
                if (cmp >= 0) {
                    taken_idx = lo;
                    ++lo;
                } else {
                    taken_idx = hi;
                    --hi;
                }
            }
            const double v2t = 2.0 * sorted_asc[static_cast<std::size_t>(taken_idx)];
            const double dt = dev2(taken_idx);
            if (have_best && dt > 2.0 * best + err(v2t)) continue;
            const Dev taken = make_dev(v2t, vp, vq);
            if (!have_best || compare_to_best(taken, best) < 0) {
                best = round_half(taken);
                have_best = true;
            }
        }
    }
    return best;
}

}  // namespace

bool size_ok(const Grid& g) {
    return g.cells_per_axis() <= (g.dim() == 1 ? 64 : 16);
}

void check_size(const Grid& g) {
    if (!size_ok(g))
        throw Error(errc::oracle_refused, "oracle limits: 64 cells/axis in 1D, 16 in 2D");
}

MaximalResult maximal(const WeightGrid& w, const CubeFamilySpec& family) {
    check_size(w.grid());
    std::vector<Cube> witness;
    WeightGrid out = sup_over_cubes(
        w, family, [&](const Cube& q) { return cube_average(w, q); }, &witness);
    return MaximalResult{std::move(out), std::move(witness)};
}

WeightGrid maximal_power(const WeightGrid& w, double s, const CubeFamilySpec& family) {
    if (s < 1.0) throw Error(errc::invalid_exponent, "maximal_power needs s >= 1");
    const WeightGrid mw = oracle::maximal(w, family).output;
    if (s == 1.0) return mw;
    const WeightGrid powered = w.map([s](double v) { return pow_value(v, s); });
    const WeightGrid mp = oracle::maximal(powered, family).output;
    const double inv = 1.0 / s;
    std::vector<double> out(static_cast<std::size_t>(w.size()));
    for (std::int64_t i = 0; i < w.size(); ++i)
        out[static_cast<std::size_t>(i)] = std::max(pow_value(mp.value(i), inv), mw.value(i));
    return WeightGrid::nonnegative(w.grid(), std::move(out));
}

WeightGrid maximal_iterate(const WeightGrid& w, int k, const CubeFamilySpec& family) {
    if (k < 1) throw Error(errc::invalid_exponent, "maximal_iterate needs k >= 1");
    WeightGrid out = oracle::maximal(w, family).output;
    for (int i = 1; i < k; ++i) out = oracle::maximal(out, family).output;
    return out;
}

double rearrangement(const WeightGrid& w, const Cube& q, double t) {
    check_size(w.grid());
    validate_cube(w.grid(), q);
    if (t < 0.0) throw Error(errc::invalid_spec, "t must be nonnegative");
    const std::int64_t cnt = q.cell_count(w.grid().dim());
    const double pos = t / w.grid().cell_volume();
    if (pos >= static_cast<double>(cnt)) return 0.0;
    const auto k = static_cast<std::int64_t>(std::floor(pos));

    // inf over alpha of |{|w| > alpha}| <= k, scanned over the value set.
    std::vector<double> vals = cube_cells(w, q);
    for (double& v : vals) v = std::abs(v);
    std::vector<double> candidates = vals;
    candidates.push_back(0.0);
    std::sort(candidates.begin(), candidates.end());
    for (double alpha : candidates) {
        std::int64_t above = 0;
        for (double v : vals)
            if (v > alpha) ++above;
        if (above <= k) return alpha;
    }
    return *std::max_element(vals.begin(), vals.end());
}

WeightGrid local_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family) {
    check_size(w.grid());
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error(errc::invalid_exponent, "lambda must lie in (0,1)");
    return sup_over_cubes(w, family, [&](const Cube& q) {
        std::vector<double> vals = cube_cells(w, q);
        for (double& v : vals) v = std::abs(v);
        const std::int64_t k = lambda_index(lambda, static_cast<std::int64_t>(vals.size()));
        return detail::kth_desc(vals, k);
    });
}

WeightGrid sharp_maximal(const WeightGrid& w, const CubeFamilySpec& family) {
    check_size(w.grid());
    return sup_over_cubes(w, family, [&](const Cube& q) {
        const std::vector<double> vals = cube_cells(w, q);
        const double mu = cube_average(w, q);
        exact::Sum s_above, s_all;
        std::int64_t n_above = 0;
        for (double v : vals) {
            s_all.add(v);
            if (v > mu) {
                s_above.add(v);
                ++n_above;
            }
        }
        return detail::mad_mean(s_above, n_above, s_all,
                                static_cast<std::int64_t>(vals.size()), mu);
    });
}

WeightGrid local_sharp_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family) {
    check_size(w.grid());
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error(errc::invalid_exponent, "lambda must lie in (0,1)");
    return sup_over_cubes(w, family, [&](const Cube& q) {
        std::vector<double> vals = cube_cells(w, q);
        std::sort(vals.begin(), vals.end());
        const std::int64_t k = lambda_index(lambda, static_cast<std::int64_t>(vals.size()));
        return local_sharp_window_scan(vals, k);
    });
}

ConstantReport a1_constant(const WeightGrid& w, const CubeFamilySpec& family) {
    check_size(w.grid());
    const WeightGrid mw = oracle::maximal(w, family).output;
    ConstantReport rep;
    rep.name = "A1";
    std::int64_t best = 0;
    for (std::int64_t i = 1; i < w.size(); ++i)
        if (exact::compare_ratios(mw.value(i), w.value(i), mw.value(best), w.value(best)) > 0)
            best = i;
    rep.value = mw.value(best) / w.value(best);
    rep.witness_cell = best;
    return rep;
}

ConstantReport ap_constant(const WeightGrid& w, double p, const CubeFamilySpec& family) {
    check_size(w.grid());
    if (!(p > 1.0)) throw Error(errc::invalid_exponent, "Ap needs p > 1");
    const double dual_exp = -1.0 / (p - 1.0);
    const WeightGrid sigma = w.map([&](double v) { return pow_value(v, dual_exp); });
    ConstantReport rep;
    rep.name = "Ap";
    rep.params["p"] = p;
    double best = -1.0;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double term = cube_average(w, q) * pow_value(cube_average(sigma, q), p - 1.0);
        if (term > best) {
            best = term;
            rep.witness_cube = q;
        }
    }
    rep.value = std::max(best, 1.0);
    return rep;
}

ConstantReport rhi_constant(const WeightGrid& w, double r, const CubeFamilySpec& family) {
    check_size(w.grid());
    if (!(r > 1.0)) throw Error(errc::invalid_exponent, "RHI needs r > 1");
    const WeightGrid powered = w.map([&](double v) { return pow_value(v, r); });
    ConstantReport rep;
    rep.name = "RHI";
    rep.params["r"] = r;
    double best = -1.0;
    const double inv = 1.0 / r;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double term = pow_value(cube_average(powered, q), inv) / cube_average(w, q);
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
    check_size(w.grid());
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(errc::invalid_exponent, "alpha must lie in (0,1)");
    ConstantReport rep;
    rep.name = "sublevel_beta";
    rep.params["alpha"] = alpha;
    double best = -1.0;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const double thr = alpha * cube_average(w, q);
        const std::vector<double> vals = cube_cells(w, q);
        std::int64_t below = 0;
        for (double v : vals)
            if (v <= thr) ++below;
        const double frac = static_cast<double>(below) / static_cast<double>(vals.size());
        if (frac > best) {
            best = frac;
            rep.witness_cube = q;
            rep.witness_threshold = thr;
        }
    }
    rep.value = best;
    return rep;
}

ConstantReport weak_ainf_constant(const WeightGrid& w, double delta,
                                  const CubeFamilySpec& family) {
    check_size(w.grid());
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "delta must lie in (0,1)");
    ConstantReport rep;
    rep.name = "weak_Ainf";
    rep.params["delta"] = delta;
    double best = -1.0;
    for (const Cube& q : enumerate_cubes(w.grid(), family)) {
        const Cube dbl = ainfty::detail::double_cube(q);
        if (!ainfty::detail::cube_inside(w.grid(), dbl)) continue;
        exact::Sum mass2;
        for (double v : cube_cells(w, dbl)) mass2.add(v);
        const double mass_2q = mass2.round();
        const std::vector<double> vals = cube_cells(w, q);
        const auto cnt_q = static_cast<double>(vals.size());

        std::vector<double> thresholds = vals;
        thresholds.push_back(0.0);
        std::sort(thresholds.begin(), thresholds.end());
        thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
        for (double t : thresholds) {
            exact::Sum mass;
            std::int64_t n_above = 0;
            for (double v : vals) {
                if (v > t) {
                    mass.add(v);
                    ++n_above;
                }
            }
            if (n_above == 0) continue;
            const double term = mass.round() *
                                pow_value(cnt_q / static_cast<double>(n_above), delta) /
                                mass_2q;
            if (term > best) {
                best = term;
                rep.witness_cube = q;
                rep.witness_threshold = t;
            }
        }
    }
    if (best < 0.0)
        throw Error(errc::not_computable, "no cube admits a concentric double inside the box");
    rep.value = best;
    return rep;
}

}  // namespace ainfty::oracle
