#include "ainfty/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ainfty/detail/sliding.hpp"
#include "ainfty/parallel.hpp"

namespace ainfty {

namespace detail {

double kth_desc(std::vector<double>& scratch, std::int64_t k) {
    const auto pos = scratch.begin() + static_cast<std::ptrdiff_t>(k);
    std::nth_element(scratch.begin(), pos, scratch.end(), std::greater<>());
    return *pos;
}

double mad_mean(const exact::Sum& s_above, std::int64_t n_above, const exact::Sum& s_all,
                std::int64_t cnt, double mu) {
    exact::Sum t(s_above);
    t.scale(2.0);
    exact::Sum above_mu(mu);
    above_mu.scale(2.0 * static_cast<double>(n_above));
    t.subtract(above_mu);
    t.subtract(s_all);
    exact::Sum all_mu(mu);
    all_mu.scale(static_cast<double>(cnt));
    t.add(all_mu);
    return t.divide_rounded(static_cast<double>(cnt));
}

double local_sharp_window(std::span<const double> sorted_asc, std::int64_t k) {
    const auto cnt = static_cast<std::int64_t>(sorted_asc.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i <= k; ++i) {
        const double half =
            (sorted_asc[static_cast<std::size_t>(i + cnt - k - 1)] -
             sorted_asc[static_cast<std::size_t>(i)]) /
            2.0;
        best = std::min(best, half);
    }
    return best;
}

namespace {

// Multiset pair tracking the k-th largest (0-based) of a sliding window:
// `high` holds the k+1 largest values.
class SlidingKth {
public:
    explicit SlidingKth(std::int64_t k) : cap_(k + 1) {}

    void insert(double v) {
        high_.insert(v);
        if (static_cast<std::int64_t>(high_.size()) > cap_) {
            auto lowest = high_.begin();
            low_.insert(*lowest);
            high_.erase(lowest);
        }
    }

    void erase(double v) {
        auto it = high_.find(v);
        if (it != high_.end()) {
            high_.erase(it);
            if (!low_.empty()) {
                auto top = std::prev(low_.end());
                high_.insert(*top);
                low_.erase(top);
            }
        } else {
            low_.erase(low_.find(v));
        }
    }

    double kth() const { return *high_.begin(); }

    void to_sorted(std::vector<double>& out) const {
        out.assign(low_.begin(), low_.end());
        out.insert(out.end(), high_.begin(), high_.end());
    }

private:
    std::int64_t cap_;
    std::multiset<double> high_;
    std::multiset<double> low_;
};

// Fenwick tree over the cells ordered by (value, index), tracking counts and
// exact sums of the current window membership.
class ValueFenwick {
public:
    explicit ValueFenwick(const std::vector<double>& cell_values) {
        const auto n = static_cast<std::int64_t>(cell_values.size());
        std::vector<std::int64_t> order(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
            const double va = cell_values[static_cast<std::size_t>(a)];
            const double vb = cell_values[static_cast<std::size_t>(b)];
            return va != vb ? va < vb : a < b;
        });
        slot_of_cell_.resize(static_cast<std::size_t>(n));
        slot_value_.resize(static_cast<std::size_t>(n));
        for (std::int64_t s = 0; s < n; ++s) {
            slot_of_cell_[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])] = s;
            slot_value_[static_cast<std::size_t>(s)] =
                cell_values[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])];
        }
        counts_.assign(static_cast<std::size_t>(n) + 1, 0);
        sums_.assign(static_cast<std::size_t>(n) + 1, exact::Sum());
        values_ = &cell_values;
    }

    void add_cell(std::int64_t flat) { update(flat, +1); }
    void remove_cell(std::int64_t flat) { update(flat, -1); }

    void clear() {
        std::fill(counts_.begin(), counts_.end(), 0);
        std::fill(sums_.begin(), sums_.end(), exact::Sum());
        total_count_ = 0;
        total_sum_ = exact::Sum();
    }

    std::int64_t count() const { return total_count_; }
    const exact::Sum& total() const { return total_sum_; }

    /// Count and exact sum of window members with value > mu.
    void above(double mu, exact::Sum& sum_out, std::int64_t& count_out) const {
        const auto first = std::upper_bound(slot_value_.begin(), slot_value_.end(), mu);
        const auto idx = static_cast<std::int64_t>(first - slot_value_.begin());
        exact::Sum below;
        std::int64_t below_count = 0;
        for (std::int64_t i = idx; i > 0; i -= i & -i) {
            below.add(sums_[static_cast<std::size_t>(i)]);
            below_count += counts_[static_cast<std::size_t>(i)];
        }
        sum_out = total_sum_;
        sum_out.subtract(below);
        count_out = total_count_ - below_count;
    }

private:
    void update(std::int64_t flat, int dir) {
        const double v = (*values_)[static_cast<std::size_t>(flat)];
        const double add = dir > 0 ? v : -v;
        const auto n = static_cast<std::int64_t>(slot_value_.size());
        for (std::int64_t i = slot_of_cell_[static_cast<std::size_t>(flat)] + 1; i <= n;
             i += i & -i) {
            counts_[static_cast<std::size_t>(i)] += dir;
            sums_[static_cast<std::size_t>(i)].add(add);
        }
        total_count_ += dir;
        total_sum_.add(add);
    }

    const std::vector<double>* values_ = nullptr;
    std::vector<std::int64_t> slot_of_cell_;
    std::vector<double> slot_value_;
    std::vector<std::int64_t> counts_;
    std::vector<exact::Sum> sums_;
    std::int64_t total_count_ = 0;
    exact::Sum total_sum_;
};

enum class WindowStat { order_kth, mad, local_sharp };

// Per-anchor window statistics for one side length, shared by the three
// rearrangement-style operators.
std::vector<double> window_stats(const WeightGrid& w, const PrefixTable& pt, std::int64_t m,
                                 WindowStat stat, double lambda) {
    const Grid& g = w.grid();
    const std::int64_t n = g.cells_per_axis();
    const std::int64_t cnt = g.dim() == 1 ? m : m * m;
    const std::int64_t k = lambda_index(lambda, cnt);
    const std::int64_t na = n - m + 1;
    const auto& vals = w.values();

    std::vector<double> out(static_cast<std::size_t>(g.dim() == 1 ? na : na * na));
    std::vector<double> scratch;

    auto eval_order = [&](SlidingKth& win) { return win.kth(); };
    auto eval_sharp = [&](SlidingKth& win) {
        win.to_sorted(scratch);
        return detail::local_sharp_window(scratch, k);
    };
    auto eval_mad = [&](const ValueFenwick& fw, const Cube& q) {
        const double mu = pt.cube_average(q);
        exact::Sum s_above;
        std::int64_t n_above = 0;
        fw.above(mu, s_above, n_above);
        return detail::mad_mean(s_above, n_above, fw.total(), cnt, mu);
    };

    if (stat == WindowStat::mad) {
        ValueFenwick fw(vals);
        if (g.dim() == 1) {
            for (std::int64_t i = 0; i < m; ++i) fw.add_cell(i);
            for (std::int64_t a = 0;; ++a) {
                out[static_cast<std::size_t>(a)] = eval_mad(fw, Cube{{a, 0}, m});
                if (a + 1 >= na) break;
                fw.remove_cell(a);
                fw.add_cell(a + m);
            }
        } else {
            for (std::int64_t r = 0; r < na; ++r) {
                fw.clear();
                for (std::int64_t rr = r; rr < r + m; ++rr)
                    for (std::int64_t cc = 0; cc < m; ++cc) fw.add_cell(rr * n + cc);
                for (std::int64_t c = 0;; ++c) {
                    out[static_cast<std::size_t>(r * na + c)] = eval_mad(fw, Cube{{r, c}, m});
                    if (c + 1 >= na) break;
                    for (std::int64_t rr = r; rr < r + m; ++rr) {
                        fw.remove_cell(rr * n + c);
                        fw.add_cell(rr * n + c + m);
                    }
                }
            }
        }
        return out;
    }

    SlidingKth win(k);
    auto eval = [&](SlidingKth& wdw) {
        return stat == WindowStat::order_kth ? eval_order(wdw) : eval_sharp(wdw);
    };
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i < m; ++i) win.insert(vals[static_cast<std::size_t>(i)]);
        for (std::int64_t a = 0;; ++a) {
            out[static_cast<std::size_t>(a)] = eval(win);
            if (a + 1 >= na) break;
            win.erase(vals[static_cast<std::size_t>(a)]);
            win.insert(vals[static_cast<std::size_t>(a + m)]);
        }
    } else {
        for (std::int64_t r = 0; r < na; ++r) {
            SlidingKth row_win(k);
            for (std::int64_t rr = r; rr < r + m; ++rr)
                for (std::int64_t cc = 0; cc < m; ++cc)
                    row_win.insert(vals[static_cast<std::size_t>(rr * n + cc)]);
            for (std::int64_t c = 0;; ++c) {
                out[static_cast<std::size_t>(r * na + c)] = eval(row_win);
                if (c + 1 >= na) break;
                for (std::int64_t rr = r; rr < r + m; ++rr) {
                    row_win.erase(vals[static_cast<std::size_t>(rr * n + c)]);
                    row_win.insert(vals[static_cast<std::size_t>(rr * n + c + m)]);
                }
            }
        }
    }
    return out;
}

// Shared driver: per-cell max over the family of a per-window statistic.
WeightGrid window_sup(const WeightGrid& w, const CubeFamilySpec& family, WindowStat stat,
                      double lambda) {
    const Grid& g = w.grid();
    const PrefixTable pt(w);
    const CubeFamily fam(g, family);
    const auto& sides = fam.sides();
    const std::int64_t n = g.cells_per_axis();
    const std::int64_t cells = g.cell_count();

    std::vector<double> best(static_cast<std::size_t>(cells),
                             -std::numeric_limits<double>::infinity());

    const std::size_t block = std::max<std::size_t>(thread_budget(), 1);
    for (std::size_t s0 = 0; s0 < sides.size(); s0 += block) {
        const std::size_t s1 = std::min(sides.size(), s0 + block);
        std::vector<std::vector<double>> stats(s1 - s0);
        parallel_for(s1 - s0, [&](std::size_t i) {
            stats[i] = window_stats(w, pt, sides[s0 + i], stat, lambda);
        });
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const std::int64_t m = sides[s0 + i];
            if (family.mode == FamilyMode::dyadic) {
                const std::int64_t na = n - m + 1;
                for (std::int64_t x = 0; x < cells; ++x) {
                    const std::int64_t row = g.dim() == 1 ? x : x / n;
                    const std::int64_t col = g.dim() == 1 ? 0 : x % n;
                    const std::int64_t ar = (row / m) * m;
                    const std::int64_t ac = (col / m) * m;
                    if (ar + m > n || (g.dim() == 2 && ac + m > n)) continue;
                    const double v = stats[i][static_cast<std::size_t>(
                        g.dim() == 1 ? ar : ar * na + ac)];
                    if (v > best[static_cast<std::size_t>(x)])
                        best[static_cast<std::size_t>(x)] = v;
                }
                continue;
            }
            if (g.dim() == 1) {
                auto sm = detail::sliding_max(stats[i], m, n);
                for (std::int64_t x = 0; x < cells; ++x)
                    if (sm.value[static_cast<std::size_t>(x)] > best[static_cast<std::size_t>(x)])
                        best[static_cast<std::size_t>(x)] = sm.value[static_cast<std::size_t>(x)];
            } else {
                const std::int64_t na = n - m + 1;
                auto sm = detail::sliding_max_2d(stats[i], na, na, m, n);
                for (std::int64_t x = 0; x < cells; ++x)
                    if (sm.value[static_cast<std::size_t>(x)] > best[static_cast<std::size_t>(x)])
                        best[static_cast<std::size_t>(x)] = sm.value[static_cast<std::size_t>(x)];
            }
        }
    }

    return WeightGrid::nonnegative(g, std::move(best));
}

}  // namespace

}  // namespace detail

double rearrangement(const WeightGrid& w, const Cube& q, double t) {
    validate_cube(w.grid(), q);
    if (t < 0.0) throw Error(errc::invalid_spec, "t must be nonnegative");
    const Grid& g = w.grid();
    const std::int64_t cnt = q.cell_count(g.dim());
    const double pos = t / g.cell_volume();
    if (pos >= static_cast<double>(cnt)) return 0.0;
    const auto k = static_cast<std::int64_t>(std::floor(pos));
    if (k >= cnt) return 0.0;

    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(cnt));
    const std::int64_t n = g.cells_per_axis();
    if (g.dim() == 1) {
        for (std::int64_t i = q.anchor[0]; i < q.anchor[0] + q.side; ++i)
            vals.push_back(std::abs(w.value(i)));
    } else {
        for (std::int64_t r = q.anchor[0]; r < q.anchor[0] + q.side; ++r)
            for (std::int64_t c = q.anchor[1]; c < q.anchor[1] + q.side; ++c)
                vals.push_back(std::abs(w.value(r * n + c)));
    }
    return detail::kth_desc(vals, k);
}

WeightGrid local_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error(errc::invalid_exponent, "lambda must lie in (0,1)");
    return detail::window_sup(w, family, detail::WindowStat::order_kth, lambda);
}

WeightGrid sharp_maximal(const WeightGrid& w, const CubeFamilySpec& family) {
    return detail::window_sup(w, family, detail::WindowStat::mad, 0.5);
}

WeightGrid local_sharp_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error(errc::invalid_exponent, "lambda must lie in (0,1)");
    return detail::window_sup(w, family, detail::WindowStat::local_sharp, lambda);
}

double bmo_norm(const WeightGrid& w, const CubeFamilySpec& family) {
    const WeightGrid sharp = sharp_maximal(w, family);
    double best = 0.0;
    for (std::int64_t i = 0; i < sharp.size(); ++i) best = std::max(best, sharp.value(i));
    return best;
}

}  // namespace ainfty
