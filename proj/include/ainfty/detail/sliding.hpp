#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace ainfty::detail {

/// Sliding maximum with witnesses. Input: one value per anchor position
/// (`count` of them); window w anchors cover cell x when a <= x < a + w,
/// clamped to the valid anchor range. Output per cell: the max value and the
/// smallest achieving anchor (ties keep the earliest anchor).
struct SlidingMax {
    std::vector<double> value;
    std::vector<std::int64_t> argmax;
};

inline SlidingMax sliding_max(std::span<const double> anchors, std::int64_t window,
                              std::int64_t cells) {
    SlidingMax out;
    out.value.resize(static_cast<std::size_t>(cells));
    out.argmax.resize(static_cast<std::size_t>(cells));
    std::deque<std::int64_t> dq;  // anchor indices, values strictly decreasing
    const auto n_anchors = static_cast<std::int64_t>(anchors.size());
    for (std::int64_t x = 0; x < cells; ++x) {
        if (x < n_anchors) {
            const double v = anchors[static_cast<std::size_t>(x)];
            while (!dq.empty() && anchors[static_cast<std::size_t>(dq.back())] < v)
                dq.pop_back();
            dq.push_back(x);
        }
        while (!dq.empty() && dq.front() < x - window + 1) dq.pop_front();
        out.value[static_cast<std::size_t>(x)] = anchors[static_cast<std::size_t>(dq.front())];
        out.argmax[static_cast<std::size_t>(x)] = dq.front();
    }
    return out;
}

/// 2D sliding maximum over an (ar x ac) anchor matrix with an (m x m) window,
/// producing per-cell maxima on the n x n cell grid with lexicographically
/// smallest (row, col) witnesses.
struct SlidingMax2D {
    std::vector<double> value;                          // n*n
    std::vector<std::array<std::int64_t, 2>> argmax;    // n*n
};

inline SlidingMax2D sliding_max_2d(std::span<const double> anchors, std::int64_t ar,
                                   std::int64_t ac, std::int64_t m, std::int64_t n) {
    // Row pass: per anchor row, max over anchor cols covering each cell col.
    std::vector<double> rv(static_cast<std::size_t>(ar * n));
    std::vector<std::int64_t> rc(static_cast<std::size_t>(ar * n));
    for (std::int64_t r = 0; r < ar; ++r) {
        auto row = anchors.subspan(static_cast<std::size_t>(r * ac), static_cast<std::size_t>(ac));
        SlidingMax sm = sliding_max(row, m, n);
        for (std::int64_t x = 0; x < n; ++x) {
            rv[static_cast<std::size_t>(r * n + x)] = sm.value[static_cast<std::size_t>(x)];
            rc[static_cast<std::size_t>(r * n + x)] = sm.argmax[static_cast<std::size_t>(x)];
        }
    }
    // Column pass: per cell col, max over anchor rows covering each cell row.
    SlidingMax2D out;
    out.value.resize(static_cast<std::size_t>(n * n));
    out.argmax.resize(static_cast<std::size_t>(n * n));
    std::vector<double> col(static_cast<std::size_t>(ar));
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t r = 0; r < ar; ++r)
            col[static_cast<std::size_t>(r)] = rv[static_cast<std::size_t>(r * n + x)];
        SlidingMax sm = sliding_max(col, m, n);
        for (std::int64_t y = 0; y < n; ++y) {
            const std::int64_t row = sm.argmax[static_cast<std::size_t>(y)];
            out.value[static_cast<std::size_t>(y * n + x)] = sm.value[static_cast<std::size_t>(y)];
            out.argmax[static_cast<std::size_t>(y * n + x)] = {
                row, rc[static_cast<std::size_t>(row * n + x)]};
        }
    }
    return out;
}

}  // namespace ainfty::detail
