#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ainfty/grid.hpp"

namespace ainfty {

namespace detail {

/// k-th largest (0-based) of the scratch values; destroys the order.
double kth_desc(std::vector<double>& scratch, std::int64_t k);

/// Mean absolute deviation about mu, correctly rounded. s_above / n_above
/// describe the cells with value strictly greater than mu, s_all / cnt the
/// whole window: sum |v - mu| = 2*(s_above - n_above*mu) - (s_all - cnt*mu).
double mad_mean(const exact::Sum& s_above, std::int64_t n_above, const exact::Sum& s_all,
                std::int64_t cnt, double mu);

/// Best-constant residual for a sorted window: min over i of
/// (v[i + cnt - k - 1] - v[i]) / 2, the optimal c being the interval midpoint.
double local_sharp_window(std::span<const double> sorted_asc, std::int64_t k);

}  // namespace detail

/// Non-increasing rearrangement of w restricted to Q, evaluated at t:
/// the floor(t / cell volume)-th largest cell value, 0 past the end.
double rearrangement(const WeightGrid& w, const Cube& q, double t);

/// m_lambda f(x): max over family cubes containing x of the rearrangement of
/// f restricted to the cube at lambda * |Q| — a windowed order statistic.
WeightGrid local_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family);

/// Fefferman-Stein sharp function: max over containing cubes of the mean
/// absolute deviation from the cube average.
WeightGrid sharp_maximal(const WeightGrid& w, const CubeFamilySpec& family);

/// Local sharp maximal function: like m_lambda but with the best constant
/// subtracted inside each cube before taking the rearrangement.
WeightGrid local_sharp_maximal(const WeightGrid& w, double lambda, const CubeFamilySpec& family);

/// sup-norm of the sharp function.
double bmo_norm(const WeightGrid& w, const CubeFamilySpec& family);

}  // namespace ainfty
