#pragma once

#include <map>
#include <optional>
#include <string>

#include "ainfty/grid.hpp"
#include "ainfty/operators.hpp"
#include "ainfty/rearrangement.hpp"
#include "ainfty/weight_classes.hpp"

namespace ainfty {

/// A constructed A1 candidate: the weight, its measured A1 constant, the
/// ingredient parameters, optional corrector k with output*k reconstructing
/// a target, and any certificate values the construction carries.
struct A1Construction {
    WeightGrid output;
    ConstantReport a1;
    std::map<std::string, double> ingredients;
    std::optional<WeightGrid> corrector;
    std::map<std::string, double> certificates;
    bool degenerate = false;  // an eps-floor path fired
};

/// (Mf)^delta for 0 <= delta < 1.
A1Construction coifman_rochberg(const WeightGrid& f, double delta, const CubeFamilySpec& family);

/// (c * f#(f) + d * m_lambda(u))^delta; zero base cells (possible only when
/// d = 0 and f is flat at that scale) are floored and flagged.
A1Construction sharp_variant(const WeightGrid& f, const WeightGrid& u, double c, double d,
                             double delta, double lambda, const CubeFamilySpec& family);

struct PowerSearchResult {
    double alpha = 1.05;
    bool certified = false;  // false: no grid point met the budget
    double a1_base = 1.0;
    double a1_alpha = 1.0;
    double budget = 0.0;
};

/// Largest alpha on the grid {1.05, 1.10, ..., 4.00} with
/// a1(w^alpha) <= budget * a1(w)^alpha; the smallest grid point, flagged,
/// when none qualifies.
PowerSearchResult power_exponent_search(const WeightGrid& w, double budget,
                                        const CubeFamilySpec& family);

/// Decomposition w = k(x) * ( ((w^alpha)#)^delta + (m_lambda w^alpha)^delta )
/// with alpha from power_exponent_search, delta = 1/alpha.
A1Construction a1_decompose_sharp(const WeightGrid& w, double lambda,
                                  const CubeFamilySpec& family);

/// Truncated Rubio de Francia sum R_K u = sum_k M^k u / (2 [u]_A1)^k with the
/// sandwich, tail and maximal-bound certificates.
A1Construction rubio_de_francia(const WeightGrid& u, int truncation,
                                const CubeFamilySpec& family);

struct RdfFactorization {
    WeightGrid w;  // R_K u
    WeightGrid k;  // u / w, in [1/2, 1]
    bool sandwich_ok = false;
};
RdfFactorization a1_factorize_rdf(const WeightGrid& u, int truncation,
                                  const CubeFamilySpec& family);

/// (f#)^delta with the empirical two-sided constants relating f# to
/// M(M_lambda^# f); infinite sentinels when the local sharp function
/// vanishes identically at this lambda.
A1Construction local_sharp_a1(const WeightGrid& f, double delta, double lambda,
                              const CubeFamilySpec& family);

}  // namespace ainfty
