#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ainfty/grid.hpp"
#include "ainfty/operators.hpp"
#include "ainfty/rearrangement.hpp"
#include "ainfty/weight_classes.hpp"

namespace ainfty {

enum class Criterion {
    neugebauer,
    mlambda_equiv,
    sublevel_theorem,
    prop1_chain,
    iterate_bound,
    weak_ainf_rhi,
};

const char* to_string(Criterion c);

/// Pass/fail thresholds; verdicts are threshold-relative, the raw constants
/// always ride along in `measured`.
struct Thresholds {
    double b_max = 10.0;
    double c0_max = 10.0;
    double chain_slack = 1e-9;
};

struct CriterionVerdict {
    Criterion criterion = Criterion::neugebauer;
    std::map<std::string, double> measured;
    bool pass = false;
    std::optional<std::int64_t> witness_cell;
    std::optional<Cube> witness_cube;
};

/// Shared ingredients of the m_lambda-based criteria: Mu, M(Mu), m_lambda(Mu)
/// and the two comparison constants, argmaxed by exact ratio comparison.
struct MuRatios {
    WeightGrid mu;
    WeightGrid m_mu;
    WeightGrid ml_mu;
    double b = 0.0;                 // max M(Mu) / m_lambda(Mu)
    double a = 0.0;                 // max m_lambda(Mu) / M(Mu)
    std::int64_t witness_b = 0;
    std::int64_t witness_a = 0;
};
MuRatios mu_ratios(const WeightGrid& u, double lambda, const CubeFamilySpec& family);

/// (M(u^s))^(1/s) <= C0 * Mu: measures C0 and verifies the A1 chain
/// max M(Mu)/Mu <= [ (Mu^s)^(1/s) ]_A1 * C0 by exact product comparison.
CriterionVerdict neugebauer(const WeightGrid& u, double s, const CubeFamilySpec& family,
                            const Thresholds& th = {});

/// m_lambda(Mu) vs M(Mu): B = max M(Mu)/m_lambda(Mu) (asserted against the
/// threshold), A = max m_lambda(Mu)/M(Mu) (reported only).
CriterionVerdict mlambda_equivalence(const WeightGrid& u, double lambda,
                                     const CubeFamilySpec& family, const Thresholds& th = {});

/// Sublevel form of the same criterion at alpha = 1/B; the verdict equals
/// mlambda_equivalence by construction, and the per-cube discrete beta
/// (cnt - k - 1)/cnt is reported.
CriterionVerdict sublevel_theorem(const WeightGrid& u, double lambda,
                                  const CubeFamilySpec& family, const Thresholds& th = {});

/// Exhaustive agreement check between the order-statistic route and the
/// counting route of the sublevel criterion, per cell, for each alpha.
struct SublevelScan {
    std::int64_t checks = 0;
    std::int64_t disagreements = 0;
};
SublevelScan sublevel_agreement_scan(const WeightGrid& u, double lambda,
                                     std::span<const double> alphas,
                                     const CubeFamilySpec& family);

/// Alphas worth scanning: the per-cell flip ratios m_lambda(Mu)/M(Mu) with
/// one-ulp neighbors, plus fixed probes.
std::vector<double> induced_alphas(const MuRatios& r);

/// Three-link chain: avg_Q(Mu) <= [Mu]_Ap exp(avg_Q log Mu),
/// the log-power-mean step, and the A1 step for (Mu)^r; plus the conclusion
/// a1(Mu) <= [Mu]_Ap * ([ (Mu)^r ]_A1)^(1/r). Links verified with relative
/// slack th.chain_slack.
CriterionVerdict prop1_chain(const WeightGrid& u, double p, double r,
                             const CubeFamilySpec& family, const Thresholds& th = {});

/// M^k u <= C^(k-1) Mu for k = 2..kmax with C = [Mu]_A1, verified exactly by
/// cross-multiplied product comparison.
CriterionVerdict iterate_bound(const WeightGrid& u, int kmax, const CubeFamilySpec& family,
                               const Thresholds& th = {});

/// Reverse Holder inequality across the doubled cube with the constant the
/// layer-cake proof yields: avg_Q(u^r) <= (1 + (C 2^dim)^(1/(1-delta)) *
/// r/(1/(1-delta) - r)) * (avg_2Q u)^r on every admissible Q.
CriterionVerdict weak_ainf_rhi(const WeightGrid& u, double delta, double r,
                               const CubeFamilySpec& family, const Thresholds& th = {});

struct CriteriaConfig {
    double lambda = 0.5;
    double p = 2.0;
    double r = 0.5;   // for prop1_chain
    double s = 2.0;   // for neugebauer
    int kmax = 4;
    Thresholds thresholds;
};

/// The five headline verdicts with one parameter set.
std::vector<CriterionVerdict> run_all(const WeightGrid& u, const CriteriaConfig& config,
                                      const CubeFamilySpec& family);

}  // namespace ainfty
