#include "ainfty/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ainfty {

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::neugebauer: return "NEUGEBAUER";
        case Criterion::mlambda_equiv: return "MLAMBDA_EQUIV";
        case Criterion::sublevel_theorem: return "SUBLEVEL_THEOREM";
        case Criterion::prop1_chain: return "PROP1_CHAIN";
        case Criterion::iterate_bound: return "ITERATE_BOUND";
        case Criterion::weak_ainf_rhi: return "WEAK_AINF_RHI";
    }
    return "UNKNOWN";
}

MuRatios mu_ratios(const WeightGrid& u, double lambda, const CubeFamilySpec& family) {
    WeightGrid mu = maximal(u, family).output;
    WeightGrid m_mu = maximal(mu, family).output;
    WeightGrid ml_mu = local_maximal(mu, lambda, family);
    const auto rb = detail::max_ratio_exact(m_mu, ml_mu);
    const auto ra = detail::max_ratio_exact(ml_mu, m_mu);
    return MuRatios{std::move(mu), std::move(m_mu), std::move(ml_mu),
                    rb.ratio,      ra.ratio,        rb.cell,
                    ra.cell};
}

CriterionVerdict neugebauer(const WeightGrid& u, double s, const CubeFamilySpec& family,
                            const Thresholds& th) {
    if (!(s > 1.0)) throw Error(errc::invalid_exponent, "neugebauer needs s > 1");
    const WeightGrid mu = maximal(u, family).output;
    const WeightGrid v = maximal_power(u, s, family);
    const WeightGrid m_mu = maximal(mu, family).output;
    const WeightGrid m_v = maximal(v, family).output;

    const auto c0 = detail::max_ratio_exact(v, mu);         // C0 at w2
    const auto a1v = detail::max_ratio_exact(m_v, v);       // [V]_A1 at w1
    const auto a1mu = detail::max_ratio_exact(m_mu, mu);

    // Chain: for every cell x,
    //   M(Mu)(x)/Mu(x) <= (M(V)(w1)/V(w1)) * (V(w2)/Mu(w2)),
    // verified exactly by cross multiplication; M(Mu) <= M(V) is bitwise.
    bool chain = true;
    for (std::int64_t x = 0; x < u.size() && chain; ++x) {
        if (m_mu.value(x) > m_v.value(x)) chain = false;
        const double lhs[] = {m_mu.value(x), v.value(a1v.cell), mu.value(c0.cell)};
        const double rhs[] = {m_v.value(a1v.cell), v.value(c0.cell), mu.value(x)};
        if (exact::compare_products(lhs, rhs) > 0) chain = false;
    }

    CriterionVerdict verdict;
    verdict.criterion = Criterion::neugebauer;
    verdict.measured["C0"] = c0.ratio;
    verdict.measured["a1_power"] = a1v.ratio;
    verdict.measured["a1_mu"] = a1mu.ratio;
    verdict.measured["chain_bound"] = a1v.ratio * c0.ratio;
    verdict.measured["chain_holds"] = chain ? 1.0 : 0.0;
    verdict.measured["s"] = s;
    verdict.pass = c0.ratio <= th.c0_max;
    verdict.witness_cell = c0.cell;
    return verdict;
}

CriterionVerdict mlambda_equivalence(const WeightGrid& u, double lambda,
                                     const CubeFamilySpec& family, const Thresholds& th) {
    const MuRatios r = mu_ratios(u, lambda, family);
    CriterionVerdict verdict;
    verdict.criterion = Criterion::mlambda_equiv;
    verdict.measured["B"] = r.b;
    verdict.measured["A"] = r.a;
    verdict.measured["lambda"] = lambda;
    verdict.pass = r.b <= th.b_max;
    verdict.witness_cell = r.witness_b;
    return verdict;
}

CriterionVerdict sublevel_theorem(const WeightGrid& u, double lambda,
                                  const CubeFamilySpec& family, const Thresholds& th) {
    const MuRatios r = mu_ratios(u, lambda, family);
    const double alpha = 1.0 / r.b;

    // Discrete beta exposed per cube: with k = floor(lambda * cnt), the
    // complement of the order-statistic identity counts at most cnt - k - 1
    // cells below the level.
    double beta_sup = 0.0;
    for (const Cube& q : enumerate_cubes(u.grid(), family)) {
        const std::int64_t cnt = q.cell_count(u.grid().dim());
        const std::int64_t k = lambda_index(lambda, cnt);
        beta_sup = std::max(beta_sup, static_cast<double>(cnt - k - 1) /
                                          static_cast<double>(cnt));
    }

    // Identity route at alpha = 1/B: m_lambda(Mu)(x) >= alpha * M(Mu)(x).
    // The product can round past the witness ratio by an ulp, so the
    // fraction is diagnostic; the verdict is the threshold on B.
    std::int64_t holds = 0;
    for (std::int64_t x = 0; x < u.size(); ++x)
        if (r.ml_mu.value(x) >= alpha * r.m_mu.value(x)) ++holds;

    CriterionVerdict verdict;
    verdict.criterion = Criterion::sublevel_theorem;
    verdict.measured["B"] = r.b;
    verdict.measured["alpha"] = alpha;
    verdict.measured["beta_sup"] = beta_sup;
    verdict.measured["lambda"] = lambda;
    verdict.measured["alpha_holds_fraction"] =
        static_cast<double>(holds) / static_cast<double>(u.size());
    verdict.pass = r.b <= th.b_max;
    verdict.witness_cell = r.witness_b;
    return verdict;
}

SublevelScan sublevel_agreement_scan(const WeightGrid& u, double lambda,
                                     std::span<const double> alphas,
                                     const CubeFamilySpec& family) {
    const MuRatios r = mu_ratios(u, lambda, family);
    const Grid& g = u.grid();
    const std::vector<Cube> cubes = enumerate_cubes(g, family);
    const PrefixTable pt_mu(r.mu);

    // Per cube: average of Mu, sorted Mu values, and k.
    std::vector<double> avg(cubes.size());
    std::vector<std::vector<double>> sorted(cubes.size());
    std::vector<std::int64_t> kk(cubes.size());
    const std::int64_t n = g.cells_per_axis();
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const Cube& q = cubes[i];
        avg[i] = pt_mu.cube_average(q);
        std::vector<double>& vals = sorted[i];
        if (g.dim() == 1) {
            for (std::int64_t c = q.anchor[0]; c < q.anchor[0] + q.side; ++c)
                vals.push_back(r.mu.value(c));
        } else {
            for (std::int64_t rr = q.anchor[0]; rr < q.anchor[0] + q.side; ++rr)
                for (std::int64_t cc = q.anchor[1]; cc < q.anchor[1] + q.side; ++cc)
                    vals.push_back(r.mu.value(rr * n + cc));
        }
        std::sort(vals.begin(), vals.end());
        kk[i] = lambda_index(lambda, static_cast<std::int64_t>(vals.size()));
    }

    // Cube indices containing each cell, in family order.
    std::vector<std::vector<std::size_t>> containing(static_cast<std::size_t>(g.cell_count()));
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const Cube& q = cubes[i];
        for (std::int64_t rr = q.anchor[0]; rr < q.anchor[0] + q.side; ++rr) {
            if (g.dim() == 1) {
                containing[static_cast<std::size_t>(rr)].push_back(i);
            } else {
                for (std::int64_t cc = q.anchor[1]; cc < q.anchor[1] + q.side; ++cc)
                    containing[static_cast<std::size_t>(rr * n + cc)].push_back(i);
            }
        }
    }

    SublevelScan scan;
    for (double alpha : alphas) {
        for (std::int64_t x = 0; x < g.cell_count(); ++x) {
            // Route A: windowed order statistic vs the maximal function.
            const bool route_a =
                r.ml_mu.value(x) >= alpha * r.m_mu.value(x);
            // Route B: counting, straight from the sublevel statement.
            bool route_b = false;
            const auto& qs = containing[static_cast<std::size_t>(x)];
            for (std::size_t qi : qs) {
                const auto& vals = sorted[qi];
                const auto cnt = static_cast<std::int64_t>(vals.size());
                const std::int64_t budget = cnt - kk[qi] - 1;
                bool ok = true;
                for (std::size_t qj : qs) {
                    const double thr = alpha * avg[qj];
                    const auto below = static_cast<std::int64_t>(
                        std::lower_bound(vals.begin(), vals.end(), thr) - vals.begin());
                    if (below > budget) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    route_b = true;
                    break;
                }
            }
            ++scan.checks;
            if (route_a != route_b) ++scan.disagreements;
        }
    }
    return scan;
}

std::vector<double> induced_alphas(const MuRatios& r) {
    std::set<double> alphas{0.5, 1.0};
    for (std::int64_t x = 0; x < r.mu.size(); ++x) {
        const double ratio = r.ml_mu.value(x) / r.m_mu.value(x);
        alphas.insert(ratio);
        alphas.insert(std::nextafter(ratio, 0.0));
        alphas.insert(std::nextafter(ratio, 2.0));
    }
    alphas.insert(1.0 / r.b);
    return {alphas.begin(), alphas.end()};
}

CriterionVerdict prop1_chain(const WeightGrid& u, double p, double r,
                             const CubeFamilySpec& family, const Thresholds& th) {
    if (!(p > 1.0)) throw Error(errc::invalid_exponent, "prop1_chain needs p > 1");
    if (!(r > 0.0 && r < 1.0)) throw Error(errc::invalid_exponent, "prop1_chain needs 0 < r < 1");

    const WeightGrid mu = maximal(u, family).output;
    const WeightGrid mur = mu.map([&](double v) { return pow_value(v, r); });
    const WeightGrid m_mu = maximal(mu, family).output;
    const WeightGrid m_mur = maximal(mur, family).output;

    const PrefixTable pt_mu(mu);
    const PrefixTable pt_mur(mur);
    std::vector<double> logs(static_cast<std::size_t>(mu.size()));
    for (std::int64_t i = 0; i < mu.size(); ++i)
        logs[static_cast<std::size_t>(i)] = std::log(mu.value(i));
    const PrefixTable pt_log(mu.grid(), logs);

    const double ap_mu = ap_constant(mu, p, family).value;
    const double a1_mur = detail::max_ratio_exact(m_mur, mur).ratio;
    const double a1_mu = detail::max_ratio_exact(m_mu, mu).ratio;

    const double inv_r = 1.0 / r;
    double viol1 = 0.0, viol2 = 0.0, viol3 = 0.0;
    for (const Cube& q : enumerate_cubes(u.grid(), family)) {
        const double geo = std::exp(pt_log.cube_average(q));
        const double link1 = pt_mu.cube_average(q) / (ap_mu * geo);
        const double link2 = geo / pow_value(pt_mur.cube_average(q), inv_r);
        viol1 = std::max(viol1, link1 - 1.0);
        viol2 = std::max(viol2, link2 - 1.0);
    }
    const double a1_mur_root = pow_value(a1_mur, inv_r);
    for (std::int64_t x = 0; x < u.size(); ++x) {
        const double link3 =
            pow_value(m_mur.value(x), inv_r) / (a1_mur_root * mu.value(x));
        viol3 = std::max(viol3, link3 - 1.0);
    }
    const double bound = ap_mu * a1_mur_root;
    const double conclusion = a1_mu / bound - 1.0;

    CriterionVerdict verdict;
    verdict.criterion = Criterion::prop1_chain;
    verdict.measured["p"] = p;
    verdict.measured["r"] = r;
    verdict.measured["ap_mu"] = ap_mu;
    verdict.measured["a1_mu_r"] = a1_mur;
    verdict.measured["a1_mu"] = a1_mu;
    verdict.measured["conclusion_bound"] = bound;
    verdict.measured["paper_printed_bound"] = a1_mur * a1_mur_root;
    verdict.measured["link1_violation"] = viol1;
    verdict.measured["link2_violation"] = viol2;
    verdict.measured["link3_violation"] = viol3;
    verdict.measured["conclusion_violation"] = conclusion;
    verdict.pass = viol1 <= th.chain_slack && viol2 <= th.chain_slack &&
                   viol3 <= th.chain_slack && conclusion <= th.chain_slack;
    return verdict;
}

CriterionVerdict iterate_bound(const WeightGrid& u, int kmax, const CubeFamilySpec& family,
                               const Thresholds& th) {
    (void)th;
    if (kmax < 2) throw Error(errc::invalid_exponent, "iterate_bound needs kmax >= 2");
    const WeightGrid mu = maximal(u, family).output;
    const WeightGrid m_mu = maximal(mu, family).output;
    const auto c = detail::max_ratio_exact(m_mu, mu);  // C = [Mu]_A1 at cell w

    CriterionVerdict verdict;
    verdict.criterion = Criterion::iterate_bound;
    verdict.measured["C"] = c.ratio;
    verdict.measured["kmax"] = kmax;
    verdict.witness_cell = c.cell;

    bool ok = true;
    WeightGrid iter = m_mu;  // M^2 u
    for (int k = 2; k <= kmax; ++k) {
        // M^k u(x) * Mu(w)^(k-1) <= M(Mu)(w)^(k-1) * Mu(x), exactly.
        std::vector<double> lhs(static_cast<std::size_t>(k)), rhs(static_cast<std::size_t>(k));
        double worst = 0.0;
        for (std::int64_t x = 0; x < u.size(); ++x) {
            lhs[0] = iter.value(x);
            rhs[0] = mu.value(x);
            for (int j = 1; j < k; ++j) {
                lhs[static_cast<std::size_t>(j)] = mu.value(c.cell);
                rhs[static_cast<std::size_t>(j)] = m_mu.value(c.cell);
            }
            if (exact::compare_products(lhs, rhs) > 0) ok = false;
            worst = std::max(worst, iter.value(x) /
                                        (std::pow(c.ratio, k - 1) * mu.value(x)));
        }
        verdict.measured["ratio_k" + std::to_string(k)] = worst;
        if (k < kmax) iter = maximal(iter, family).output;
    }
    verdict.measured["exact_holds"] = ok ? 1.0 : 0.0;
    verdict.pass = ok;
    return verdict;
}

CriterionVerdict weak_ainf_rhi(const WeightGrid& u, double delta, double r,
                               const CubeFamilySpec& family, const Thresholds& th) {
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "delta must lie in (0,1)");
    const double exp_cap = 1.0 / (1.0 - delta);
    if (!(r > 1.0 && r < exp_cap))
        throw Error(errc::invalid_exponent, "r must lie in (1, 1/(1-delta))");

    const ConstantReport cw = weak_ainf_constant(u, delta, family);
    const double dim_factor = u.grid().dim() == 1 ? 2.0 : 4.0;
    const double factor =
        1.0 + pow_value(cw.value * dim_factor, exp_cap) * r / (exp_cap - r);

    const WeightGrid ur = u.map([&](double v) { return pow_value(v, r); });
    const PrefixTable pt_u(u);
    const PrefixTable pt_ur(ur);

    double worst = -std::numeric_limits<double>::infinity();
    std::int64_t admissible = 0;
    CriterionVerdict verdict;
    verdict.criterion = Criterion::weak_ainf_rhi;
    for (const Cube& q : enumerate_cubes(u.grid(), family)) {
        const Cube dbl = detail::double_cube(q);
        if (!detail::cube_inside(u.grid(), dbl)) continue;
        ++admissible;
        const double lhs = pt_ur.cube_average(q);
        const double rhs = factor * pow_value(pt_u.cube_average(dbl), r);
        const double violation = lhs / rhs - 1.0;
        if (violation > worst) {
            worst = violation;
            verdict.witness_cube = q;
        }
    }
    if (admissible == 0)
        throw Error(errc::not_computable, "no cube admits a concentric double inside the box");

    verdict.measured["C_weak"] = cw.value;
    verdict.measured["delta"] = delta;
    verdict.measured["r"] = r;
    verdict.measured["factor"] = factor;
    verdict.measured["max_violation"] = worst;
    verdict.measured["admissible_cubes"] = static_cast<double>(admissible);
    verdict.pass = worst <= th.chain_slack;
    return verdict;
}

std::vector<CriterionVerdict> run_all(const WeightGrid& u, const CriteriaConfig& config,
                                      const CubeFamilySpec& family) {
    std::vector<CriterionVerdict> out;
    out.push_back(neugebauer(u, config.s, family, config.thresholds));
    out.push_back(mlambda_equivalence(u, config.lambda, family, config.thresholds));
    out.push_back(sublevel_theorem(u, config.lambda, family, config.thresholds));
    out.push_back(prop1_chain(u, config.p, config.r, family, config.thresholds));
    out.push_back(iterate_bound(u, config.kmax, family, config.thresholds));
    return out;
}

}  // namespace ainfty
