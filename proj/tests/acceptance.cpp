// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ainfty/constructors.hpp"
#include "ainfty/criteria.hpp"
#include "ainfty/fixtures.hpp"
#include "ainfty/io.hpp"
#include "ainfty/oracle.hpp"
#include "ainfty/report.hpp"

using namespace ainfty;

namespace {

const CubeFamilySpec kAll{FamilyMode::all, {}};

struct Tally {
    long checks = 0;
    long failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

bool report(int index, const char* title, const Tally& t, const std::string& extra = "") {
    std::printf("[%s] criterion %d: %s (%ld checks%s%s%s)\n",
                t.failures == 0 ? "PASS" : "FAIL", index, title, t.checks,
                extra.empty() ? "" : ", ", extra.c_str(),
                t.failures == 0 ? "" : (", first failure: " + t.first_failure).c_str());
    return t.failures == 0;
}

bool approx_or_equal(double a, double b, double rel) {
    if (a == b) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= rel * scale;
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence on seeded random weights.
// ---------------------------------------------------------------------------
bool criterion1() {
    const auto start = std::chrono::steady_clock::now();
    Tally t;

    auto compare_weight = [&](const WeightGrid& w, std::uint64_t seed) {
        const std::string tag = "dim" + std::to_string(w.grid().dim()) + " n" +
                                std::to_string(w.grid().cells_per_axis()) + " seed" +
                                std::to_string(seed);
        // Maximal function, witnesses included, both families.
        for (FamilyMode mode : {FamilyMode::all, FamilyMode::dyadic}) {
            const CubeFamilySpec family{mode, {}};
            const MaximalResult fast = maximal(w, family);
            const MaximalResult ref = oracle::maximal(w, family);
            t.expect(fast.output.values() == ref.output.values(), "maximal values " + tag);
            bool wits = true;
            for (std::int64_t x = 0; x < w.size(); ++x)
                if (!(fast.witness[static_cast<std::size_t>(x)] ==
                      ref.witness[static_cast<std::size_t>(x)]))
                    wits = false;
            t.expect(wits, "maximal witnesses " + tag);
        }
        // Iterate.
        t.expect(maximal_iterate(w, 2, kAll).values() ==
                     oracle::maximal_iterate(w, 2, kAll).values(),
                 "iterate " + tag);
        // Powers.
        for (double s : {1.5, 2.0}) {
            const auto f = maximal_power(w, s, kAll).values();
            const auto o = oracle::maximal_power(w, s, kAll).values();
            bool ok = true;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (!approx_or_equal(f[i], o[i], 1e-12)) ok = false;
            t.expect(ok, "maximal_power " + tag);
        }
        // Windowed order statistics.
        for (double lambda : {0.25, 0.5}) {
            t.expect(local_maximal(w, lambda, kAll).values() ==
                         oracle::local_maximal(w, lambda, kAll).values(),
                     "local_maximal " + tag);
        }
        t.expect(sharp_maximal(w, kAll).values() == oracle::sharp_maximal(w, kAll).values(),
                 "sharp " + tag);
        t.expect(local_sharp_maximal(w, 0.5, kAll).values() ==
                     oracle::local_sharp_maximal(w, 0.5, kAll).values(),
                 "local_sharp " + tag);
        // Rearrangement on the whole box at several t.
        const Cube whole{{0, 0}, w.grid().cells_per_axis()};
        const double vol =
            static_cast<double>(whole.cell_count(w.grid().dim())) * w.grid().cell_volume();
        for (double frac : {0.0, 0.31, 0.72, 1.0, 1.4}) {
            t.expect(rearrangement(w, whole, frac * vol) ==
                         oracle::rearrangement(w, whole, frac * vol),
                     "rearrangement " + tag);
        }
        // Constants.
        t.expect(a1_constant(w, kAll).value == oracle::a1_constant(w, kAll).value,
                 "a1 " + tag);
        const double ap_f = ap_constant(w, 2.0, kAll).value;
        const double ap_o = oracle::ap_constant(w, 2.0, kAll).value;
        t.expect(approx_or_equal(ap_f, ap_o, 1e-12), "ap " + tag);
        t.expect(approx_or_equal(rhi_constant(w, 2.0, kAll).value,
                                 oracle::rhi_constant(w, 2.0, kAll).value, 1e-12),
                 "rhi " + tag);
        t.expect(ainf_sublevel_beta(w, 0.4, kAll).value ==
                     oracle::ainf_sublevel_beta(w, 0.4, kAll).value,
                 "sublevel " + tag);
        if (w.grid().cells_per_axis() >= 2) {
            t.expect(approx_or_equal(weak_ainf_constant(w, 0.5, kAll).value,
                                     oracle::weak_ainf_constant(w, 0.5, kAll).value, 1e-12),
                     "weak_ainf " + tag);
        }
    };

    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = 1 + (i % 64);
        compare_weight(random_weight(1, n, 1000 + static_cast<std::uint64_t>(i)),
                       1000 + static_cast<std::uint64_t>(i));
    }
    for (int i = 0; i < 50; ++i) {
        const std::int64_t n = 1 + (i % 16);
        compare_weight(random_weight(2, n, 5000 + static_cast<std::uint64_t>(i)),
                       5000 + static_cast<std::uint64_t>(i));
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.expect(secs <= 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    return report(1, "fast operators match brute-force oracles exactly", t, buf);
}

// ---------------------------------------------------------------------------
// 2. Pointwise inequality suite, zero tolerance.
// ---------------------------------------------------------------------------
bool criterion2() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        const MaximalResult mw = maximal(w, kAll);
        const WeightGrid sharp = sharp_maximal(w, kAll);
        for (std::int64_t x = 0; x < w.size(); ++x) {
            t.expect(mw.output.value(x) >= w.value(x), "Mf >= f on " + name);
            t.expect(sharp.value(x) <= 2.0 * mw.output.value(x), "f# <= 2Mf on " + name);
        }
        for (double lambda : {0.25, 0.5, 0.75}) {
            const WeightGrid ml = local_maximal(w, lambda, kAll);
            for (std::int64_t x = 0; x < w.size(); ++x)
                t.expect(ml.value(x) >= w.value(x), "m_lambda f >= f on " + name);
        }

        // Monotonicity under a cellwise-dominating perturbation.
        const WeightGrid v = w.map([](double x) { return x * 1.25; });
        const WeightGrid mv = maximal(v, kAll).output;
        const WeightGrid mlw = local_maximal(w, 0.5, kAll);
        const WeightGrid mlv = local_maximal(v, 0.5, kAll);
        for (std::int64_t x = 0; x < w.size(); ++x) {
            t.expect(mv.value(x) >= mw.output.value(x), "M monotone on " + name);
            t.expect(mlv.value(x) >= mlw.value(x), "m_lambda monotone on " + name);
        }
        const Cube whole{{0, 0}, w.grid().cells_per_axis()};
        const double vol =
            static_cast<double>(whole.cell_count(w.grid().dim())) * w.grid().cell_volume();
        for (double frac : {0.0, 0.3, 0.8}) {
            t.expect(rearrangement(v, whole, frac * vol) >=
                         rearrangement(w, whole, frac * vol),
                     "f* monotone on " + name);
            // Homogeneity of the rearrangement, arbitrary positive factor.
            t.expect(rearrangement(v, whole, frac * vol) ==
                         1.25 * rearrangement(w, whole, frac * vol),
                     "f* homogeneous on " + name);
        }

        // Homogeneity: power-of-two scalings are exact for every operator.
        const WeightGrid w8 = w.map([](double x) { return 8.0 * x; });
        const WeightGrid mw8 = maximal(w8, kAll).output;
        const WeightGrid ml8 = local_maximal(w8, 0.5, kAll);
        for (std::int64_t x = 0; x < w.size(); ++x) {
            t.expect(mw8.value(x) == 8.0 * mw.output.value(x), "M homogeneous on " + name);
            t.expect(ml8.value(x) == 8.0 * mlw.value(x), "m_lambda homogeneous on " + name);
        }
        // m_lambda homogeneity is exact for arbitrary factors: order statistics
        // commute with the monotone map x -> fl(c x).
        for (std::int64_t x = 0; x < w.size(); ++x)
            t.expect(mlv.value(x) == 1.25 * mlw.value(x),
                     "m_lambda homogeneous (any c) on " + name);
        // (M(u^s))^(1/s) >= Mu for s >= 1, bitwise (power-mean domination).
        for (double s : {1.5, 2.0}) {
            const WeightGrid mp = maximal_power(w, s, kAll);
            for (std::int64_t x = 0; x < w.size(); ++x)
                t.expect(mp.value(x) >= mw.output.value(x), "power mean on " + name);
        }
    }
    return report(2, "pointwise inequality suite holds exactly", t);
}

// ---------------------------------------------------------------------------
// 3. Proposition-1 chain.
// ---------------------------------------------------------------------------
bool criterion3() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        for (double p : {2.0, 4.0}) {
            for (double r : {0.25, 0.5}) {
                const CriterionVerdict v = prop1_chain(w, p, r, kAll);
                t.expect(v.pass, "prop1 chain on " + name + " p=" + std::to_string(p) +
                                     " r=" + std::to_string(r));
            }
        }
    }
    return report(3, "Proposition 1 chain holds within 1e-9 on every fixture", t);
}

// ---------------------------------------------------------------------------
// 4. Sublevel theorem as an exact combinatorial identity.
// ---------------------------------------------------------------------------
bool criterion4() {
    Tally t;
    long cases = 0;
    for (int i = 0; i < 500; ++i) {
        const std::int64_t n = 1 + (i % 12);
        const WeightGrid w = random_weight(1, n, 9000 + static_cast<std::uint64_t>(i));
        for (double lambda : {0.25, 0.5, 0.75}) {
            const MuRatios r = mu_ratios(w, lambda, kAll);
            const auto alphas = induced_alphas(r);
            const SublevelScan scan = sublevel_agreement_scan(w, lambda, alphas, kAll);
            ++cases;
            t.expect(scan.disagreements == 0,
                     "scan disagreement seed " + std::to_string(9000 + i) + " lambda " +
                         std::to_string(lambda));
        }
    }
    return report(4, "sublevel and order-statistic routes agree everywhere", t,
                  std::to_string(cases) + " scans");
}

// ---------------------------------------------------------------------------
// 5. Neugebauer forward chain.
// ---------------------------------------------------------------------------
bool criterion5() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        for (double s : {1.5, 2.0}) {
            const CriterionVerdict v = neugebauer(w, s, kAll);
            t.expect(v.measured.at("chain_holds") == 1.0,
                     "chain on " + name + " s=" + std::to_string(s));
            t.expect(v.measured.at("C0") >= 1.0, "C0 >= 1 on " + name);
        }
    }
    return report(5, "Neugebauer chain max M(Mu)/Mu <= [V]_A1 * C0 holds exactly", t);
}

// ---------------------------------------------------------------------------
// 6. Weak-Ainfty reverse Holder inequality.
// ---------------------------------------------------------------------------
bool criterion6() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        for (double delta : {0.3, 0.5, 0.7}) {
            const double rmax = 1.0 / (1.0 - delta);
            for (double frac : {0.2, 0.5, 0.8}) {
                const double r = 1.0 + frac * (rmax - 1.0);
                const CriterionVerdict v = weak_ainf_rhi(w, delta, r, kAll);
                t.expect(v.pass, "weak RHI on " + name + " delta=" + std::to_string(delta) +
                                     " r=" + std::to_string(r));
            }
        }
    }
    return report(6, "weak-Ainfty reverse Holder bound holds within 1e-9", t);
}

// ---------------------------------------------------------------------------
// 7. Iterate bound.
// ---------------------------------------------------------------------------
bool criterion7() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        const CriterionVerdict v = iterate_bound(w, 4, kAll);
        t.expect(v.pass, "iterate bound on " + name);
    }
    return report(7, "M^k u <= [Mu]_A1^(k-1) Mu holds exactly for k <= 4", t);
}

// ---------------------------------------------------------------------------
// 8. Rubio de Francia.
// ---------------------------------------------------------------------------
bool criterion8() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        const A1Construction r = rubio_de_francia(w, 40, kAll);
        t.expect(r.certificates.at("lower_ok") == 1.0, "u <= R_K u on " + name);
        t.expect(r.certificates.at("upper_ok") == 1.0, "R_K u <= 2u on " + name);
        t.expect(r.certificates.at("tail_cert_ok") == 1.0, "tail certificate on " + name);
        t.expect(r.certificates.at("maximal_bound_ok") == 1.0, "M(R) bound on " + name);
        const RdfFactorization f = a1_factorize_rdf(w, 40, kAll);
        t.expect(f.sandwich_ok, "factor sandwich on " + name);
        for (std::int64_t x = 0; x < w.size(); ++x) {
            t.expect(f.k.value(x) >= 0.5 && f.k.value(x) <= 1.0,
                     "k in [1/2,1] on " + name);
        }
    }
    return report(8, "Rubio de Francia bounds and factorization hold exactly at K=40", t);
}

// ---------------------------------------------------------------------------
// 9. Constructors: reconstructions, finiteness, refinement stability.
// ---------------------------------------------------------------------------
bool criterion9() {
    Tally t;
    for (const auto& [name, w] : standard_suite()) {
        const A1Construction d = a1_decompose_sharp(w, 0.5, kAll);
        for (std::int64_t x = 0; x < w.size(); ++x) {
            const double recon = d.corrector->value(x) * d.output.value(x);
            t.expect(approx_or_equal(recon, w.value(x), 1e-12),
                     "decompose reconstruction on " + name);
        }
        t.expect(d.certificates.at("min_k") > 0.0, "min k > 0 on " + name);

        const RdfFactorization f = a1_factorize_rdf(w, 40, kAll);
        for (std::int64_t x = 0; x < w.size(); ++x)
            t.expect(approx_or_equal(f.k.value(x) * f.w.value(x), w.value(x), 1e-12),
                     "factorize reconstruction on " + name);

        t.expect(std::isfinite(coifman_rochberg(w, 0.5, kAll).a1.value),
                 "(Mf)^d finite on " + name);
        t.expect(std::isfinite(local_sharp_a1(w, 0.5, 0.5, kAll).a1.value),
                 "(f#)^d finite on " + name);
        const WeightGrid ml = local_maximal(w, 0.5, kAll);
        const WeightGrid mld = ml.map([](double v) { return pow_value(v, 0.5); });
        t.expect(std::isfinite(a1_constant(mld, kAll).value),
                 "(m_lambda u)^d finite on " + name);
        t.expect(std::isfinite(sharp_variant(w, w, 1.0, 1.0, 0.5, 0.5, kAll).a1.value),
                 "(c f# + d m_lambda)^d finite on " + name);
    }

    // Stability of a1((Mf)^(1/2)) under one refinement, for the 1D family.
    for (const char* name : {"f1", "monotone_n8", "power_half_n32", "lognormal_n32"}) {
        const auto suite = standard_suite();
        const auto it = std::find_if(suite.begin(), suite.end(),
                                     [&](const NamedWeight& nw) { return nw.name == name; });
        const WeightGrid& f = it->weight;
        const double coarse = coifman_rochberg(f, 0.5, kAll).a1.value;
        const double fine = coifman_rochberg(refine(f, 2), 0.5, kAll).a1.value;
        const double drift = std::abs(fine - coarse) / coarse;
        t.expect(drift <= 0.10, std::string("refinement drift on ") + name + " = " +
                                    std::to_string(drift));
    }
    return report(9, "constructions reconstruct exactly and stay stable under refinement", t);
}

// ---------------------------------------------------------------------------
// 10. Determinism.
// ---------------------------------------------------------------------------
bool criterion10() {
    Tally t;
    const auto suite = standard_suite();
    for (const char* name : {"f1", "lognormal_n32", "lognormal_2d_n6"}) {
        const auto it = std::find_if(suite.begin(), suite.end(),
                                     [&](const NamedWeight& nw) { return nw.name == name; });
        RunConfig config;
        setenv("AINFTY_THREADS", "1", 1);
        const std::string r1 = analyze_weight(it->weight, config, name);
        const std::string r1b = analyze_weight(it->weight, config, name);
        setenv("AINFTY_THREADS", "4", 1);
        const std::string r4 = analyze_weight(it->weight, config, name);
        unsetenv("AINFTY_THREADS");
        t.expect(r1 == r1b, std::string("repeat determinism on ") + name);
        t.expect(r1 == r4, std::string("thread determinism on ") + name);
    }
    return report(10, "reports are byte-identical across runs and thread budgets", t);
}

}  // namespace

int main() {
    int failures = 0;
    failures += criterion1() ? 0 : 1;
    failures += criterion2() ? 0 : 1;
    failures += criterion3() ? 0 : 1;
    failures += criterion4() ? 0 : 1;
    failures += criterion5() ? 0 : 1;
    failures += criterion6() ? 0 : 1;
    failures += criterion7() ? 0 : 1;
    failures += criterion8() ? 0 : 1;
    failures += criterion9() ? 0 : 1;
    failures += criterion10() ? 0 : 1;
    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
