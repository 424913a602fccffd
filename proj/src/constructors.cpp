#include "ainfty/constructors.hpp"

#include <algorithm>
#include <cmath>

#include "ainfty/fixtures.hpp"

namespace ainfty {

namespace {

ConstantReport a1_of(const WeightGrid& w, const CubeFamilySpec& family) {
    const WeightGrid mw = maximal(w, family).output;
    const auto rm = detail::max_ratio_exact(mw, w);
    ConstantReport rep;
    rep.name = "A1";
    rep.value = rm.ratio;
    rep.witness_cell = rm.cell;
    return rep;
}

}  // namespace

A1Construction coifman_rochberg(const WeightGrid& f, double delta,
                                const CubeFamilySpec& family) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "coifman_rochberg needs 0 <= delta < 1");
    const WeightGrid mf = maximal(f, family).output;
    WeightGrid out = mf.map([&](double v) { return pow_value(v, delta); });
    A1Construction c{std::move(out), {}, {}, std::nullopt, {}, false};
    c.ingredients["delta"] = delta;
    c.a1 = a1_of(c.output, family);
    return c;
}

A1Construction sharp_variant(const WeightGrid& f, const WeightGrid& u, double c, double d,
                             double delta, double lambda, const CubeFamilySpec& family) {
    if (c < 0.0 || d < 0.0 || c + d <= 0.0)
        throw Error(errc::degenerate_input, "sharp_variant needs c, d >= 0 with c + d > 0");
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "sharp_variant needs delta in (0,1)");
    const WeightGrid fs = sharp_maximal(f, family);
    const WeightGrid ml = local_maximal(u, lambda, family);

    bool floored = false;
    std::vector<double> base(static_cast<std::size_t>(f.size()));
    for (std::int64_t i = 0; i < f.size(); ++i) {
        double b = c * fs.value(i) + d * ml.value(i);
        if (!(b > 0.0)) {
            b = kWeightFloor;
            floored = true;
        }
        base[static_cast<std::size_t>(i)] = pow_value(b, delta);
    }
    A1Construction out{WeightGrid(f.grid(), std::move(base)), {}, {}, std::nullopt, {}, floored};
    out.ingredients["c"] = c;
    out.ingredients["d"] = d;
    out.ingredients["delta"] = delta;
    out.ingredients["lambda"] = lambda;
    out.a1 = a1_of(out.output, family);
    return out;
}

PowerSearchResult power_exponent_search(const WeightGrid& w, double budget,
                                        const CubeFamilySpec& family) {
    if (!(budget > 1.0)) throw Error(errc::invalid_exponent, "budget must exceed 1");
    PowerSearchResult res;
    res.budget = budget;
    res.a1_base = a1_of(w, family).value;
    for (int i = 60; i >= 1; --i) {
        const double alpha = 1.0 + 0.05 * static_cast<double>(i);
        const WeightGrid wa = w.map([&](double v) { return pow_value(v, alpha); });
        const double a1a = a1_of(wa, family).value;
        if (a1a <= budget * std::pow(res.a1_base, alpha)) {
            res.alpha = alpha;
            res.a1_alpha = a1a;
            res.certified = true;
            return res;
        }
    }
    res.alpha = 1.05;
    const WeightGrid wa = w.map([&](double v) { return pow_value(v, res.alpha); });
    res.a1_alpha = a1_of(wa, family).value;
    res.certified = false;
    return res;
}

A1Construction a1_decompose_sharp(const WeightGrid& w, double lambda,
                                  const CubeFamilySpec& family) {
    const PowerSearchResult search = power_exponent_search(w, 4.0, family);
    const double alpha = search.alpha;
    const double delta = 1.0 / alpha;

    const WeightGrid wa = w.map([&](double v) { return pow_value(v, alpha); });
    const WeightGrid sharp = sharp_maximal(wa, family);
    const WeightGrid ml = local_maximal(wa, lambda, family);

    bool floored = false;
    std::vector<double> base(static_cast<std::size_t>(w.size()));
    for (std::int64_t i = 0; i < w.size(); ++i) {
        double b = pow_value(sharp.value(i), delta) + pow_value(ml.value(i), delta);
        if (!(b > 0.0)) {
            b = kWeightFloor;
            floored = true;
        }
        base[static_cast<std::size_t>(i)] = b;
    }
    WeightGrid output(w.grid(), std::move(base));

    std::vector<double> corr(static_cast<std::size_t>(w.size()));
    double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
    for (std::int64_t i = 0; i < w.size(); ++i) {
        corr[static_cast<std::size_t>(i)] = w.value(i) / output.value(i);
        kmin = std::min(kmin, corr[static_cast<std::size_t>(i)]);
        kmax = std::max(kmax, corr[static_cast<std::size_t>(i)]);
    }

    A1Construction out{std::move(output), {}, {}, WeightGrid(w.grid(), std::move(corr)), {},
                       floored};
    out.ingredients["alpha"] = alpha;
    out.ingredients["delta"] = delta;
    out.ingredients["c"] = 1.0;
    out.ingredients["d"] = 1.0;
    out.ingredients["lambda"] = lambda;
    out.certificates["min_k"] = kmin;
    out.certificates["max_k"] = kmax;
    out.certificates["k_condition"] = kmax / kmin;
    out.certificates["alpha_certified"] = search.certified ? 1.0 : 0.0;
    out.a1 = a1_of(out.output, family);
    return out;
}

A1Construction rubio_de_francia(const WeightGrid& u, int truncation,
                                const CubeFamilySpec& family) {
    if (truncation < 1) throw Error(errc::invalid_exponent, "truncation must be >= 1");
    const ConstantReport a1u = a1_of(u, family);
    const double c = 2.0 * a1u.value;

    // R_K u = sum_{k=0}^{K} M^k u / c^k, accumulated termwise so the k = 0
    // term makes R >= u bitwise.
    std::vector<double> acc(u.values().begin(), u.values().end());
    WeightGrid iter = u;
    const WeightGrid mu = maximal(u, family).output;
    double denom = 1.0;
    bool tail_cert = true;
    for (int k = 1; k <= truncation + 1; ++k) {
        iter = k == 1 ? mu : maximal(iter, family).output;
        denom *= c;
        // Certificate M^k u(x) * u(w)^k <= Mu(w)^k * u(x), exactly.
        std::vector<double> lhs(static_cast<std::size_t>(k) + 1);
        std::vector<double> rhs(static_cast<std::size_t>(k) + 1);
        for (std::int64_t x = 0; x < u.size(); ++x) {
            lhs[0] = iter.value(x);
            rhs[0] = u.value(x);
            for (int j = 1; j <= k; ++j) {
                lhs[static_cast<std::size_t>(j)] = u.value(*a1u.witness_cell);
                rhs[static_cast<std::size_t>(j)] = mu.value(*a1u.witness_cell);
            }
            if (exact::compare_products(lhs, rhs) > 0) tail_cert = false;
        }
        if (k <= truncation)
            for (std::int64_t x = 0; x < u.size(); ++x)
                acc[static_cast<std::size_t>(x)] += iter.value(x) / denom;
    }
    WeightGrid output(u.grid(), std::move(acc));

    bool lower_ok = true, upper_ok = true;
    for (std::int64_t x = 0; x < u.size(); ++x) {
        if (!(output.value(x) >= u.value(x))) lower_ok = false;
        if (!(output.value(x) <= 2.0 * u.value(x))) upper_ok = false;
    }
    const WeightGrid m_out = maximal(output, family).output;
    bool mr_ok = true;
    for (std::int64_t x = 0; x < u.size(); ++x)
        if (!(m_out.value(x) <= c * output.value(x))) mr_ok = false;

    A1Construction out{std::move(output), {}, {}, std::nullopt, {}, false};
    out.ingredients["K"] = truncation;
    out.ingredients["C"] = c;
    out.certificates["a1_u"] = a1u.value;
    out.certificates["lower_ok"] = lower_ok ? 1.0 : 0.0;
    out.certificates["upper_ok"] = upper_ok ? 1.0 : 0.0;
    out.certificates["tail_cert_ok"] = tail_cert ? 1.0 : 0.0;
    out.certificates["tail_bound"] = std::ldexp(1.0, -truncation);
    out.certificates["maximal_bound_ok"] = mr_ok ? 1.0 : 0.0;
    out.a1 = a1_of(out.output, family);
    return out;
}

RdfFactorization a1_factorize_rdf(const WeightGrid& u, int truncation,
                                  const CubeFamilySpec& family) {
    A1Construction rdf = rubio_de_francia(u, truncation, family);
    std::vector<double> k(static_cast<std::size_t>(u.size()));
    bool ok = rdf.certificates.at("lower_ok") == 1.0 && rdf.certificates.at("upper_ok") == 1.0;
    for (std::int64_t x = 0; x < u.size(); ++x) {
        k[static_cast<std::size_t>(x)] = u.value(x) / rdf.output.value(x);
        if (!(k[static_cast<std::size_t>(x)] >= 0.5 && k[static_cast<std::size_t>(x)] <= 1.0))
            ok = false;
    }
    return RdfFactorization{std::move(rdf.output), WeightGrid(u.grid(), std::move(k)), ok};
}

A1Construction local_sharp_a1(const WeightGrid& f, double delta, double lambda,
                              const CubeFamilySpec& family) {
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(errc::invalid_exponent, "local_sharp_a1 needs delta in (0,1)");
    const WeightGrid fs = sharp_maximal(f, family);

    bool floored = false;
    std::vector<double> base(static_cast<std::size_t>(f.size()));
    for (std::int64_t i = 0; i < f.size(); ++i) {
        double b = fs.value(i);
        if (!(b > 0.0)) {
            b = kWeightFloor;
            floored = true;
        }
        base[static_cast<std::size_t>(i)] = pow_value(b, delta);
    }

    const WeightGrid ms = local_sharp_maximal(f, lambda, family);
    const WeightGrid m_ms = maximal(ms, family).output;
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const double denom = m_ms.value(i);
        const double num = fs.value(i);
        if (denom == 0.0 && num == 0.0) continue;
        const double ratio = denom == 0.0 ? std::numeric_limits<double>::infinity() : num / denom;
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
    }
    if (c2 == 0.0) c1 = 0.0;  // f constant: every ratio skipped

    A1Construction out{WeightGrid(f.grid(), std::move(base)), {}, {}, std::nullopt, {}, floored};
    out.ingredients["delta"] = delta;
    out.ingredients["lambda"] = lambda;
    out.certificates["jt_c1"] = c1;
    out.certificates["jt_c2"] = c2;
    out.a1 = a1_of(out.output, family);
    return out;
}

}  // namespace ainfty
