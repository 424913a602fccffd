#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ainfty/constructors.hpp"
#include "ainfty/fixtures.hpp"
#include "ainfty/oracle.hpp"
#include "ainfty/report.hpp"

using namespace ainfty;

namespace {
const CubeFamilySpec kAll{FamilyMode::all, {}};

WeightGrid constant_weight(std::int64_t n, double c) {
    WeightSpec s;
    s.cells_per_axis = n;
    s.kind = ConstantSpec{c};
    return generate(s);
}
}  // namespace

TEST_CASE("coifman rochberg") {
    const WeightGrid f1 = fixture_f1();
    const A1Construction zero = coifman_rochberg(f1, 0.0, kAll);
    for (double v : zero.output.values()) CHECK(v == 1.0);
    CHECK(zero.a1.value == 1.0);

    const A1Construction c = coifman_rochberg(constant_weight(5, 4.0), 0.5, kAll);
    for (double v : c.output.values()) CHECK(v == 2.0);
    CHECK(c.a1.value == 1.0);

    const A1Construction half = coifman_rochberg(f1, 0.5, kAll);
    CHECK(half.output.values() ==
          std::vector<double>{std::sqrt(3.0), std::sqrt(11.0 / 3.0), 2.0, std::sqrt(6.0)});
    // a1 of the output against the oracle's maximal of the same grid.
    const WeightGrid m = oracle::maximal(half.output, kAll).output;
    double a1 = 0.0;
    for (std::int64_t x = 0; x < 4; ++x)
        a1 = std::max(a1, m.value(x) / half.output.value(x));
    CHECK(half.a1.value == a1);

    CHECK_THROWS_AS(coifman_rochberg(f1, 1.0, kAll), Error);
}

TEST_CASE("sharp variant") {
    const WeightGrid f1 = fixture_f1();
    CHECK_THROWS_AS(sharp_variant(f1, f1, 0.0, 0.0, 0.5, 0.5, kAll), Error);

    const A1Construction pure_local =
        sharp_variant(f1, constant_weight(4, 9.0), 0.0, 1.0, 0.5, 0.5, kAll);
    for (double v : pure_local.output.values()) CHECK(v == 3.0);
    CHECK(pure_local.a1.value == 1.0);
    CHECK(!pure_local.degenerate);

    const A1Construction degen =
        sharp_variant(constant_weight(4, 2.0), f1, 1.0, 0.0, 0.5, 0.5, kAll);
    CHECK(degen.degenerate);
    CHECK(degen.a1.value == 1.0);

    const A1Construction both = sharp_variant(f1, f1, 1.0, 1.0, 0.5, 0.5, kAll);
    const std::vector<double> base{1.5 + 2.0, 14.0 / 9.0 + 3.0, 2.0 + 3.0, 2.0 + 6.0};
    for (std::int64_t i = 0; i < 4; ++i)
        CHECK(both.output.value(i) == std::sqrt(base[static_cast<std::size_t>(i)]));
}

TEST_CASE("a1 constant of a sum is at most the max, for exact-sum grids") {
    // Exact scaling keeps the sum grid exactly c*v1 + d*v2.
    const WeightGrid f1 = fixture_f1();
    const WeightGrid v1 = coifman_rochberg(f1, 0.5, kAll).output;
    const WeightGrid v2 = constant_weight(4, 2.0);
    std::vector<double> sum(4);
    for (std::int64_t i = 0; i < 4; ++i) sum[static_cast<std::size_t>(i)] = 2.0 * v1.value(i);
    // 2*v1 exact: a1 is scale invariant bit for bit.
    const double a1_v1 = a1_constant(v1, kAll).value;
    const double a1_scaled = a1_constant(WeightGrid(f1.grid(), sum), kAll).value;
    CHECK(a1_scaled == a1_v1);
    // General sum within a whisker of the max bound.
    std::vector<double> mix(4);
    for (std::int64_t i = 0; i < 4; ++i)
        mix[static_cast<std::size_t>(i)] = v1.value(i) + v2.value(i);
    const double a1_mix = a1_constant(WeightGrid(f1.grid(), mix), kAll).value;
    CHECK(a1_mix <= std::max(a1_v1, a1_constant(v2, kAll).value) * (1.0 + 1e-14));
}

TEST_CASE("power exponent search") {
    const PowerSearchResult c = power_exponent_search(constant_weight(5, 2.0), 4.0, kAll);
    CHECK(c.alpha == 4.0);
    CHECK(c.certified);

    const WeightGrid f1 = fixture_f1();
    const PowerSearchResult r = power_exponent_search(f1, 4.0, kAll);
    CHECK(r.alpha >= 1.05);
    CHECK(r.a1_alpha <= 4.0 * std::pow(r.a1_base, r.alpha));

    const WeightGrid mf = coifman_rochberg(f1, 0.4, kAll).output;
    const PowerSearchResult rr = power_exponent_search(mf, 4.0, kAll);
    CHECK(rr.certified);
    CHECK(rr.alpha >= 1.05);

    CHECK_THROWS_AS(power_exponent_search(f1, 1.0, kAll), Error);
}

TEST_CASE("a1 decomposition via the sharp pair") {
    const A1Construction c = a1_decompose_sharp(constant_weight(6, 3.0), 0.5, kAll);
    REQUIRE(c.corrector.has_value());
    for (double v : c.corrector->values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    const WeightGrid f1 = fixture_f1();
    const A1Construction d = a1_decompose_sharp(f1, 0.5, kAll);
    REQUIRE(d.corrector.has_value());
    CHECK(d.certificates.at("min_k") > 0.0);
    for (std::int64_t i = 0; i < 4; ++i) {
        const double recon = d.corrector->value(i) * d.output.value(i);
        CHECK(recon == doctest::Approx(f1.value(i)).epsilon(1e-12));
    }

    // Scaling by 3 with alpha, delta fixed rescales the base, not k.
    const WeightGrid f3 = f1.map([](double v) { return 3.0 * v; });
    const A1Construction d3 = a1_decompose_sharp(f3, 0.5, kAll);
    if (d3.ingredients.at("alpha") == d.ingredients.at("alpha")) {
        for (std::int64_t i = 0; i < 4; ++i)
            CHECK(d3.corrector->value(i) ==
                  doctest::Approx(d.corrector->value(i)).epsilon(1e-12));
    }
}

TEST_CASE("rubio de francia fixture arithmetic") {
    const WeightGrid f1 = fixture_f1();
    const A1Construction r1 = rubio_de_francia(f1, 1, kAll);
    // R_1 u = u + Mu/6 with [u]_A1 = 3.
    const WeightGrid mu = maximal(f1, kAll).output;
    for (std::int64_t i = 0; i < 4; ++i)
        CHECK(r1.output.value(i) == f1.value(i) + mu.value(i) / 6.0);
    CHECK(r1.output.value(0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(r1.output.value(1) == doctest::Approx(65.0 / 18.0).epsilon(1e-15));
    CHECK(r1.output.value(2) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(r1.output.value(3) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(r1.certificates.at("lower_ok") == 1.0);
    CHECK(r1.certificates.at("upper_ok") == 1.0);

    const A1Construction r40 = rubio_de_francia(f1, 40, kAll);
    CHECK(r40.certificates.at("lower_ok") == 1.0);
    CHECK(r40.certificates.at("upper_ok") == 1.0);
    CHECK(r40.certificates.at("tail_cert_ok") == 1.0);
    CHECK(r40.certificates.at("maximal_bound_ok") == 1.0);
    CHECK(r40.certificates.at("tail_bound") == std::ldexp(1.0, -40));

    const A1Construction rc = rubio_de_francia(constant_weight(4, 5.0), 10, kAll);
    for (double v : rc.output.values())
        CHECK(v == doctest::Approx(5.0 * (2.0 - std::ldexp(1.0, -10))).epsilon(1e-15));
    CHECK_THROWS_AS(rubio_de_francia(f1, 0, kAll), Error);
}

TEST_CASE("rdf factorization sandwich") {
    const WeightGrid f1 = fixture_f1();
    const RdfFactorization f = a1_factorize_rdf(f1, 1, kAll);
    CHECK(f.sandwich_ok);
    const std::vector<double> expect{2.0 / 3.0, 54.0 / 65.0, 3.0 / 4.0, 6.0 / 7.0};
    for (std::int64_t i = 0; i < 4; ++i) {
        CHECK(f.k.value(i) == doctest::Approx(expect[static_cast<std::size_t>(i)])
                                  .epsilon(1e-14));
        CHECK(f.k.value(i) >= 0.5);
        CHECK(f.k.value(i) <= 1.0);
        CHECK(f.k.value(i) * f.w.value(i) == doctest::Approx(f1.value(i)).epsilon(1e-15));
    }

    const RdfFactorization fc = a1_factorize_rdf(constant_weight(6, 2.0), 40, kAll);
    CHECK(fc.sandwich_ok);
    for (double v : fc.k.values())
        CHECK(v == doctest::Approx(1.0 / (2.0 - std::ldexp(1.0, -40))).epsilon(1e-15));
}

TEST_CASE("local sharp a1") {
    const A1Construction degen = local_sharp_a1(constant_weight(5, 2.0), 0.5, 0.5, kAll);
    CHECK(degen.degenerate);

    const WeightGrid f1 = fixture_f1();
    const A1Construction c = local_sharp_a1(f1, 0.5, 0.5, kAll);
    CHECK(!c.degenerate);
    CHECK(c.output.values() ==
          std::vector<double>{std::sqrt(1.5), std::sqrt(14.0 / 9.0), std::sqrt(2.0),
                              std::sqrt(2.0)});
    CHECK(c.certificates.at("jt_c1") <= c.certificates.at("jt_c2"));
    CHECK(std::isfinite(c.certificates.at("jt_c2")));
    CHECK(std::isfinite(c.a1.value));
}

TEST_CASE("constructions serialize with ingredients and certificates") {
    const A1Construction d = a1_decompose_sharp(fixture_f1(), 0.5, kAll);
    const std::string j1 = construction_to_json(d);
    CHECK(j1.find("\"alpha\"") != std::string::npos);
    CHECK(j1.find("\"min_k\"") != std::string::npos);
    CHECK(j1.find("\"corrector\"") != std::string::npos);
    CHECK(j1 == construction_to_json(d));
    const std::string j2 = construction_to_json(rubio_de_francia(fixture_f1(), 4, kAll));
    CHECK(j2.find("\"tail_bound\"") != std::string::npos);
}

TEST_CASE("a1 constants of the constructed families stay finite") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const WeightGrid w = random_weight(1, 12, seed + 31);
        CHECK(std::isfinite(coifman_rochberg(w, 0.5, kAll).a1.value));
        CHECK(std::isfinite(local_sharp_a1(w, 0.5, 0.5, kAll).a1.value));
        const WeightGrid ml = local_maximal(w, 0.5, kAll);
        const WeightGrid mld = ml.map([](double v) { return pow_value(v, 0.5); });
        CHECK(std::isfinite(a1_constant(mld, kAll).value));
        // Property-C style product of two constructed A1 weights.
        const WeightGrid w0 = coifman_rochberg(w, 0.3, kAll).output;
        const WeightGrid w1 = coifman_rochberg(ml, 0.5, kAll).output;
        std::vector<double> prod(static_cast<std::size_t>(w.size()));
        for (std::int64_t i = 0; i < w.size(); ++i)
            prod[static_cast<std::size_t>(i)] =
                w0.value(i) * pow_value(w1.value(i), 1.0 - 2.0);
        const double ap = ap_constant(WeightGrid(w.grid(), std::move(prod)), 2.0, kAll).value;
        CHECK(std::isfinite(ap));
    }
}
