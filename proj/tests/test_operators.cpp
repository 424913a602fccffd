#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ainfty/fixtures.hpp"
#include "ainfty/operators.hpp"
#include "ainfty/oracle.hpp"

using namespace ainfty;

namespace {
const CubeFamilySpec kAll{FamilyMode::all, {}};
const CubeFamilySpec kDyadic{FamilyMode::dyadic, {}};
}  // namespace

TEST_CASE("maximal on the canonical fixture") {
    const WeightGrid f1 = fixture_f1();
    const MaximalResult r = maximal(f1, kAll);
    CHECK(r.output.values() == std::vector<double>{3.0, 11.0 / 3.0, 4.0, 6.0});

    // Witnesses contain their cell and reproduce the value.
    const PrefixTable pt(f1);
    for (std::int64_t x = 0; x < 4; ++x) {
        const Cube& q = r.witness[static_cast<std::size_t>(x)];
        CHECK(q.contains(1, x, 0));
        CHECK(pt.cube_average(q) == r.output.value(x));
    }

    const WeightGrid r2 = maximal(r.output, kAll).output;
    CHECK(r2.values() == std::vector<double>{25.0 / 6.0, 41.0 / 9.0, 5.0, 6.0});
}

TEST_CASE("maximal of a constant") {
    WeightSpec s;
    s.cells_per_axis = 9;
    s.kind = ConstantSpec{3.7};
    const MaximalResult r = maximal(generate(s), kAll);
    for (std::int64_t x = 0; x < 9; ++x) {
        CHECK(r.output.value(x) == 3.7);
        CHECK(r.witness[static_cast<std::size_t>(x)].side == 1);
    }
}

TEST_CASE("maximal dominates, is monotone and scales by powers of two") {
    std::uint64_t seeds[] = {1, 2, 3};
    for (std::uint64_t seed : seeds) {
        for (int dim : {1, 2}) {
            const WeightGrid w = random_weight(dim, dim == 1 ? 24 : 7, seed);
            const WeightGrid mw = maximal(w, kAll).output;
            for (std::int64_t x = 0; x < w.size(); ++x) CHECK(mw.value(x) >= w.value(x));

            const WeightGrid v = w.map([](double x) { return x * 1.5; });
            const WeightGrid mv = maximal(v, kAll).output;
            for (std::int64_t x = 0; x < w.size(); ++x) CHECK(mv.value(x) >= mw.value(x));

            const WeightGrid w8 = w.map([](double x) { return 8.0 * x; });
            const WeightGrid mw8 = maximal(w8, kAll).output;
            for (std::int64_t x = 0; x < w.size(); ++x)
                CHECK(mw8.value(x) == 8.0 * mw.value(x));
        }
    }
}

TEST_CASE("maximal_power") {
    const WeightGrid f1 = fixture_f1();
    CHECK(maximal_power(f1, 1.0, kAll).values() == maximal(f1, kAll).output.values());
    CHECK_THROWS_AS(maximal_power(f1, 0.5, kAll), Error);

    const WeightGrid p2 = maximal_power(f1, 2.0, kAll);
    const WeightGrid mu = maximal(f1, kAll).output;
    for (std::int64_t x = 0; x < 4; ++x) CHECK(p2.value(x) >= mu.value(x));

    // Holder ladder on a random weight, including the s = 1 base case.
    const WeightGrid w = random_weight(1, 20, 9);
    const WeightGrid s1 = maximal_power(w, 1.0, kAll);
    const WeightGrid s15 = maximal_power(w, 1.5, kAll);
    const WeightGrid s2 = maximal_power(w, 2.0, kAll);
    for (std::int64_t x = 0; x < w.size(); ++x) {
        CHECK(s15.value(x) >= s1.value(x));
        CHECK(s2.value(x) + 1e-12 * s2.value(x) >= s15.value(x));
    }

    WeightSpec cs;
    cs.cells_per_axis = 5;
    cs.kind = ConstantSpec{2.3};
    const WeightGrid c = generate(cs);
    for (double s : {1.5, 2.0, 3.0}) {
        const WeightGrid mp = maximal_power(c, s, kAll);
        for (double v : mp.values()) CHECK(v == 2.3);
    }
}

TEST_CASE("maximal_iterate") {
    const WeightGrid f1 = fixture_f1();
    CHECK(maximal_iterate(f1, 1, kAll).values() == maximal(f1, kAll).output.values());
    CHECK(maximal_iterate(f1, 2, kAll).values() ==
          std::vector<double>{25.0 / 6.0, 41.0 / 9.0, 5.0, 6.0});
    CHECK_THROWS_AS(maximal_iterate(f1, 0, kAll), Error);
}

TEST_CASE("fast maximal equals the oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int dim = seed % 3 == 2 ? 2 : 1;
        const std::int64_t n = 1 + static_cast<std::int64_t>(seed % (dim == 1 ? 33 : 9));
        const WeightGrid w = random_weight(dim, n, seed);
        for (const auto& family : {kAll, kDyadic}) {
            const MaximalResult fast = maximal(w, family);
            const MaximalResult ref = oracle::maximal(w, family);
            CHECK(fast.output.values() == ref.output.values());
            for (std::int64_t x = 0; x < w.size(); ++x) {
                CHECK(fast.witness[static_cast<std::size_t>(x)] ==
                      ref.witness[static_cast<std::size_t>(x)]);
            }
        }
        const WeightGrid fp = maximal_power(w, 1.5, kAll);
        const WeightGrid op = oracle::maximal_power(w, 1.5, kAll);
        CHECK(fp.values() == op.values());
    }
}

TEST_CASE("dyadic family never exceeds the full family") {
    const WeightGrid w = random_weight(1, 32, 77);
    const WeightGrid all = maximal(w, kAll).output;
    const WeightGrid dy = maximal(w, kDyadic).output;
    for (std::int64_t x = 0; x < w.size(); ++x) CHECK(dy.value(x) <= all.value(x));
}

TEST_CASE("max_side caps the supremum") {
    const WeightGrid f1 = fixture_f1();
    const CubeFamilySpec capped{FamilyMode::all, 1};
    CHECK(maximal(f1, capped).output.values() == f1.values());
}
