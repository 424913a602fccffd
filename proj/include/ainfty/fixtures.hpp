#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ainfty/grid.hpp"

namespace ainfty {

/// Values below this are floored by generators and permissive loaders.
inline constexpr double kWeightFloor = 1e-12;

struct ConstantSpec {
    double c = 1.0;
};
struct PowerSpec {
    double a = 0.5;      // exponent of |x - center|
    double center = 0.5; // along axis 0; in 2D the distance is euclidean
};
struct StepSpec {
    std::vector<double> levels;
};
struct SpikeSpec {
    double eps = 1e-6;
    double peak = 1.0;
    std::int64_t position = -1;  // flat cell index; -1 means the last cell
};
struct MonotoneSpec {
    double ratio = 2.0;
};
struct LognormalSpec {
    std::uint64_t seed = 0;
    double sigma = 1.0;
};

struct WeightSpec {
    int dim = 1;
    std::int64_t cells_per_axis = 4;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::variant<ConstantSpec, PowerSpec, StepSpec, SpikeSpec, MonotoneSpec, LognormalSpec> kind =
        ConstantSpec{};
};

/// Deterministic weight from a spec. Values are floored at kWeightFloor;
/// `floored`, when given, reports whether the floor fired.
WeightGrid generate(const WeightSpec& spec, bool* floored = nullptr);

/// Each cell split into factor^dim equal cells with the same value.
WeightGrid refine(const WeightGrid& w, std::int64_t factor);

/// The canonical 4-cell step fixture [1, 3, 2, 6] on [0, 1).
WeightGrid fixture_f1();

struct NamedWeight {
    std::string name;
    WeightGrid weight;
};

/// The fixture suite shared by the property and acceptance tests.
std::vector<NamedWeight> standard_suite();

/// Seeded random weight for the oracle-equivalence sweeps: a deterministic
/// mix of lognormal, spiky, two-level and monotone shapes.
WeightGrid random_weight(int dim, std::int64_t cells_per_axis, std::uint64_t seed);

/// splitmix64 step; the stream underlying every seeded generator here.
std::uint64_t splitmix64(std::uint64_t& state);

/// Uniform draw in (0, 1) from the splitmix stream.
double uniform01(std::uint64_t& state);

/// Inverse standard-normal CDF (Acklam's rational approximation; the exact
/// coefficients are fixed in docs/generators.md).
double inverse_normal_cdf(double p);

}  // namespace ainfty
