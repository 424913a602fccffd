#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ainfty::exact {

/// Error-free transform: s + err == a + b exactly, s = fl(a + b).
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    const double bv = s - a;
    err = (a - (s - bv)) + (b - bv);
}

/// Error-free transform: p + err == a * b exactly, p = fl(a * b).
inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

/// A floating-point expansion: the exact value is the sum of the components.
///
/// Components are kept nonoverlapping and sorted by increasing magnitude
/// (Shewchuk's invariant), so every arithmetic step below is error-free.
/// The point of the class is `round()`: the nearest double to the exact
/// sum, with ties to even, independent of how the value was assembled.
class Sum {
public:
    Sum() = default;
    explicit Sum(double x) {
        if (x != 0.0) comps_.push_back(x);
    }

    bool zero() const { return comps_.empty(); }
    std::size_t size() const { return comps_.size(); }

    /// Add one double, exactly.
    void add(double x);
    void subtract(double x) { add(-x); }

    /// Add another expansion, exactly.
    void add(const Sum& other);
    void subtract(const Sum& other);

    /// Multiply by a double, exactly (component-wise two_prod).
    void scale(double x);

    void negate() {
        for (double& c : comps_) c = -c;
    }

    /// Sign of the exact value: -1, 0, +1.
    int sign() const;

    /// Nearest double to the exact value, ties to even.
    double round() const;

    /// Nearest double to (exact value)/d, ties to even, for finite d > 0.
    /// The quotient and d are assumed to land in the normal range.
    double divide_rounded(double d) const;

    /// Exact comparison against another expansion.
    bool less_than(const Sum& other) const;

private:
    void compress();
    std::vector<double> comps_;  // increasing magnitude, nonoverlapping
};

/// Exact product of a list of doubles, as an expansion.
Sum product(std::span<const double> factors);

/// Compare two products of doubles exactly: sign of (lhs - rhs).
/// All factors are assumed finite; zero factors are fine.
int compare_products(std::span<const double> lhs, std::span<const double> rhs);

/// Exact comparison of ratios a/b vs c/d for positive b, d:
/// sign of (a*d - c*b).
inline int compare_ratios(double a, double b, double c, double d) {
    const double l[] = {a, d};
    const double r[] = {c, b};
    return compare_products(l, r);
}

}  // namespace ainfty::exact
