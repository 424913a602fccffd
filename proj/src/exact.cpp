#include "ainfty/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace ainfty::exact {

namespace {

// fl-estimate of the exact value; within ~1 ulp for nonoverlapping input.
double estimate(const std::vector<double>& comps) {
    double s = 0.0;
    for (double c : comps) s += c;
    return s;
}

}  // namespace

void Sum::add(double x) {
    if (x == 0.0) return;
    // Shewchuk GROW-EXPANSION with zero elimination.
    std::vector<double> out;
    out.reserve(comps_.size() + 1);
    double q = x;
    for (double c : comps_) {
        double s, err;
        two_sum(q, c, s, err);
        if (err != 0.0) out.push_back(err);
        q = s;
    }
    if (q != 0.0) out.push_back(q);
    comps_ = std::move(out);
}

void Sum::add(const Sum& other) {
    if (&other == this) {
        Sum copy(other);
        for (double c : copy.comps_) add(c);
        return;
    }
    for (double c : other.comps_) add(c);
}

void Sum::subtract(const Sum& other) {
    Sum copy(other);
    copy.negate();
    add(copy);
}

void Sum::scale(double x) {
    Sum out;
    for (double c : comps_) {
        double p, err;
        two_prod(c, x, p, err);
        out.add(err);
        out.add(p);
    }
    comps_ = std::move(out.comps_);
}

int Sum::sign() const {
    if (comps_.empty()) return 0;
    // Nonoverlapping ascending: the top component dominates the rest.
    return comps_.back() > 0.0 ? 1 : -1;
}

bool Sum::less_than(const Sum& other) const {
    Sum diff(*this);
    diff.subtract(other);
    return diff.sign() < 0;
}

double Sum::round() const {
    if (comps_.empty()) return 0.0;
    double r = estimate(comps_);
    if (!std::isfinite(r)) return r;

    for (int iter = 0; iter < 80; ++iter) {
        Sum res(*this);
        res.subtract(r);
        const int rs = res.sign();
        if (rs == 0) return r;

        const double dir = rs > 0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
        const double next = std::nextafter(r, dir);
        if (!std::isfinite(next)) {
            // At the top of the finite range the rounding boundary is
            // DBL_MAX + 2^970; at the boundary, ties-to-even overflows.
            Sum bound(std::ldexp(1.0, 970));
            if (rs < 0) bound.negate();
            res.subtract(bound);
            const int s = rs > 0 ? res.sign() : -res.sign();
            return s < 0 ? r : next;
        }

        // gap = |next - r| (one ulp), exactly representable.
        const double gap = rs > 0 ? next - r : r - next;
        Sum res2(res);
        res2.scale(2.0);
        if (rs < 0) res2.negate();  // |2 * residual|
        res2.subtract(gap);
        const int cmp = res2.sign();  // 2|res| vs ulp
        if (cmp < 0) return r;
        if (cmp == 0) {
            // Exact tie: pick the even mantissa.
            return (std::bit_cast<std::uint64_t>(r) & 1u) == 0 ? r : next;
        }
        // More than half an ulp away: move toward the value and retry.
        const double step = estimate(res.comps_);
        const double r2 = r + step;
        r = (r2 == r) ? next : r2;
        if (!std::isfinite(r)) r = std::copysign(std::numeric_limits<double>::max(), r);
    }
    return r;  // unreachable for finite expansions
}

double Sum::divide_rounded(double d) const {
    if (comps_.empty()) return 0.0;
    double r = estimate(comps_) / d;
    if (!std::isfinite(r)) return r;

    for (int iter = 0; iter < 80; ++iter) {
        Sum res(*this);
        Sum rd(r);
        rd.scale(d);  // exact in the normal range
        res.subtract(rd);
        const int rs = res.sign();
        if (rs == 0) return r;

        const double dir = rs > 0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
        const double next = std::nextafter(r, dir);
        if (!std::isfinite(next)) return r;
        const double gap = rs > 0 ? next - r : r - next;

        // r is nearest iff |value - r*d| <= gap*d/2, i.e. 2|res| <= gap*d.
        Sum res2(res);
        res2.scale(2.0);
        if (rs < 0) res2.negate();
        Sum bound(gap);
        bound.scale(d);
        res2.subtract(bound);
        const int cmp = res2.sign();
        if (cmp < 0) return r;
        if (cmp == 0) return (std::bit_cast<std::uint64_t>(r) & 1u) == 0 ? r : next;

        const double step = estimate(res.comps_) / d;
        const double r2 = r + step;
        r = (r2 == r) ? next : r2;
        if (!std::isfinite(r)) r = std::copysign(std::numeric_limits<double>::max(), r);
    }
    return r;
}

Sum product(std::span<const double> factors) {
    Sum p(1.0);
    for (double f : factors) p.scale(f);
    return p;
}

int compare_products(std::span<const double> lhs, std::span<const double> rhs) {
    // Normalize every factor to [0.5, 1) via frexp and track the power-of-two
    // exponents as integers, so products of many small/large factors never
    // underflow the error-free transforms.
    auto normalized = [](std::span<const double> fs, long& e2, int& sgn) {
        Sum p(1.0);
        e2 = 0;
        sgn = 1;
        for (double f : fs) {
            if (f == 0.0) {
                sgn = 0;
                return Sum(0.0);
            }
            if (f < 0.0) sgn = -sgn;
            int e;
            const double m = std::frexp(std::abs(f), &e);  // m in [0.5, 1)
            e2 += e;
            p.scale(m);
        }
        return p;
    };

    long el, er;
    int sl, sr;
    Sum pl = normalized(lhs, el, sl);
    Sum pr = normalized(rhs, er, sr);

    if (sl != sr) return sl < sr ? -1 : 1;
    if (sl == 0) return 0;

    // |pl| in (2^-nl, 1], |pr| in (2^-nr, 1] with n = #factors.
    const long nl = static_cast<long>(lhs.size());
    const long nr = static_cast<long>(rhs.size());
    int mag;
    if (el - nl >= er) {
        mag = 1;  // lhs magnitude strictly above rhs range
    } else if (er - nr >= el) {
        mag = -1;
    } else {
        // Exponent windows overlap by at most max(nl, nr) powers of two:
        // a bounded exact rescale is safe.
        const long d = el - er;
        if (d >= 0)
            pl.scale(std::ldexp(1.0, static_cast<int>(d)));
        else
            pr.scale(std::ldexp(1.0, static_cast<int>(-d)));
        pl.subtract(pr);
        mag = pl.sign();
    }
    return sl > 0 ? mag : -mag;
}

}  // namespace ainfty::exact
