// Directed-rounding double intervals for the few places where irrational
// coordinate magnitudes must be evaluated numerically (cross-shell distances).
// Elementary ops widen by one ulp outward; pow widens by a few ulps to cover
// libm's rounding. Widths stay far below the 1e-9 certification tolerance.
#ifndef LPGV_INTERVAL_HPP
#define LPGV_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace lpgv {

struct DInterval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

namespace iv {

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline double down_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = down(x);
    return x;
}
inline double up_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = up(x);
    return x;
}

inline DInterval exact(double v) { return {v, v}; }

// exact rational a/b, b > 0, as a one-ulp interval
inline DInterval ratio(std::int64_t a, std::int64_t b) {
    double q = static_cast<double>(a) / static_cast<double>(b);
    return {down(q), up(q)};
}

inline DInterval add(DInterval a, DInterval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

// both operands nonnegative
inline DInterval mul_nn(DInterval a, DInterval b) { return {down(a.lo * b.lo), up(a.hi * b.hi)}; }

inline DInterval scale(DInterval a, std::int64_t k) {
    double kk = static_cast<double>(k);
    return {down(a.lo * kk), up(a.hi * kk)};
}

// |a - b| for nonnegative intervals; clamps at zero when they overlap
inline DInterval abs_diff(DInterval a, DInterval b) {
    double lo = std::max(0.0, std::max(down(a.lo - b.hi), down(b.lo - a.hi)));
    double hi = std::max(up(a.hi - b.lo), up(b.hi - a.lo));
    return {lo, std::max(hi, 0.0)};
}

// base^e for base >= 0, e > 0; monotone in base, corners + ulp padding
inline DInterval pow(DInterval base, double e) {
    double lo = base.lo <= 0.0 ? 0.0 : down_n(std::pow(base.lo, e), 4);
    double hi = up_n(std::pow(base.hi, e), 4);
    return {std::max(lo, 0.0), hi};
}

// x^(1/p) for x >= 1, p >= 1: pads the inexact exponent one ulp each way
inline DInterval root(DInterval x, double p) {
    double inv = 1.0 / p;
    double lo = down_n(std::pow(x.lo, down(inv)), 4);
    double hi = up_n(std::pow(x.hi, up(inv)), 4);
    if (x.lo >= 1.0 && lo < 1.0) lo = 1.0;
    return {lo, hi};
}

}  // namespace iv

}  // namespace lpgv

#endif
