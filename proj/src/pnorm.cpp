#include "lpgv/pnorm.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lpgv {

namespace {

constexpr unsigned kStartBits = 96;

// floor(sqrt(x))
BigCount isqrt_floor(const BigCount& x) {
    BigCount r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

BigCount isqrt_ceil(const BigCount& x) {
    BigCount r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r != x) r += 1;
    return r;
}

// x/2^bits with directed rounding
BigCount shift_down_floor(const BigCount& x, unsigned bits) { return x >> bits; }

BigCount shift_down_ceil(const BigCount& x, unsigned bits) {
    BigCount q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), x.get_mpz_t(), bits);
    return q;
}

struct Bracket {
    BigCount lo, hi;  // scaled by 2^bits
};

// Certified bracket of 2^frac scaled by 2^bits, frac in [0,1) dyadic.
// 2^frac = prod over set bits b of frac of 2^(2^-b), each factor an iterated
// square root of 2 computed with directed rounding at the working precision.
Bracket frac_pow2_bracket(double frac, unsigned bits) {
    Bracket res{BigCount(1) << bits, BigCount(1) << bits};
    if (frac == 0.0) return res;
    Bracket root{BigCount(2) << bits, BigCount(2) << bits};  // 2^(2^0)
    double rem = frac;
    for (int b = 1; rem > 0.0 && b <= 80; ++b) {
        // root becomes bracket of 2^(2^-b)
        root.lo = isqrt_floor(root.lo << bits);
        root.hi = isqrt_ceil(root.hi << bits);
        rem *= 2.0;
        if (rem >= 1.0) {
            rem -= 1.0;
            res.lo = shift_down_floor(res.lo * root.lo, bits);
            res.hi = shift_down_ceil(res.hi * root.hi, bits);
        }
    }
    return res;
}

}  // namespace

unsigned precision_escalation_limit() {
    static const unsigned limit = [] {
        if (const char* env = std::getenv("LPGV_PREC_LIMIT")) {
            long v = std::atol(env);
            if (v >= 256) return static_cast<unsigned>(v);
        }
        return 65536u;
    }();
    return limit;
}

PNorm::PNorm(double p) : p_(p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("PNorm: exponent p must satisfy p >= 1");
    two_pow_p_ = std::exp2(p);
    integral_ = (std::floor(p) == p) && p <= 1024.0;
    p_int_ = integral_ ? static_cast<unsigned long>(p) : 0;
    cached_bits_ = kStartBits;
    if (!integral_) {
        auto [lo, hi] = brackets(cached_bits_);
        lo_ = std::move(lo);
        hi_ = std::move(hi);
    }
}

std::pair<BigCount, BigCount> PNorm::brackets(unsigned bits) const {
    if (integral_) {
        BigCount v = BigCount(1) << (p_int_ + bits);
        return {v, v};
    }
    if (bits == cached_bits_ && lo_ != 0) return {lo_, hi_};
    double ip;
    double frac = std::modf(p_, &ip);
    Bracket b = frac_pow2_bracket(frac, bits);
    unsigned long shift = static_cast<unsigned long>(ip);
    return {b.lo << shift, b.hi << shift};
}

std::uint64_t PNorm::floor_div_two_pow_p(std::uint64_t value) const {
    if (value == 0) return 0;
    if (integral_) {
        if (p_int_ >= 64) return 0;
        return value >> p_int_;
    }
    for (unsigned bits = cached_bits_;; bits *= 2) {
        if (bits > precision_escalation_limit())
            throw std::runtime_error("floor_div_two_pow_p: precision escalation limit reached");
        auto [lo, hi] = brackets(bits);
        BigCount scaled = BigCount(static_cast<unsigned long>(value)) << bits;
        BigCount qlo = scaled / hi;  // value/2^p >= scaled/hi
        BigCount qhi = scaled / lo;
        if (qlo == qhi) return mpz_get_ui(qlo.get_mpz_t());
    }
}

std::uint64_t PNorm::ceil_div_two_pow_p(std::uint64_t value) const {
    if (value == 0) return 0;
    if (integral_) {
        if (p_int_ >= 64) return 1;
        std::uint64_t q = value >> p_int_;
        std::uint64_t rem_mask = (p_int_ == 0) ? 0 : ((std::uint64_t(1) << p_int_) - 1);
        return q + ((value & rem_mask) != 0 ? 1 : 0);
    }
    // value / 2^p is irrational for non-integer p, so ceil = floor + 1
    return floor_div_two_pow_p(value) + 1;
}

std::uint64_t PNorm::count_scaled_below(std::int64_t bound) const {
    if (bound <= 0) return 0;
    // ceil(bound / 2^p) when equality can occur (integer p), else
    // floor(bound / 2^p) + 1: the count of lattice points strictly below
    if (integral_) return ceil_div_two_pow_p(static_cast<std::uint64_t>(bound));
    return floor_div_two_pow_p(static_cast<std::uint64_t>(bound)) + 1;
}

bool PNorm::scaled_less(std::uint64_t x, std::int64_t bound) const {
    if (bound <= 0) return false;
    if (x == 0) return true;
    if (integral_) {
        BigCount lhs = BigCount(static_cast<unsigned long>(x));
        lhs <<= p_int_;
        return lhs < bound;
    }
    for (unsigned bits = cached_bits_;; bits *= 2) {
        if (bits > precision_escalation_limit())
            throw std::runtime_error("scaled_less: precision escalation limit reached");
        auto [lo, hi] = brackets(bits);
        BigCount rhs = BigCount(static_cast<long>(bound)) << bits;
        if (hi * static_cast<unsigned long>(x) < rhs) return true;
        if (lo * static_cast<unsigned long>(x) >= rhs) return false;
    }
}

unsigned PNorm::floor_log_two_pow_p(std::uint64_t value) const {
    if (value == 0) throw std::domain_error("floor_log_two_pow_p: value must be >= 1");
    if (integral_) {
        unsigned k = 0;
        while (p_int_ < 64 && k < 64) {
            unsigned long next_shift = p_int_ * (k + 1);
            if (next_shift >= 64) break;
            if ((std::uint64_t(1) << next_shift) <= value)
                ++k;
            else
                break;
        }
        return k;
    }
    // p is a dyadic rational: p = dyadic_num / 2^dyadic_shift, exactly
    long dyadic_shift = 0;
    double scaled = p_;
    while (scaled != std::floor(scaled) && dyadic_shift < 80) {
        scaled = std::ldexp(scaled, 1);
        ++dyadic_shift;
    }
    BigCount dyadic_num(scaled);

    // largest k with (2^p)^k <= value, decided on powered brackets
    unsigned k = 0;
    for (;; ++k) {
        unsigned long e = k + 1;
        bool next_fits = false;
        // p*e can be an exact integer (e.g. p = 1.5, e = 2), making 2^(p e) an
        // exact power of two that strict brackets can never separate
        BigCount pe_num = dyadic_num * e;
        BigCount pe_rem = pe_num & ((BigCount(1) << dyadic_shift) - 1);
        if (pe_rem == 0) {
            BigCount exponent = pe_num >> dyadic_shift;
            next_fits = (BigCount(1) << mpz_get_ui(exponent.get_mpz_t())) <=
                        BigCount(static_cast<unsigned long>(value));
        } else {
            for (unsigned bits = cached_bits_;; bits *= 2) {
                if (bits > precision_escalation_limit())
                    throw std::runtime_error(
                        "floor_log_two_pow_p: precision escalation limit reached");
                auto [lo, hi] = brackets(bits);
                BigCount lo_pow, hi_pow;
                mpz_pow_ui(lo_pow.get_mpz_t(), lo.get_mpz_t(), e);
                mpz_pow_ui(hi_pow.get_mpz_t(), hi.get_mpz_t(), e);
                BigCount rhs = BigCount(static_cast<unsigned long>(value));
                rhs <<= static_cast<unsigned long>(bits) * e;
                if (hi_pow <= rhs) {
                    next_fits = true;
                    break;
                }
                if (lo_pow > rhs) {
                    next_fits = false;
                    break;
                }
            }
        }
        if (!next_fits) return k;
    }
}

}  // namespace lpgv
