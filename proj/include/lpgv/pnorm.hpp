// The norm exponent p and every comparison against the irrational scale 2^p.
//
// For non-integer p the quantities x*2^p and value/2^p are irrational, yet the
// bound formulas need exact floors and strict inequalities against them. All
// such decisions run through certified brackets lo/2^B <= 2^p <= hi/2^B held
// as exact integers; whenever a bracket straddles a decision boundary the
// working precision B escalates until the decision is certain. For integer p
// everything reduces to exact shifts.
#ifndef LPGV_PNORM_HPP
#define LPGV_PNORM_HPP

#include <cstdint>
#include <utility>

#include "lpgv/bigcount.hpp"

namespace lpgv {

// Precision ceiling for bracket escalation, in bits. Overridable via the
// LPGV_PREC_LIMIT environment variable (read once per process).
unsigned precision_escalation_limit();

class PNorm {
public:
    explicit PNorm(double p);

    double p() const { return p_; }
    // cached double approximation of 2^p, within 1 ulp
    double two_pow_p() const { return two_pow_p_; }
    bool integral() const { return integral_; }

    // exact floor(value / 2^p)
    std::uint64_t floor_div_two_pow_p(std::uint64_t value) const;
    // exact ceil(value / 2^p)
    std::uint64_t ceil_div_two_pow_p(std::uint64_t value) const;
    // #{ x >= 0 integer : x * 2^p < bound }; 0 when bound <= 0
    std::uint64_t count_scaled_below(std::int64_t bound) const;
    // certified truth of  x * 2^p < bound
    bool scaled_less(std::uint64_t x, std::int64_t bound) const;
    // largest k >= 0 with 2^(p k) <= value, i.e. floor(log_{2^p} value); value >= 1
    unsigned floor_log_two_pow_p(std::uint64_t value) const;

    // integer brackets lo <= 2^p * 2^bits <= hi with hi - lo a few ulps
    std::pair<BigCount, BigCount> brackets(unsigned bits) const;

private:
    double p_;
    double two_pow_p_;
    bool integral_;
    unsigned long p_int_;      // valid when integral_
    unsigned cached_bits_;     // precision of the construction-time bracket
    BigCount lo_, hi_;         // scaled by 2^cached_bits_
};

}  // namespace lpgv

#endif
