// Exact arbitrary-precision counts (shell sizes, ball sizes, GV terms).
#ifndef LPGV_BIGCOUNT_HPP
#define LPGV_BIGCOUNT_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lpgv {

// Nonnegative exact integer. All bound arithmetic goes through this type;
// no floating-point rounding is ever allowed in the exact layer.
using BigCount = mpz_class;

inline BigCount pow2(unsigned long k) {
    BigCount r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

inline BigCount binomial(unsigned long n, unsigned long k) {
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ceil(a / b), b > 0
inline BigCount ceil_div(const BigCount& a, const BigCount& b) {
    if (b == 0) throw std::domain_error("ceil_div: division by zero");
    BigCount q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline std::size_t bit_length(const BigCount& a) {
    if (a == 0) return 0;
    return mpz_sizeinbase(a.get_mpz_t(), 2);
}

// log2 of a positive count, accurate to ~1 ulp of double
inline double log2_approx(const BigCount& a) {
    if (a <= 0) throw std::domain_error("log2_approx: nonpositive argument");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
    return static_cast<double>(exp2) + std::log2(mant);
}

inline std::string to_decimal(const BigCount& a) { return a.get_str(10); }

inline BigCount from_decimal(const std::string& s) {
    BigCount r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("from_decimal: not a decimal integer: " + s);
    return r;
}

// One row of Pascal's triangle, extended on demand: C(n, 0..k).
// Lives for the duration of a single ball-size evaluation.
class BinomialRow {
public:
    explicit BinomialRow(std::int64_t n) : n_(n) { row_.emplace_back(1); }

    const BigCount& at(std::int64_t k) {
        static const BigCount zero = 0;
        if (k < 0 || k > n_) return zero;
        while (static_cast<std::int64_t>(row_.size()) <= k) {
            std::int64_t j = static_cast<std::int64_t>(row_.size());
            // C(n, j) = C(n, j-1) * (n - j + 1) / j, exact at every step
            BigCount next = row_.back() * (n_ - j + 1);
            mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(j));
            row_.push_back(std::move(next));
        }
        return row_[static_cast<std::size_t>(k)];
    }

    std::int64_t n() const { return n_; }

private:
    std::int64_t n_;
    std::vector<BigCount> row_;
};

}  // namespace lpgv

#endif
