#include "lpgv/exactbounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lpgv {

BigCount gv_shell_term(const ShellSystem& sys, std::size_t shell) {
    if (shell >= sys.r()) throw std::domain_error("gv_shell_term: shell index out of range");
    return ceil_div(shell_size(sys.n, sys.levels[shell]), ball_size(sys, shell));
}

BoundReport total_bound(const ShellSystem& sys) {
    BoundReport report;
    report.p = sys.pnorm.p();
    report.n = sys.n;
    report.m_star = sys.m;
    report.method = BoundMethod::multi_shell;
    report.total = 0;
    for (std::size_t i = 0; i < sys.r(); ++i) {
        ShellTerm term;
        term.m_i = sys.levels[i];
        term.shell_size = shell_size(sys.n, term.m_i);
        term.ball_size = ball_size(sys, i);
        term.gv_term = ceil_div(term.shell_size, term.ball_size);
        report.total += term.gv_term;
        report.per_shell.push_back(std::move(term));
    }
    return report;
}

BoundReport total_bound(double p, int n, int m) {
    return total_bound(build_shell_system(p, n, m));
}

BoundReport best_bound(double p, int n, unsigned threads) {
    if (n > 2000)
        throw std::domain_error(
            "best_bound: full m-sweep is limited to n <= 2000; use best_bound_window");
    return best_bound_window(p, n, 1, n, threads);
}

BoundReport best_bound_window(double p, int n, int m_lo, int m_hi, unsigned threads) {
    if (n < 1) throw std::domain_error("best_bound: dimension n must be >= 1");
    if (m_lo < 1 || m_hi > n || m_lo > m_hi)
        throw std::domain_error("best_bound: window must satisfy 1 <= m_lo <= m_hi <= n");
    PNorm pnorm(p);
    const int count = m_hi - m_lo + 1;
    std::vector<BigCount> totals(static_cast<std::size_t>(count));
    auto run = [&](int begin, int end) {
        for (int k = begin; k < end; ++k)
            totals[static_cast<std::size_t>(k)] =
                total_bound(build_shell_system(pnorm, n, m_lo + k)).total;
    };
    if (threads <= 1 || count < 8) {
        run(0, count);
    } else {
        unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
        std::vector<std::thread> pool;
        int chunk = (count + static_cast<int>(workers) - 1) / static_cast<int>(workers);
        for (unsigned w = 0; w < workers; ++w) {
            int lo = static_cast<int>(w) * chunk;
            int hi = std::min(count, lo + chunk);
            if (lo < hi) pool.emplace_back(run, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    // deterministic max-then-smallest-m reduction
    int best_k = 0;
    for (int k = 1; k < count; ++k)
        if (totals[static_cast<std::size_t>(k)] > totals[static_cast<std::size_t>(best_k)]) best_k = k;
    return total_bound(build_shell_system(pnorm, n, m_lo + best_k));
}

BigCount hamming_ball_size(const PNorm& pnorm, int n) {
    if (n < 1) throw std::domain_error("hamming_ball_size: dimension n must be >= 1");
    std::uint64_t radius_plus_1 = pnorm.ceil_div_two_pow_p(static_cast<std::uint64_t>(n));
    BinomialRow row(n);
    BigCount total = 0;
    for (std::uint64_t k = 0; k < radius_plus_1; ++k) {
        if (k > static_cast<std::uint64_t>(n)) break;
        total += row.at(static_cast<std::int64_t>(k));
    }
    return total;
}

BigCount hamming_ball_size(double p, int n) { return hamming_ball_size(PNorm(p), n); }

BoundReport large_p_bound(double p, int n, bool use_jv_factor) {
    ShellSystem sys = build_shell_system(p, n, n);
    BoundReport report;
    report.p = sys.pnorm.p();
    report.n = n;
    report.m_star = n;
    report.method = BoundMethod::hamming_large_p;
    report.jv_factor = use_jv_factor;
    report.total = 0;

    ShellTerm first;
    first.m_i = n;
    first.shell_size = pow2(static_cast<unsigned long>(n));
    first.ball_size = hamming_ball_size(sys.pnorm, n);
    first.gv_term = ceil_div(first.shell_size, first.ball_size);
    if (use_jv_factor) {
        // floor(log2 B) = bit_length(B) - 1, clamped to 1 when B = 1
        unsigned long factor = static_cast<unsigned long>(bit_length(first.ball_size));
        factor = factor > 1 ? factor - 1 : 1;
        first.gv_term *= factor;
    }
    report.total += first.gv_term;
    report.per_shell.push_back(std::move(first));

    for (std::size_t i = 1; i < sys.r(); ++i) {
        ShellTerm term;
        term.m_i = sys.levels[i];
        term.shell_size = shell_size(n, term.m_i);
        term.ball_size = ball_size(sys, i);
        term.gv_term = ceil_div(term.shell_size, term.ball_size);
        report.total += term.gv_term;
        report.per_shell.push_back(std::move(term));
    }
    return report;
}

ComparisonBound euclidean_comparison(double p, int n) {
    if (!(p > 1.0 && p <= 2.0))
        throw std::domain_error("euclidean_comparison: valid only for 1 < p <= 2");
    if (n < 2) throw std::domain_error("euclidean_comparison: dimension n must be >= 2");
    ComparisonBound cb;
    cb.p = p;
    cb.n = n;
    double sin_half = std::exp2(-p / 2.0);
    cb.theta = 2.0 * std::asin(sin_half);
    double sin_theta = std::exp2(1.0 - p / 2.0) * std::sqrt(1.0 - std::exp2(-p));
    double cos_theta = 1.0 - std::exp2(1.0 - p);
    double prefactor = std::log(sin_theta / (std::numbers::sqrt2 * sin_half));
    // bound = prefactor * n * sqrt(2 pi n) * cos(theta) / sin(theta)^(n-1)
    cb.value_log2 = std::log2(prefactor) + std::log2(static_cast<double>(n)) +
                    0.5 * std::log2(2.0 * std::numbers::pi * n) + std::log2(cos_theta) -
                    (n - 1) * std::log2(sin_theta);
    cb.value = std::exp2(cb.value_log2);
    return cb;
}

}  // namespace lpgv
