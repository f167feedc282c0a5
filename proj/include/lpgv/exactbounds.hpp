// Exact finite-n lower bounds on A_p(n, 1/2): per-shell GV terms, multi-shell
// totals, the exhaustive m-sweep, the m = n Hamming specialization with the
// optional Jiang-Vardy factor, and the Euclidean comparison bound for
// p in (1, 2].
#ifndef LPGV_EXACTBOUNDS_HPP
#define LPGV_EXACTBOUNDS_HPP

#include <cstdint>
#include <vector>

#include "lpgv/bigcount.hpp"
#include "lpgv/shellsys.hpp"

namespace lpgv {

enum class BoundMethod { multi_shell, hamming_large_p };

struct ShellTerm {
    std::int64_t m_i = 0;
    BigCount shell_size;
    BigCount ball_size;
    BigCount gv_term;  // ceil(shell_size / ball_size), JV factor folded in when applied

    friend bool operator==(const ShellTerm& a, const ShellTerm& b) {
        return a.m_i == b.m_i && a.shell_size == b.shell_size && a.ball_size == b.ball_size &&
               a.gv_term == b.gv_term;
    }
};

struct BoundReport {
    double p = 0.0;
    int n = 0;
    int m_star = 0;  // the m this report evaluates (maximizing m for best_bound)
    BoundMethod method = BoundMethod::multi_shell;
    bool jv_factor = false;  // first-shell term carries the c=1 Jiang-Vardy factor
    std::vector<ShellTerm> per_shell;
    BigCount total;

    friend bool operator==(const BoundReport& a, const BoundReport& b) {
        return a.p == b.p && a.n == b.n && a.m_star == b.m_star && a.method == b.method &&
               a.jv_factor == b.jv_factor && a.per_shell == b.per_shell && a.total == b.total;
    }
};

// ceil(|J_i| / B_i) for one shell; `shell` is 0-based
BigCount gv_shell_term(const ShellSystem& sys, std::size_t shell);

// Sum of GV terms over all shells of the (p, n, m) system.
BoundReport total_bound(const ShellSystem& sys);
BoundReport total_bound(double p, int n, int m);

// Exhaustive sweep over m in [1, n]; ties break toward smaller m. With
// threads > 1 the sweep is evaluated in parallel; the reduction is
// deterministic, so results are identical for any thread count. Beyond
// n = 2000 the full sweep is refused: pass an explicit window instead.
BoundReport best_bound(double p, int n, unsigned threads = 1);
BoundReport best_bound_window(double p, int n, int m_lo, int m_hi, unsigned threads = 1);

// Hamming-ball volume sum_{k <= ceil(n/2^p)-1} C(n, k); equals the first-shell
// ball size of the m = n system.
BigCount hamming_ball_size(const PNorm& pnorm, int n);
BigCount hamming_ball_size(double p, int n);

// m = n bound: first shell via the Hamming reduction, deeper shells via GV
// terms. With use_jv_factor the first term gains max(1, floor(log2 B)) from
// the Jiang-Vardy theorem with the unknown constant taken as 1.
BoundReport large_p_bound(double p, int n, bool use_jv_factor = false);

struct ComparisonBound {
    double p = 0.0;
    int n = 0;
    double theta = 0.0;       // half-angle parameter, sin(theta/2) = 2^(-p/2)
    double value_log2 = 0.0;  // log2 of the bound, (1+o(1)) taken as 1
    double value = 0.0;       // 2^value_log2; +inf when it overflows double

    friend bool operator==(const ComparisonBound&, const ComparisonBound&) = default;
};

// Finite-n evaluation of A_p(n,1/2) >= A_2(n, 2^(-p/2)) via the best known
// Euclidean spherical-code bound. Valid for 1 < p <= 2, n >= 2.
ComparisonBound euclidean_comparison(double p, int n);

}  // namespace lpgv

#endif
