#include "lpgv/constructor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace lpgv {

namespace {

void check_enumerable(const ShellSystem& sys, std::size_t shell, std::uint64_t cap) {
    if (shell >= sys.r()) throw std::domain_error("shell index out of range");
    if (sys.n > 64) throw std::domain_error("enumeration requires n <= 64");
    BigCount size = shell_size(sys.n, sys.levels[shell]);
    if (size > BigCount(static_cast<unsigned long>(cap)))
        throw enumeration_cap_error("shell has " + to_decimal(size) + " points, enumeration cap is " +
                                    std::to_string(cap));
}

// bit i of `counter` gives the sign of the i-th lowest support coordinate
std::uint64_t scatter_signs(std::uint64_t support, std::uint64_t counter) {
    std::uint64_t neg = 0;
    while (counter != 0) {
        unsigned bit = std::countr_zero(counter);
        std::uint64_t s = support;
        for (unsigned k = 0; k < bit; ++k) s &= s - 1;
        neg |= s & (~s + 1);
        counter &= counter - 1;
    }
    return neg;
}

// supports in colex order (= numeric order of masks), signs as binary counter
template <typename Fn>
void for_each_shell_point(const ShellSystem& sys, std::size_t shell, Fn&& fn) {
    const int n = sys.n;
    const std::int64_t mi = sys.levels[shell];
    const std::uint64_t sign_count = std::uint64_t(1) << mi;
    std::uint64_t support = (mi == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << mi) - 1);
    const std::uint64_t last =
        support << (n - mi);  // highest colex support: the top m_i coordinates
    for (;;) {
        for (std::uint64_t c = 0; c < sign_count; ++c)
            fn(ShellPoint{static_cast<std::int32_t>(shell), support, scatter_signs(support, c)});
        if (support == last) break;
        // Gosper: next mask with the same popcount
        std::uint64_t u = support & (~support + 1);
        std::uint64_t v = support + u;
        support = v + (((v ^ support) / u) >> 2);
    }
}

// per-t count of sign flips x with 2t + 2^p x < m_i; index t in [0, m_i]
std::vector<std::uint64_t> strict_flip_counts(const ShellSystem& sys, std::int64_t mi) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(mi) + 1, 0);
    for (std::int64_t t = 0; t <= mi; ++t)
        counts[static_cast<std::size_t>(t)] = sys.pnorm.count_scaled_below(mi - 2 * t);
    return counts;
}

struct MovedFlipped {
    std::int64_t moved;
    std::int64_t flipped;
};

MovedFlipped moved_flipped(const ShellPoint& u, const ShellPoint& v) {
    std::uint64_t common = u.support & v.support;
    return {std::popcount(u.support & ~v.support), std::popcount((u.neg ^ v.neg) & common)};
}

}  // namespace

std::vector<ShellPoint> enumerate_shell(const ShellSystem& sys, std::size_t shell,
                                        std::uint64_t cap) {
    check_enumerable(sys, shell, cap);
    std::vector<ShellPoint> points;
    points.reserve(static_cast<std::size_t>(
        mpz_get_ui(shell_size(sys.n, sys.levels[shell]).get_mpz_t())));
    for_each_shell_point(sys, shell, [&](const ShellPoint& pt) { points.push_back(pt); });
    return points;
}

SameShellDistance same_shell_dist_p_pow(const ShellPoint& u, const ShellPoint& v,
                                        const ShellSystem& sys) {
    if (u.shell != v.shell) throw std::domain_error("same_shell_dist_p_pow: shell mismatch");
    const std::int64_t mi = sys.levels[static_cast<std::size_t>(u.shell)];
    auto [moved, flipped] = moved_flipped(u, v);
    SameShellDistance d;
    d.moved = moved;
    d.flipped = flipped;
    if (sys.pnorm.integral() && sys.pnorm.p() <= 40.0) {
        d.exact = true;
        std::int64_t scale = std::int64_t(1) << static_cast<std::int64_t>(sys.pnorm.p());
        d.num = sys.m * (2 * moved + scale * flipped);
        d.den = mi;
        d.value = iv::ratio(d.num, d.den);
    } else {
        double tp = sys.pnorm.two_pow_p();
        DInterval two_pow{iv::down_n(tp, 2), iv::up_n(tp, 2)};
        DInterval inner = iv::add(iv::exact(2.0 * static_cast<double>(moved)),
                                  iv::scale(two_pow, flipped));
        d.value = iv::mul_nn(iv::ratio(sys.m, mi), inner);
    }
    return d;
}

DInterval cross_shell_dist_p_pow(const ShellPoint& u, const ShellPoint& v,
                                 const ShellSystem& sys) {
    if (u.shell == v.shell) throw std::domain_error("cross_shell_dist_p_pow: same shell");
    const double p = sys.pnorm.p();
    const std::int64_t mi = sys.levels[static_cast<std::size_t>(u.shell)];
    const std::int64_t mj = sys.levels[static_cast<std::size_t>(v.shell)];
    const std::uint64_t common = u.support & v.support;
    const std::int64_t only_u = std::popcount(u.support & ~v.support);
    const std::int64_t only_v = std::popcount(v.support & ~u.support);
    const std::int64_t opposite = std::popcount((u.neg ^ v.neg) & common);
    const std::int64_t same = std::popcount(common) - opposite;

    // coordinate magnitudes: (m/m_i)^(1/p) on u's support, (m/m_j)^(1/p) on v's
    DInterval mag_u = iv::root(iv::ratio(sys.m, mi), p);
    DInterval mag_v = iv::root(iv::ratio(sys.m, mj), p);

    // |mag|^p recovers the exact rational weight; keep those terms rational
    DInterval total = iv::scale(iv::ratio(sys.m, mi), only_u);
    total = iv::add(total, iv::scale(iv::ratio(sys.m, mj), only_v));
    if (same > 0) total = iv::add(total, iv::scale(iv::pow(iv::abs_diff(mag_u, mag_v), p), same));
    if (opposite > 0) total = iv::add(total, iv::scale(iv::pow(iv::add(mag_u, mag_v), p), opposite));
    return total;
}

std::vector<ShellPoint> greedy_code(const ShellSystem& sys, std::size_t shell, std::uint64_t cap) {
    check_enumerable(sys, shell, cap);
    const std::int64_t mi = sys.levels[shell];
    const auto inside = strict_flip_counts(sys, mi);
    std::vector<ShellPoint> kept;
    for_each_shell_point(sys, shell, [&](const ShellPoint& pt) {
        for (const ShellPoint& k : kept) {
            auto [moved, flipped] = moved_flipped(k, pt);
            if (2 * moved < mi &&
                static_cast<std::uint64_t>(flipped) < inside[static_cast<std::size_t>(moved)])
                return;  // inside an accepted point's ball
        }
        kept.push_back(pt);
    });
    return kept;
}

CodeCertificate build_certificate(const ShellSystem& sys, std::uint64_t cap) {
    CodeCertificate cert{sys, {}, {}, 0.0, 0};
    for (std::size_t i = 0; i < sys.r(); ++i) {
        std::vector<ShellPoint> code = greedy_code(sys, i, cap);
        cert.sizes_per_shell.push_back(code.size());
        cert.points.insert(cert.points.end(), code.begin(), code.end());
    }
    cert.guarantee = total_bound(sys).total;

    const double floor_value = static_cast<double>(sys.m) * (1.0 - 1e-9);
    double min_lower = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < cert.points.size(); ++a) {
        for (std::size_t b = a + 1; b < cert.points.size(); ++b) {
            const ShellPoint& u = cert.points[a];
            const ShellPoint& v = cert.points[b];
            double lower;
            if (u.shell == v.shell) {
                // exact test: outside the open ball iff 2t + 2^p x >= m_i
                const std::int64_t mi = sys.levels[static_cast<std::size_t>(u.shell)];
                auto [moved, flipped] = moved_flipped(u, v);
                bool ok = !(2 * moved < mi &&
                            sys.pnorm.scaled_less(static_cast<std::uint64_t>(flipped),
                                                  mi - 2 * moved));
                if (!ok)
                    throw certification_error("same-shell pair below the distance floor");
                lower = same_shell_dist_p_pow(u, v, sys).value.lo;
            } else {
                lower = cross_shell_dist_p_pow(u, v, sys).lo;
                if (lower < floor_value)
                    throw certification_error("cross-shell pair below the certified distance floor");
            }
            min_lower = std::min(min_lower, lower);
        }
    }
    if (cert.points.size() < 2) min_lower = std::numeric_limits<double>::infinity();
    cert.min_dist_p_pow = min_lower;
    if (BigCount(static_cast<unsigned long>(cert.points.size())) < cert.guarantee)
        throw certification_error("constructed code misses its GV guarantee");
    return cert;
}

std::uint64_t brute_ball_count(const ShellSystem& sys, std::size_t shell, const ShellPoint& center,
                               std::uint64_t cap) {
    check_enumerable(sys, shell, cap);
    const std::int64_t mi = sys.levels[shell];
    const auto inside = strict_flip_counts(sys, mi);
    std::uint64_t count = 0;
    for_each_shell_point(sys, shell, [&](const ShellPoint& pt) {
        auto [moved, flipped] = moved_flipped(center, pt);
        if (2 * moved < mi &&
            static_cast<std::uint64_t>(flipped) < inside[static_cast<std::size_t>(moved)])
            ++count;
    });
    return count;
}

}  // namespace lpgv
