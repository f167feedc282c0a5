#include "lpgv/shellsys.hpp"

#include <cmath>
#include <stdexcept>

namespace lpgv {

ShellSystem build_shell_system(double p, int n, int m) {
    return build_shell_system(PNorm(p), n, m);
}

ShellSystem build_shell_system(PNorm pnorm, int n, int m) {
    if (n < 1) throw std::domain_error("build_shell_system: dimension n must be >= 1");
    if (m < 1 || m > n) throw std::domain_error("build_shell_system: weight m must satisfy 1 <= m <= n");
    ShellSystem sys{std::move(pnorm), n, m, {}};
    std::int64_t level = m;
    while (level >= 1) {
        sys.levels.push_back(level);
        level = static_cast<std::int64_t>(sys.pnorm.floor_div_two_pow_p(static_cast<std::uint64_t>(level)));
    }
    return sys;
}

BigCount shell_size(std::int64_t n, std::int64_t m_i) {
    if (m_i < 0 || m_i > n) throw std::domain_error("shell_size: need 0 <= m_i <= n");
    BigCount c = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(m_i));
    return c << static_cast<unsigned long>(m_i);
}

BigCount ball_size(const ShellSystem& sys, std::size_t shell) {
    if (shell >= sys.r()) throw std::domain_error("ball_size: shell index out of range");
    const std::int64_t mi = sys.levels[shell];
    const std::int64_t n = sys.n;
    BinomialRow support_out(mi);       // coordinates leaving the support
    BinomialRow support_in(n - mi);    // coordinates entering the support
    BigCount total = 0;
    for (std::int64_t t = 0; 2 * t < mi; ++t) {
        if (t > n - mi) break;  // no room to relocate t coordinates
        const std::uint64_t x_count = sys.pnorm.count_scaled_below(mi - 2 * t);
        if (x_count == 0) continue;
        BigCount base = support_out.at(t) * support_in.at(t);
        base <<= static_cast<unsigned long>(t);
        BinomialRow flips(mi - t);     // sign flips on the common support
        for (std::uint64_t x = 0; x < x_count; ++x) {
            if (static_cast<std::int64_t>(x) > mi - t) break;
            total += base * flips.at(static_cast<std::int64_t>(x));
        }
    }
    return total;
}

double entropy(double sigma) {
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw std::domain_error("entropy: argument must lie in [0, 1]");
    if (sigma == 0.0 || sigma == 1.0) return 0.0;
    return -sigma * std::log2(sigma) - (1.0 - sigma) * std::log2(1.0 - sigma);
}

}  // namespace lpgv
