// Combinatorial scaffold: the level recursion m_{i+1} = floor(m_i / 2^p),
// exact shell and ball cardinalities, and the binary entropy function.
#ifndef LPGV_SHELLSYS_HPP
#define LPGV_SHELLSYS_HPP

#include <cstdint>
#include <vector>

#include "lpgv/bigcount.hpp"
#include "lpgv/pnorm.hpp"

namespace lpgv {

struct ShellSystem {
    PNorm pnorm;
    int n = 0;  // ambient dimension
    int m = 0;  // lp-weight of every shell point
    std::vector<std::int64_t> levels;  // m_1 > m_2 > ... > m_r, m_r < 2^p

    std::size_t r() const { return levels.size(); }
};

// Runs the level recursion from m_1 = m until the next level would hit zero.
ShellSystem build_shell_system(double p, int n, int m);
ShellSystem build_shell_system(PNorm pnorm, int n, int m);

// |J_i| = C(n, m_i) * 2^(m_i)
BigCount shell_size(std::int64_t n, std::int64_t m_i);

// Number of shell points strictly inside lp-distance m^(1/p) of a fixed shell
// point: sum of C(m_i,t) C(n-m_i,t) C(m_i-t,x) 2^t over 2t + 2^p x < m_i.
// `shell` is 0-based.
BigCount ball_size(const ShellSystem& sys, std::size_t shell);

// Binary entropy, H(0) = H(1) = 0. Domain error outside [0, 1].
double entropy(double sigma);

}  // namespace lpgv

#endif
