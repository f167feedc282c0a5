// Desk-scale realization of the greedy argument: shell enumeration, exact
// combinatorial distance tests, greedy code selection, certificates, and the
// brute-force oracles the exact layer is validated against.
//
// Points are stored combinatorially (support mask + sign mask), so same-shell
// distance tests are exact integer decisions; floating intervals appear only
// in cross-shell checks. Enumeration requires n <= 64.
#ifndef LPGV_CONSTRUCTOR_HPP
#define LPGV_CONSTRUCTOR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpgv/bigcount.hpp"
#include "lpgv/exactbounds.hpp"
#include "lpgv/interval.hpp"
#include "lpgv/shellsys.hpp"

namespace lpgv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct enumeration_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct certification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShellPoint {
    std::int32_t shell = 0;     // 0-based shell index
    std::uint64_t support = 0;  // bit k set: coordinate k is nonzero
    std::uint64_t neg = 0;      // bit k set: coordinate k is negative; neg subset of support

    friend bool operator==(const ShellPoint&, const ShellPoint&) = default;
};

// Exact same-shell distance in combinatorial form:
//   d_p(u,v)^p = (m/m_i) * (2*moved + 2^p * flipped)
struct SameShellDistance {
    std::int64_t moved = 0;    // support coordinates of u outside v's support
    std::int64_t flipped = 0;  // sign flips on the common support
    DInterval value;           // certified enclosure of d_p^p
    bool exact = false;        // num/den below hold the exact rational (integer p)
    std::int64_t num = 0;
    std::int64_t den = 1;
};

// All C(n, m_i) 2^(m_i) shell points, supports in colex order, sign vectors in
// binary counter order. Throws enumeration_cap_error (message carries the
// exact size) when the shell exceeds `cap`.
std::vector<ShellPoint> enumerate_shell(const ShellSystem& sys, std::size_t shell,
                                        std::uint64_t cap = kDefaultEnumerationCap);

SameShellDistance same_shell_dist_p_pow(const ShellPoint& u, const ShellPoint& v,
                                        const ShellSystem& sys);

// Certified enclosure of d_p(u,v)^p for points of different shells.
DInterval cross_shell_dist_p_pow(const ShellPoint& u, const ShellPoint& v,
                                 const ShellSystem& sys);

// Greedy scan in enumeration order; keeps a point iff it lies outside the
// ball of every kept point. The result always reaches the shell's GV term.
std::vector<ShellPoint> greedy_code(const ShellSystem& sys, std::size_t shell,
                                    std::uint64_t cap = kDefaultEnumerationCap);

struct CodeCertificate {
    ShellSystem sys;
    std::vector<ShellPoint> points;        // per-shell greedy codes, concatenated
    std::vector<std::uint64_t> sizes_per_shell;
    double min_dist_p_pow = 0.0;           // certified lower bound on min pairwise d_p^p
    BigCount guarantee;                    // total_bound(p, n, m).total
};

// Union of per-shell greedy codes with full pairwise certification.
CodeCertificate build_certificate(const ShellSystem& sys,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Oracle: exact ball size by full enumeration around `center`.
std::uint64_t brute_ball_count(const ShellSystem& sys, std::size_t shell, const ShellPoint& center,
                               std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace lpgv

#endif
