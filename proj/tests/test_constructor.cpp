#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "lpgv/constructor.hpp"
#include "lpgv/exactbounds.hpp"

using namespace lpgv;

namespace {

// reference distance through explicit coordinates, long double throughout
long double coord_dist_p_pow(const ShellPoint& u, const ShellPoint& v, const ShellSystem& sys) {
    long double total = 0.0L;
    auto mag = [&](int shell) {
        return std::pow(static_cast<long double>(sys.m) /
                            static_cast<long double>(sys.levels[static_cast<std::size_t>(shell)]),
                        1.0L / static_cast<long double>(sys.pnorm.p()));
    };
    for (int k = 0; k < sys.n; ++k) {
        std::uint64_t bit = std::uint64_t(1) << k;
        long double uk = (u.support & bit) ? ((u.neg & bit) ? -mag(u.shell) : mag(u.shell)) : 0.0L;
        long double vk = (v.support & bit) ? ((v.neg & bit) ? -mag(v.shell) : mag(v.shell)) : 0.0L;
        total += std::pow(std::abs(uk - vk), static_cast<long double>(sys.pnorm.p()));
    }
    return total;
}

}  // namespace

TEST_CASE("enumerate_shell counts and determinism") {
    ShellSystem sys = build_shell_system(1.0, 3, 2);
    std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
    CHECK(pts.size() == 12);  // C(3,2) * 4

    // all points distinct, supports of the right size, neg within support
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const ShellPoint& pt : pts) {
        CHECK(std::popcount(pt.support) == 2);
        CHECK((pt.neg & ~pt.support) == 0);
        seen.insert({pt.support, pt.neg});
    }
    CHECK(seen.size() == pts.size());

    CHECK(enumerate_shell(sys, 0) == pts);  // deterministic order

    // m = n shell is exactly the sign vectors
    ShellSystem full = build_shell_system(2.0, 5, 5);
    std::vector<ShellPoint> cube = enumerate_shell(full, 0);
    CHECK(cube.size() == 32);
    for (const ShellPoint& pt : cube) CHECK(pt.support == 31);
}

TEST_CASE("enumeration length always equals shell_size") {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= n; ++m) {
                ShellSystem sys = build_shell_system(p, n, m);
                for (std::size_t i = 0; i < sys.r(); ++i) {
                    CHECK(BigCount(enumerate_shell(sys, i).size()) ==
                          shell_size(sys.n, sys.levels[i]));
                }
            }
        }
    }
}

TEST_CASE("enumeration cap error carries the exact size") {
    ShellSystem sys = build_shell_system(2.0, 30, 15);
    try {
        enumerate_shell(sys, 0, 1000);
        FAIL("expected enumeration_cap_error");
    } catch (const enumeration_cap_error& e) {
        CHECK(std::string(e.what()).find(to_decimal(shell_size(30, 15))) != std::string::npos);
    }
    CHECK_THROWS_AS(build_certificate(build_shell_system(1.0, 65, 1)), std::domain_error);
}

TEST_CASE("same-shell distance worked examples") {
    ShellSystem sys = build_shell_system(1.0, 4, 3);
    std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
    // u = v
    SameShellDistance zero = same_shell_dist_p_pow(pts[0], pts[0], sys);
    CHECK(zero.moved == 0);
    CHECK(zero.flipped == 0);
    CHECK(zero.value.contains(0.0));

    // u = +++0 (support {0,1,2}), v = ++0+ (support {0,1,3}), all positive
    ShellPoint u{0, 0b0111, 0};
    ShellPoint v{0, 0b1011, 0};
    SameShellDistance d = same_shell_dist_p_pow(u, v, sys);
    CHECK(d.moved == 1);
    CHECK(d.flipped == 0);
    CHECK(d.exact);
    CHECK(d.num == 2 * 3);  // m * (2t + 2^p x) = 3 * 2
    CHECK(d.den == 3);
    CHECK(d.value.contains(2.0));

    // same support, two sign flips
    ShellPoint w{0, 0b0111, 0b0001};
    ShellPoint z{0, 0b0111, 0b0111};
    SameShellDistance f = same_shell_dist_p_pow(w, z, sys);
    CHECK(f.moved == 0);
    CHECK(f.flipped == 2);

    // disjoint supports: d^p = 2m
    ShellSystem wide = build_shell_system(1.0, 6, 3);
    SameShellDistance g =
        same_shell_dist_p_pow(ShellPoint{0, 0b000111, 0}, ShellPoint{0, 0b111000, 0}, wide);
    CHECK(g.moved == 3);
    CHECK(g.flipped == 0);
    CHECK(g.value.contains(2.0 * wide.m));

    CHECK_THROWS_AS(same_shell_dist_p_pow(ShellPoint{0, 7, 0}, ShellPoint{1, 1, 0}, sys),
                    std::domain_error);
}

TEST_CASE("same-shell distance agrees with coordinate arithmetic") {
    std::mt19937_64 rng(7);
    for (double p : {1.0, 1.5, 2.0, 2.1, 3.0}) {
        ShellSystem sys = build_shell_system(p, 6, 4);
        std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const ShellPoint& u = pts[pick(rng)];
            const ShellPoint& v = pts[pick(rng)];
            SameShellDistance d = same_shell_dist_p_pow(u, v, sys);
            long double ref = coord_dist_p_pow(u, v, sys);
            CHECK(static_cast<long double>(d.value.lo) <= ref + 1e-9L);
            CHECK(static_cast<long double>(d.value.hi) >= ref - 1e-9L);
            CHECK(d.value.width() < 1e-9 * sys.m);
        }
    }
}

TEST_CASE("cross-shell distance worked examples") {
    // p=1, n=10, m=7: disjoint supports between shell 1 (magnitude 1) and
    // shell 2 (magnitude 7/3): d = 7*1 + 3*(7/3) = 14
    ShellSystem sys = build_shell_system(1.0, 10, 7);
    ShellPoint u{0, 0b0001111111, 0};          // support {0..6}
    ShellPoint v{1, 0b1110000000, 0};          // support {7,8,9}
    DInterval d = cross_shell_dist_p_pow(u, v, sys);
    CHECK(d.contains(14.0));
    CHECK(d.width() < 1e-9 * sys.m);
    CHECK_THROWS_AS(cross_shell_dist_p_pow(u, u, sys), std::domain_error);
}

TEST_CASE("cross-shell pairs stay above the weight floor") {
    for (double p : {1.0, 1.5, 2.0, 2.1, 3.0}) {
        for (int n = 2; n <= 6; ++n) {
            for (int m = 2; m <= n; ++m) {
                ShellSystem sys = build_shell_system(p, n, m);
                if (sys.r() < 2) continue;
                for (std::size_t i = 0; i < sys.r(); ++i) {
                    for (std::size_t j = i + 1; j < sys.r(); ++j) {
                        std::vector<ShellPoint> a = enumerate_shell(sys, i);
                        std::vector<ShellPoint> b = enumerate_shell(sys, j);
                        for (const ShellPoint& u : a) {
                            for (const ShellPoint& v : b) {
                                DInterval d = cross_shell_dist_p_pow(u, v, sys);
                                CHECK(d.lo >= sys.m * (1.0 - 1e-9));
                                long double ref = coord_dist_p_pow(u, v, sys);
                                CHECK(static_cast<long double>(d.lo) <= ref + 1e-9L);
                                CHECK(static_cast<long double>(d.hi) >= ref - 1e-9L);
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("minimal-overlap cross-shell case: nested support, same signs") {
    ShellSystem sys = build_shell_system(1.5, 8, 6);  // levels 6, 2
    REQUIRE(sys.r() == 2);
    ShellPoint u{0, 0b00111111, 0};
    ShellPoint v{1, 0b00000011, 0};  // support inside u's, same signs
    DInterval d = cross_shell_dist_p_pow(u, v, sys);
    CHECK(d.lo >= sys.m * (1.0 - 1e-9));
}

TEST_CASE("brute ball count oracle equals the closed-form ball size") {
    for (double p : {1.0, 1.5, 2.0, 2.1, 3.0}) {
        PNorm pnorm(p);
        for (int n = 1; n <= 7; ++n) {
            for (int m = 1; m <= n; ++m) {
                ShellSystem sys = build_shell_system(pnorm, n, m);
                for (std::size_t i = 0; i < sys.r(); ++i) {
                    std::vector<ShellPoint> pts = enumerate_shell(sys, i);
                    std::uint64_t expected_u64 =
                        brute_ball_count(sys, i, pts.front());
                    CHECK(ball_size(sys, i) == BigCount(expected_u64));
                }
            }
        }
    }
}

TEST_CASE("ball count is independent of the center") {
    std::mt19937_64 rng(99);
    for (double p : {1.0, 2.1}) {
        ShellSystem sys = build_shell_system(p, 6, 4);
        std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        std::uint64_t reference = brute_ball_count(sys, 0, pts.front());
        for (int trial = 0; trial < 5; ++trial)
            CHECK(brute_ball_count(sys, 0, pts[pick(rng)]) == reference);
    }
}

TEST_CASE("ball around a weight-1 shell point is a single point") {
    ShellSystem sys = build_shell_system(2.0, 8, 1);
    std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
    CHECK(brute_ball_count(sys, 0, pts[3]) == 1);
}

TEST_CASE("greedy code achieves the GV term") {
    ShellSystem sys = build_shell_system(1.0, 4, 3);
    std::vector<ShellPoint> code = greedy_code(sys, 0);
    CHECK(code.size() >= 4);  // ceil(32/10)
    CHECK(greedy_code(sys, 0) == code);  // reproducible

    // weight-1 shell: all 2n points are pairwise admissible
    ShellSystem ones = build_shell_system(2.5, 7, 1);
    CHECK(greedy_code(ones, 0).size() == 14);
}

TEST_CASE("greedy codes meet the GV term across sampled systems") {
    for (double p : {1.0, 1.5, 2.0, 2.1, 3.0}) {
        for (int n = 2; n <= 7; ++n) {
            for (int m = 1; m <= n; ++m) {
                ShellSystem sys = build_shell_system(p, n, m);
                for (std::size_t i = 0; i < sys.r(); ++i) {
                    std::vector<ShellPoint> code = greedy_code(sys, i);
                    BigCount gv = gv_shell_term(sys, i);
                    CHECK(BigCount(code.size()) >= gv);
                }
            }
        }
    }
}

TEST_CASE("certificate construction and soundness") {
    ShellSystem sys = build_shell_system(1.0, 6, 4);
    CodeCertificate cert = build_certificate(sys);
    CHECK(BigCount(cert.points.size()) >= total_bound(sys).total);
    CHECK(cert.min_dist_p_pow >= sys.m * (1.0 - 1e-9));
    CHECK(cert.sizes_per_shell.size() == sys.r());

    // exhaustive re-verification through coordinate arithmetic
    for (std::size_t a = 0; a < cert.points.size(); ++a)
        for (std::size_t b = a + 1; b < cert.points.size(); ++b)
            CHECK(coord_dist_p_pow(cert.points[a], cert.points[b], sys) >=
                  sys.m * (1.0L - 1e-9L));
}

TEST_CASE("m = n certificate: first shell is a binary code with d_H >= ceil(n/2^p)") {
    ShellSystem sys = build_shell_system(2.0, 5, 5);
    CodeCertificate cert = build_certificate(sys);
    std::vector<ShellPoint> first;
    for (const ShellPoint& pt : cert.points)
        if (pt.shell == 0) first.push_back(pt);
    CHECK(first.size() == cert.sizes_per_shell[0]);
    for (std::size_t a = 0; a < first.size(); ++a) {
        for (std::size_t b = a + 1; b < first.size(); ++b) {
            int dh = std::popcount(first[a].neg ^ first[b].neg);
            CHECK(dh >= 2);  // ceil(5/4)
        }
    }
}

TEST_CASE("scaling by m^(1/p) yields unit lp-norm points") {
    // |support| * (magnitude / m^(1/p))^p = m_i * (1/m_i) = 1, an identity in
    // exact arithmetic; checked numerically through coordinates
    for (double p : {1.0, 2.1, 3.0}) {
        ShellSystem sys = build_shell_system(p, 6, 5);
        for (std::size_t i = 0; i < sys.r(); ++i) {
            ShellPoint pt = enumerate_shell(sys, i).back();
            long double mag = std::pow(
                static_cast<long double>(sys.m) / static_cast<long double>(sys.levels[i]),
                1.0L / static_cast<long double>(p));
            long double unit = mag / std::pow(static_cast<long double>(sys.m),
                                              1.0L / static_cast<long double>(p));
            long double norm_p = 0.0L;
            for (int k = 0; k < sys.n; ++k)
                if (pt.support & (std::uint64_t(1) << k))
                    norm_p += std::pow(std::abs(unit), static_cast<long double>(p));
            CHECK(std::abs(static_cast<double>(norm_p) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("shells have distinct magnitudes, so no point collides across shells") {
    ShellSystem sys = build_shell_system(1.0, 6, 5);  // levels 5, 2, 1
    REQUIRE(sys.r() == 3);
    for (std::size_t i = 0; i + 1 < sys.r(); ++i)
        CHECK(sys.levels[i] != sys.levels[i + 1]);  // magnitudes (m/m_i)^(1/p) differ
    // support sizes differ too, so equality of ShellPoints across shells is impossible
    std::vector<ShellPoint> a = enumerate_shell(sys, 0);
    std::vector<ShellPoint> b = enumerate_shell(sys, 1);
    for (const ShellPoint& u : a)
        for (const ShellPoint& v : b) CHECK(std::popcount(u.support) != std::popcount(v.support));
}

TEST_CASE("Hamming reduction on the m = n shell") {
    for (double p : {1.0, 1.5, 2.0, 2.5, 3.0}) {
        ShellSystem sys = build_shell_system(p, 6, 6);
        std::vector<ShellPoint> pts = enumerate_shell(sys, 0);
        for (std::size_t a = 0; a < pts.size(); a += 5) {
            for (std::size_t b = a + 1; b < pts.size(); b += 3) {
                SameShellDistance d = same_shell_dist_p_pow(pts[a], pts[b], sys);
                int dh = std::popcount(pts[a].neg ^ pts[b].neg);
                CHECK(d.moved == 0);
                CHECK(d.flipped == dh);  // d_p^p = 2^p * d_H in combinatorial form
                if (d.exact) {
                    CHECK(d.num == sys.m * (std::int64_t(1) << static_cast<int>(p)) * dh);
                    CHECK(d.den == sys.m);
                }
            }
        }
    }
}
