#include "lpgv/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "lpgv/shellsys.hpp"

namespace lpgv {

namespace {

constexpr double kSigmaFloor = 1e-9;       // clamp for open-interval evaluation
constexpr double kChainSigmaFloor = 1e-6;  // truncation threshold for chains
constexpr int kMaxChainShells = 12;

// golden-section minimization on [a, b] to argument tolerance tol
template <typename F>
double golden_min(F&& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double clamp_unit(double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); }

}  // namespace

double shell_exponent_at(double p, double sigma, double y) {
    if (!(p >= 1.0)) throw std::domain_error("shell_exponent_at: p must be >= 1");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("shell_exponent_at: sigma must lie in (0, 1)");
    double y_max = std::min(sigma / 2.0, 1.0 - sigma);
    if (!(y >= 0.0 && y <= y_max + 1e-15))
        throw std::domain_error("shell_exponent_at: y must lie in [0, min(sigma/2, 1-sigma)]");
    y = std::min(y, y_max);

    double survivors = sigma - y;  // fraction of support coordinates that stay
    double first = 0.0;
    if (survivors > 0.0) {
        double inner = (sigma - 2.0 * y) / (std::exp2(p) * survivors);
        first = survivors * (1.0 - entropy(clamp_unit(inner, 0.0, 1.0)));
    }
    double second = entropy(sigma);
    double third = sigma * entropy(clamp_unit(y / sigma, 0.0, 1.0));
    double fourth = (1.0 - sigma) * entropy(clamp_unit(y / (1.0 - sigma), 0.0, 1.0));
    return first + second - third - fourth;
}

ShellExponent shell_exponent(double p, double sigma, int grid_points) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("shell_exponent: sigma must lie in (0, 1)");
    if (grid_points < 2) throw std::domain_error("shell_exponent: grid too coarse");
    double y_max = std::min(sigma / 2.0, 1.0 - sigma);
    auto f = [&](double y) { return shell_exponent_at(p, sigma, y); };

    // coarse grid, endpoints included
    double best_y = 0.0;
    double best_f = f(0.0);
    for (int i = 1; i <= grid_points; ++i) {
        double y = y_max * static_cast<double>(i) / grid_points;
        double v = f(y);
        if (v < best_f) {
            best_f = v;
            best_y = y;
        }
    }
    double step = y_max / grid_points;
    double lo = std::max(0.0, best_y - step);
    double hi = std::min(y_max, best_y + step);
    if (hi > lo) {
        double y_ref = golden_min(f, lo, hi, 1e-10);
        double v_ref = f(y_ref);
        if (v_ref < best_f) {
            best_f = v_ref;
            best_y = y_ref;
        }
    }
    return {best_y, best_f};
}

ExponentResult best_exponent(double p) {
    if (!(p >= 1.0)) throw std::domain_error("best_exponent: p must be >= 1");
    auto g = [&](double sigma) { return shell_exponent(p, sigma).value; };

    double best_sigma = 0.001;
    double best_g = g(best_sigma);
    for (int i = 2; i <= 999; ++i) {
        double sigma = static_cast<double>(i) / 1000.0;
        double v = g(sigma);
        if (v > best_g) {
            best_g = v;
            best_sigma = sigma;
        }
    }
    double lo = std::max(kSigmaFloor, best_sigma - 1e-3);
    double hi = std::min(1.0 - kSigmaFloor, best_sigma + 1e-3);
    double sigma_ref = golden_min([&](double s) { return -g(s); }, lo, hi, 1e-7);
    if (g(sigma_ref) > best_g) best_sigma = sigma_ref;

    ExponentResult res;
    res.p = p;
    res.sigma_star = best_sigma;
    ShellExponent se = shell_exponent(p, best_sigma);
    res.y_star = se.y_star;
    res.g_value = se.value;
    // extend the chain upward while sigma_star * 2^(p k) stays below 1
    double start = best_sigma;
    while (start * std::exp2(p) < 1.0) start *= std::exp2(p);
    res.chain_start = start;
    res.shell_exponents = shell_exponent_chain(p, start);
    return res;
}

std::vector<double> shell_exponent_chain(double p, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("shell_exponent_chain: sigma must lie in (0, 1)");
    std::vector<double> chain;
    double s = sigma;
    while (s >= kChainSigmaFloor && static_cast<int>(chain.size()) < kMaxChainShells) {
        chain.push_back(shell_exponent(p, s).value);
        s /= std::exp2(p);
    }
    return chain;
}

std::vector<double> large_p_exponent_chain(double p) {
    if (!(p >= 1.0)) throw std::domain_error("large_p_exponent_chain: p must be >= 1");
    std::vector<double> chain;
    chain.push_back(1.0 - entropy(std::exp2(-p)));
    double s = std::exp2(-p);  // shell i = 2 sits at sigma = 2^-p
    while (s >= kChainSigmaFloor && static_cast<int>(chain.size()) < kMaxChainShells) {
        chain.push_back(shell_exponent(p, s).value);
        s /= std::exp2(p);
    }
    return chain;
}

double euclidean_exponent(double p) {
    if (!(p > 1.0 && p <= 2.0))
        throw std::domain_error("euclidean_exponent: valid only for 1 < p <= 2");
    return p / 2.0 - 1.0 - 0.5 * std::log2(1.0 - std::exp2(-p));
}

double exponent_crossover(double p_lo, double p_hi) {
    auto h = [](double p) { return euclidean_exponent(p) - best_exponent(p).g_value; };
    double f_lo = h(p_lo), f_hi = h(p_hi);
    if (f_lo == 0.0) return p_lo;
    if (f_hi == 0.0) return p_hi;
    if ((f_lo < 0.0) == (f_hi < 0.0))
        throw std::domain_error("exponent_crossover: no sign change on the supplied bracket");
    while (p_hi - p_lo > 1e-4) {
        double mid = 0.5 * (p_lo + p_hi);
        double f_mid = h(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            p_lo = mid;
            f_lo = f_mid;
        } else {
            p_hi = mid;
        }
    }
    return 0.5 * (p_lo + p_hi);
}

std::vector<CurveSample> curve(double p, const std::vector<double>& sigma_grid) {
    std::vector<CurveSample> samples;
    samples.reserve(sigma_grid.size());
    for (double sigma : sigma_grid) samples.push_back({sigma, shell_exponent(p, sigma).value});
    return samples;
}

}  // namespace lpgv
