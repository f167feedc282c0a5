// Asymptotic rate exponents of the per-shell GV terms: the two-parameter
// exponent surface, its inner minimization over the overlap parameter, the
// outer maximization over the weight fraction sigma, per-shell exponent
// chains, large-p leading exponents, and the Euclidean-comparison crossover.
// All rates are in bits per dimension.
#ifndef LPGV_ASYMPTOTICS_HPP
#define LPGV_ASYMPTOTICS_HPP

#include <vector>

namespace lpgv {

// Exponent of one shell with the overlap parameter y held fixed:
//   (sigma-y)(1 - H((sigma-2y)/(2^p (sigma-y)))) + H(sigma)
//     - sigma H(y/sigma) - (1-sigma) H(y/(1-sigma))
// Requires 0 < sigma < 1 and 0 <= y <= min(sigma/2, 1-sigma).
double shell_exponent_at(double p, double sigma, double y);

struct ShellExponent {
    double y_star = 0.0;
    double value = 0.0;
};

// Worst-case overlap: minimum of shell_exponent_at over the admissible
// y-interval (coarse grid of grid_points+1 samples including both endpoints,
// then golden-section refinement to 1e-10 in y).
ShellExponent shell_exponent(double p, double sigma, int grid_points = 1000);

struct ExponentResult {
    double p = 0.0;
    double sigma_star = 0.0;  // maximizing weight fraction
    double y_star = 0.0;      // minimizing overlap at sigma_star
    double g_value = 0.0;     // the max-min exponent, bits per dimension
    // Shell chain through sigma_star, started at the largest
    // sigma_star * 2^(p k) that stays below 1.
    double chain_start = 0.0;
    std::vector<double> shell_exponents;

    friend bool operator==(const ExponentResult&, const ExponentResult&) = default;
};

// Maximizes the shell exponent over sigma in (0,1): 1e-3 grid plus
// golden-section refinement to 1e-7 in sigma.
ExponentResult best_exponent(double p);

// Exponents of successive shells starting from `sigma`: shell i sits at
// sigma / 2^(p(i-1)). Truncated at 12 shells or when sigma drops below 1e-6.
std::vector<double> shell_exponent_chain(double p, double sigma);

// m = n regime: leading term 1 - H(2^-p) from the Hamming reduction, then
// the chain of deeper-shell exponents at sigma = 2^(-p(i-1)).
std::vector<double> large_p_exponent_chain(double p);

// Per-dimension exponent of the Euclidean comparison bound:
//   -log2(sin theta) = p/2 - 1 - log2(1 - 2^-p)/2, for 1 < p <= 2.
double euclidean_exponent(double p);

// Bisection root of euclidean_exponent(p) - best_exponent(p).g_value on
// [p_lo, p_hi], to 1e-4 in p. Throws if the bracket has no sign change.
double exponent_crossover(double p_lo, double p_hi);

struct CurveSample {
    double sigma = 0.0;
    double g = 0.0;
};

std::vector<CurveSample> curve(double p, const std::vector<double>& sigma_grid);

}  // namespace lpgv

#endif
