#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "eulerps/errors.hpp"
#include "eulerps/rational.hpp"

namespace eulerps {

struct InsufficientCoefficients : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroLeadingCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MultipleRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rational approximant [p/q] with exact coefficients; the denominator
/// constant term is exactly 1 and the series of numerator/denominator agrees
/// with the input through t^(p+q).
struct PadeApproximant {
    int p = 0;
    int q = 0;
    std::vector<Rational> numerator;    // a_0..a_p
    std::vector<Rational> denominator;  // 1, b_1..b_q
};

/// Builds [p/q] from series coefficients c_0..c_(p+q) (more are allowed and
/// ignored). The denominator system is solved in exact arithmetic with
/// fraction-free elimination and exact rank detection, so nonexistence
/// (std::nullopt) is a theorem-grade verdict. Throws
/// InsufficientCoefficients when fewer than p+q+1 coefficients are given.
std::optional<PadeApproximant> pade_approximant(const std::vector<Rational>& coeffs, int p, int q);

/// Exact series of numerator/denominator through t^order (denominator
/// constant term 1 makes the division a plain recurrence).
std::vector<Rational> expand_ratio(const PadeApproximant& approx, int order);

/// Coefficients of f'/f from those of f (c_0 != 0), length = input - 1.
std::vector<Rational> dlog_series(const std::vector<Rational>& coeffs);

/// Inverse of dlog_series given g and the constant term c_0; exact.
std::vector<Rational> dlog_reconstruct(const std::vector<Rational>& g, const Rational& c0,
                                       std::size_t length);

/// For a series in t^2 only (odd coefficients exactly zero), the matching
/// series in s = t^2. Throws std::invalid_argument when an odd coefficient
/// is nonzero.
std::vector<Rational> reduce_even_series(const std::vector<Rational>& coeffs);

/// All complex roots of the denominator polynomial: simultaneous-iteration
/// refinement (Durand-Kerner) from deterministic initial placements to
/// relative residual <= tol, one Newton polish step, and conjugate / sign
/// symmetry of even real polynomials enforced on the output pairing.
std::vector<std::complex<double>> find_poles(const PadeApproximant& approx, double tol = 1e-12);

struct PoleReport {
    std::vector<std::complex<double>> poles;
    std::complex<double> t_min;  // pole of minimum modulus
    double t_min_modulus = 0.0;
    std::optional<std::complex<double>> t_real;  // minimum-modulus almost-real pole
    double t_real_modulus = 0.0;
    double classification_tolerance = 0.0;
};

/// T-circle / T-star classification: minimum-modulus pole overall, and among
/// the poles with |Im| <= im_tol. Modulus ties prefer positive real part,
/// then positive imaginary part.
PoleReport classify_poles(const std::vector<std::complex<double>>& poles, double im_tol);

struct PoleStatistics {
    double mean_t_min = 0.0;
    double rms_t_min = 0.0;
    double mean_t_real = 0.0;
    double rms_t_real = 0.0;
    std::size_t t_real_count = 0;
    // mean_t_real +- (rms rounded up to one significant digit), then rounded
    // outward to two digits; conjectural.
    double blow_up_lower = 0.0;
    double blow_up_upper = 0.0;
};

PoleStatistics pole_statistics(const std::vector<PoleReport>& reports);

struct DlogReport {
    std::complex<double> pole;
    double lambda_star = 0.0;  // residue at the pole
    double alpha_star = 0.0;   // lambda/2, the exponent for the norm itself
};

/// Residue -N(pole)/D'(pole) of a D-log approximant at a simple denominator
/// root; MultipleRoot when the derivative vanishes there.
DlogReport dlog_exponent(const PadeApproximant& approx, std::complex<double> pole);

}  // namespace eulerps
