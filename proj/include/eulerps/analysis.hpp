#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eulerps/errors.hpp"
#include "eulerps/rational.hpp"

namespace eulerps {

struct FitDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RootTestMode {
    norms,          // inputs are norms: x_j^(-1/j)
    squared_norms,  // inputs are squared norms: x_j^(-1/(2j))
};

/// Root-test sequence for convergence-radius estimation. values[i] carries
/// index j = j_start + i. Inputs must be positive (DomainError otherwise);
/// evaluation is high precision with a single final rounding.
std::vector<double> root_test_sequence(const std::vector<Rational>& values, RootTestMode mode,
                                       int j_start);
std::vector<double> root_test_sequence(const std::vector<double>& values, RootTestMode mode,
                                       int j_start);

struct FitResult {
    double A = 0.0;
    double B = 0.0;
    double c = 0.0;
    double rms_error = 0.0;
    int j_min = 0;
    int j_max = 0;
};

/// Least-squares fit of the asymptote model y_j ~ A - (B/j)^c over the points
/// whose index lies in [j_min, j_max]. Deterministic multi-start (fixed grid
/// over c and B, closed-form A) followed by Nelder-Mead refinement to
/// parameter tolerance 1e-10; ties go to the lowest start index.
FitResult fit_power_law(const std::vector<std::pair<int, double>>& points, int j_min, int j_max);

enum class RadiusKind { tau_n, theta_n };
enum class RadiusMethod { fit_band, partial_sum_scan, pade_poles };

struct RadiusEstimate {
    RadiusKind which = RadiusKind::tau_n;
    int n = 3;
    double lower = 0.0;
    double upper = 0.0;
    RadiusMethod method = RadiusMethod::fit_band;
};

/// [A - band, A + band] rounded outward to `digits` decimal places. The band
/// must cover at least the fit's own RMS error.
RadiusEstimate radius_interval(const FitResult& fit, double band, int digits,
                               RadiusKind which = RadiusKind::tau_n, int n = 3,
                               RadiusMethod method = RadiusMethod::fit_band);

/// Outward rounding helpers (never narrowing).
double floor_to_digits(double x, int digits);
double ceil_to_digits(double x, int digits);

}  // namespace eulerps
