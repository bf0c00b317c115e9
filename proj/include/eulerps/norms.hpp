#pragma once

#include <utility>
#include <vector>

#include "eulerps/errors.hpp"
#include "eulerps/euler.hpp"
#include "eulerps/field.hpp"

namespace eulerps {

/// <v|w>_n = sum_k |k|^(2n) conj(v_k).w_k over the common support, exact.
/// n must be a nonnegative integer so the weights stay integral.
ComplexRational sobolev_inner(const FourierField& v, const FourierField& w, int n);

/// <v|v>_n, asserted exactly real and nonnegative.
Rational squared_norm(const FourierField& v, int n);

/// Coefficients nu_{n,j} of the formal expansion of ||u(t)||^2_n,
///   nu_{n,j} = sum_{l=0}^{j} <u_l | u_{j-l}>_n  for j = 0..validated_order.
/// For data with a nonempty pseudo-symmetry set the odd coefficients vanish
/// identically; this is asserted, not assumed.
struct NormSeries {
    int n = 0;
    std::vector<Rational> coeffs;
    int validated_order = 0;
};

NormSeries norm_series(const TaylorSeries& series, int n);

/// ||u^(N)(t)||^2_n as an exact polynomial in t of degree 2N;
/// coeffs[j] = sum_{l+m=j, l,m<=N} <u_l|u_m>_n.
struct NormPolynomial {
    int n = 0;
    int N = 0;
    std::vector<Rational> coeffs;  // size 2N+1

    /// Exact Horner evaluation; float only in the final rounding.
    double evaluate(const Rational& t) const;
    Rational evaluate_exact(const Rational& t) const;
};

NormPolynomial partial_sum_norm_polynomial(const TaylorSeries& series, int N, int n);

struct ScanRow {
    int N = 0;
    Rational t;
    double value = 0.0;
};

/// ||u^(N)(t)||^2_n for every N in [N_min, N_max] and every t in the grid.
std::vector<ScanRow> partial_sum_scan(const TaylorSeries& series, int n,
                                      const std::vector<Rational>& t_values, int N_min, int N_max);

/// mu_{n,j} = radius_lower^j * ||u_j||_n for the computed orders, with a
/// monotonicity verdict over j >= 1. The remainder bound
///   mu_{n,N} * |t/radius_lower|^(N+1) / (1 - |t/radius_lower|)
/// rests on extrapolating that monotonicity, so it is labeled conjectural.
struct MuTable {
    Rational radius_lower;
    std::vector<double> entries;  // index j = 0..highest computed order
    bool monotone_from_1 = true;
};

struct RemainderBound {
    double mu_N = 0.0;
    double bound = 0.0;
    const char* label = "conjectural (extrapolated monotonicity)";
};

std::pair<MuTable, RemainderBound> mu_and_remainder(const TaylorSeries& series, int N,
                                                    const Rational& t, const Rational& radius_lower,
                                                    int n = 3);

}  // namespace eulerps
