#include "eulerps/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eulerps/decimal.hpp"
#include "eulerps/symmetry.hpp"

namespace eulerps {

namespace {

mpz_class weight(const WaveVector& k, int n) {
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(k.norm2()), static_cast<unsigned long>(n));
    return w;
}

// Gram matrix of real inner products <u_l | u_m>_n for l,m <= N. The
// coefficients are real vector fields, so the inner products are real; the
// imaginary parts are asserted to cancel exactly.
std::vector<std::vector<Rational>> gram(const TaylorSeries& series, int N, int n) {
    std::vector<std::vector<Rational>> g(static_cast<std::size_t>(N) + 1);
    for (int l = 0; l <= N; ++l) {
        g[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(N) + 1);
        for (int m = l; m <= N; ++m) {
            ComplexRational ip = sobolev_inner(series.coefficients[static_cast<std::size_t>(l)],
                                               series.coefficients[static_cast<std::size_t>(m)], n);
            if (sgn(ip.im) != 0)
                throw std::logic_error("inner product of real fields has nonzero imaginary part");
            g[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = ip.re;
        }
    }
    for (int l = 0; l <= N; ++l)
        for (int m = 0; m < l; ++m)
            g[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] =
                g[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)];
    return g;
}

bool minus_set_nonempty(const TaylorSeries& series) {
    if (series.coefficients.empty() || series.coefficients.front().empty()) return false;
    return detect_symmetries(series.coefficients.front()).minus_nonempty();
}

}  // namespace

ComplexRational sobolev_inner(const FourierField& v, const FourierField& w, int n) {
    if (n < 0) throw DomainError("sobolev_inner: negative order");
    ComplexRational out;
    auto it = v.modes().begin();
    auto jt = w.modes().begin();
    while (it != v.modes().end() && jt != w.modes().end()) {
        if (it->first < jt->first) {
            ++it;
            continue;
        }
        if (jt->first < it->first) {
            ++jt;
            continue;
        }
        const ComplexVec3& a = it->second;
        const ComplexVec3& b = jt->second;
        // conj(a).b componentwise: re += ar*br + ai*bi, im += ar*bi - ai*br
        ComplexRational dot;
        for (int s = 0; s < 3; ++s) {
            const bool ar = sgn(a.re[s]) != 0, ai = sgn(a.im[s]) != 0;
            const bool br = sgn(b.re[s]) != 0, bi = sgn(b.im[s]) != 0;
            if (ar && br) dot.re += a.re[s] * b.re[s];
            if (ai && bi) dot.re += a.im[s] * b.im[s];
            if (ar && bi) dot.im += a.re[s] * b.im[s];
            if (ai && br) dot.im -= a.im[s] * b.re[s];
        }
        if (!dot.is_zero()) {
            const mpz_class w2n = weight(it->first, n);
            if (sgn(dot.re) != 0) out.re += dot.re * w2n;
            if (sgn(dot.im) != 0) out.im += dot.im * w2n;
        }
        ++it;
        ++jt;
    }
    return out;
}

Rational squared_norm(const FourierField& v, int n) {
    const ComplexRational ip = sobolev_inner(v, v, n);
    if (sgn(ip.im) != 0) throw std::logic_error("squared norm has nonzero imaginary part");
    if (sgn(ip.re) < 0) throw std::logic_error("squared norm is negative");
    return ip.re;
}

NormSeries norm_series(const TaylorSeries& series, int n) {
    const int N = series.highest_order();
    if (N < 0) throw std::invalid_argument("norm_series: empty series");
    const auto g = gram(series, N, n);
    NormSeries out;
    out.n = n;
    out.validated_order = N;
    out.coeffs.resize(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
        Rational nu;
        for (int l = 0; 2 * l < j; ++l) nu += 2 * g[static_cast<std::size_t>(l)][static_cast<std::size_t>(j - l)];
        if (j % 2 == 0) nu += g[static_cast<std::size_t>(j / 2)][static_cast<std::size_t>(j / 2)];
        out.coeffs[static_cast<std::size_t>(j)] = nu;
    }
    if (minus_set_nonempty(series)) {
        for (int j = 1; j <= N; j += 2)
            if (sgn(out.coeffs[static_cast<std::size_t>(j)]) != 0)
                throw SymmetryInconsistent("odd norm-series coefficient nonzero at j=" +
                                           std::to_string(j));
    }
    return out;
}

NormPolynomial partial_sum_norm_polynomial(const TaylorSeries& series, int N, int n) {
    if (N > series.highest_order())
        throw std::invalid_argument("partial_sum_norm_polynomial: N beyond computed order");
    const auto g = gram(series, N, n);
    NormPolynomial poly;
    poly.n = n;
    poly.N = N;
    poly.coeffs.assign(static_cast<std::size_t>(2 * N) + 1, Rational(0));
    for (int j = 0; j <= 2 * N; ++j) {
        Rational& coeff = poly.coeffs[static_cast<std::size_t>(j)];
        const int l_lo = std::max(0, j - N);
        for (int l = l_lo; 2 * l < j; ++l)
            coeff += 2 * g[static_cast<std::size_t>(l)][static_cast<std::size_t>(j - l)];
        if (j % 2 == 0) coeff += g[static_cast<std::size_t>(j / 2)][static_cast<std::size_t>(j / 2)];
    }
    if (minus_set_nonempty(series)) {
        for (int j = 1; j <= 2 * N; j += 2)
            if (sgn(poly.coeffs[static_cast<std::size_t>(j)]) != 0)
                throw SymmetryInconsistent("odd polynomial coefficient nonzero at j=" +
                                           std::to_string(j));
    }
    return poly;
}

Rational NormPolynomial::evaluate_exact(const Rational& t) const {
    Rational acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double NormPolynomial::evaluate(const Rational& t) const { return to_double(evaluate_exact(t)); }

std::vector<ScanRow> partial_sum_scan(const TaylorSeries& series, int n,
                                      const std::vector<Rational>& t_values, int N_min, int N_max) {
    if (N_min < 0 || N_max > series.highest_order() || N_min > N_max)
        throw std::invalid_argument("partial_sum_scan: N range outside computed orders");
    const auto g = gram(series, N_max, n);
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(N_max - N_min + 1) * t_values.size());
    for (int N = N_min; N <= N_max; ++N) {
        NormPolynomial poly;
        poly.n = n;
        poly.N = N;
        poly.coeffs.assign(static_cast<std::size_t>(2 * N) + 1, Rational(0));
        for (int j = 0; j <= 2 * N; ++j) {
            Rational& coeff = poly.coeffs[static_cast<std::size_t>(j)];
            const int l_lo = std::max(0, j - N);
            for (int l = l_lo; 2 * l < j; ++l)
                coeff += 2 * g[static_cast<std::size_t>(l)][static_cast<std::size_t>(j - l)];
            if (j % 2 == 0) coeff += g[static_cast<std::size_t>(j / 2)][static_cast<std::size_t>(j / 2)];
        }
        for (const Rational& t : t_values) rows.push_back({N, t, poly.evaluate(t)});
    }
    return rows;
}

std::pair<MuTable, RemainderBound> mu_and_remainder(const TaylorSeries& series, int N,
                                                    const Rational& t, const Rational& radius_lower,
                                                    int n) {
    if (N < 1 || N > series.highest_order())
        throw std::invalid_argument("mu_and_remainder: N outside computed orders");
    if (sgn(radius_lower) <= 0) throw DomainError("mu_and_remainder: radius must be positive");
    const Rational abs_t = sgn(t) < 0 ? Rational(-t) : t;
    if (abs_t >= radius_lower) throw DomainError("mu_and_remainder: |t| must be below the radius");

    MuTable table;
    table.radius_lower = radius_lower;
    Rational r_pow = 1;
    for (int j = 0; j <= series.highest_order(); ++j) {
        const Rational norm2 = squared_norm(series.coefficients[static_cast<std::size_t>(j)], n);
        // mu_j = r^j * sqrt(norm2), rounded once at the end
        table.entries.push_back(sqrt_to_double(r_pow * r_pow * norm2));
        r_pow *= radius_lower;
    }
    for (std::size_t j = 1; j + 1 < table.entries.size(); ++j)
        if (table.entries[j + 1] > table.entries[j]) table.monotone_from_1 = false;

    RemainderBound bound;
    bound.mu_N = table.entries[static_cast<std::size_t>(N)];
    const double ratio = to_double(abs_t / radius_lower);
    bound.bound = bound.mu_N * std::pow(ratio, N + 1) / (1.0 - ratio);
    return {std::move(table), bound};
}

}  // namespace eulerps
