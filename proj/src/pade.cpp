#include "eulerps/pade.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "eulerps/analysis.hpp"
#include "eulerps/decimal.hpp"

namespace eulerps {

namespace {

// Fraction-free (Bareiss) elimination on an integer matrix with rows
// [coefficients | rhs]. Returns false when the system is inconsistent;
// otherwise fills `solution` (free variables set to zero).
bool solve_fraction_free(std::vector<std::vector<mpz_class>> m, int cols,
                         std::vector<Rational>& solution) {
    const int rows = static_cast<int>(m.size());
    mpz_class prev = 1;
    std::vector<int> pivot_col_of_row;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pivot)]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = col + 1; j <= cols; ++j) {
                mpz_class t = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] *
                                  m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                              m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] *
                                  m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] = 0;
        }
        prev = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        pivot_col_of_row.push_back(col);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]) != 0) return false;

    solution.assign(static_cast<std::size_t>(cols), Rational(0));
    for (int i = r - 1; i >= 0; --i) {
        const int col = pivot_col_of_row[static_cast<std::size_t>(i)];
        Rational acc(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]);
        for (int j = col + 1; j < cols; ++j) {
            if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) == 0) continue;
            acc -= Rational(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                   solution[static_cast<std::size_t>(j)];
        }
        solution[static_cast<std::size_t>(col)] =
            acc / Rational(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]);
    }
    return true;
}

}  // namespace

std::optional<PadeApproximant> pade_approximant(const std::vector<Rational>& coeffs, int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("pade_approximant: negative order");
    if (coeffs.size() < static_cast<std::size_t>(p + q + 1))
        throw InsufficientCoefficients("pade_approximant: need " + std::to_string(p + q + 1) +
                                       " coefficients, have " + std::to_string(coeffs.size()));
    auto c_at = [&](int i) -> Rational {
        return i < 0 ? Rational(0) : coeffs[static_cast<std::size_t>(i)];
    };

    std::vector<Rational> b;  // b_1..b_q
    if (q > 0) {
        // Row i (i = 1..q): sum_{m=1..q} c_{p+i-m} b_m = -c_{p+i}; clear each
        // row's denominators before the fraction-free elimination.
        std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(q));
        for (int i = 1; i <= q; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(q) + 1);
            for (int col = 1; col <= q; ++col) row[static_cast<std::size_t>(col - 1)] = c_at(p + i - col);
            row[static_cast<std::size_t>(q)] = -c_at(p + i);
            mpz_class lcm = 1;
            for (const auto& entry : row)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), entry.get_den().get_mpz_t());
            auto& target = m[static_cast<std::size_t>(i - 1)];
            target.resize(static_cast<std::size_t>(q) + 1);
            for (std::size_t jj = 0; jj < row.size(); ++jj) {
                Rational scaled = row[jj] * Rational(lcm);
                target[jj] = scaled.get_num();  // denominator is 1 after scaling
            }
        }
        if (!solve_fraction_free(std::move(m), q, b)) return std::nullopt;
    }

    PadeApproximant out;
    out.p = p;
    out.q = q;
    out.denominator.resize(static_cast<std::size_t>(q) + 1);
    out.denominator[0] = 1;
    for (int i = 1; i <= q; ++i) out.denominator[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i - 1)];
    out.numerator.resize(static_cast<std::size_t>(p) + 1);
    for (int i = 0; i <= p; ++i) {
        Rational a = c_at(i);
        for (int mth = 1; mth <= std::min(i, q); ++mth)
            a += out.denominator[static_cast<std::size_t>(mth)] * c_at(i - mth);
        out.numerator[static_cast<std::size_t>(i)] = a;
    }
    return out;
}

std::vector<Rational> expand_ratio(const PadeApproximant& approx, int order) {
    // series s of N/D with D(0) = 1: s_i = N_i - sum_{m>=1} D_m s_{i-m}
    std::vector<Rational> s(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        Rational v = i <= approx.p ? approx.numerator[static_cast<std::size_t>(i)] : Rational(0);
        const int mmax = std::min(i, approx.q);
        for (int mth = 1; mth <= mmax; ++mth) {
            if (sgn(approx.denominator[static_cast<std::size_t>(mth)]) == 0) continue;
            v -= approx.denominator[static_cast<std::size_t>(mth)] * s[static_cast<std::size_t>(i - mth)];
        }
        s[static_cast<std::size_t>(i)] = v;
    }
    return s;
}

std::vector<Rational> dlog_series(const std::vector<Rational>& coeffs) {
    if (coeffs.empty() || sgn(coeffs[0]) == 0)
        throw ZeroLeadingCoefficient("dlog_series: zero constant term");
    if (coeffs.size() == 1) return {};
    std::vector<Rational> g(coeffs.size() - 1);
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        // f'_i = (i+1) c_{i+1} = sum_{m=0..i} g_m c_{i-m}
        Rational v = Rational(static_cast<long>(i + 1)) * coeffs[i + 1];
        for (std::size_t mth = 0; mth < i; ++mth) v -= g[mth] * coeffs[i - mth];
        g[i] = v / coeffs[0];
    }
    return g;
}

std::vector<Rational> dlog_reconstruct(const std::vector<Rational>& g, const Rational& c0,
                                       std::size_t length) {
    std::vector<Rational> c(length);
    if (length == 0) return c;
    c[0] = c0;
    for (std::size_t i = 1; i < length; ++i) {
        Rational v;
        for (std::size_t mth = 0; mth < i && mth < g.size(); ++mth) v += g[mth] * c[i - 1 - mth];
        c[i] = v / Rational(static_cast<long>(i));
    }
    return c;
}

std::vector<Rational> reduce_even_series(const std::vector<Rational>& coeffs) {
    std::vector<Rational> out;
    out.reserve((coeffs.size() + 1) / 2);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i % 2 == 1) {
            if (sgn(coeffs[i]) != 0)
                throw std::invalid_argument("reduce_even_series: nonzero odd coefficient");
        } else {
            out.push_back(coeffs[i]);
        }
    }
    return out;
}

namespace {

using Complex = std::complex<double>;

Complex evaluate_poly(const std::vector<double>& coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex evaluate_derivative(const std::vector<double>& coeffs, Complex z) {
    Complex acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * coeffs[i];
    return acc;
}

// Durand-Kerner simultaneous iteration; deterministic start on a circle with
// an asymmetry offset so symmetric configurations do not stall.
std::vector<Complex> durand_kerner(const std::vector<double>& coeffs, double tol) {
    const std::size_t deg = coeffs.size() - 1;
    double norm1 = 0.0;
    for (const double c : coeffs) norm1 += std::abs(c);
    const double lead = coeffs.back();
    const double tail = coeffs.front();
    double radius = std::pow(std::max(std::abs(tail / lead), 1e-8), 1.0 / static_cast<double>(deg));
    if (!std::isfinite(radius) || radius <= 0) radius = 1.0;

    std::vector<Complex> z(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        const double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(deg) + 0.7;
        z[i] = radius * Complex(std::cos(angle), std::sin(angle));
    }

    const int max_iter = 1000;
    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex denom = lead;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == Complex(0.0, 0.0)) {
                z[i] += Complex(1e-6, 1e-6);  // perturb coincident estimates
                max_step = 1.0;
                continue;
            }
            const Complex step = evaluate_poly(coeffs, z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) {
            converged = true;
            for (std::size_t i = 0; i < deg; ++i)
                if (std::abs(evaluate_poly(coeffs, z[i])) / norm1 > tol) converged = false;
        }
    }
    if (!converged) {
        for (std::size_t i = 0; i < deg; ++i)
            if (std::abs(evaluate_poly(coeffs, z[i])) / norm1 > tol)
                throw NoConvergence("find_poles: iteration budget exhausted");
    }
    // One polishing Newton step per root.
    for (auto& root : z) {
        const Complex d = evaluate_derivative(coeffs, root);
        if (std::abs(d) > 0) root -= evaluate_poly(coeffs, root) / d;
    }
    return z;
}

// Real-coefficient polynomials have conjugate-symmetric root sets; rebuild
// the output from matched pairs so the symmetry is exact.
std::vector<Complex> enforce_conjugate_pairs(std::vector<Complex> roots) {
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    std::vector<Complex> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const double im_scale = 1e-8 * (1.0 + std::abs(roots[i]));
        if (std::abs(roots[i].imag()) <= im_scale) {
            out.emplace_back(roots[i].real(), 0.0);
            used[i] = true;
            continue;
        }
        std::size_t best = i;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(std::conj(roots[i]) - roots[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == i) {
            out.push_back(roots[i]);  // unmatched; keep as computed
            used[i] = true;
            continue;
        }
        const double re = 0.5 * (roots[i].real() + roots[best].real());
        const double im = 0.5 * (std::abs(roots[i].imag()) + std::abs(roots[best].imag()));
        out.emplace_back(re, im);
        out.emplace_back(re, -im);
        used[i] = used[best] = true;
    }
    return out;
}

void sort_canonical(std::vector<Complex>& roots) {
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

}  // namespace

std::vector<Complex> find_poles(const PadeApproximant& approx, double tol) {
    std::vector<double> d;
    d.reserve(approx.denominator.size());
    for (const auto& coeff : approx.denominator) d.push_back(to_double(coeff));
    while (d.size() > 1 && sgn(approx.denominator[d.size() - 1]) == 0) d.pop_back();
    if (d.size() <= 1) return {};

    bool even = true;
    for (std::size_t i = 1; i < d.size(); i += 2)
        if (sgn(approx.denominator[i]) != 0) even = false;

    std::vector<Complex> roots;
    if (even && d.size() > 2) {
        // Solve in s = t^2; the +-t pairing is then exact by construction.
        std::vector<double> reduced;
        for (std::size_t i = 0; i < d.size(); i += 2) reduced.push_back(d[i]);
        auto s_roots = enforce_conjugate_pairs(durand_kerner(reduced, tol));
        for (const Complex& s : s_roots) {
            const Complex t = std::sqrt(s);
            roots.push_back(t);
            roots.push_back(-t);
        }
    } else {
        roots = enforce_conjugate_pairs(durand_kerner(d, tol));
    }
    sort_canonical(roots);
    return roots;
}

PoleReport classify_poles(const std::vector<Complex>& poles, double im_tol) {
    if (poles.empty()) throw std::invalid_argument("classify_poles: empty pole set");
    PoleReport report;
    report.poles = poles;
    report.classification_tolerance = im_tol;
    auto better = [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    };
    const Complex* tmin = &poles.front();
    for (const auto& z : poles)
        if (better(z, *tmin)) tmin = &z;
    report.t_min = *tmin;
    report.t_min_modulus = std::abs(*tmin);
    const Complex* treal = nullptr;
    for (const auto& z : poles) {
        if (std::abs(z.imag()) > im_tol) continue;
        if (treal == nullptr || better(z, *treal)) treal = &z;
    }
    if (treal != nullptr) {
        report.t_real = *treal;
        report.t_real_modulus = std::abs(*treal);
    }
    return report;
}

PoleStatistics pole_statistics(const std::vector<PoleReport>& reports) {
    if (reports.size() < 2) throw std::invalid_argument("pole_statistics: need at least 2 reports");
    PoleStatistics stats;
    double sum = 0.0;
    for (const auto& r : reports) sum += r.t_min_modulus;
    stats.mean_t_min = sum / static_cast<double>(reports.size());
    double dev = 0.0;
    for (const auto& r : reports) {
        const double d = r.t_min_modulus - stats.mean_t_min;
        dev += d * d;
    }
    stats.rms_t_min = std::sqrt(dev / static_cast<double>(reports.size()));

    double sum_real = 0.0;
    for (const auto& r : reports)
        if (r.t_real) {
            sum_real += r.t_real_modulus;
            ++stats.t_real_count;
        }
    if (stats.t_real_count >= 2) {
        stats.mean_t_real = sum_real / static_cast<double>(stats.t_real_count);
        double dev_real = 0.0;
        for (const auto& r : reports)
            if (r.t_real) {
                const double d = r.t_real_modulus - stats.mean_t_real;
                dev_real += d * d;
            }
        stats.rms_t_real = std::sqrt(dev_real / static_cast<double>(stats.t_real_count));
        // Quote the spread at one significant digit (rounded up), as the
        // deviation itself is only an order-of-magnitude statement.
        const double band = round_up_significant(stats.rms_t_real, 1);
        stats.blow_up_lower = floor_to_digits(stats.mean_t_real - band, 2);
        stats.blow_up_upper = ceil_to_digits(stats.mean_t_real + band, 2);
    }
    return stats;
}

DlogReport dlog_exponent(const PadeApproximant& approx, Complex pole) {
    std::vector<double> num, den;
    num.reserve(approx.numerator.size());
    den.reserve(approx.denominator.size());
    for (const auto& coeff : approx.numerator) num.push_back(to_double(coeff));
    for (const auto& coeff : approx.denominator) den.push_back(to_double(coeff));
    const Complex dprime = evaluate_derivative(den, pole);
    double scale = 0.0;
    for (const double c : den) scale += std::abs(c);
    if (std::abs(dprime) <= 1e-9 * scale)
        throw MultipleRoot("dlog_exponent: derivative vanishes at the pole");
    const Complex lambda = -evaluate_poly(num, pole) / dprime;
    DlogReport report;
    report.pole = pole;
    report.lambda_star = lambda.real();
    report.alpha_star = 0.5 * lambda.real();
    return report;
}

}  // namespace eulerps
