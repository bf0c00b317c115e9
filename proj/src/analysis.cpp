#include "eulerps/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "eulerps/decimal.hpp"

namespace eulerps {

std::vector<double> root_test_sequence(const std::vector<Rational>& values, RootTestMode mode,
                                       int j_start) {
    if (j_start < 1) throw DomainError("root_test_sequence: index origin must be >= 1");
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (sgn(values[i]) <= 0) throw DomainError("root_test_sequence: nonpositive value");
        const unsigned long j = static_cast<unsigned long>(j_start) + i;
        const unsigned long root = mode == RootTestMode::squared_norms ? 2 * j : j;
        out.push_back(neg_root_to_double(values[i], root));
    }
    return out;
}

std::vector<double> root_test_sequence(const std::vector<double>& values, RootTestMode mode,
                                       int j_start) {
    std::vector<Rational> exact;
    exact.reserve(values.size());
    for (const double v : values) {
        if (!(v > 0.0)) throw DomainError("root_test_sequence: nonpositive value");
        exact.emplace_back(v);  // binary-exact conversion
    }
    return root_test_sequence(exact, mode, j_start);
}

namespace {

struct Objective {
    const std::vector<std::pair<int, double>>* pts;

    double operator()(const std::array<double, 3>& x) const {
        const double A = x[0], B = x[1], c = x[2];
        if (!(B >= 0.0) || !(c > 0.0)) return std::numeric_limits<double>::infinity();
        double sse = 0.0;
        for (const auto& [j, y] : *pts) {
            const double model = A - std::pow(B / j, c);
            const double r = y - model;
            sse += r * r;
        }
        return std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
    }
};

// Nelder-Mead with a deterministic initial simplex; tolerance on simplex
// diameter in parameter space.
std::array<double, 3> nelder_mead(const Objective& f, std::array<double, 3> start, double tol,
                                  int max_iter) {
    constexpr int n = 3;
    std::array<std::array<double, 3>, n + 1> simplex;
    std::array<double, n + 1> value;
    simplex[0] = start;
    for (int i = 0; i < n; ++i) {
        simplex[static_cast<std::size_t>(i) + 1] = start;
        const double h = std::max(0.05 * std::abs(start[static_cast<std::size_t>(i)]), 0.01);
        simplex[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += h;
    }
    for (int i = 0; i <= n; ++i) value[static_cast<std::size_t>(i)] = f(simplex[static_cast<std::size_t>(i)]);

    auto order = [&] {
        std::array<int, n + 1> idx{0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            return value[static_cast<std::size_t>(a)] < value[static_cast<std::size_t>(b)];
        });
        std::array<std::array<double, 3>, n + 1> s2;
        std::array<double, n + 1> v2;
        for (int i = 0; i <= n; ++i) {
            s2[static_cast<std::size_t>(i)] = simplex[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            v2[static_cast<std::size_t>(i)] = value[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        }
        simplex = s2;
        value = v2;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        order();
        double diam = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int d = 0; d < n; ++d)
                diam = std::max(diam, std::abs(simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] -
                                               simplex[0][static_cast<std::size_t>(d)]));
        if (diam < tol) break;

        std::array<double, 3> centroid{0, 0, 0};
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d)
                centroid[static_cast<std::size_t>(d)] += simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] / n;

        auto blend = [&](double coef) {
            std::array<double, 3> p;
            for (int d = 0; d < n; ++d)
                p[static_cast<std::size_t>(d)] = centroid[static_cast<std::size_t>(d)] +
                                                 coef * (centroid[static_cast<std::size_t>(d)] -
                                                         simplex[n][static_cast<std::size_t>(d)]);
            return p;
        };

        const auto reflected = blend(1.0);
        const double fr = f(reflected);
        if (fr < value[0]) {
            const auto expanded = blend(2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[n] = expanded;
                value[n] = fe;
            } else {
                simplex[n] = reflected;
                value[n] = fr;
            }
        } else if (fr < value[n - 1]) {
            simplex[n] = reflected;
            value[n] = fr;
        } else {
            const auto contracted = blend(-0.5);
            const double fc = f(contracted);
            if (fc < value[n]) {
                simplex[n] = contracted;
                value[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d)
                        simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
                            0.5 * (simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] +
                                   simplex[0][static_cast<std::size_t>(d)]);
                    value[static_cast<std::size_t>(i)] = f(simplex[static_cast<std::size_t>(i)]);
                }
            }
        }
    }
    order();
    return simplex[0];
}

}  // namespace

namespace {

// For fixed c the model y = A - beta * j^(-c) is linear in (A, beta); the
// profile solve is exact, which keeps the refinement a one-dimensional,
// derivative-free search in c alone.
struct ProfilePoint {
    double A = 0.0;
    double beta = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

ProfilePoint profile_solve(const std::vector<std::pair<int, double>>& pts, double c) {
    ProfilePoint out;
    if (!(c > 0.0)) return out;
    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [j, y] : pts) {
        const double x = std::pow(static_cast<double>(j), -c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    double A, beta;
    if (std::abs(det) < 1e-300) {
        beta = 0.0;
        A = sy / n;
    } else {
        const double slope = (n * sxy - sx * sy) / det;  // y ~ A + slope * x
        beta = -slope;
        A = (sy - slope * sx) / n;
        if (beta < 0.0) {  // outside the model family; fall back to the flat fit
            beta = 0.0;
            A = sy / n;
        }
    }
    double sse = 0.0;
    for (const auto& [j, y] : pts) {
        const double r = y - (A - beta * std::pow(static_cast<double>(j), -c));
        sse += r * r;
    }
    out.A = A;
    out.beta = beta;
    out.sse = std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
    return out;
}

double golden_refine(const std::vector<std::pair<int, double>>& pts, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = profile_solve(pts, x1).sse;
    double f2 = profile_solve(pts, x2).sse;
    while (b - a > 1e-12) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = profile_solve(pts, x1).sse;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = profile_solve(pts, x2).sse;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

FitResult fit_power_law(const std::vector<std::pair<int, double>>& points, int j_min, int j_max) {
    std::vector<std::pair<int, double>> pts;
    for (const auto& p : points)
        if (p.first >= j_min && p.first <= j_max) pts.push_back(p);
    if (pts.size() < 4)
        throw std::invalid_argument("fit_power_law: need at least 4 points in range");
    for (const auto& [j, y] : pts) {
        if (j < 1) throw std::invalid_argument("fit_power_law: indices must be positive");
        if (!std::isfinite(y)) throw std::invalid_argument("fit_power_law: non-finite value");
    }
    std::sort(pts.begin(), pts.end());

    // Fixed multi-start grid over the exponent, profiled local refinement
    // around each start; earlier starts win exact ties.
    double best_sse = std::numeric_limits<double>::infinity();
    double best_c = 0.0;
    for (double c0 = 0.5; c0 <= 4.0 + 1e-9; c0 += 0.25) {
        const double c_refined = golden_refine(pts, std::max(0.05, c0 - 0.25), c0 + 0.25);
        const double sse = profile_solve(pts, c_refined).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_c = c_refined;
        }
    }
    if (!std::isfinite(best_sse)) throw FitDiverged("fit_power_law: no finite optimum found");

    // Final polish with the full three-parameter simplex from the profiled
    // optimum; catches the residual coupling between A, B and c.
    const ProfilePoint prof = profile_solve(pts, best_c);
    const Objective objective{&pts};
    const double B_start = prof.beta > 0.0 ? std::pow(prof.beta, 1.0 / best_c) : 0.0;
    std::array<double, 3> refined = {prof.A, B_start, best_c};
    if (prof.beta > 0.0) {
        const auto polished = nelder_mead(objective, refined, 1e-10, 4000);
        if (objective(polished) < objective(refined)) refined = polished;
    }
    const double final_sse = objective(refined);

    FitResult fit;
    fit.A = refined[0];
    fit.B = refined[1];
    fit.c = refined[2];
    fit.rms_error = std::sqrt(final_sse / static_cast<double>(pts.size()));
    fit.j_min = j_min;
    fit.j_max = j_max;
    return fit;
}

double floor_to_digits(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    double r = std::floor(x * scale) / scale;
    while (r > x) r -= 1.0 / scale;
    return r;
}

double ceil_to_digits(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    double r = std::ceil(x * scale) / scale;
    while (r < x) r += 1.0 / scale;
    return r;
}

RadiusEstimate radius_interval(const FitResult& fit, double band, int digits, RadiusKind which,
                               int n, RadiusMethod method) {
    if (band < fit.rms_error)
        throw std::invalid_argument("radius_interval: band must cover the fit RMS error");
    RadiusEstimate est;
    est.which = which;
    est.n = n;
    est.method = method;
    est.lower = floor_to_digits(fit.A - band, digits);
    est.upper = ceil_to_digits(fit.A + band, digits);
    return est;
}

}  // namespace eulerps
