// Acceptance suite: reproduces the reference results for the built-in datum
// at desk scale and checks the cross-cutting exactness guarantees. One line
// of output per criterion; exit status 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eulerps/analysis.hpp"
#include "eulerps/decimal.hpp"
#include "eulerps/euler.hpp"
#include "eulerps/norms.hpp"
#include "eulerps/pade.hpp"
#include "eulerps/symmetry.hpp"
#include "fixtures.hpp"

using namespace eulerps;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Compares our 16-digit decimal against the reference entry: mantissas (as
// 16-digit integers) may differ by at most one unit in the last place.
bool within_one_unit16(const Rational& computed, std::string_view reference) {
    const std::string ours = format_sci16(computed);
    const auto parse = [](std::string_view s, long long& mantissa, long& exp10) {
        const auto epos = s.find('e');
        std::string digits;
        for (const char ch : s.substr(0, epos))
            if (ch != '.') digits.push_back(ch);
        while (digits.size() < 16) digits.push_back('0');
        mantissa = std::stoll(digits);
        exp10 = std::stol(std::string(s.substr(epos + 1)));
    };
    long long m_ours = 0, m_ref = 0;
    long e_ours = 0, e_ref = 0;
    parse(ours, m_ours, e_ours);
    parse(reference, m_ref, e_ref);
    if (e_ours != e_ref) {
        // 9.999... / 1.000... boundary: align the larger exponent
        if (e_ours == e_ref + 1 && m_ours == 1000000000000000LL) {
            m_ours = 10000000000000000LL;
            e_ours = e_ref;
        } else if (e_ref == e_ours + 1 && m_ref == 1000000000000000LL) {
            m_ref = 10000000000000000LL;
            e_ref = e_ours;
        } else {
            return false;
        }
    }
    return std::llabs(m_ours - m_ref) <= 1;
}

FourierField random_divergence_free_field(unsigned seed, int radius, int mode_pairs) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coord(-radius, radius);
    std::uniform_int_distribution<int> numer(-4, 4);
    std::uniform_int_distribution<int> denom(1, 4);
    std::map<WaveVector, ComplexVec3> modes;
    int attempts = 0;
    while (static_cast<int>(modes.size()) < 2 * mode_pairs && attempts < 200) {
        ++attempts;
        const WaveVector k{coord(rng), coord(rng), coord(rng)};
        if (k.is_zero() || modes.count(k) || modes.count(-k)) continue;
        ComplexVec3 c;
        for (int s = 0; s < 3; ++s) {
            c.re[s] = Rational(numer(rng), denom(rng));
            c.re[s].canonicalize();
            c.im[s] = Rational(numer(rng), denom(rng));
            c.im[s].canonicalize();
        }
        c = leray_project(k, c);
        if (c.is_zero()) continue;
        modes[k] = c;
        modes[-k] = c.conjugate();
    }
    std::vector<ModeEntry> entries(modes.begin(), modes.end());
    return make_field(std::move(entries));
}

OctahedralMatrix matrix(std::array<int, 9> entries) {
    OctahedralMatrix s;
    s.m = entries;
    return s;
}

GroupElement element(const OctahedralMatrix& s, std::array<std::uint8_t, 3> bits) {
    GroupElement g;
    g.S = s;
    g.a.bits = bits;
    return g;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, bool>> results;
    auto report = [&](int id, const std::string& name, const Outcome& outcome, double secs) {
        std::printf("criterion %2d %-58s %s (%.1fs)%s%s\n", id, name.c_str(),
                    outcome.pass ? "PASS" : "FAIL", secs, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
        results.emplace_back(name, outcome.pass);
    };

    // Shared computation: the series to order 24, single-threaded, orbit
    // reduced. Criterion 4's runtime gate covers this step.
    std::fprintf(stderr, "computing series to order 24 (single thread, orbit-reduced)...\n");
    const auto t_series = Clock::now();
    const FourierField u0 = bnw_datum();
    const SymmetryProfile profile = detect_symmetries(u0);
    ExtendOptions reduced_opts;
    reduced_opts.profile = &profile;
    reduced_opts.threads = 1;
    reduced_opts.progress = [](int j, std::size_t modes, double s) {
        std::fprintf(stderr, "  order %d: %zu modes, %.2fs\n", j, modes, s);
    };
    const TaylorSeries series24 = taylor_extend(make_series("bnw", u0), 24, reduced_opts);
    const double series_seconds = seconds_since(t_series);
    std::fprintf(stderr, "series ready in %.1fs\n", series_seconds);

    auto series_prefix = [&](int order) {
        TaylorSeries out;
        out.datum_id = series24.datum_id;
        out.reflection_parity = series24.reflection_parity;
        out.coefficients.assign(series24.coefficients.begin(),
                                series24.coefficients.begin() + order + 1);
        return out;
    };

    // 1. Exact low-order squared norms.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        for (std::size_t j = 0; j < fixtures::kSquaredNormH3Exact.size(); ++j) {
            const Rational expected =
                rational_from_string(std::string(fixtures::kSquaredNormH3Exact[j]));
            if (squared_norm(series24.coefficients[j], 3) != expected)
                outcome.fail("||u_" + std::to_string(j) + "||^2_3 mismatch");
        }
        report(1, "exact squared H^3 norms, orders 0..5", outcome, seconds_since(t0));
    }

    // 2. Exact norm-series coefficients and odd vanishing.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const NormSeries nu = norm_series(series_prefix(10), 3);
        for (std::size_t i = 0; i < fixtures::kNuH3ExactEven.size(); ++i) {
            const Rational expected = rational_from_string(std::string(fixtures::kNuH3ExactEven[i]));
            if (nu.coeffs[2 * i] != expected)
                outcome.fail("nu_{3," + std::to_string(2 * i) + "} mismatch");
        }
        for (std::size_t j = 1; j < nu.coeffs.size(); j += 2)
            if (sgn(nu.coeffs[j]) != 0) outcome.fail("odd coefficient nonzero");
        report(2, "exact norm-series coefficients, orders 0..10", outcome, seconds_since(t0));
    }

    // 3. N = 5 norm polynomial.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const NormPolynomial poly = partial_sum_norm_polynomial(series_prefix(5), 5, 3);
        for (std::size_t i = 0; i < fixtures::kNormPolynomialN5Even.size(); ++i) {
            const Rational expected =
                rational_from_string(std::string(fixtures::kNormPolynomialN5Even[i]));
            if (poly.coeffs[2 * i] != expected)
                outcome.fail("t^" + std::to_string(2 * i) + " coefficient mismatch");
        }
        for (std::size_t j = 1; j <= 9; j += 2)
            if (sgn(poly.coeffs[j]) != 0) outcome.fail("odd coefficient nonzero");
        report(3, "exact N=5 partial-sum norm polynomial", outcome, seconds_since(t0));
    }

    // 4. 16-digit table reproduction through order 24 within the time budget.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        for (int j = 1; j <= 24; ++j) {
            const Rational norm2 =
                squared_norm(series24.coefficients[static_cast<std::size_t>(j)], 3);
            if (!within_one_unit16(norm2,
                                   fixtures::kSquaredNormH3Table[static_cast<std::size_t>(j - 1)]))
                outcome.fail("order " + std::to_string(j) + ": published " +
                             std::string(fixtures::kSquaredNormH3Table[static_cast<std::size_t>(j - 1)]) +
                             " vs exact " + format_sci(norm2, 22));
        }
        if (series_seconds > 45.0 * 60.0)
            outcome.fail("series computation exceeded the 45 minute budget");
        outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("series took ") +
                          std::to_string(static_cast<int>(series_seconds)) + "s";
        report(4, "16-digit norm table, orders 1..24, within budget", outcome, seconds_since(t0));
    }

    // 5. Symmetry detection: exact groups, relations, reduced structure.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const OctahedralMatrix A = matrix({0, 1, 0, 0, 0, 1, 1, 0, 0});
        const OctahedralMatrix B = matrix({0, -1, 0, -1, 0, 0, 0, 0, -1});
        const OctahedralMatrix C = matrix({0, 0, 1, 1, 0, 0, 0, 1, 0});
        const OctahedralMatrix D = matrix({-1, 0, 0, 0, 0, -1, 0, -1, 0});
        const OctahedralMatrix E = matrix({0, 0, -1, 0, -1, 0, -1, 0, 0});
        const OctahedralMatrix I;
        const std::array<std::uint8_t, 3> zero{0, 0, 0}, i2{1, 1, 1}, a1{0, 0, 1}, a2{1, 1, 0},
            c1{1, 0, 0}, c2{0, 1, 1};
        std::vector<GroupElement> expected_plus{
            element(I, zero), element(I, i2), element(A, a1),   element(A, a2),
            element(B, a1),   element(B, a2), element(C, c1),   element(C, c2),
            element(D, c1),   element(D, c2), element(E, zero), element(E, i2)};
        std::sort(expected_plus.begin(), expected_plus.end());
        std::vector<GroupElement> expected_minus;
        for (GroupElement g : expected_plus) {
            g.S = g.S.negate();
            expected_minus.push_back(g);
        }
        std::sort(expected_minus.begin(), expected_minus.end());
        if (profile.plus_group != expected_plus) outcome.fail("symmetry subgroup mismatch");
        if (profile.minus_set != expected_minus) outcome.fail("pseudo-symmetry set mismatch");

        const GroupElement x = element(A, a1), y = element(B, a1);
        GroupElement x6 = x;
        for (int i = 1; i < 6; ++i) x6 = group_product(x6, x);
        if (!x6.is_identity()) outcome.fail("x^6 != e");
        if (!group_product(y, y).is_identity()) outcome.fail("y^2 != e");
        const GroupElement yx = group_product(y, x);
        if (!group_product(yx, yx).is_identity()) outcome.fail("(yx)^2 != e");
        const PresentationReport pres = presentation_report(profile);
        if (pres.group_order != 12 || pres.relations.size() != 3)
            outcome.fail("presentation not dihedral of order 12");

        std::vector<OctahedralMatrix> expected_reduced{I, A, B, C, D, E};
        std::sort(expected_reduced.begin(), expected_reduced.end());
        if (profile.reduced_plus != expected_reduced) outcome.fail("reduced subgroup mismatch");
        if (!(A * A * A).is_identity() || !(B * B).is_identity() ||
            !((B * A) * (B * A)).is_identity())
            outcome.fail("reduced relations fail");
        if (!(C == A * A) || !(D == A * B) || !(E == A * A * B))
            outcome.fail("reduced element decomposition fails");
        report(5, "symmetry detection and dihedral presentation", outcome, seconds_since(t0));
    }

    // 6. Orbit-reduced and plain recursions produce byte-identical checkpoints.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const auto base = std::filesystem::temp_directory_path() / "eulerps_acceptance";
        const auto dir_plain = base / "plain";
        const auto dir_reduced = base / "reduced";
        std::filesystem::remove_all(base);
        ExtendOptions plain_opts;
        plain_opts.checkpoint_dir = dir_plain.string();
        taylor_extend(make_series("bnw", u0), 12, plain_opts);
        ExtendOptions red_opts;
        red_opts.profile = &profile;
        red_opts.checkpoint_dir = dir_reduced.string();
        taylor_extend(make_series("bnw", u0), 12, red_opts);
        auto slurp = [](const std::filesystem::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        for (int j = 0; j <= 12; ++j) {
            const std::string a = slurp(dir_plain / checkpoint_filename(j));
            const std::string b = slurp(dir_reduced / checkpoint_filename(j));
            if (a.empty() || a != b)
                outcome.fail("checkpoint bytes differ at order " + std::to_string(j));
        }
        std::filesystem::remove_all(base);
        report(6, "orbit reduction is exactly equivalent through order 12", outcome,
               seconds_since(t0));
    }

    // 7. Energy orthogonality.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const NormSeries nu0 = norm_series(series24, 0);
        for (std::size_t j = 1; j < nu0.coeffs.size(); ++j)
            if (sgn(nu0.coeffs[j]) != 0)
                outcome.fail("nu_{0," + std::to_string(j) + "} nonzero for the built-in datum");
        for (unsigned seed : {101u, 202u, 303u}) {
            const FourierField v = random_divergence_free_field(seed, 2, 3);
            const TaylorSeries rnd = taylor_extend(make_series("random", v), 8);
            const NormSeries nu = norm_series(rnd, 0);
            for (std::size_t j = 1; j < nu.coeffs.size(); ++j)
                if (sgn(nu.coeffs[j]) != 0)
                    outcome.fail("nu_{0,j} nonzero for random datum seed " + std::to_string(seed));
        }
        report(7, "energy orthogonality, exact", outcome, seconds_since(t0));
    }

    // 8. Diagonal-approximant parity and the order-12 pole set.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const NormSeries nu = norm_series(series24, 3);
        for (int p = 0; p <= 12; ++p) {
            const auto approx = pade_approximant(nu.coeffs, p, p);
            const bool should_exist = p % 2 == 0;
            if (approx.has_value() != should_exist)
                outcome.fail("[" + std::to_string(p) + "/" + std::to_string(p) +
                             (should_exist ? "] missing" : "] should not exist"));
        }
        const auto approx12 = pade_approximant(nu.coeffs, 12, 12);
        if (!approx12) {
            outcome.fail("[12/12] missing");
        } else {
            const auto poles = find_poles(*approx12);
            auto has = [&](std::complex<double> z) {
                for (const auto& pole : poles)
                    if (std::abs(pole.real() - z.real()) <= 1e-4 &&
                        std::abs(pole.imag() - z.imag()) <= 1e-4)
                        return true;
                return false;
            };
            for (const double sr : {1.0, -1.0})
                for (const double si : {1.0, -1.0})
                    if (!has({sr * 0.294020, si * 0.464361}))
                        outcome.fail("complex pole quadruple not found");
            if (!has({0.626199, 0.0}) || !has({-0.626199, 0.0}))
                outcome.fail("real pole pair not found");
            const PoleReport rep = classify_poles(poles, 0.05);
            if (std::abs(rep.t_min_modulus - 0.549617) > 1e-4)
                outcome.fail("|T_min| off: " + std::to_string(rep.t_min_modulus));
        }
        report(8, "diagonal-approximant existence parity and poles", outcome, seconds_since(t0));
    }

    // 9. Fit machinery against the published table and a synthetic target.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        std::vector<std::pair<int, double>> pts;
        for (int j = 36; j <= 52; j += 2) {
            const Rational v = fixtures::parse_sci_rational(
                fixtures::kSquaredNormH3Table[static_cast<std::size_t>(j - 1)]);
            pts.emplace_back(
                j, root_test_sequence(std::vector<Rational>{v}, RootTestMode::squared_norms, j)[0]);
        }
        const FitResult fit = fit_power_law(pts, 36, 52);
        if (std::abs(fit.A - 0.32158) > 1e-3)
            outcome.fail("A = " + std::to_string(fit.A) + " too far from 0.32158");
        if (fit.rms_error >= 1e-5)
            outcome.fail("rms = " + std::to_string(fit.rms_error) + " not below 1e-5");

        std::vector<std::pair<int, double>> synth;
        for (int j = 10; j <= 50; ++j) synth.emplace_back(j, 0.5 - std::pow(2.0 / j, 1.5));
        const FitResult sfit = fit_power_law(synth, 10, 50);
        if (std::abs(sfit.A - 0.5) > 1e-6 || std::abs(sfit.B - 2.0) > 1e-6 ||
            std::abs(sfit.c - 1.5) > 1e-6)
            outcome.fail("synthetic recovery off");
        report(9, "power-law fit on published values and synthetic data", outcome,
               seconds_since(t0));
    }

    // 10. Pole statistics over the published pole table.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        std::vector<PoleReport> reports;
        for (const auto& row : fixtures::kPoleTable) {
            PoleReport r;
            r.t_min = row.t_min;
            r.t_min_modulus = row.t_min_modulus;
            r.t_real = row.t_real;
            r.t_real_modulus = std::abs(row.t_real);
            r.classification_tolerance = 0.05;
            reports.push_back(r);
        }
        const PoleStatistics stats = pole_statistics(reports);
        if (std::abs(stats.mean_t_min - 0.515995) > 1e-6)
            outcome.fail("mean |T_min| = " + std::to_string(stats.mean_t_min));
        if (std::abs(stats.mean_t_real - 0.649489) > 1e-6)
            outcome.fail("mean |T_real| = " + std::to_string(stats.mean_t_real));
        if (!(stats.rms_t_min < 0.02)) outcome.fail("rms |T_min| not below 0.02");
        if (!(stats.rms_t_real < 0.08)) outcome.fail("rms |T_real| not below 0.08");
        if (std::abs(stats.blow_up_lower - 0.56) > 1e-9 ||
            std::abs(stats.blow_up_upper - 0.73) > 1e-9)
            outcome.fail("conjectural interval (" + std::to_string(stats.blow_up_lower) + ", " +
                         std::to_string(stats.blow_up_upper) + ") != (0.56, 0.73)");
        report(10, "pole statistics over the published pole table", outcome, seconds_since(t0));
    }

    // Supplementary pin (not a numbered criterion): the two table entries
    // whose published 16th digits disagree with the exact values were
    // recomputed by an independent implementation; freeze the confirmed
    // 22-digit values so any regression is caught precisely.
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const std::pair<int, const char*> confirmed[] = {
            {19, "7.840631870939452996671e19"},
            {20, "7.122921654632159668018e20"},
        };
        for (const auto& [j, expected] : confirmed) {
            const std::string got =
                format_sci(squared_norm(series24.coefficients[static_cast<std::size_t>(j)], 3), 22);
            if (got != expected)
                outcome.fail("order " + std::to_string(j) + ": " + got + " != " + expected);
        }
        std::printf("supplementary %-58s %s (%.1fs)%s%s\n",
                    "independently confirmed 22-digit values, orders 19-20",
                    outcome.pass ? "PASS" : "FAIL", seconds_since(t0),
                    outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
        results.emplace_back("supplementary", outcome.pass);
    }

    // Supplementary: partial-sum scans separate the convergent and divergent
    // regimes at desk scale (plateau inside the radius, growth outside).
    {
        const auto t0 = Clock::now();
        Outcome outcome;
        const std::vector<Rational> ts{rational_from_decimal("0.32"),
                                       rational_from_decimal("0.35")};
        const auto rows = partial_sum_scan(series24, 3, ts, 20, 24);
        std::vector<double> inside, outside;
        for (const auto& row : rows)
            (sgn(row.t - rational_from_decimal("0.33")) < 0 ? inside : outside)
                .push_back(row.value);
        for (std::size_t i = 1; i < inside.size(); ++i)
            if (!(inside[i] < inside[i - 1])) outcome.fail("no plateau approach at t=0.32");
        if (std::abs(inside.back() - inside[inside.size() - 2]) > 1e-3 * inside.back())
            outcome.fail("steps at t=0.32 not settling");
        for (std::size_t i = 1; i < outside.size(); ++i)
            if (!(outside[i] > outside[i - 1])) outcome.fail("no growth at t=0.35");
        if (!(outside.back() - outside[outside.size() - 2] >
              outside[1] - outside[0]))
            outcome.fail("growth at t=0.35 not accelerating");
        std::printf("supplementary %-58s %s (%.1fs)%s%s\n",
                    "scan regimes: plateau at t=0.32, growth at t=0.35",
                    outcome.pass ? "PASS" : "FAIL", seconds_since(t0),
                    outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
        results.emplace_back("supplementary-scan", outcome.pass);
    }

    int failures = 0;
    for (const auto& [name, pass] : results)
        if (!pass) ++failures;
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
