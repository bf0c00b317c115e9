// Command-line driver: exact Taylor expansion of the incompressible Euler
// equation on the 3-torus for Fourier-polynomial data, plus the series
// diagnostics (norms, root tests, fits, diagonal rational approximants).
//
// Exit codes: 0 success, 2 usage error, 3 data/checkpoint error,
// 4 numerical failure.

#include <CLI11.hpp>

#include <cerrno>
#include <chrono>
#include <complex>
#include <cstdio>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>
#include <vector>

#include "eulerps/analysis.hpp"
#include "eulerps/decimal.hpp"
#include "eulerps/errors.hpp"
#include "eulerps/euler.hpp"
#include "eulerps/norms.hpp"
#include "eulerps/pade.hpp"
#include "eulerps/symmetry.hpp"

namespace fs = std::filesystem;
using namespace eulerps;

namespace {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exclusive ownership of a checkpoint directory while writing to it.
class DirectoryLock {
  public:
    explicit DirectoryLock(const fs::path& dir) : path_(dir / ".lock") {
        fs::create_directories(dir);
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw DataError("checkpoint directory is locked: " + path_.string() +
                            " exists (remove it if stale)");
        const std::string pid = std::to_string(::getpid()) + "\n";
        [[maybe_unused]] const auto n = ::write(fd_, pid.c_str(), pid.size());
    }
    ~DirectoryLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            std::error_code ec;
            fs::remove(path_, ec);
        }
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

  private:
    fs::path path_;
    int fd_ = -1;
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

FourierField load_datum(const std::string& datum) {
    if (datum == "bnw") return bnw_datum();
    return read_datum_file(datum);
}

void print_progress(int order, std::size_t modes, double seconds) {
    std::fprintf(stderr, "order %d done: %zu modes, %.2fs\n", order, modes, seconds);
}

TaylorSeries load_series(const std::string& dir, int max_order) {
    if (last_checkpoint_order(dir) < max_order)
        throw MissingCheckpoint("checkpoints in " + dir + " do not reach order " +
                                std::to_string(max_order));
    return load_series_from_checkpoints(dir, "checkpointed", max_order);
}

int resolve_order(const std::string& dir, int requested) {
    if (requested >= 0) return requested;
    const int last = last_checkpoint_order(dir);
    if (last < 0) throw MissingCheckpoint("no checkpoints in " + dir);
    return last;
}

void write_norms_csv(const fs::path& path, const TaylorSeries& series, int n) {
    auto out = open_output(path);
    out << "j,exact,decimal16\n";
    for (int j = 0; j <= series.highest_order(); ++j) {
        const Rational n2 = squared_norm(series.coefficients[static_cast<std::size_t>(j)], n);
        out << j << "," << rational_to_string(n2) << "," << format_sci16(n2) << "\n";
    }
}

// ---------------------------------------------------------------- compute --

struct ComputeArgs {
    std::string datum = "bnw";
    int order = 0;
    int n = 3;
    std::string symmetry = "on";
    std::string checkpoint_dir;
    std::string output_dir = ".";
    int threads = 1;
};

int cmd_compute(const ComputeArgs& args) {
    const fs::path outdir = args.output_dir;
    fs::create_directories(outdir);
    const std::string ckpt =
        args.checkpoint_dir.empty() ? (outdir / "checkpoints").string() : args.checkpoint_dir;
    DirectoryLock lock{fs::path(ckpt)};

    const FourierField u0 = load_datum(args.datum);
    TaylorSeries series;
    const int resume_from = last_checkpoint_order(ckpt);
    if (resume_from >= 0) {
        std::fprintf(stderr, "resuming from checkpoint order %d\n", resume_from);
        series = load_series_from_checkpoints(ckpt, args.datum, std::min(resume_from, args.order));
        if (!(series.coefficients.front() == u0))
            throw CheckpointCorrupt("checkpoint directory belongs to a different datum");
    } else {
        series = make_series(args.datum, u0);
    }

    SymmetryProfile profile;
    ExtendOptions opts;
    opts.threads = args.threads;
    opts.checkpoint_dir = ckpt;
    opts.progress = print_progress;
    if (args.symmetry == "on") {
        profile = detect_symmetries(u0);
        opts.profile = &profile;
        std::fprintf(stderr, "symmetry group order %zu, pseudo-symmetries %zu\n",
                     profile.plus_group.size(), profile.minus_set.size());
        auto pf = open_output(outdir / "profile.txt");
        write_profile(pf, profile);
    }
    series = taylor_extend(series, args.order, opts);

    write_norms_csv(outdir / "norms.csv", series, args.n);
    std::cout << "datum " << args.datum << "\n";
    std::cout << "order " << series.highest_order() << "\n";
    std::cout << "modes " << series.coefficients.back().size() << "\n";
    std::cout << "checkpoints " << ckpt << "\n";
    std::cout << "norms " << (outdir / "norms.csv").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeArgs {
    std::string checkpoint_dir;
    int order = -1;
    int n = 3;
    std::string output_dir = ".";
    std::vector<std::string> scan_t;
    int scan_nmin = 0;
    int scan_nmax = -1;
    int fit_jmin = -1;
    int fit_jmax = -1;
    int fit_step = 2;
    std::string radius_lower = "0.32";
    std::string remainder_t;
    int remainder_order = -1;
};

int cmd_analyze(const AnalyzeArgs& args) {
    const fs::path outdir = args.output_dir;
    fs::create_directories(outdir);
    const int order = resolve_order(args.checkpoint_dir, args.order);
    const TaylorSeries series = load_series(args.checkpoint_dir, order);
    const NormSeries nu = norm_series(series, args.n);

    {
        auto out = open_output(outdir / "nu.csv");
        out << "j,exact,decimal16\n";
        for (int j = 0; j <= order; ++j)
            out << j << "," << rational_to_string(nu.coeffs[static_cast<std::size_t>(j)]) << ","
                << format_sci16(nu.coeffs[static_cast<std::size_t>(j)]) << "\n";
    }

    // Root test for the coefficient norms (squared input, exponent 1/(2j)).
    std::vector<Rational> norm_sq;
    for (int j = 1; j <= order; ++j)
        norm_sq.push_back(squared_norm(series.coefficients[static_cast<std::size_t>(j)], args.n));
    const std::vector<double> tau_seq = root_test_sequence(norm_sq, RootTestMode::squared_norms, 1);
    {
        auto out = open_output(outdir / "roottest.csv");
        out << "j,value\n";
        for (int j = 1; j <= order; ++j)
            out << j << "," << fmt_double(tau_seq[static_cast<std::size_t>(j - 1)]) << "\n";
    }

    // Root test for the norm-series coefficients (only even indices carry
    // information when the odd ones vanish identically).
    std::vector<std::pair<int, double>> theta_pts;
    {
        auto out = open_output(outdir / "nu_roottest.csv");
        out << "j,value\n";
        for (int j = 2; j <= order; ++j) {
            const Rational& coeff = nu.coeffs[static_cast<std::size_t>(j)];
            if (sgn(coeff) == 0) continue;
            Rational mag = coeff;
            if (sgn(mag) < 0) mag = -mag;
            const double value =
                root_test_sequence(std::vector<Rational>{mag}, RootTestMode::norms, j)[0];
            out << j << "," << fmt_double(value) << "\n";
            theta_pts.emplace_back(j, value);
        }
    }

    // Power-law fits of both root-test sequences over [fit_jmin, fit_jmax].
    const int jmax = args.fit_jmax > 0 ? args.fit_jmax : order;
    const int jmin = args.fit_jmin > 0 ? args.fit_jmin : std::max(2, jmax - 16);
    {
        auto out = open_output(outdir / "fit.csv");
        out << "which,A,B,c,rms,j_min,j_max\n";
        std::vector<std::pair<int, double>> tau_pts;
        for (int j = jmin; j <= jmax; j += args.fit_step)
            if (j >= 1) tau_pts.emplace_back(j, tau_seq[static_cast<std::size_t>(j - 1)]);
        auto emit = [&](const char* which, const std::vector<std::pair<int, double>>& pts,
                        RadiusKind kind) {
            if (pts.size() < 4) {
                std::fprintf(stderr, "fit %s skipped: only %zu points in [%d,%d]\n", which,
                             pts.size(), jmin, jmax);
                return;
            }
            const FitResult fit = fit_power_law(pts, jmin, jmax);
            out << which << "," << fmt_double(fit.A) << "," << fmt_double(fit.B) << ","
                << fmt_double(fit.c) << "," << fmt_double(fit.rms_error) << "," << fit.j_min << ","
                << fit.j_max << "\n";
            const double band = std::max(fit.rms_error, 1e-3);
            const RadiusEstimate est = radius_interval(fit, band, 2, kind, args.n);
            std::cout << which << "_interval " << fmt_double(est.lower) << " "
                      << fmt_double(est.upper) << " conjectural (fit band " << fmt_double(band)
                      << ")\n";
        };
        emit("tau", tau_pts, RadiusKind::tau_n);
        std::vector<std::pair<int, double>> theta_window;
        for (const auto& p : theta_pts)
            if (p.first >= jmin && p.first <= jmax) theta_window.push_back(p);
        emit("theta", theta_window, RadiusKind::theta_n);
    }

    // Partial-sum scans.
    {
        std::vector<Rational> ts;
        for (const auto& t : args.scan_t) ts.push_back(rational_from_decimal(t));
        if (ts.empty()) {
            ts.push_back(rational_from_decimal("0.32"));
            ts.push_back(rational_from_decimal("0.35"));
        }
        const int nmax = args.scan_nmax >= 0 ? args.scan_nmax : order;
        const auto rows = partial_sum_scan(series, args.n, ts, args.scan_nmin, nmax);
        auto out = open_output(outdir / "scan.csv");
        out << "N,t,value\n";
        for (const auto& row : rows)
            out << row.N << "," << rational_to_string(row.t) << "," << fmt_double(row.value)
                << "\n";
    }

    // Remainder coefficients and, when a time is given, the tail bound.
    {
        const Rational radius = rational_from_decimal(args.radius_lower);
        const int remainder_order = args.remainder_order > 0 ? args.remainder_order : order;
        const Rational t =
            args.remainder_t.empty() ? Rational(0) : rational_from_decimal(args.remainder_t);
        const auto [mu, bound] = mu_and_remainder(series, remainder_order, t, radius, args.n);
        auto out = open_output(outdir / "mu.csv");
        out << "j,mu\n";
        for (std::size_t j = 0; j < mu.entries.size(); ++j)
            out << j << "," << fmt_double(mu.entries[j]) << "\n";
        std::cout << "mu_monotone_from_1 " << (mu.monotone_from_1 ? "true" : "false") << "\n";
        if (!args.remainder_t.empty())
            std::cout << "remainder_bound N=" << remainder_order << " t=" << args.remainder_t
                      << " " << fmt_double(bound.bound) << " " << bound.label << "\n";
    }

    std::cout << "outputs " << outdir.string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- pade --

struct PadeArgs {
    std::string checkpoint_dir;
    int order = -1;
    int n = 3;
    std::string output_dir = ".";
    std::vector<int> diagonals;
    int diagonal_max = -1;
    double im_tol = 0.05;
    bool dlog = false;
};

int cmd_pade(const PadeArgs& args) {
    const fs::path outdir = args.output_dir;
    fs::create_directories(outdir);
    const int order = resolve_order(args.checkpoint_dir, args.order);
    const TaylorSeries series = load_series(args.checkpoint_dir, order);
    const NormSeries nu = norm_series(series, args.n);

    std::vector<int> diagonals = args.diagonals;
    if (diagonals.empty()) {
        const int pmax = args.diagonal_max >= 0 ? args.diagonal_max : order / 2;
        for (int p = 0; p <= pmax; ++p) diagonals.push_back(p);
    }

    std::vector<PoleReport> reports;
    auto out = open_output(outdir / "pade.csv");
    out << "p,q,exists,tmin_re,tmin_im,tmin_mod,treal_re,treal_im,treal_mod\n";
    for (const int p : diagonals) {
        if (2 * p > order)
            throw InsufficientCoefficients("diagonal order " + std::to_string(p) +
                                           " needs series coefficients through " +
                                           std::to_string(2 * p));
        const auto approx = pade_approximant(nu.coeffs, p, p);
        if (!approx) {
            out << p << "," << p << ",false,,,,,,\n";
            continue;
        }
        const auto poles = find_poles(*approx);
        if (poles.empty()) {
            out << p << "," << p << ",true,,,,,,\n";
            continue;
        }
        const PoleReport report = classify_poles(poles, args.im_tol);
        out << p << "," << p << ",true," << fmt_double(report.t_min.real()) << ","
            << fmt_double(report.t_min.imag()) << "," << fmt_double(report.t_min_modulus) << ",";
        if (report.t_real)
            out << fmt_double(report.t_real->real()) << "," << fmt_double(report.t_real->imag())
                << "," << fmt_double(report.t_real_modulus);
        else
            out << ",,";
        out << "\n";
        reports.push_back(report);
    }

    if (reports.size() >= 2) {
        const PoleStatistics stats = pole_statistics(reports);
        std::cout << "mean_tmin " << fmt_double(stats.mean_t_min) << " rms "
                  << fmt_double(stats.rms_t_min) << "\n";
        if (stats.t_real_count >= 2) {
            std::cout << "mean_treal " << fmt_double(stats.mean_t_real) << " rms "
                      << fmt_double(stats.rms_t_real) << "\n";
            std::cout << "blow_up_interval " << fmt_double(stats.blow_up_lower) << " "
                      << fmt_double(stats.blow_up_upper) << " conjectural\n";
        }
    }

    if (args.dlog) {
        // The norm series is even; the logarithmic derivative is analyzed in
        // the reduced variable s = t^2, which serves the odd diagonal orders.
        const auto even = reduce_even_series(nu.coeffs);
        const auto g = dlog_series(even);
        auto dout = open_output(outdir / "dlog.csv");
        dout << "p,pole_re,pole_im,lambda,alpha\n";
        for (int m = 1; 2 * m + 1 <= static_cast<int>(g.size()); ++m) {
            const int p = 2 * m + 1;  // diagonal order in the original variable
            const auto approx = pade_approximant(g, m, m);
            if (!approx) continue;
            const auto poles = find_poles(*approx);
            for (const auto& s_pole : poles) {
                if (std::abs(s_pole.imag()) > args.im_tol * (1.0 + std::abs(s_pole))) continue;
                if (s_pole.real() <= 0) continue;
                try {
                    const DlogReport rep = dlog_exponent(*approx, s_pole);
                    const std::complex<double> t_pole = std::sqrt(s_pole);
                    dout << p << "," << fmt_double(t_pole.real()) << "," << fmt_double(t_pole.imag())
                         << "," << fmt_double(rep.lambda_star) << "," << fmt_double(rep.alpha_star)
                         << "\n";
                } catch (const MultipleRoot&) {
                    dout << p << ",,,multiple-root,\n";
                }
            }
        }
    }

    std::cout << "outputs " << outdir.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- report --

struct ReportArgs {
    std::string datum = "bnw";
    int order = 12;
    int n = 3;
    std::string symmetry = "on";
    std::string output_dir = ".";
    int threads = 1;
};

int cmd_report(const ReportArgs& args) {
    ComputeArgs compute;
    compute.datum = args.datum;
    compute.order = args.order;
    compute.n = args.n;
    compute.symmetry = args.symmetry;
    compute.output_dir = args.output_dir;
    compute.threads = args.threads;
    cmd_compute(compute);

    const std::string ckpt = (fs::path(args.output_dir) / "checkpoints").string();
    AnalyzeArgs analyze;
    analyze.checkpoint_dir = ckpt;
    analyze.order = args.order;
    analyze.n = args.n;
    analyze.output_dir = args.output_dir;
    cmd_analyze(analyze);

    PadeArgs pade;
    pade.checkpoint_dir = ckpt;
    pade.order = args.order;
    pade.n = args.n;
    pade.output_dir = args.output_dir;
    cmd_pade(pade);

    const FourierField u0 = load_datum(args.datum);
    const SymmetryProfile profile = detect_symmetries(u0);
    const PresentationReport pres = presentation_report(profile);
    std::cout << "symmetry_order " << pres.group_order << "\n";
    std::cout << "pseudo_symmetry_count " << profile.minus_set.size() << "\n";
    for (const auto& rel : pres.relations)
        std::cout << "relation " << rel.text << (rel.verified ? " verified" : " UNVERIFIED") << "\n";
    std::cout << "report_dir " << args.output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Euler power series on the 3-torus"};
    app.require_subcommand(1);

    ComputeArgs compute;
    auto* sc_compute = app.add_subcommand("compute", "extend the Taylor series, checkpointed");
    sc_compute->add_option("--datum", compute.datum, "'bnw' or a datum file path");
    sc_compute->add_option("--order", compute.order, "target order")->required();
    sc_compute->add_option("--n", compute.n, "Sobolev order for norms.csv")
        ->check(CLI::NonNegativeNumber);
    sc_compute->add_option("--symmetry", compute.symmetry, "on|off")
        ->check(CLI::IsMember({"on", "off"}));
    sc_compute->add_option("--checkpoint-dir", compute.checkpoint_dir, "checkpoint directory");
    sc_compute->add_option("--output-dir", compute.output_dir, "where csv outputs go");
    sc_compute->add_option("--threads", compute.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    AnalyzeArgs analyze;
    auto* sc_analyze = app.add_subcommand("analyze", "norm series, root tests, fits, scans");
    sc_analyze->add_option("--checkpoint-dir", analyze.checkpoint_dir)->required();
    sc_analyze->add_option("--order", analyze.order, "highest order to use (default: all)");
    sc_analyze->add_option("--n", analyze.n)->check(CLI::NonNegativeNumber);
    sc_analyze->add_option("--output-dir", analyze.output_dir);
    sc_analyze->add_option("--scan-t", analyze.scan_t, "scan times (decimal, repeatable)");
    sc_analyze->add_option("--scan-nmin", analyze.scan_nmin);
    sc_analyze->add_option("--scan-nmax", analyze.scan_nmax);
    sc_analyze->add_option("--fit-jmin", analyze.fit_jmin);
    sc_analyze->add_option("--fit-jmax", analyze.fit_jmax);
    sc_analyze->add_option("--fit-step", analyze.fit_step)->check(CLI::PositiveNumber);
    sc_analyze->add_option("--radius-lower", analyze.radius_lower, "working lower bound");
    sc_analyze->add_option("--remainder-t", analyze.remainder_t, "time for the tail bound");
    sc_analyze->add_option("--remainder-order", analyze.remainder_order);

    PadeArgs pade;
    auto* sc_pade = app.add_subcommand("pade", "diagonal approximants, poles, statistics");
    sc_pade->add_option("--checkpoint-dir", pade.checkpoint_dir)->required();
    sc_pade->add_option("--order", pade.order);
    sc_pade->add_option("--n", pade.n)->check(CLI::NonNegativeNumber);
    sc_pade->add_option("--output-dir", pade.output_dir);
    sc_pade->add_option("--diagonal", pade.diagonals, "diagonal order p (repeatable)");
    sc_pade->add_option("--diagonal-max", pade.diagonal_max, "all diagonals up to p");
    sc_pade->add_option("--im-tol", pade.im_tol, "almost-real classification threshold");
    sc_pade->add_flag("--dlog", pade.dlog, "also emit log-derivative exponents");

    ReportArgs report;
    auto* sc_report = app.add_subcommand("report", "compute + analyze + pade with defaults");
    sc_report->add_option("--datum", report.datum);
    sc_report->add_option("--order", report.order);
    sc_report->add_option("--n", report.n)->check(CLI::NonNegativeNumber);
    sc_report->add_option("--symmetry", report.symmetry)->check(CLI::IsMember({"on", "off"}));
    sc_report->add_option("--output-dir", report.output_dir);
    sc_report->add_option("--threads", report.threads)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_compute->parsed()) return cmd_compute(compute);
        if (sc_analyze->parsed()) return cmd_analyze(analyze);
        if (sc_pade->parsed()) return cmd_pade(pade);
        if (sc_report->parsed()) return cmd_report(report);
        return 2;
    } catch (const MissingCheckpoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CheckpointCorrupt& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const FieldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SymmetryInconsistent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const FitDiverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const MultipleRoot& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InsufficientCoefficients& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ZeroLeadingCoefficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
