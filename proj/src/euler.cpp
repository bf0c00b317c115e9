#include "eulerps/euler.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace eulerps {

namespace {

// Dense scratch index over the box [-R..R]^3 mapping wavevectors to
// accumulation slots. Rebuilt per order; orders of magnitude cheaper than the
// bignum work it organizes.
class BucketAccumulator {
  public:
    explicit BucketAccumulator(int radius)
        : radius_(radius), dim_(2 * radius + 1),
          slot_(static_cast<std::size_t>(dim_) * dim_ * dim_, -1) {}

    void add(const WaveVector& k, const ComplexRational& s, const ComplexVec3& w) {
        std::int32_t& slot = slot_[cell(k)];
        if (slot < 0) {
            slot = static_cast<std::int32_t>(keys_.size());
            keys_.push_back(k);
            sums_.emplace_back();
        }
        ComplexVec3& acc = sums_[static_cast<std::size_t>(slot)];
        const bool sr = sgn(s.re) != 0;
        const bool si = sgn(s.im) != 0;
        for (int c = 0; c < 3; ++c) {
            const bool wr = sgn(w.re[c]) != 0;
            const bool wi = sgn(w.im[c]) != 0;
            if (sr) {
                if (wr) acc.re[c] += s.re * w.re[c];
                if (wi) acc.im[c] += s.re * w.im[c];
            }
            if (si) {
                if (wi) acc.re[c] -= s.im * w.im[c];
                if (wr) acc.im[c] += s.im * w.re[c];
            }
        }
    }

    std::size_t size() const { return keys_.size(); }
    const std::vector<WaveVector>& keys() const { return keys_; }
    std::vector<ComplexVec3>& sums() { return sums_; }

  private:
    std::size_t cell(const WaveVector& k) const {
        return (static_cast<std::size_t>(k.k1 + radius_) * dim_ + (k.k2 + radius_)) * dim_ +
               (k.k3 + radius_);
    }
    int radius_;
    int dim_;
    std::vector<std::int32_t> slot_;
    std::vector<WaveVector> keys_;
    std::vector<ComplexVec3> sums_;
};

// Representative filter for the orbit-reduced path.
class RepresentativeFilter {
  public:
    RepresentativeFilter(const OrbitTable& table, int radius)
        : radius_(radius), dim_(2 * radius + 1),
          is_rep_(static_cast<std::size_t>(dim_) * dim_ * dim_, 0) {
        for (const auto& orbit : table.orbits)
            if (orbit.representative.max_abs() <= radius) is_rep_[cell(orbit.representative)] = 1;
    }
    bool contains(const WaveVector& k) const { return is_rep_[cell(k)] != 0; }

  private:
    std::size_t cell(const WaveVector& k) const {
        return (static_cast<std::size_t>(k.k1 + radius_) * dim_ + (k.k2 + radius_)) * dim_ +
               (k.k3 + radius_);
    }
    int radius_;
    int dim_;
    std::vector<char> is_rep_;
};

unsigned bucket_hash(const WaveVector& k) {
    const auto h = static_cast<unsigned>(k.k1) * 73856093u ^ static_cast<unsigned>(k.k2) * 19349663u ^
                   static_cast<unsigned>(k.k3) * 83492791u;
    return h;
}

ComplexRational dot_with_int(const ComplexVec3& c, const WaveVector& k) {
    ComplexRational out;
    const int kk[3] = {k.k1, k.k2, k.k3};
    for (int s = 0; s < 3; ++s) {
        if (kk[s] == 0) continue;
        if (sgn(c.re[s]) != 0) out.re += c.re[s] * kk[s];
        if (sgn(c.im[s]) != 0) out.im += c.im[s] * kk[s];
    }
    return out;
}

// Accumulates the convolution pairs of (v, w) into acc, keeping only buckets
// accepted by the filters. Pair order is canonical (v outer, w inner), so
// per-bucket accumulation order is reproducible.
void accumulate_pairs(BucketAccumulator& acc, const FourierField& v, const FourierField& w,
                      const RepresentativeFilter* rep, int thread_id, int threads) {
    for (const auto& [h, vh] : v.modes()) {
        for (const auto& [m, wm] : w.modes()) {
            const WaveVector k = h + m;
            if (k.is_zero()) continue;  // zero-mean convention; see finalize_order
            if (rep != nullptr && !rep->contains(k)) continue;
            if (threads > 1 && bucket_hash(k) % static_cast<unsigned>(threads) !=
                                   static_cast<unsigned>(thread_id))
                continue;
            const ComplexRational d = dot_with_int(vh, m);
            if (d.is_zero()) continue;
            acc.add(k, d, wm);
        }
    }
}

#ifndef NDEBUG
// Debug check backing the discarded k=0 bucket: it must be exactly zero.
void assert_zero_bucket(const FourierField& v, const FourierField& w) {
    ComplexVec3 zero_bucket;
    for (const auto& [h, vh] : v.modes()) {
        const ComplexVec3* wm = w.find(-h);
        if (wm == nullptr) continue;
        const ComplexRational d = dot_with_int(vh, WaveVector{-h.k1, -h.k2, -h.k3});
        for (int c = 0; c < 3; ++c) {
            zero_bucket.re[c] += d.re * wm->re[c] - d.im * wm->im[c];
            zero_bucket.im[c] += d.re * wm->im[c] + d.im * wm->re[c];
        }
    }
    assert(zero_bucket.is_zero());
}
#endif

// Applies -i L_k and the 1/divisor scaling to every accumulated bucket and
// returns the surviving modes, sorted canonically.
std::vector<ModeEntry> finalize_buckets(std::vector<BucketAccumulator>& accs, unsigned long divisor) {
    std::vector<ModeEntry> out;
    for (auto& acc : accs) {
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const WaveVector k = acc.keys()[i];
            ComplexVec3 c = leray_project(k, acc.sums()[i]);
            // -i (a + b i) = b - a i
            std::swap(c.re, c.im);
            for (int s = 0; s < 3; ++s) c.im[s] = -c.im[s];
            if (divisor != 1)
                for (int s = 0; s < 3; ++s) {
                    if (sgn(c.re[s]) != 0) c.re[s] /= divisor;
                    if (sgn(c.im[s]) != 0) c.im[s] /= divisor;
                }
            if (!c.is_zero()) out.emplace_back(k, std::move(c));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ModeEntry& a, const ModeEntry& b) { return a.first < b.first; });
    return out;
}

std::vector<BucketAccumulator> run_convolutions(
    const std::vector<std::pair<const FourierField*, const FourierField*>>& pairs, int radius,
    const RepresentativeFilter* rep, int threads) {
    std::vector<BucketAccumulator> accs;
    accs.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) accs.emplace_back(radius);
    if (threads == 1) {
        for (const auto& [v, w] : pairs) accumulate_pairs(accs[0], *v, *w, rep, 0, 1);
        return accs;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        workers.emplace_back([&, t] {
            for (const auto& [v, w] : pairs) accumulate_pairs(accs[static_cast<std::size_t>(t)], *v, *w, rep, t, threads);
        });
    for (auto& worker : workers) worker.join();
    return accs;
}

// Coefficient transport along an orbit element, Fourier form of the symmetry
// relations: plus elements carry phase * S c, minus elements an extra
// (-1)^(order+1).
ComplexVec3 transport(const OrbitMember& member, const ComplexVec3& c, int order) {
    ComplexVec3 out = member.g.S.apply(c);
    int sign = member.phase;
    if (member.from_minus && order % 2 == 0) sign = -sign;
    if (sign < 0) out = out.negate();
    return out;
}

void check_parity(const FourierField& f, int order) {
    for (const auto& [k, c] : f.modes()) {
        const bool ok = order % 2 == 0 ? c.is_real() : c.is_imaginary();
        if (!ok)
            throw SymmetryInconsistent("coefficient parity violated at order " + std::to_string(order));
    }
}

bool datum_has_reflection(const FourierField& u0) {
    GroupElement refl;
    refl.S = OctahedralMatrix{}.negate();
    const FourierField image = push_forward(refl, u0);
    std::vector<ModeEntry> neg;
    neg.reserve(u0.size());
    for (const auto& [k, c] : u0.modes()) neg.emplace_back(k, c.negate());
    return image == FourierField::from_sorted_unchecked(std::move(neg));
}

}  // namespace

TaylorSeries make_series(std::string datum_id, FourierField datum) {
    TaylorSeries series;
    series.datum_id = std::move(datum_id);
    series.reflection_parity = !datum.empty() && datum_has_reflection(datum);
    series.coefficients.push_back(std::move(datum));
    return series;
}

FourierField bnw_datum() {
    std::vector<ModeEntry> entries;
    const int modes[3][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const int coeffs[3][3] = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
    for (int i = 0; i < 3; ++i) {
        ComplexVec3 c;
        for (int s = 0; s < 3; ++s) c.re[s] = coeffs[i][s];
        const WaveVector k{modes[i][0], modes[i][1], modes[i][2]};
        entries.emplace_back(k, c);
        entries.emplace_back(-k, c);  // real coefficients are their own conjugates
    }
    return make_field(std::move(entries));
}

FourierField bilinear_p(const FourierField& v, const FourierField& w) {
#ifndef NDEBUG
    assert_zero_bucket(v, w);
#endif
    std::vector<std::pair<const FourierField*, const FourierField*>> pairs{{&v, &w}};
    auto accs = run_convolutions(pairs, support_radius(v) + support_radius(w), nullptr, 1);
    auto modes = finalize_buckets(accs, 1);
    FourierField out = FourierField::from_sorted_unchecked(std::move(modes));
    out.check_invariants();
    return out;
}

TaylorSeries taylor_extend(const TaylorSeries& series, int target_order, const ExtendOptions& opts) {
    if (series.coefficients.empty()) throw std::invalid_argument("taylor_extend: series has no datum");
    if (target_order < series.highest_order())
        throw std::invalid_argument("taylor_extend: target below current order");
    const int threads = std::max(1, opts.threads);

    TaylorSeries out = series;
    std::vector<int> radii;
    radii.reserve(static_cast<std::size_t>(target_order) + 1);
    for (const auto& f : out.coefficients) radii.push_back(support_radius(f));

    if (!opts.checkpoint_dir.empty()) {
        // Make the directory self-contained: persist every order already in
        // memory (the datum in particular) so a later resume can start cold.
        for (int j = 0; j <= out.highest_order(); ++j) {
            const auto path =
                std::filesystem::path(opts.checkpoint_dir) / checkpoint_filename(j);
            if (std::filesystem::exists(path)) continue;
            Parity parity = Parity::none;
            if (out.reflection_parity) parity = j % 2 == 0 ? Parity::even_real : Parity::odd_imag;
            write_checkpoint_file(opts.checkpoint_dir, j, out.coefficients[static_cast<std::size_t>(j)],
                                  parity);
        }
    }

    OrbitTable orbit_table;
    if (opts.profile != nullptr) orbit_table = opts.profile->orbits;

    for (int j = out.highest_order() + 1; j <= target_order; ++j) {
        const auto start = std::chrono::steady_clock::now();
        int radius = 1;
        std::vector<std::pair<const FourierField*, const FourierField*>> pairs;
        pairs.reserve(static_cast<std::size_t>(j));
        for (int l = 0; l < j; ++l) {
            pairs.emplace_back(&out.coefficients[static_cast<std::size_t>(l)],
                               &out.coefficients[static_cast<std::size_t>(j - 1 - l)]);
            radius = std::max(radius, radii[static_cast<std::size_t>(l)] +
                                          radii[static_cast<std::size_t>(j - 1 - l)]);
        }

        std::optional<RepresentativeFilter> filter;
        if (opts.profile != nullptr) {
            if (orbit_table.radius < radius)
                orbit_table = decompose_orbits(*opts.profile, radius + 4);
            filter.emplace(orbit_table, radius);
        }

        auto accs = run_convolutions(pairs, radius, filter ? &*filter : nullptr, threads);
        std::vector<ModeEntry> modes = finalize_buckets(accs, static_cast<unsigned long>(j));

        if (opts.profile != nullptr) {
            // Fill whole orbits from their representatives; verify instead of
            // overwrite where a stabilizer constrains the representative.
            FourierField partial = FourierField::from_sorted_unchecked(std::move(modes));
            std::vector<ModeEntry> filled;
            filled.reserve(partial.size() * (opts.profile->plus_group.size() +
                                             opts.profile->minus_set.size()));
            for (const auto& orbit : orbit_table.orbits) {
                if (orbit.representative.max_abs() > radius) continue;
                const ComplexVec3* rep_value = partial.find(orbit.representative);
                if (rep_value == nullptr) continue;
                for (const auto& stab : orbit.stabilizer)
                    if (!(transport(stab, *rep_value, j) == *rep_value))
                        throw SymmetryInconsistent(
                            "stabilizer constraint violated at order " + std::to_string(j) +
                            "; the supplied profile is not a symmetry of this datum");
                filled.emplace_back(orbit.representative, *rep_value);
                for (const auto& member : orbit.members)
                    filled.emplace_back(member.k, transport(member, *rep_value, j));
            }
            std::sort(filled.begin(), filled.end(),
                      [](const ModeEntry& a, const ModeEntry& b) { return a.first < b.first; });
            modes = std::move(filled);
        }

        FourierField uj = FourierField::from_sorted_unchecked(std::move(modes));
        uj.check_invariants();
        if (out.reflection_parity) check_parity(uj, j);
        if (support_radius(uj) > (j + 1) * radii[0])
            throw std::logic_error("support radius bound violated at order " + std::to_string(j));

        radii.push_back(support_radius(uj));
        out.coefficients.push_back(std::move(uj));

        if (!opts.checkpoint_dir.empty()) {
            Parity parity = Parity::none;
            if (out.reflection_parity) parity = j % 2 == 0 ? Parity::even_real : Parity::odd_imag;
            write_checkpoint_file(opts.checkpoint_dir, j, out.coefficients.back(), parity);
        }
        if (opts.progress) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            opts.progress(j, out.coefficients.back().size(), elapsed.count());
        }
    }
    return out;
}

// --- checkpoint files --------------------------------------------------------

std::string checkpoint_filename(int order) { return "u_" + std::to_string(order) + ".coeff"; }

namespace {

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::even_real: return "even-real";
        case Parity::odd_imag: return "odd-imag";
        default: return "none";
    }
}

Parity parity_from_name(const std::string& s) {
    if (s == "even-real") return Parity::even_real;
    if (s == "odd-imag") return Parity::odd_imag;
    if (s == "none") return Parity::none;
    throw CheckpointCorrupt("unknown parity tag '" + s + "'");
}

}  // namespace

std::string render_checkpoint(int order, const FourierField& f, Parity parity) {
    std::ostringstream os;
    os << "order " << order << " modes " << f.size() << " parity " << parity_name(parity) << "\n";
    for (const auto& [k, c] : f.modes()) {
        os << k.k1 << ' ' << k.k2 << ' ' << k.k3;
        for (int s = 0; s < 3; ++s) {
            switch (parity) {
                case Parity::even_real:
                    if (sgn(c.im[s]) != 0) throw SymmetryInconsistent("even-real checkpoint with imaginary part");
                    os << ' ' << rational_to_string(c.re[s]);
                    break;
                case Parity::odd_imag:
                    if (sgn(c.re[s]) != 0) throw SymmetryInconsistent("odd-imag checkpoint with real part");
                    os << ' ' << rational_to_string(c.im[s]);
                    break;
                case Parity::none:
                    os << ' ' << rational_to_string(c.re[s]) << ' ' << rational_to_string(c.im[s]);
                    break;
            }
        }
        os << "\n";
    }
    return os.str();
}

void write_checkpoint_file(const std::string& dir, int order, const FourierField& f, Parity parity) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path final_path = std::filesystem::path(dir) / checkpoint_filename(order);
    const std::filesystem::path tmp_path = final_path.string() + ".tmp";
    {
        std::ofstream outfile(tmp_path, std::ios::binary | std::ios::trunc);
        if (!outfile) throw std::runtime_error("cannot write checkpoint " + final_path.string());
        outfile << render_checkpoint(order, f, parity);
    }
    std::filesystem::rename(tmp_path, final_path);  // completed orders appear atomically
}

FourierField parse_checkpoint(std::istream& in, int expected_order) {
    std::string line;
    if (!std::getline(in, line)) throw CheckpointCorrupt("empty checkpoint");
    std::istringstream header(line);
    std::string kw_order, kw_modes, kw_parity, parity_tag;
    long order = -1, modes = -1;
    if (!(header >> kw_order >> order >> kw_modes >> modes >> kw_parity >> parity_tag) ||
        kw_order != "order" || kw_modes != "modes" || kw_parity != "parity")
        throw CheckpointCorrupt("malformed checkpoint header: " + line);
    if (order != expected_order)
        throw CheckpointCorrupt("checkpoint order " + std::to_string(order) + ", expected " +
                                std::to_string(expected_order));
    if (modes < 0) throw CheckpointCorrupt("negative mode count");
    const Parity parity = parity_from_name(parity_tag);

    auto parse_canonical = [](const std::string& tok) {
        Rational q;
        try {
            q = rational_from_string(tok);
        } catch (const std::invalid_argument& e) {
            throw CheckpointCorrupt(std::string("bad rational: ") + e.what());
        }
        if (rational_to_string(q) != tok)
            throw CheckpointCorrupt("rational '" + tok + "' is not in canonical lowest terms");
        return q;
    };

    std::vector<ModeEntry> entries;
    entries.reserve(static_cast<std::size_t>(modes));
    for (long i = 0; i < modes; ++i) {
        if (!std::getline(in, line)) throw CheckpointCorrupt("truncated checkpoint");
        std::istringstream ls(line);
        WaveVector k;
        if (!(ls >> k.k1 >> k.k2 >> k.k3)) throw CheckpointCorrupt("bad wavevector line: " + line);
        ComplexVec3 c;
        std::string tok;
        for (int s = 0; s < 3; ++s) {
            switch (parity) {
                case Parity::even_real:
                    if (!(ls >> tok)) throw CheckpointCorrupt("short line: " + line);
                    c.re[s] = parse_canonical(tok);
                    break;
                case Parity::odd_imag:
                    if (!(ls >> tok)) throw CheckpointCorrupt("short line: " + line);
                    c.im[s] = parse_canonical(tok);
                    break;
                case Parity::none:
                    if (!(ls >> tok)) throw CheckpointCorrupt("short line: " + line);
                    c.re[s] = parse_canonical(tok);
                    if (!(ls >> tok)) throw CheckpointCorrupt("short line: " + line);
                    c.im[s] = parse_canonical(tok);
                    break;
            }
        }
        std::string extra;
        if (ls >> extra) throw CheckpointCorrupt("trailing tokens: " + line);
        if (!entries.empty() && !(entries.back().first < k))
            throw CheckpointCorrupt("modes out of canonical order");
        if (c.is_zero()) throw CheckpointCorrupt("stored zero coefficient");
        entries.emplace_back(k, std::move(c));
    }
    if (std::getline(in, line) && !line.empty()) throw CheckpointCorrupt("trailing data after modes");

    FourierField f = FourierField::from_sorted_unchecked(std::move(entries));
    try {
        f.check_invariants();
    } catch (const FieldError& e) {
        throw CheckpointCorrupt(std::string("field invariant failed: ") + e.what());
    }
    if (parity != Parity::none) {
        const bool want_real = parity == Parity::even_real;
        if ((expected_order % 2 == 0) != want_real)
            throw CheckpointCorrupt("parity tag inconsistent with order");
    }
    return f;
}

FourierField load_checkpoint_file(const std::string& path, int expected_order) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingCheckpoint("missing checkpoint: " + path);
    return parse_checkpoint(in, expected_order);
}

int last_checkpoint_order(const std::string& dir) {
    int last = -1;
    while (std::filesystem::exists(std::filesystem::path(dir) / checkpoint_filename(last + 1))) ++last;
    return last;
}

TaylorSeries load_series_from_checkpoints(const std::string& dir, const std::string& datum_id,
                                          int max_order) {
    TaylorSeries series;
    series.datum_id = datum_id;
    for (int j = 0; j <= max_order; ++j) {
        const auto path = std::filesystem::path(dir) / checkpoint_filename(j);
        if (!std::filesystem::exists(path))
            throw MissingCheckpoint("missing checkpoint: " + path.string());
        series.coefficients.push_back(load_checkpoint_file(path.string(), j));
    }
    if (!series.coefficients.empty())
        series.reflection_parity = datum_has_reflection(series.coefficients.front());
    return series;
}

}  // namespace eulerps
