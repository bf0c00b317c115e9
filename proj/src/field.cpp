#include "eulerps/field.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace eulerps {

namespace {

std::string describe(const WaveVector& k) {
    return "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + "," + std::to_string(k.k3) + ")";
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

}  // namespace

bool ComplexVec3::is_zero() const {
    for (int s = 0; s < 3; ++s)
        if (sgn(re[s]) != 0 || sgn(im[s]) != 0) return false;
    return true;
}

ComplexVec3 ComplexVec3::conjugate() const {
    ComplexVec3 out;
    out.re = re;
    for (int s = 0; s < 3; ++s) out.im[s] = -im[s];
    return out;
}

ComplexVec3 ComplexVec3::negate() const {
    ComplexVec3 out;
    for (int s = 0; s < 3; ++s) {
        out.re[s] = -re[s];
        out.im[s] = -im[s];
    }
    return out;
}

FourierField FourierField::validated(std::vector<ModeEntry> entries) {
    // Lowest-terms storage is an invariant; external input may arrive in any
    // representation, and GMP comparisons assume canonical form.
    for (auto& [k, c] : entries)
        for (int s = 0; s < 3; ++s) {
            c.re[s].canonicalize();
            c.im[s].canonicalize();
        }
    // Drop exact zeros first: the contract is "exactly the nonzero entries".
    std::erase_if(entries, [](const ModeEntry& e) { return e.second.is_zero(); });
    std::sort(entries.begin(), entries.end(),
              [](const ModeEntry& a, const ModeEntry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i - 1].first == entries[i].first)
            throw DuplicateMode("duplicate mode at k=" + describe(entries[i].first));
    FourierField f(std::move(entries));
    f.check_invariants();
    return f;
}

FourierField FourierField::from_sorted_unchecked(std::vector<ModeEntry> entries) {
    return FourierField(std::move(entries));
}

const ComplexVec3* FourierField::find(const WaveVector& k) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), k,
                               [](const ModeEntry& e, const WaveVector& key) { return e.first < key; });
    if (it == modes_.end() || it->first != k) return nullptr;
    return &it->second;
}

void FourierField::check_invariants() const {
    for (const auto& [k, c] : modes_) {
        if (k.is_zero()) throw MeanViolation("nonzero coefficient at k=0");
        if (c.is_zero()) throw FieldError("stored zero coefficient at k=" + describe(k));
        const ComplexRational d = dot_with_int(c, k);
        if (!d.is_zero()) throw DivergenceViolation("k.c != 0 at k=" + describe(k));
        const ComplexVec3* partner = find(-k);
        if (partner == nullptr || !(*partner == c.conjugate()))
            throw ConjugacyViolation("coefficient at " + describe(-k) +
                                     " is not the conjugate of the one at " + describe(k));
    }
}

FourierField make_field(std::vector<ModeEntry> entries) {
    return FourierField::validated(std::move(entries));
}

ComplexVec3 leray_project(const WaveVector& k, const ComplexVec3& c) {
    const long n2 = k.norm2();
    if (n2 == 0) return c;
    const ComplexRational d = dot_with_int(c, k);
    if (d.is_zero()) return c;
    ComplexVec3 out = c;
    const Rational fr = Rational(d.re) / n2;
    const Rational fi = Rational(d.im) / n2;
    const int kk[3] = {k.k1, k.k2, k.k3};
    for (int s = 0; s < 3; ++s) {
        if (kk[s] == 0) continue;
        if (sgn(fr) != 0) out.re[s] -= fr * kk[s];
        if (sgn(fi) != 0) out.im[s] -= fi * kk[s];
    }
    return out;
}

FourierField linear_combine(const Rational& alpha, const FourierField& v, const Rational& beta,
                            const FourierField& w) {
    std::vector<ModeEntry> out;
    out.reserve(v.size() + w.size());
    auto scaled = [](const Rational& s, const ComplexVec3& c) {
        ComplexVec3 r;
        for (int i = 0; i < 3; ++i) {
            if (sgn(c.re[i]) != 0) r.re[i] = s * c.re[i];
            if (sgn(c.im[i]) != 0) r.im[i] = s * c.im[i];
        }
        return r;
    };
    auto it = v.modes().begin();
    auto jt = w.modes().begin();
    const bool za = sgn(alpha) == 0;
    const bool zb = sgn(beta) == 0;
    while (it != v.modes().end() || jt != w.modes().end()) {
        if (jt == w.modes().end() || (it != v.modes().end() && it->first < jt->first)) {
            if (!za) out.emplace_back(it->first, scaled(alpha, it->second));
            ++it;
        } else if (it == v.modes().end() || jt->first < it->first) {
            if (!zb) out.emplace_back(jt->first, scaled(beta, jt->second));
            ++jt;
        } else {
            ComplexVec3 c;
            for (int s = 0; s < 3; ++s) {
                if (!za) {
                    c.re[s] = alpha * it->second.re[s];
                    c.im[s] = alpha * it->second.im[s];
                }
                if (!zb) {
                    c.re[s] += beta * jt->second.re[s];
                    c.im[s] += beta * jt->second.im[s];
                }
            }
            if (!c.is_zero()) out.emplace_back(it->first, std::move(c));
            ++it;
            ++jt;
        }
    }
    std::erase_if(out, [](const ModeEntry& e) { return e.second.is_zero(); });
    return FourierField::from_sorted_unchecked(std::move(out));
}

int support_radius(const FourierField& v) {
    int r = 0;
    for (const auto& [k, c] : v.modes()) r = std::max(r, k.max_abs());
    return r;
}

FourierField read_datum(std::istream& in) {
    std::vector<ModeEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        WaveVector k;
        if (!(ls >> k.k1 >> k.k2 >> k.k3)) {
            std::string rest;
            ls.clear();
            if (ls >> rest)
                throw FieldError("datum line " + std::to_string(lineno) + ": cannot parse wavevector");
            continue;  // blank or comment-only line
        }
        ComplexVec3 c;
        std::string tok;
        for (int s = 0; s < 3; ++s) {
            for (Rational* part : {&c.re[s], &c.im[s]}) {
                if (!(ls >> tok))
                    throw FieldError("datum line " + std::to_string(lineno) +
                                     ": expected 6 rationals after the wavevector");
                try {
                    *part = rational_from_string(tok);
                } catch (const std::invalid_argument& e) {
                    throw FieldError("datum line " + std::to_string(lineno) + ": " + e.what());
                }
            }
        }
        std::string extra;
        if (ls >> extra)
            throw FieldError("datum line " + std::to_string(lineno) + ": trailing tokens");
        entries.emplace_back(k, std::move(c));
    }
    return make_field(std::move(entries));
}

FourierField read_datum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FieldError("cannot open datum file: " + path);
    return read_datum(in);
}

}  // namespace eulerps
