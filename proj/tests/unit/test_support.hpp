#pragma once

#include <map>
#include <random>
#include <vector>

#include "eulerps/field.hpp"

namespace test_support {

using eulerps::ComplexVec3;
using eulerps::FourierField;
using eulerps::ModeEntry;
using eulerps::Rational;
using eulerps::WaveVector;

// Hand-rolled projection onto the complement of k, kept independent of the
// library implementation for oracle purposes.
inline ComplexVec3 oracle_project(const WaveVector& k, const ComplexVec3& c) {
    const long n2 = k.norm2();
    if (n2 == 0) return c;
    Rational dr, di;
    const int kk[3] = {k.k1, k.k2, k.k3};
    for (int s = 0; s < 3; ++s) {
        dr += c.re[s] * kk[s];
        di += c.im[s] * kk[s];
    }
    ComplexVec3 out = c;
    for (int s = 0; s < 3; ++s) {
        out.re[s] -= dr * kk[s] / n2;
        out.im[s] -= di * kk[s] / n2;
    }
    return out;
}

// Random sparse divergence-free field with conjugate-paired modes, exact
// rational coefficients, support radius <= radius. Deterministic per seed.
inline FourierField random_divergence_free_field(unsigned seed, int radius, int mode_pairs) {
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
        c = oracle_project(k, c);
        if (c.is_zero()) continue;
        modes[k] = c;
        modes[-k] = c.conjugate();
    }
    std::vector<ModeEntry> entries(modes.begin(), modes.end());
    return eulerps::make_field(std::move(entries));
}

// Dense triple-loop convolution oracle for the projected bilinear map:
// iterates every output k in the support box and every h, straight from the
// defining sum, with its own projection.
inline FourierField dense_bilinear_oracle(const FourierField& v, const FourierField& w) {
    const int rv = eulerps::support_radius(v);
    const int rw = eulerps::support_radius(w);
    const int radius = rv + rw;
    std::vector<ModeEntry> out;
    for (int k1 = -radius; k1 <= radius; ++k1)
        for (int k2 = -radius; k2 <= radius; ++k2)
            for (int k3 = -radius; k3 <= radius; ++k3) {
                const WaveVector k{k1, k2, k3};
                if (k.is_zero()) continue;
                ComplexVec3 sum;
                for (int h1 = -rv; h1 <= rv; ++h1)
                    for (int h2 = -rv; h2 <= rv; ++h2)
                        for (int h3 = -rv; h3 <= rv; ++h3) {
                            const WaveVector h{h1, h2, h3};
                            const ComplexVec3* vh = v.find(h);
                            if (vh == nullptr) continue;
                            const WaveVector m{k1 - h1, k2 - h2, k3 - h3};
                            const ComplexVec3* wm = w.find(m);
                            if (wm == nullptr) continue;
                            Rational dr, di;
                            const int mm[3] = {m.k1, m.k2, m.k3};
                            for (int s = 0; s < 3; ++s) {
                                dr += vh->re[s] * mm[s];
                                di += vh->im[s] * mm[s];
                            }
                            for (int s = 0; s < 3; ++s) {
                                sum.re[s] += dr * wm->re[s] - di * wm->im[s];
                                sum.im[s] += dr * wm->im[s] + di * wm->re[s];
                            }
                        }
                ComplexVec3 projected = oracle_project(k, sum);
                // multiply by -i
                ComplexVec3 c;
                for (int s = 0; s < 3; ++s) {
                    c.re[s] = projected.im[s];
                    c.im[s] = -projected.re[s];
                }
                if (!c.is_zero()) out.emplace_back(k, std::move(c));
            }
    return FourierField::from_sorted_unchecked(std::move(out));
}

}  // namespace test_support
