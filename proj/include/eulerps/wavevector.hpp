#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>

namespace eulerps {

/// Integer lattice wavevector on the 3-torus. The defaulted comparison is
/// lexicographic in (k1,k2,k3); that order is the canonical one used for
/// container iteration and every serialized output.
struct WaveVector {
    int k1 = 0;
    int k2 = 0;
    int k3 = 0;

    auto operator<=>(const WaveVector&) const = default;

    WaveVector operator+(const WaveVector& o) const { return {k1 + o.k1, k2 + o.k2, k3 + o.k3}; }
    WaveVector operator-() const { return {-k1, -k2, -k3}; }
    bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }

    /// |k|^2 as an exact integer.
    long norm2() const {
        return static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2 + static_cast<long>(k3) * k3;
    }
    /// max-norm; supports add under convolution, so this bounds growth.
    int max_abs() const {
        int m = std::abs(k1);
        if (std::abs(k2) > m) m = std::abs(k2);
        if (std::abs(k3) > m) m = std::abs(k3);
        return m;
    }
};

}  // namespace eulerps
