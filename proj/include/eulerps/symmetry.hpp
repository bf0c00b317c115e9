#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eulerps/field.hpp"

namespace eulerps {

struct SymmetryInconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signed permutation matrix: orthogonal 3x3 with integer entries, so every
/// entry is -1, 0 or 1. Row-major storage.
struct OctahedralMatrix {
    std::array<int, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    auto operator<=>(const OctahedralMatrix&) const = default;

    int at(int r, int c) const { return m[3 * r + c]; }
    bool is_identity() const;
    bool is_orthogonal() const;  // S^T S == 1, exact integer check
    OctahedralMatrix transpose() const;
    OctahedralMatrix operator*(const OctahedralMatrix& o) const;
    OctahedralMatrix negate() const;
    WaveVector apply(const WaveVector& k) const;
    ComplexVec3 apply(const ComplexVec3& c) const;
};

/// Translation by (b1,b2,b3)*pi on the torus, stored as bits.
struct HalfPeriodTranslation {
    std::array<std::uint8_t, 3> bits{0, 0, 0};

    auto operator<=>(const HalfPeriodTranslation&) const = default;

    bool is_zero() const { return bits[0] == 0 && bits[1] == 0 && bits[2] == 0; }
    /// Parity of a.k / pi; the phase e^{-i a.k} is (-1)^parity.
    int dot_parity(const WaveVector& k) const {
        return ((bits[0] & k.k1) ^ (bits[1] & k.k2) ^ (bits[2] & k.k3)) & 1;
    }
};

/// Rototranslation (S, a) with the composition (S,a)(U,b) = (SU, a + Sb).
struct GroupElement {
    OctahedralMatrix S;
    HalfPeriodTranslation a;

    auto operator<=>(const GroupElement&) const = default;
    bool is_identity() const { return S.is_identity() && a.is_zero(); }
};

/// All 48 octahedral matrices, in canonical (lexicographic entry) order.
const std::vector<OctahedralMatrix>& octahedral_group();

GroupElement group_product(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inverse(const GroupElement& g);

/// Coefficient action (E(S,a) v)_k = e^{-i a.k} S v_{S^T k}. Half-period
/// translations make the phase exactly +-1, so the result stays rational.
FourierField push_forward(const GroupElement& g, const FourierField& v);

/// One wavevector orbit under the reduced union group, with everything the
/// recursion needs to rebuild the full coefficient set from the
/// representative: per member, a group element mapping representative to
/// member, its phase at the member, and whether it came from the
/// pseudo-symmetry set (which contributes an extra (-1)^(j+1) at order j).
struct OrbitMember {
    WaveVector k;
    GroupElement g;
    int phase = 1;  // e^{-i a.k} in {+1,-1}
    bool from_minus = false;
};

struct Orbit {
    WaveVector representative;
    std::vector<OrbitMember> members;     // excludes the representative itself
    std::vector<OrbitMember> stabilizer;  // non-identity elements fixing the representative
};

struct OrbitTable {
    int radius = 0;
    std::vector<Orbit> orbits;  // ordered by representative
};

struct SymmetryProfile {
    std::vector<GroupElement> plus_group;  // H(u0): push_forward(g, u0) == u0
    std::vector<GroupElement> minus_set;   // H^-(u0): push_forward(g, u0) == -u0
    std::vector<OctahedralMatrix> reduced_plus;
    std::vector<OctahedralMatrix> reduced_minus;
    OrbitTable orbits;

    /// True when (-1, 0) is a pseudo-symmetry; real data then have real
    /// coefficients at even orders and imaginary ones at odd orders.
    bool has_reflection() const;
    bool minus_nonempty() const { return !minus_set.empty(); }
};

/// Scans all 48*8 candidate rototranslations with half-period translations
/// and classifies them against u0; builds the orbit decomposition of the
/// wavevector ball of the requested radius under the reduced union group.
SymmetryProfile detect_symmetries(const FourierField& u0, int orbit_radius = 0);

/// Orbit decomposition of the max-norm ball of the given radius (k = 0
/// excluded) under the profile's groups. Representatives are the
/// lexicographically smallest orbit members.
OrbitTable decompose_orbits(const SymmetryProfile& profile, int radius);

struct Relation {
    std::string text;
    bool verified = false;
};

struct PresentationReport {
    std::size_t group_order = 0;
    std::size_t reduced_order = 0;
    std::vector<Relation> relations;          // for the full plus group
    std::vector<Relation> reduced_relations;  // for the reduced plus group
};

/// Searches for a dihedral generator pair (x of maximal order, an
/// involution y with (yx)^2 = e generating the rest) and verifies the
/// relations; reports group orders either way.
PresentationReport presentation_report(const SymmetryProfile& profile);

/// Profile dump: one line per element, 9 matrix entries then 3 translation
/// bits, plus group first, canonical order.
void write_profile(std::ostream& out, const SymmetryProfile& profile);

}  // namespace eulerps
