#include "eulerps/symmetry.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace eulerps {

bool OctahedralMatrix::is_identity() const {
    static constexpr std::array<int, 9> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m == id;
}

bool OctahedralMatrix::is_orthogonal() const {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int dot = 0;
            for (int s = 0; s < 3; ++s) dot += at(s, r) * at(s, c);
            if (dot != (r == c ? 1 : 0)) return false;
        }
    return true;
}

OctahedralMatrix OctahedralMatrix::transpose() const {
    OctahedralMatrix t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t.m[3 * r + c] = at(c, r);
    return t;
}

OctahedralMatrix OctahedralMatrix::operator*(const OctahedralMatrix& o) const {
    OctahedralMatrix p;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int v = 0;
            for (int s = 0; s < 3; ++s) v += at(r, s) * o.at(s, c);
            p.m[3 * r + c] = v;
        }
    return p;
}

OctahedralMatrix OctahedralMatrix::negate() const {
    OctahedralMatrix n;
    for (int i = 0; i < 9; ++i) n.m[i] = -m[i];
    return n;
}

WaveVector OctahedralMatrix::apply(const WaveVector& k) const {
    return {at(0, 0) * k.k1 + at(0, 1) * k.k2 + at(0, 2) * k.k3,
            at(1, 0) * k.k1 + at(1, 1) * k.k2 + at(1, 2) * k.k3,
            at(2, 0) * k.k1 + at(2, 1) * k.k2 + at(2, 2) * k.k3};
}

ComplexVec3 OctahedralMatrix::apply(const ComplexVec3& c) const {
    // Signed permutation: each row has exactly one nonzero entry.
    ComplexVec3 out;
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
            const int e = at(r, s);
            if (e == 0) continue;
            out.re[r] = e > 0 ? c.re[s] : Rational(-c.re[s]);
            out.im[r] = e > 0 ? c.im[s] : Rational(-c.im[s]);
        }
    return out;
}

const std::vector<OctahedralMatrix>& octahedral_group() {
    static const std::vector<OctahedralMatrix> table = [] {
        std::vector<OctahedralMatrix> out;
        constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& perm : perms)
            for (int signs = 0; signs < 8; ++signs) {
                OctahedralMatrix s;
                s.m.fill(0);
                for (int r = 0; r < 3; ++r) s.m[3 * r + perm[r]] = (signs >> r) & 1 ? -1 : 1;
                out.push_back(s);
            }
        std::sort(out.begin(), out.end());
        return out;
    }();
    return table;
}

GroupElement group_product(const GroupElement& g1, const GroupElement& g2) {
    GroupElement out;
    out.S = g1.S * g2.S;
    // a1 + S1 a2 on the half-period lattice: row r of S1 picks one component
    // of a2 (the sign is irrelevant since -pi == pi mod 2pi).
    for (int r = 0; r < 3; ++r) {
        int picked = 0;
        for (int c = 0; c < 3; ++c)
            if (g1.S.at(r, c) != 0) picked = g2.a.bits[c];
        out.a.bits[r] = static_cast<std::uint8_t>((g1.a.bits[r] + picked) & 1);
    }
    return out;
}

GroupElement group_inverse(const GroupElement& g) {
    GroupElement inv;
    inv.S = g.S.transpose();
    for (int r = 0; r < 3; ++r) {
        int picked = 0;
        for (int c = 0; c < 3; ++c)
            if (inv.S.at(r, c) != 0) picked = g.a.bits[c];
        inv.a.bits[r] = static_cast<std::uint8_t>(picked);  // -S^T a == S^T a mod 2pi
    }
    return inv;
}

FourierField push_forward(const GroupElement& g, const FourierField& v) {
    std::vector<ModeEntry> out;
    out.reserve(v.size());
    for (const auto& [k, c] : v.modes()) {
        const WaveVector kp = g.S.apply(k);
        ComplexVec3 cp = g.S.apply(c);
        if (g.a.dot_parity(kp) != 0) cp = cp.negate();
        out.emplace_back(kp, std::move(cp));
    }
    std::sort(out.begin(), out.end(),
              [](const ModeEntry& a, const ModeEntry& b) { return a.first < b.first; });
    return FourierField::from_sorted_unchecked(std::move(out));
}

bool SymmetryProfile::has_reflection() const {
    GroupElement refl;
    refl.S = OctahedralMatrix{}.negate();
    return std::find(minus_set.begin(), minus_set.end(), refl) != minus_set.end();
}

namespace {

FourierField negate_field(const FourierField& v) {
    std::vector<ModeEntry> out;
    out.reserve(v.size());
    for (const auto& [k, c] : v.modes()) out.emplace_back(k, c.negate());
    return FourierField::from_sorted_unchecked(std::move(out));
}

void check_closure(const std::vector<GroupElement>& plus, const std::vector<GroupElement>& minus) {
    std::set<GroupElement> plus_set(plus.begin(), plus.end());
    std::set<GroupElement> union_set(plus.begin(), plus.end());
    union_set.insert(minus.begin(), minus.end());
    GroupElement identity;
    if (!plus_set.count(identity)) throw SymmetryInconsistent("symmetry subgroup misses the identity");
    for (const auto& g1 : plus)
        for (const auto& g2 : plus)
            if (!plus_set.count(group_product(g1, g2)))
                throw SymmetryInconsistent("symmetry subgroup not closed under composition");
    for (const auto& g1 : union_set)
        for (const auto& g2 : union_set)
            if (!union_set.count(group_product(g1, g2)))
                throw SymmetryInconsistent("symmetry union not closed under composition");
}

}  // namespace

SymmetryProfile detect_symmetries(const FourierField& u0, int orbit_radius) {
    if (u0.empty()) throw std::invalid_argument("detect_symmetries: empty datum");
    SymmetryProfile profile;
    const FourierField minus_u0 = negate_field(u0);
    for (const auto& S : octahedral_group())
        for (int b = 0; b < 8; ++b) {
            GroupElement g;
            g.S = S;
            g.a.bits = {static_cast<std::uint8_t>((b >> 2) & 1), static_cast<std::uint8_t>((b >> 1) & 1),
                        static_cast<std::uint8_t>(b & 1)};
            const FourierField image = push_forward(g, u0);
            if (image == u0) profile.plus_group.push_back(g);
            if (image == minus_u0) profile.minus_set.push_back(g);
        }
    std::sort(profile.plus_group.begin(), profile.plus_group.end());
    std::sort(profile.minus_set.begin(), profile.minus_set.end());
    check_closure(profile.plus_group, profile.minus_set);

    auto reduce = [](const std::vector<GroupElement>& gs) {
        std::vector<OctahedralMatrix> out;
        for (const auto& g : gs) out.push_back(g.S);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    profile.reduced_plus = reduce(profile.plus_group);
    profile.reduced_minus = reduce(profile.minus_set);
    if (orbit_radius > 0) profile.orbits = decompose_orbits(profile, orbit_radius);
    return profile;
}

OrbitTable decompose_orbits(const SymmetryProfile& profile, int radius) {
    OrbitTable table;
    table.radius = radius;
    if (radius <= 0) return table;

    std::vector<OctahedralMatrix> union_mats = profile.reduced_plus;
    union_mats.insert(union_mats.end(), profile.reduced_minus.begin(), profile.reduced_minus.end());
    std::sort(union_mats.begin(), union_mats.end());
    union_mats.erase(std::unique(union_mats.begin(), union_mats.end()), union_mats.end());

    const int dim = 2 * radius + 1;
    std::vector<char> assigned(static_cast<std::size_t>(dim) * dim * dim, 0);
    auto cell = [&](const WaveVector& k) {
        return (static_cast<std::size_t>(k.k1 + radius) * dim + (k.k2 + radius)) * dim + (k.k3 + radius);
    };

    for (int k1 = -radius; k1 <= radius; ++k1)
        for (int k2 = -radius; k2 <= radius; ++k2)
            for (int k3 = -radius; k3 <= radius; ++k3) {
                const WaveVector rep{k1, k2, k3};
                if (rep.is_zero() || assigned[cell(rep)]) continue;
                // Scanning in canonical order and the max-norm invariance of
                // the action make the first unassigned member the orbit's
                // lexicographic minimum.
                Orbit orbit;
                orbit.representative = rep;
                std::map<WaveVector, OrbitMember> members;
                auto visit = [&](const GroupElement& g, bool from_minus) {
                    if (g.is_identity() && !from_minus) return;
                    const WaveVector k = g.S.apply(rep);
                    OrbitMember member{k, g, g.a.dot_parity(k) != 0 ? -1 : 1, from_minus};
                    if (k == rep) {
                        orbit.stabilizer.push_back(member);
                    } else {
                        members.try_emplace(k, member);  // keep the first mapping element
                    }
                };
                for (const auto& g : profile.plus_group) visit(g, false);
                for (const auto& g : profile.minus_set) visit(g, true);
                for (auto& [k, member] : members) {
                    assigned[cell(k)] = 1;
                    orbit.members.push_back(std::move(member));
                }
                assigned[cell(rep)] = 1;
                table.orbits.push_back(std::move(orbit));
            }
    return table;
}

namespace {

std::string element_text(const GroupElement& g) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 9; ++i) os << (i ? " " : "") << g.S.m[i];
    os << " | " << int(g.a.bits[0]) << int(g.a.bits[1]) << int(g.a.bits[2]) << "]";
    return os.str();
}

std::string matrix_text(const OctahedralMatrix& s) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 9; ++i) os << (i ? " " : "") << s.m[i];
    os << "]";
    return os.str();
}

template <class Element, class Product, class Identity, class Text>
std::vector<Relation> dihedral_relations(const std::vector<Element>& group, Product prod,
                                         Identity is_id, Text text) {
    std::vector<Relation> out;
    if (group.size() <= 1) return out;

    auto order_of = [&](const Element& g) {
        Element acc = g;
        std::size_t n = 1;
        while (!is_id(acc)) {
            acc = prod(acc, g);
            if (++n > group.size()) return std::size_t{0};  // not a group element loop guard
        }
        return n;
    };
    // Generator of maximal order, canonical tie-break.
    const Element* x = nullptr;
    std::size_t xo = 0;
    for (const auto& g : group) {
        const std::size_t o = order_of(g);
        if (o > xo) {
            xo = o;
            x = &g;
        }
    }
    if (x == nullptr || xo == 0) return out;

    std::set<Element> cyclic;
    Element acc = *x;
    for (std::size_t i = 0; i < xo; ++i) {
        cyclic.insert(acc);
        acc = prod(acc, *x);
    }
    if (cyclic.size() == group.size()) {
        out.push_back({text(*x) + "^" + std::to_string(xo) + " = e", true});
        return out;
    }
    if (2 * xo != group.size()) return out;
    for (const auto& y : group) {
        if (cyclic.count(y)) continue;
        if (!is_id(prod(y, y))) continue;
        const Element yx = prod(y, *x);
        if (!is_id(prod(yx, yx))) continue;
        // <x, y> has at least 2*xo elements, which is all of them.
        out.push_back({text(*x) + "^" + std::to_string(xo) + " = e", true});
        out.push_back({text(y) + "^2 = e", true});
        out.push_back({"(" + text(y) + " " + text(*x) + ")^2 = e", true});
        return out;
    }
    return out;
}

}  // namespace

PresentationReport presentation_report(const SymmetryProfile& profile) {
    PresentationReport report;
    report.group_order = profile.plus_group.size();
    report.reduced_order = profile.reduced_plus.size();
    report.relations = dihedral_relations(
        profile.plus_group, [](const GroupElement& a, const GroupElement& b) { return group_product(a, b); },
        [](const GroupElement& g) { return g.is_identity(); }, element_text);
    report.reduced_relations = dihedral_relations(
        profile.reduced_plus, [](const OctahedralMatrix& a, const OctahedralMatrix& b) { return a * b; },
        [](const OctahedralMatrix& s) { return s.is_identity(); }, matrix_text);
    return report;
}

void write_profile(std::ostream& out, const SymmetryProfile& profile) {
    auto dump = [&](const std::vector<GroupElement>& gs, const char* tag) {
        out << "# " << tag << " " << gs.size() << "\n";
        for (const auto& g : gs) {
            for (int i = 0; i < 9; ++i) out << g.S.m[i] << ' ';
            out << int(g.a.bits[0]) << ' ' << int(g.a.bits[1]) << ' ' << int(g.a.bits[2]) << "\n";
        }
    };
    dump(profile.plus_group, "plus");
    dump(profile.minus_set, "minus");
}

}  // namespace eulerps
