#include <doctest.h>

#include <sstream>

#include "eulerps/euler.hpp"
#include "eulerps/field.hpp"
#include "test_support.hpp"

using namespace eulerps;

namespace {

ComplexVec3 real_vec(int x, int y, int z) {
    ComplexVec3 c;
    c.re = {Rational(x), Rational(y), Rational(z)};
    return c;
}

}  // namespace

TEST_CASE("make_field: empty input gives the zero field") {
    const FourierField f = make_field({});
    CHECK(f.empty());
    CHECK(support_radius(f) == 0);
}

TEST_CASE("make_field: the built-in datum has six modes") {
    const FourierField f = bnw_datum();
    CHECK(f.size() == 6);
    CHECK(support_radius(f) == 1);
}

TEST_CASE("make_field: divergence violation is rejected") {
    // (1,1,0).(1,0,0) = 1 != 0
    std::vector<ModeEntry> entries{{WaveVector{1, 1, 0}, real_vec(1, 0, 0)},
                                   {WaveVector{-1, -1, 0}, real_vec(1, 0, 0)}};
    CHECK_THROWS_AS(make_field(entries), DivergenceViolation);
}

TEST_CASE("make_field: entry at k=0 is rejected") {
    std::vector<ModeEntry> entries{{WaveVector{0, 0, 0}, real_vec(1, 0, 0)}};
    CHECK_THROWS_AS(make_field(entries), MeanViolation);
}

TEST_CASE("make_field: missing conjugate partner is rejected, no silent completion") {
    std::vector<ModeEntry> entries{{WaveVector{1, 1, 0}, real_vec(1, -1, 0)}};
    CHECK_THROWS_AS(make_field(entries), ConjugacyViolation);
}

TEST_CASE("make_field: wrong conjugate value is rejected") {
    ComplexVec3 c;
    c.re = {Rational(1), Rational(-1), Rational(0)};
    c.im = {Rational(0), Rational(0), Rational(1)};
    ComplexVec3 not_conj = c;  // should be conjugated at -k
    std::vector<ModeEntry> entries{{WaveVector{1, 1, 0}, c}, {WaveVector{-1, -1, 0}, not_conj}};
    CHECK_THROWS_AS(make_field(entries), ConjugacyViolation);
}

TEST_CASE("make_field: duplicate mode is rejected") {
    std::vector<ModeEntry> entries{{WaveVector{1, 1, 0}, real_vec(1, -1, 0)},
                                   {WaveVector{1, 1, 0}, real_vec(1, -1, 0)},
                                   {WaveVector{-1, -1, 0}, real_vec(1, -1, 0)}};
    CHECK_THROWS_AS(make_field(entries), DuplicateMode);
}

TEST_CASE("make_field: zero coefficients are dropped") {
    std::vector<ModeEntry> entries{{WaveVector{1, 1, 0}, real_vec(1, -1, 0)},
                                   {WaveVector{-1, -1, 0}, real_vec(1, -1, 0)},
                                   {WaveVector{2, 0, 0}, ComplexVec3{}}};
    const FourierField f = make_field(entries);
    CHECK(f.size() == 2);
    CHECK(f.find(WaveVector{2, 0, 0}) == nullptr);
}

TEST_CASE("leray_project annihilates the wavevector direction") {
    const ComplexVec3 c = leray_project(WaveVector{1, 2, 3}, real_vec(1, 2, 3));
    CHECK(c.is_zero());
}

TEST_CASE("leray_project is the identity at k=0") {
    const ComplexVec3 c = leray_project(WaveVector{0, 0, 0}, real_vec(5, 0, 0));
    CHECK(c.re[0] == 5);
    CHECK(c.re[1] == 0);
    CHECK(c.re[2] == 0);
}

TEST_CASE("leray_project hand-checked value") {
    const ComplexVec3 c = leray_project(WaveVector{1, 1, 0}, real_vec(1, 0, 0));
    CHECK(c.re[0] == Rational(1, 2));
    CHECK(c.re[1] == Rational(-1, 2));
    CHECK(c.re[2] == 0);
    CHECK(c.is_real());
}

TEST_CASE("linear_combine: exact cancellation empties the field") {
    const FourierField v = bnw_datum();
    const FourierField diff = linear_combine(1, v, -1, v);
    CHECK(diff.empty());
}

TEST_CASE("linear_combine: identity") {
    const FourierField v = bnw_datum();
    CHECK(linear_combine(1, v, 0, FourierField{}) == v);
}

TEST_CASE("linear_combine: scaled disjoint supports recompute exactly") {
    std::vector<ModeEntry> a{{WaveVector{1, 1, 0}, real_vec(1, -1, 0)},
                             {WaveVector{-1, -1, 0}, real_vec(1, -1, 0)}};
    std::vector<ModeEntry> b{{WaveVector{1, 0, 1}, real_vec(1, 0, -1)},
                             {WaveVector{-1, 0, -1}, real_vec(1, 0, -1)}};
    const FourierField combined = linear_combine(2, make_field(a), 3, make_field(b));
    CHECK(combined.size() == 4);
    CHECK(combined.find(WaveVector{1, 1, 0})->re[0] == 2);
    CHECK(combined.find(WaveVector{1, 1, 0})->re[1] == -2);
    CHECK(combined.find(WaveVector{1, 0, 1})->re[0] == 3);
    CHECK(combined.find(WaveVector{1, 0, 1})->re[2] == -3);
    combined.check_invariants();
}

TEST_CASE("linear_combine keeps every invariant on random fields") {
    for (unsigned seed = 1; seed <= 8; ++seed) {
        const FourierField v = test_support::random_divergence_free_field(seed, 2, 3);
        const FourierField w = test_support::random_divergence_free_field(seed + 100, 2, 3);
        const FourierField out = linear_combine(Rational(3, 7), v, Rational(-2, 5), w);
        out.check_invariants();
        CHECK(support_radius(out) <= std::max(support_radius(v), support_radius(w)));
        for (const auto& [k, c] : out.modes()) {
            CHECK(c.re[0].get_num() == c.re[0].get_num());  // canonical access works
            // lowest terms: gcd(num, den) == 1 for every component
            for (int s = 0; s < 3; ++s) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), c.re[s].get_num().get_mpz_t(), c.re[s].get_den().get_mpz_t());
                CHECK(g == 1);
                CHECK(sgn(c.re[s].get_den()) > 0);
            }
        }
    }
}

TEST_CASE("support_radius: examples") {
    CHECK(support_radius(FourierField{}) == 0);
    CHECK(support_radius(bnw_datum()) == 1);
    ComplexVec3 c;
    c.re = {Rational(1), Rational(1), Rational(1)};
    const ComplexVec3 proj = leray_project(WaveVector{3, -2, 1}, c);
    const FourierField f = make_field({{WaveVector{3, -2, 1}, proj},
                                       {WaveVector{-3, 2, -1}, proj.conjugate()}});
    CHECK(support_radius(f) == 3);
}

TEST_CASE("datum file: parse, validate, and reject defects") {
    const char* good =
        "# sample datum\n"
        "1 1 0   1 0  -1 0  0 0\n"
        "-1 -1 0 1 0  -1 0  0 0\n"
        "\n"
        "0 1 1   0 0  1/2 0  -1/2 0\n"
        "0 -1 -1 0 0  1/2 0  -1/2 0\n";
    std::istringstream in(good);
    const FourierField f = read_datum(in);
    CHECK(f.size() == 4);
    CHECK(f.find(WaveVector{0, 1, 1})->re[1] == Rational(1, 2));

    std::istringstream missing_pair("1 1 0 1 0 -1 0 0 0\n");
    CHECK_THROWS_AS(read_datum(missing_pair), ConjugacyViolation);

    std::istringstream bad_token("1 1 0 1 0 x 0 0 0\n-1 -1 0 1 0 x 0 0 0\n");
    CHECK_THROWS_AS(read_datum(bad_token), FieldError);

    std::istringstream short_line("1 1 0 1 0\n");
    CHECK_THROWS_AS(read_datum(short_line), FieldError);
}
