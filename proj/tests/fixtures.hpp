#pragma once

#include <array>
#include <complex>
#include <cstdlib>
#include <string>
#include <string_view>

#include "eulerps/rational.hpp"

// Reference data for the built-in Behr-Necas-Wu datum, used as test fixtures.

namespace fixtures {

/// Exact rational from scientific notation like "2.825486371143428e11".
inline eulerps::Rational parse_sci_rational(std::string_view s) {
    const auto e = s.find('e');
    if (e == std::string_view::npos) return eulerps::rational_from_decimal(s);
    const eulerps::Rational mantissa = eulerps::rational_from_decimal(s.substr(0, e));
    const long exp10 = std::stol(std::string(s.substr(e + 1)));
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0) return eulerps::Rational(mantissa * eulerps::Rational(pow10));
    return eulerps::Rational(mantissa / eulerps::Rational(pow10));
}

// Exact squared H^3 norms of u_0..u_5.
inline constexpr std::array<std::string_view, 6> kSquaredNormH3Exact = {
    "96",
    "6912",
    "45440",
    "3695360/9",
    "1366793248/675",
    "2243123779689032/186046875",
};

// Exact nu_{3,j} for j = 0,2,4,6,8,10 (odd coefficients vanish).
inline constexpr std::array<std::string_view, 6> kNuH3ExactEven = {
    "96",
    "6656",
    "258304/9",
    "2825587712/14175",
    "52545219363488/496621125",
    "10025320340466597351685768/5627635784943046875",
};

// Exact coefficients of ||u^(5)(t)||^2_3 at t^0, t^2, ..., t^10.
inline constexpr std::array<std::string_view, 6> kNormPolynomialN5Even = {
    "96",
    "6656",
    "258304/9",
    "104566912/525",
    "-9513575648/70875",
    "2243123779689032/186046875",
};

// Published 16-digit values of ||u_j||^2_3 for j = 1..52.
inline constexpr std::array<std::string_view, 52> kSquaredNormH3Table = {
    "6.912000000000000e3",  // j = 1
    "4.544000000000000e4",  // j = 2
    "4.105955555555556e5",  "2.024878885925926e6",  "1.205676676745595e7",
    "8.452219877103332e7",  "6.152775603322622e8",  "4.791192836997696e9",
    "3.628869598772102e10", "2.825486371143428e11", "2.228507964437443e12",
    "1.821213808657725e13", "1.539790191793044e14", "1.341372343677860e15",
    "1.190159209731028e16", "1.066432595016119e17", "9.598519025230687e17",
    "8.662788463495777e18", "7.840631870939454e19", "7.122921654632158e20",
    "6.499436510134908e21", "5.957837347113741e22", "5.485035371335649e23",
    "5.068929708200902e24", "4.699401376031744e25", "4.368534165204974e26",
    "4.070323867244879e27", "3.800202819232687e28", "3.554589555246873e29",
    "3.330557264153261e30", "3.125627141295364e31", "2.937654907691943e32",
    "2.764771414352126e33", "2.605347861791808e34", "2.457968790658826e35",
    "2.321406184470901e36", "2.194593722846032e37", "2.076602420620089e38",
    "1.966618988613002e39", "1.863927582086700e40", "1.767894900465337e41",
    "1.677958174980847e42", "1.593615440091581e43", "1.514417532673484e44",
    "1.439961389630372e45", "1.369884345517744e46", "1.303859232337703e47",
    "1.241590147950303e48", "1.182808795435820e49", "1.127271314453561e50",
    "1.074755536205362e51", "1.025058601409640e52",
};

// Published 16-digit norm-series coefficients nu_{3,j} for even j = 36..52
// (from the degree-104 squared-norm polynomial; signs alternate erratically).
struct NuTail {
    int j;
    double value;
};
inline constexpr std::array<NuTail, 9> kNuH3Tail16 = {{
    {36, 4.789569007452901e12},
    {38, 2.830635227431622e13},
    {40, 4.470168139346678e13},
    {42, -6.910532995061547e14},
    {44, 1.457019276470951e14},
    {46, 9.053007124662626e15},
    {48, -8.939780851014422e15},
    {50, -1.019952729404346e17},
    {52, 1.137772938577812e17},
}};

// Reference diagonal-approximant pole classification: order p, the
// minimum-modulus pole, its modulus, and the closest real/almost-real pole.
struct PoleRow {
    int p;
    std::complex<double> t_min;
    double t_min_modulus;
    std::complex<double> t_real;
};

inline constexpr std::array<PoleRow, 8> kPoleTable = {{
    {12, {0.294020, 0.464361}, 0.549617, {0.626199, 0.0}},
    {14, {0.281333, 0.445002}, 0.526474, {0.656185, 0.0}},
    {16, {0.283300, 0.446498}, 0.528790, {0.661087, 0.0}},
    {18, {0.283081, 0.445859}, 0.528134, {0.660118, 0.0}},
    {20, {0.345307, 0.348713}, 0.490752, {0.621387, 0.047708}},
    {22, {0.350239, 0.350695}, 0.495635, {0.541967, 0.0}},
    {24, {0.349063, 0.350777}, 0.494863, {0.609804, 0.0383530}},
    {26, {0.0714399, 0.508700}, 0.513692, {0.816133, 0.0}},
}};

}  // namespace fixtures
