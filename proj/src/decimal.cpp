#include "eulerps/decimal.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace eulerps {

namespace {
// 256 bits ~ 77 decimal digits, comfortably past the required 50.
constexpr mpfr_prec_t kPrec = 256;

struct MpfrValue {
    mpfr_t x;
    MpfrValue() { mpfr_init2(x, kPrec); }
    explicit MpfrValue(const Rational& q) {
        mpfr_init2(x, kPrec);
        mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    }
    ~MpfrValue() { mpfr_clear(x); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
};
}  // namespace

double to_double(const Rational& q) {
    MpfrValue v(q);
    return mpfr_get_d(v.x, MPFR_RNDN);
}

double sqrt_to_double(const Rational& q) {
    if (sgn(q) < 0) throw std::domain_error("sqrt_to_double: negative argument");
    MpfrValue v(q);
    mpfr_sqrt(v.x, v.x, MPFR_RNDN);
    return mpfr_get_d(v.x, MPFR_RNDN);
}

double neg_root_to_double(const Rational& q, unsigned long root) {
    if (sgn(q) <= 0) throw std::domain_error("neg_root_to_double: argument must be positive");
    if (root == 0) throw std::domain_error("neg_root_to_double: zero root");
    // q^(-1/root) = exp(-log(q)/root)
    MpfrValue v(q);
    mpfr_log(v.x, v.x, MPFR_RNDN);
    mpfr_div_ui(v.x, v.x, root, MPFR_RNDN);
    mpfr_neg(v.x, v.x, MPFR_RNDN);
    mpfr_exp(v.x, v.x, MPFR_RNDN);
    return mpfr_get_d(v.x, MPFR_RNDN);
}

std::string format_sci(const Rational& q, int digits) {
    if (sgn(q) == 0) return "0";
    if (digits < 1 || digits > 70) throw std::domain_error("format_sci: digit count out of range");
    MpfrValue v(q);
    char buf[96];
    // RNDN in mpfr is round-half-even.
    mpfr_snprintf(buf, sizeof buf, "%.*RNe", digits - 1, v.x);
    std::string s(buf);
    // Normalize exponent: strip '+' and leading zeros ("e+03" -> "e3").
    auto e = s.find('e');
    if (e == std::string::npos) return s;
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    bool neg = false;
    std::size_t i = 0;
    if (i < exp.size() && (exp[i] == '+' || exp[i] == '-')) {
        neg = exp[i] == '-';
        ++i;
    }
    while (i + 1 < exp.size() && exp[i] == '0') ++i;
    return mant + "e" + (neg ? "-" : "") + exp.substr(i);
}

std::string format_sci16(const Rational& q) { return format_sci(q, 16); }

double round_up_significant(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const double ax = std::abs(x);
    const int mag = static_cast<int>(std::floor(std::log10(ax)));
    const double scale = std::pow(10.0, digits - 1 - mag);
    double r = std::ceil(ax * scale * (1.0 - 1e-13)) / scale;
    return x < 0 ? -r : r;
}

}  // namespace eulerps
