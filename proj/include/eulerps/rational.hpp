#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace eulerps {

/// Exact rational scalar. GMP keeps values canonical: lowest terms,
/// strictly positive denominator.
using Rational = mpq_class;

struct ComplexRational {
    Rational re;
    Rational im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
};

/// Parses "num/den" or a bare integer (optional sign). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational rational_from_string(std::string_view s);

/// Parses a plain decimal literal like "0.32" or "-1.5" into the exact
/// rational it denotes (32/100 -> 8/25).
Rational rational_from_decimal(std::string_view s);

/// "num/den", or just "num" when the denominator is 1.
std::string rational_to_string(const Rational& q);

inline Rational rational_from_string(std::string_view s) {
    const std::string text(s);
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class num(text, 10);
            return Rational(num);
        }
        mpz_class num(text.substr(0, slash), 10);
        mpz_class den(text.substr(slash + 1), 10);
        if (sgn(den) == 0) throw std::invalid_argument("rational: zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    }
}

inline Rational rational_from_decimal(std::string_view s) {
    std::string digits;
    digits.reserve(s.size());
    long frac_digits = -1;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') digits.push_back('-');
        ++i;
    }
    bool any = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.') {
            if (frac_digits >= 0) throw std::invalid_argument("decimal: repeated point");
            frac_digits = 0;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (frac_digits >= 0) ++frac_digits;
            any = true;
        } else {
            throw std::invalid_argument(std::string("decimal: stray character in '") + std::string(s) + "'");
        }
    }
    if (!any) throw std::invalid_argument("decimal: no digits");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits < 0 ? 0 : static_cast<unsigned long>(frac_digits));
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace eulerps
