#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qmod {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_ints(const Int& num, const Int& den) {
    Rational r;
    mpz_set(mpq_numref(r.get_mpq_t()), num.get_mpz_t());
    mpz_set(mpq_denref(r.get_mpq_t()), den.get_mpz_t());
    r.canonicalize();
    return r;
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    return rational_from_ints(Int(num), Int(den));
}

// Accepts "p" or "p/q" with optional leading sign; no decimal points.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r); // "p" or "p/q"

inline std::string num_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string den_string(const Rational& r) { return r.get_den().get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

// Throws BadInput if the value does not fit in a long.
long to_long(const Int& v);
long to_long(const Rational& r); // requires integral

} // namespace qmod
