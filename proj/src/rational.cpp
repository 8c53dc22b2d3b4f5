#include "qmod/rational.hpp"

#include <climits>

#include "qmod/errors.hpp"

namespace qmod {

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw BadInput("empty rational literal");
    std::string s(text);
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw BadInput("invalid rational literal '" + s + "' (use p or p/q)");
    }
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    if (s.find('/', slash + 1) != std::string::npos)
        throw BadInput("invalid rational literal '" + s + "'");
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw BadInput("zero denominator in '" + s + "'");
    return rational_from_ints(num, den);
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw BadInput("integer out of machine range: " + v.get_str());
    return v.get_si();
}

long to_long(const Rational& r) {
    if (!is_integral(r)) throw BadInput("expected an integer, got " + to_string(r));
    return to_long(r.get_num());
}

} // namespace qmod
