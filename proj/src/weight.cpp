#include "qmod/weight.hpp"

#include "qmod/errors.hpp"

namespace qmod {

Weight::Weight(long num, long den) {
    if (den == 1) {
        twice_ = 2 * num;
    } else if (den == 2) {
        twice_ = num;
    } else if (den == -1 || den == -2) {
        *this = Weight(-num, -den);
    } else {
        throw BadInput("weight denominator must be 1 or 2, got " + std::to_string(den));
    }
}

Weight Weight::parse(std::string_view text) {
    Rational r = parse_rational(text);
    if (r.get_den() != 1 && r.get_den() != 2)
        throw BadInput("weight must be an integer or a half-integer, got " + to_string(r));
    long num = to_long(r.get_num());
    return Weight(num, static_cast<long>(r.get_den().get_si()));
}

long Weight::as_long() const {
    if (!integral()) throw BadInput("weight " + str() + " is not an integer");
    return twice_ / 2;
}

std::string Weight::str() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

} // namespace qmod
