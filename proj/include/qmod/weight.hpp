#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "qmod/rational.hpp"

namespace qmod {

// Exact weight k with denominator 1 or 2, stored as 2k.
class Weight {
public:
    Weight(long k) : twice_(2 * k) {} // NOLINT: implicit from integers is intended
    Weight(long num, long den);
    static Weight from_twice(long twice) { return Weight(twice, 2); }
    static Weight parse(std::string_view text);

    Rational value() const { return make_rational(twice_, 2); }
    long twice() const { return twice_; }
    bool integral() const { return twice_ % 2 == 0; }
    bool negative() const { return twice_ < 0; }
    // Requires integral().
    long as_long() const;

    std::string str() const;

    auto operator<=>(const Weight&) const = default;

private:
    long twice_;
};

inline Weight operator+(const Weight& a, long n) { return Weight::from_twice(a.twice() + 2 * n); }
inline Weight operator-(const Weight& a, long n) { return Weight::from_twice(a.twice() - 2 * n); }

} // namespace qmod
