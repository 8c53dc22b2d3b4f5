#pragma once

#include <string>
#include <vector>

#include "qmod/rational.hpp"

namespace qmod {

// Univariate polynomial with exact rational coefficients, index = degree.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyQ one() { return PolyQ({Rational(1)}); }
    static PolyQ x() { return PolyQ({Rational(0), Rational(1)}); }

    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    // True when only degrees congruent to p mod 2 occur.
    bool has_parity(int p) const;

    PolyQ mul_x() const;
    Rational eval(const Rational& x) const;
    std::string str(const std::string& var = "x") const;

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const Rational& c, const PolyQ& a);
    bool operator==(const PolyQ&) const = default;

private:
    void trim() {
        while (!c_.empty() && qmod::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Rational> c_;
};

} // namespace qmod
