#include "qmod/polyq.hpp"

#include <sstream>

namespace qmod {

bool PolyQ::has_parity(int p) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!qmod::is_zero(c_[i]) && (static_cast<int>(i) - p) % 2 != 0) return false;
    return true;
}

PolyQ PolyQ::mul_x() const {
    if (is_zero()) return PolyQ();
    std::vector<Rational> out(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i];
    return PolyQ(std::move(out));
}

Rational PolyQ::eval(const Rational& x) const {
    Rational r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (qmod::is_zero(c)) continue;
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << to_string(a);
        } else {
            if (a != 1) os << to_string(a) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.c_.size()) out[i] += a.c_[i];
        if (i < b.c_.size()) out[i] += b.c_[i];
    }
    return PolyQ(std::move(out));
}

PolyQ operator*(const Rational& c, const PolyQ& a) {
    std::vector<Rational> out(a.c_);
    for (auto& x : out) x *= c;
    return PolyQ(std::move(out));
}

} // namespace qmod
