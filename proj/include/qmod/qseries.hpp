#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qmod/rational.hpp"

namespace qmod {

// Truncated formal series in q with exact rational coefficients and
// exponents on the grid (1/exp_den)*Z.
//
// Stored entries sit on the arithmetic progression
//     exponent(i) = (lead + i*step) / exp_den,
// every other exponent below trunc/exp_den carries an exact zero, and
// nothing is claimed at or beyond trunc/exp_den. All operations compute
// the tightest trunc justified by their operands; none fabricates
// precision. Values are immutable after construction and safe to share
// across threads.
class QSeries {
public:
    // Zero series with no guaranteed coefficients at all.
    QSeries() : exp_den_(1), lead_(0), step_(1), trunc_(0) {}

    // General constructor; normalizes (trims zeros, compresses the step,
    // reduces the grid). Entries at or beyond trunc are discarded.
    QSeries(long exp_den, long lead, long step, long trunc, std::vector<Rational> coeffs);

    // Zero series exact below trunc_num/exp_den.
    static QSeries zero(long exp_den, long trunc_num);
    // Constant c, exact below q^order.
    static QSeries constant(const Rational& c, long order_q);
    // c * q^{num/den}, exact below trunc_num/den.
    static QSeries monomial(const Rational& c, long num, long den, long trunc_num);
    // Dense step-1 coefficients starting at lead/exp_den.
    static QSeries from_dense(long exp_den, long lead, long trunc, std::vector<Rational> coeffs);

    long exp_den() const { return exp_den_; }
    long lead_exp() const { return lead_; }
    long step() const { return step_; }
    long trunc() const { return trunc_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    Rational lead_coeff() const;
    Rational lead_exponent() const { return make_rational(lead_, exp_den_); }
    Rational trunc_exponent() const { return make_rational(trunc_, exp_den_); }
    Rational exponent_of(std::size_t i) const {
        return make_rational(lead_ + static_cast<long>(i) * step_, exp_den_);
    }

    // Coefficient of q^{num/den}; throws InsufficientPrecision at or
    // beyond the truncation bound, BadInput off the grid.
    Rational coeff(long num, long den = 1) const;
    Rational coeff_q(long n) const { return coeff(n, 1); }

    // Largest integer order such that every exponent < order is exact.
    long order_q() const;

    bool operator==(const QSeries& o) const = default;

    std::string to_string(std::size_t max_terms = 10) const;

private:
    void normalize();

    long exp_den_;
    long lead_;
    long step_;
    long trunc_;
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const QSeries& s);

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries neg(const QSeries& a);
QSeries scale(const Rational& c, const QSeries& a);
QSeries mul(const QSeries& a, const QSeries& b);

// Multiplicative inverse; relative precision of the input is preserved.
// Throws ZeroSeries when no nonzero coefficient exists below trunc.
QSeries inv(const QSeries& a);

QSeries pow_int(const QSeries& a, long e);

// q d/dq: the coefficient of q^e is multiplied by e.
QSeries theta_deriv(const QSeries& a);

// q -> q^m, m >= 1 (expansion of f(m*tau) from f(tau)).
QSeries dilate(const QSeries& a, long m);

// Restrict the guarantee to exponents < trunc_num on a's grid / < order in q.
QSeries truncate(const QSeries& a, long trunc_num);
QSeries truncate_q(const QSeries& a, long order_q);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator-(const QSeries& a) { return neg(a); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

// True when a and b have identical coefficients at every exponent < order_q.
// Throws InsufficientPrecision if either operand is not exact that far.
bool agree_through_q(const QSeries& a, const QSeries& b, long order_q);

} // namespace qmod
