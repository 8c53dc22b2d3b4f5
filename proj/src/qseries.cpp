#include "qmod/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qmod/errors.hpp"

namespace qmod {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// Number of lattice points lead + i*step in [lead, trunc).
long slot_count(long lead, long step, long trunc) {
    if (trunc <= lead) return 0;
    return (trunc - lead + step - 1) / step;
}

} // namespace

QSeries::QSeries(long exp_den, long lead, long step, long trunc, std::vector<Rational> coeffs)
    : exp_den_(exp_den), lead_(lead), step_(step), trunc_(trunc), coeffs_(std::move(coeffs)) {
    if (exp_den_ < 1) throw BadInput("exp_den must be positive");
    if (step_ < 1) throw BadInput("step must be positive");
    normalize();
}

QSeries QSeries::zero(long exp_den, long trunc_num) {
    return QSeries(exp_den, trunc_num, 1, trunc_num, {});
}

QSeries QSeries::constant(const Rational& c, long order_q) {
    return QSeries(1, 0, 1, order_q, {c});
}

QSeries QSeries::monomial(const Rational& c, long num, long den, long trunc_num) {
    return QSeries(den, num, 1, trunc_num, {c});
}

QSeries QSeries::from_dense(long exp_den, long lead, long trunc, std::vector<Rational> coeffs) {
    return QSeries(exp_den, lead, 1, trunc, std::move(coeffs));
}

void QSeries::normalize() {
    for (;;) {
        // Discard entries at or beyond trunc.
        long keep = slot_count(lead_, step_, trunc_);
        if (static_cast<long>(coeffs_.size()) > keep)
            coeffs_.resize(static_cast<std::size_t>(std::max(0L, keep)));

        // Trim zero boundary entries.
        std::size_t lo = 0;
        while (lo < coeffs_.size() && qmod::is_zero(coeffs_[lo])) ++lo;
        if (lo == coeffs_.size()) {
            coeffs_.clear();
            lead_ = trunc_;
            step_ = 1;
            long g = std::gcd(exp_den_, lead_);
            if (g == 0) g = exp_den_;
            exp_den_ /= g;
            lead_ /= g;
            trunc_ = lead_;
            return;
        }
        std::size_t hi = coeffs_.size();
        while (hi > lo && qmod::is_zero(coeffs_[hi - 1])) --hi;
        if (lo > 0 || hi < coeffs_.size()) {
            coeffs_ = std::vector<Rational>(coeffs_.begin() + lo, coeffs_.begin() + hi);
            lead_ += static_cast<long>(lo) * step_;
        }
        // Compress to the coarsest uniform step supported by the nonzero entries.
        if (coeffs_.size() == 1) {
            step_ = 1;
        } else {
            long g0 = 0;
            for (std::size_t i = 1; i < coeffs_.size(); ++i)
                if (!qmod::is_zero(coeffs_[i])) g0 = std::gcd(g0, static_cast<long>(i));
            if (g0 > 1) {
                std::vector<Rational> packed;
                packed.reserve(coeffs_.size() / g0 + 1);
                for (std::size_t i = 0; i < coeffs_.size(); i += g0)
                    packed.push_back(coeffs_[i]);
                coeffs_ = std::move(packed);
                step_ *= g0;
            }
        }

        // Reduce the exponent grid. lead and step divide exactly; trunc is
        // floored (giving up a sub-step of guarantee rather than claiming
        // coefficients the operands never justified).
        long g = std::gcd(exp_den_, std::gcd(lead_, step_));
        if (g <= 1) return;
        exp_den_ /= g;
        lead_ /= g;
        step_ /= g;
        long t = trunc_;
        trunc_ = (t >= 0) ? t / g : -((-t + g - 1) / g);
        if (trunc_ * g == t) return;
        // flooring may leave a stored entry at/beyond trunc; re-trim
    }
}

Rational QSeries::lead_coeff() const {
    if (coeffs_.empty()) return Rational(0);
    return coeffs_.front();
}

Rational QSeries::coeff(long num, long den) const {
    if (den < 1) throw BadInput("coeff: denominator must be positive");
    // exponent num/den on grid 1/exp_den_: numerator num*exp_den_/den
    long long scaled = static_cast<long long>(num) * exp_den_;
    if (scaled % den != 0) throw BadInput("coeff: exponent off the series grid");
    long e = static_cast<long>(scaled / den);
    if (e >= trunc_)
        throw InsufficientPrecision("coefficient of q^" + std::to_string(num) +
                                    (den == 1 ? "" : "/" + std::to_string(den)) +
                                    " is beyond the truncation bound");
    if (e < lead_) return Rational(0);
    long off = e - lead_;
    if (off % step_ != 0) return Rational(0);
    std::size_t i = static_cast<std::size_t>(off / step_);
    if (i >= coeffs_.size()) return Rational(0);
    return coeffs_[i];
}

long QSeries::order_q() const {
    // floor division toward minus infinity
    long t = trunc_;
    if (t >= 0) return t / exp_den_;
    return -((-t + exp_den_ - 1) / exp_den_);
}

std::string QSeries::to_string(std::size_t max_terms) const {
    std::ostringstream os;
    if (coeffs_.empty()) {
        os << "0 + O(q^" << qmod::to_string(trunc_exponent()) << ")";
        return os.str();
    }
    std::size_t shown = 0;
    for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
        if (qmod::is_zero(coeffs_[i])) continue;
        const Rational& c = coeffs_[i];
        if (shown == 0) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        Rational a = abs(c);
        long num = lead_ + static_cast<long>(i) * step_;
        if (num == 0) {
            os << qmod::to_string(a);
        } else {
            if (a != 1) os << qmod::to_string(a) << "*";
            os << "q";
            if (!(num == 1 && exp_den_ == 1)) {
                os << "^";
                if (exp_den_ == 1)
                    os << num;
                else
                    os << "(" << num << "/" << exp_den_ << ")";
            }
        }
        ++shown;
    }
    os << " + O(q^" << qmod::to_string(trunc_exponent()) << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.to_string(); }

namespace {

struct Aligned {
    long den;
    long lead_a, step_a, trunc_a;
    long lead_b, step_b, trunc_b;
};

Aligned align(const QSeries& a, const QSeries& b) {
    Aligned r;
    r.den = lcm_long(a.exp_den(), b.exp_den());
    long fa = r.den / a.exp_den();
    long fb = r.den / b.exp_den();
    r.lead_a = a.lead_exp() * fa;
    r.step_a = a.step() * fa;
    r.trunc_a = a.trunc() * fa;
    r.lead_b = b.lead_exp() * fb;
    r.step_b = b.step() * fb;
    r.trunc_b = b.trunc() * fb;
    return r;
}

} // namespace

QSeries add(const QSeries& a, const QSeries& b) {
    Aligned g = align(a, b);
    long trunc = std::min(g.trunc_a, g.trunc_b);
    if (a.is_zero() && b.is_zero()) return QSeries::zero(g.den, trunc);
    if (a.is_zero()) return QSeries(g.den, g.lead_b, g.step_b, trunc, b.coeffs());
    if (b.is_zero()) return QSeries(g.den, g.lead_a, g.step_a, trunc, a.coeffs());

    long lead = std::min(g.lead_a, g.lead_b);
    long step = std::gcd(std::gcd(g.step_a, g.step_b), std::abs(g.lead_a - g.lead_b));
    if (step == 0) step = g.step_a;
    long n = slot_count(lead, step, trunc);
    std::vector<Rational> out(static_cast<std::size_t>(std::max(0L, n)));
    auto scatter = [&](const std::vector<Rational>& cs, long l, long s) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            long e = l + static_cast<long>(i) * s;
            if (e >= trunc) break;
            out[static_cast<std::size_t>((e - lead) / step)] += cs[i];
        }
    };
    scatter(a.coeffs(), g.lead_a, g.step_a);
    scatter(b.coeffs(), g.lead_b, g.step_b);
    return QSeries(g.den, lead, step, trunc, std::move(out));
}

QSeries neg(const QSeries& a) {
    std::vector<Rational> cs(a.coeffs());
    for (auto& c : cs) c = -c;
    return QSeries(a.exp_den(), a.lead_exp(), a.step(), a.trunc(), std::move(cs));
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, neg(b)); }

QSeries scale(const Rational& c, const QSeries& a) {
    if (is_zero(c)) return QSeries::zero(a.exp_den(), a.trunc());
    std::vector<Rational> cs(a.coeffs());
    for (auto& x : cs) x *= c;
    return QSeries(a.exp_den(), a.lead_exp(), a.step(), a.trunc(), std::move(cs));
}

QSeries mul(const QSeries& a, const QSeries& b) {
    Aligned g = align(a, b);
    // Justified bound: everything below min(Ta + Lb, Tb + La) is determined.
    long trunc = std::min(g.trunc_a + g.lead_b, g.trunc_b + g.lead_a);
    if (a.is_zero() || b.is_zero()) return QSeries::zero(g.den, trunc);

    long lead = g.lead_a + g.lead_b;
    long step = std::gcd(g.step_a, g.step_b);
    long n = slot_count(lead, step, trunc);
    if (n <= 0) return QSeries::zero(g.den, trunc);
    std::vector<Rational> out(static_cast<std::size_t>(n));
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    Rational t;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (is_zero(ca[i])) continue;
        long ea = g.lead_a + static_cast<long>(i) * g.step_a;
        long rel = ea + g.lead_b - lead; // offset of (i, j=0) term
        if (rel >= trunc - lead) break;
        long jmax = (trunc - lead - rel + g.step_b - 1) / g.step_b;
        std::size_t jl = std::min(cb.size(), static_cast<std::size_t>(jmax));
        for (std::size_t j = 0; j < jl; ++j) {
            if (is_zero(cb[j])) continue;
            t = ca[i] * cb[j];
            out[static_cast<std::size_t>((rel + static_cast<long>(j) * g.step_b) / step)] += t;
        }
    }
    return QSeries(g.den, lead, step, trunc, std::move(out));
}

QSeries inv(const QSeries& a) {
    if (a.is_zero()) throw ZeroSeries("cannot invert a series with no nonzero coefficient below trunc");
    long rel = a.trunc() - a.lead_exp(); // relative precision in grid units
    long step = a.step();
    long m = slot_count(0, step, rel);
    const auto& ca = a.coeffs();
    const Rational a0 = ca.front();
    std::vector<Rational> out(static_cast<std::size_t>(m));
    out[0] = 1 / a0;
    Rational acc;
    for (long i = 1; i < m; ++i) {
        acc = 0;
        std::size_t jl = std::min(static_cast<std::size_t>(i + 1), ca.size());
        for (std::size_t j = 1; j < jl; ++j) {
            if (is_zero(ca[j])) continue;
            acc += ca[j] * out[static_cast<std::size_t>(i - static_cast<long>(j))];
        }
        out[static_cast<std::size_t>(i)] = -acc / a0;
    }
    return QSeries(a.exp_den(), -a.lead_exp(), step, a.trunc() - 2 * a.lead_exp(), std::move(out));
}

QSeries pow_int(const QSeries& a, long e) {
    if (e < 0) return pow_int(inv(a), -e);
    if (e == 0) {
        long rel = std::max(0L, a.trunc() - a.lead_exp());
        return QSeries(a.exp_den(), 0, 1, rel, {Rational(1)});
    }
    QSeries result = a;
    long n = e - 1;
    QSeries base = a;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

QSeries theta_deriv(const QSeries& a) {
    std::vector<Rational> cs(a.coeffs());
    for (std::size_t i = 0; i < cs.size(); ++i)
        cs[i] *= make_rational(a.lead_exp() + static_cast<long>(i) * a.step(), a.exp_den());
    return QSeries(a.exp_den(), a.lead_exp(), a.step(), a.trunc(), std::move(cs));
}

QSeries dilate(const QSeries& a, long m) {
    if (m < 1) throw BadInput("dilate: factor must be >= 1");
    return QSeries(a.exp_den(), a.lead_exp() * m, a.step() * m, a.trunc() * m, a.coeffs());
}

QSeries truncate(const QSeries& a, long trunc_num) {
    long t = std::min(a.trunc(), trunc_num);
    return QSeries(a.exp_den(), a.lead_exp(), a.step(), t, a.coeffs());
}

QSeries truncate_q(const QSeries& a, long order_q) {
    return truncate(a, order_q * a.exp_den());
}

bool agree_through_q(const QSeries& a, const QSeries& b, long order_q) {
    QSeries d = sub(a, b);
    if (d.order_q() < order_q)
        throw InsufficientPrecision("operands only compare exactly below q^" +
                                    std::to_string(d.order_q()) + ", requested q^" +
                                    std::to_string(order_q));
    if (d.is_zero()) return true;
    return d.lead_exponent() >= Rational(order_q);
}

} // namespace qmod
