#include "qmod/operators.hpp"

#include <algorithm>

#include "qmod/forms.hpp"

namespace qmod {

namespace {

// Level-1 Eisenstein series at enough order that multiplying by f keeps
// f's truncation bound intact.
QSeries companion(FormId id, const QSeries& f) {
    long rel = std::max(1L, (f.trunc() - f.lead_exp()) / f.exp_den() + 2);
    return catalog(id, rel);
}

} // namespace

OperatorResidual make_residual(QSeries s) {
    OperatorResidual r;
    long vo = s.trunc();
    if (!s.is_zero()) vo = s.lead_exp();
    r.series = std::move(s);
    r.vanish_order = vo;
    return r;
}

QSeries serre(const QSeries& f, const Weight& k) {
    QSeries e2 = companion(FormId::E2, f);
    return sub(theta_deriv(f), scale(k.value() / 12, mul(e2, f)));
}

QSeries rc_bracket(const QSeries& f, const Weight& k, const QSeries& g, const Weight& l) {
    return sub(scale(k.value(), mul(f, theta_deriv(g))),
               scale(l.value(), mul(theta_deriv(f), g)));
}

OperatorResidual kz_apply(const QSeries& f, const Weight& k) {
    QSeries e2 = companion(FormId::E2, f);
    Rational kk = k.value();
    QSeries r = theta_deriv(theta_deriv(f));
    r = sub(r, scale((kk + 1) / 6, mul(e2, theta_deriv(f))));
    r = add(r, scale(kk * (kk + 1) / 12, mul(theta_deriv(e2), f)));
    return make_residual(std::move(r));
}

OperatorResidual kz_sharp_apply(const QSeries& f, const Weight& k) {
    QSeries e4 = companion(FormId::E4, f);
    Rational kk = k.value();
    QSeries r = serre(serre(f, k), Weight::from_twice(k.twice() + 4));
    r = sub(r, scale(kk * (kk + 2) / 144, mul(e4, f)));
    return make_residual(std::move(r));
}

} // namespace qmod
