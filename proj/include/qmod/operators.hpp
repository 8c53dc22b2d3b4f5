#pragma once

#include "qmod/qseries.hpp"
#include "qmod/weight.hpp"

namespace qmod {

// Residual of applying a differential operator, together with how far it
// was checked. vanish_order is the exponent numerator (on series' grid)
// below which every coefficient is zero; it equals series.trunc() when
// the residual is clean, and is never extrapolated.
struct OperatorResidual {
    QSeries series;
    long vanish_order = 0;

    bool clean() const { return vanish_order >= series.trunc(); }
    Rational vanish_exponent() const { return make_rational(vanish_order, series.exp_den()); }
};

OperatorResidual make_residual(QSeries s);

// Serre derivative of weight k:  f' - (k/12) E2 f.
QSeries serre(const QSeries& f, const Weight& k);

// Degree-1 Rankin-Cohen bracket:  [f,g] = k f g' - l f' g.
QSeries rc_bracket(const QSeries& f, const Weight& k, const QSeries& g, const Weight& l);

// L_k f = f'' - ((k+1)/6) E2 f' + (k(k+1)/12) E2' f.
OperatorResidual kz_apply(const QSeries& f, const Weight& k);

// Equivalent second-order form:  serre_{k+2} serre_k f - (k(k+2)/144) E4 f.
OperatorResidual kz_sharp_apply(const QSeries& f, const Weight& k);

} // namespace qmod
