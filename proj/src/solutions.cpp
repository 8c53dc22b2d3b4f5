#include "qmod/solutions.hpp"

#include <algorithm>
#include <sstream>

#include "qmod/errors.hpp"
#include "qmod/forms.hpp"

namespace qmod {

const char* to_string(ResidueClass c) {
    switch (c) {
        case ResidueClass::Lvl1: return "Lvl1";
        case ResidueClass::Lvl2: return "Lvl2";
        case ResidueClass::Lvl3: return "Lvl3";
        case ResidueClass::Quasi: return "Quasi";
        case ResidueClass::Lvl4: return "Lvl4";
        case ResidueClass::NoneKnown: return "NoneKnown";
    }
    return "?";
}

const char* to_string(SolutionKind k) {
    switch (k) {
        case SolutionKind::Normalized: return "normalized";
        case SolutionKind::Cuspidal: return "cuspidal";
        case SolutionKind::Quasi: return "quasi";
    }
    return "?";
}

ResidueClass classify_weight(const Weight& k) {
    if (k.negative()) throw NegativeWeight("weight " + k.str() + " is negative");
    if (k.integral()) {
        long v = k.as_long() % 6;
        if (v % 2 == 0) return v == 2 ? ResidueClass::Lvl2 : ResidueClass::Lvl1;
        return v == 5 ? ResidueClass::Quasi : ResidueClass::Lvl3;
    }
    // half-integral: k = 1/2 mod 3 iff 2k = 1 mod 6
    return (k.twice() % 6 == 1) ? ResidueClass::Lvl4 : ResidueClass::NoneKnown;
}

Rational pochhammer(const Rational& a, long n) {
    Rational r(1);
    for (long i = 0; i < n; ++i) r *= a + i;
    return r;
}

namespace {

[[noreturn]] void throw_unsupported(const Weight& k, ResidueClass c, const char* wanted) {
    std::string msg = "weight " + k.str() + " is in class " + to_string(c);
    if (c == ResidueClass::NoneKnown)
        msg += ": no known modular solution (conjecturally none exists)";
    else
        msg += std::string(": not covered by the ") + wanted + " family";
    throw UnsupportedClass(msg);
}

// sum_{i=0}^{bound} X^i (a)_i (b)_i / ((c)_i i!) base^{b0+bstep*i} eis^{e0-estep*i}
QSeries hyper_family_sum(const QSeries& base, long b0, long bstep, const QSeries& eis, long e0,
                         long estep, const Rational& a, const Rational& b, const Rational& c,
                         long X, long bound) {
    // power tables, one multiplication per slot
    std::vector<QSeries> base_pow(static_cast<std::size_t>(bound + 1));
    base_pow[0] = pow_int(base, b0);
    QSeries base_step = pow_int(base, bstep);
    for (long i = 1; i <= bound; ++i)
        base_pow[static_cast<std::size_t>(i)] = mul(base_pow[static_cast<std::size_t>(i - 1)], base_step);

    std::vector<QSeries> eis_pow(static_cast<std::size_t>(bound + 1));
    eis_pow[static_cast<std::size_t>(bound)] = pow_int(eis, e0 - estep * bound);
    QSeries eis_step = pow_int(eis, estep);
    for (long i = bound - 1; i >= 0; --i)
        eis_pow[static_cast<std::size_t>(i)] = mul(eis_pow[static_cast<std::size_t>(i + 1)], eis_step);

    QSeries sum;
    bool first = true;
    Rational xpow(1);
    for (long i = 0; i <= bound; ++i) {
        Rational coef = xpow * pochhammer(a, i) * pochhammer(b, i) /
                        (pochhammer(c, i) * pochhammer(Rational(1), i));
        xpow *= X;
        if (is_zero(coef)) continue;
        QSeries term = scale(coef, mul(base_pow[static_cast<std::size_t>(i)],
                                       eis_pow[static_cast<std::size_t>(i)]));
        sum = first ? term : add(sum, term);
        first = false;
    }
    return sum;
}

} // namespace

QSeries solve_normalized(const Weight& k, long order_q) {
    ResidueClass cls = classify_weight(k);
    const long T = order_q + 2;
    Rational kv = k.value();
    switch (cls) {
        case ResidueClass::Lvl1: {
            long kk = k.as_long();
            QSeries delta = catalog(FormId::Delta, T);
            QSeries e4 = catalog(FormId::E4, T);
            if (kk % 12 == 0 || kk % 12 == 4) {
                return hyper_family_sum(delta, 0, 1, e4, kk / 4, 3, -kv / 12, -(kv - 4) / 12,
                                        -(kv - 5) / 6, 1728, kk / 12);
            }
            QSeries s = hyper_family_sum(delta, 0, 1, e4, (kk - 6) / 4, 3, -(kv - 6) / 12,
                                         -(kv - 10) / 12, -(kv - 5) / 6, 1728, (kk - 6) / 12);
            return mul(catalog(FormId::E6, T), s);
        }
        case ResidueClass::Lvl2: {
            long kk = k.as_long();
            return hyper_family_sum(catalog(FormId::Delta4_2, T), 0, 1, catalog(FormId::E2_2, T),
                                    kk / 2, 2, -kv / 4, -(kv - 2) / 4, -(kv - 5) / 6, 64, kk / 4);
        }
        case ResidueClass::Lvl3: {
            long kk = k.as_long();
            return hyper_family_sum(catalog(FormId::Delta3_3, T), 0, 1, catalog(FormId::E1_3, T),
                                    kk, 3, -kv / 3, -(kv - 1) / 3, -(kv - 5) / 6, 27, kk / 3);
        }
        case ResidueClass::Lvl4: {
            // E2_4^{k/2 - i} expressed through theta3(2tau)^{2k-4i}
            long twice = k.twice();
            return hyper_family_sum(catalog(FormId::Delta2_4, T), 0, 1,
                                    catalog(FormId::theta3_2tau, T), twice, 4, -(2 * kv - 1) / 6,
                                    -kv / 2, -(kv - 5) / 6, 16, (twice - 1) / 6);
        }
        default: throw_unsupported(k, cls, "normalized");
    }
}

QSeries solve_cuspidal(const Weight& k, long order_q) {
    ResidueClass cls = classify_weight(k);
    const long T = order_q + 2;
    Rational kv = k.value();
    switch (cls) {
        case ResidueClass::Lvl2: {
            // Delta4_2^{(k+1)/6 + i} through sqrt(Delta4_2)^{(k+1)/3 + 2i}
            long kk = k.as_long();
            return hyper_family_sum(catalog(FormId::sqrtDelta4_2, T), (kk + 1) / 3, 2,
                                    catalog(FormId::E2_2, T), (kk - 2) / 6, 2, -(kv - 2) / 12,
                                    -(kv - 8) / 12, (kv + 7) / 6, 64, (kk - 2) / 12);
        }
        case ResidueClass::Lvl3: {
            // Delta3_3^{(k+1)/6 + i} through cbrt(Delta3_3)^{(k+1)/2 + 3i}
            long kk = k.as_long();
            return hyper_family_sum(catalog(FormId::cbrtDelta3_3, T), (kk + 1) / 2, 3,
                                    catalog(FormId::E1_3, T), (kk - 1) / 2, 3, -(kv - 1) / 6,
                                    -(kv - 3) / 6, (kv + 7) / 6, 27, (kk - 1) / 6);
        }
        case ResidueClass::Lvl4: {
            // Delta2_4^{(k+1)/6 + i} through the quarter form, E2_4 through theta3
            long twice = k.twice();
            return hyper_family_sum(catalog(FormId::halftheta2_2tau, T), (twice + 2) / 3, 4,
                                    catalog(FormId::theta3_2tau, T), (2 * twice - 2) / 3, 4,
                                    -(2 * kv - 1) / 6, -(kv - 2) / 6, (kv + 7) / 6, 16,
                                    (twice - 1) / 6);
        }
        default: throw_unsupported(k, cls, "cuspidal");
    }
}

Rational lambda_coeff(long n) {
    if (n < 1) throw BadInput("lambda_n is defined for n >= 1");
    return make_rational(12 * (6 * n + 1) * (6 * n + 5)) / make_rational(n * (n + 1));
}

std::pair<PolyQ, PolyQ> pq_polynomials(long n) {
    if (n < 0) throw BadInput("pq_polynomials: n must be >= 0");
    PolyQ p_prev = PolyQ::one(), p_cur = PolyQ::x();
    PolyQ q_prev, q_cur = PolyQ::one();
    if (n == 0) return {p_prev, q_prev};
    for (long m = 1; m < n; ++m) {
        Rational lam = lambda_coeff(m);
        PolyQ p_next = p_cur.mul_x() + lam * p_prev;
        PolyQ q_next = q_cur.mul_x() + lam * q_prev;
        p_prev = std::move(p_cur);
        p_cur = std::move(p_next);
        q_prev = std::move(q_cur);
        q_cur = std::move(q_next);
    }
    return {p_cur, q_cur};
}

namespace {

// sqrt(Delta)^m R(E6/sqrt(Delta)) for a parity-m polynomial R: all Delta
// exponents (m - i)/2 are integers, so no square root is ever needed.
QSeries parity_eval(const PolyQ& r, long m, const std::vector<QSeries>& e6_pow,
                    const std::vector<QSeries>& delta_pow, long order_q) {
    QSeries out = QSeries::zero(1, order_q);
    for (long i = 0; i <= r.degree(); ++i) {
        Rational c = r.coeff(i);
        if (is_zero(c)) continue;
        if ((m - i) % 2 != 0) throw BadInput("parity_eval: polynomial parity mismatch");
        out = add(out, scale(c, mul(e6_pow[static_cast<std::size_t>(i)],
                                    delta_pow[static_cast<std::size_t>((m - i) / 2)])));
    }
    return out;
}

} // namespace

QSeries quasimodular_solution(long n, long order_q) {
    if (n < 0) throw BadInput("quasimodular_solution: n must be >= 0");
    const long T = order_q + 2;
    auto [pn, qn] = pq_polynomials(n);
    QSeries e6 = catalog(FormId::E6, T);
    QSeries delta = catalog(FormId::Delta, T);
    std::vector<QSeries> e6_pow(static_cast<std::size_t>(n + 2));
    std::vector<QSeries> delta_pow(static_cast<std::size_t>(n / 2 + 2));
    e6_pow[0] = QSeries::constant(1, T);
    for (std::size_t i = 1; i < e6_pow.size(); ++i) e6_pow[i] = mul(e6_pow[i - 1], e6);
    delta_pow[0] = QSeries::constant(1, T);
    for (std::size_t i = 1; i < delta_pow.size(); ++i) delta_pow[i] = mul(delta_pow[i - 1], delta);

    QSeries e4p = scale(make_rational(1, 240), theta_deriv(catalog(FormId::E4, T)));
    QSeries part1 = mul(parity_eval(pn, n, e6_pow, delta_pow, T), e4p);
    QSeries part2 = parity_eval(qn, n + 1, e6_pow, delta_pow, T);
    return sub(part1, part2);
}

QSeries solve(const Weight& k, SolutionKind kind, long order_q) {
    switch (kind) {
        case SolutionKind::Normalized: return solve_normalized(k, order_q);
        case SolutionKind::Cuspidal: return solve_cuspidal(k, order_q);
        case SolutionKind::Quasi: {
            ResidueClass cls = classify_weight(k);
            if (cls != ResidueClass::Quasi) throw_unsupported(k, cls, "quasi");
            return quasimodular_solution((k.as_long() - 5) / 6, order_q);
        }
    }
    throw BadInput("unknown solution kind");
}

namespace {

long rel_order_q(const QSeries& f) {
    return std::max(1L, (f.trunc() - f.lead_exp()) / f.exp_den() + 2);
}

} // namespace

QSeries descend(const QSeries& F, const Weight& k) {
    if (k == Weight(0) || k == Weight(4) || k == Weight(5))
        throw ForbiddenWeight("descend is undefined at k = " + k.str());
    Rational kv = k.value();
    long rel = rel_order_q(F);
    QSeries br = rc_bracket(F, k, catalog(FormId::E4, rel), Weight(4));
    // Delta-divisibility obstruction lives at whole-q exponents below 1;
    // fractional-coset brackets divide with a plain shift.
    for (std::size_t i = 0; i < br.size(); ++i) {
        long e = br.lead_exp() + static_cast<long>(i) * br.step();
        if (e >= br.exp_den()) break;
        if (e % br.exp_den() == 0 && !qmod::is_zero(br.coeffs()[i]))
            throw NotDivisible("[F, E4] has a term at q^" + std::to_string(e / br.exp_den()) +
                               ", not divisible by Delta");
    }
    QSeries quot = mul(br, inv(catalog(FormId::Delta, rel + 2)));
    return scale((kv - 5) / (288 * kv * (kv - 4)), quot);
}

Rational mu_coeff(const Weight& k, long i) {
    Rational w = k.value() + 6 * i;
    Rational den = (w + 1) * (w - 5);
    if (is_zero(den))
        throw MuUndefined("mu_" + std::to_string(i) + " at base weight " + k.str() +
                          " has vanishing denominator (k+6i = " + to_string(w) + ")");
    return 432 * w * (w - 4) / den;
}

const QSeries& LadderState::rung(long weight_offset_steps) const {
    long idx = weight_offset_steps + 1;
    if (idx < 0 || idx >= static_cast<long>(rungs.size()))
        throw BadInput("ladder rung out of range");
    return rungs[static_cast<std::size_t>(idx)].second;
}

LadderState ascend_ladder(const Weight& k, const QSeries& Fk, const QSeries& Fkm6, long steps,
                          std::optional<Rational> mu0_override) {
    if (steps < 0) throw BadInput("ascend_ladder: steps must be >= 0");
    Rational mu0 = mu0_override ? *mu0_override : mu_coeff(k, 0);

    long rel = rel_order_q(Fk);
    QSeries e4 = catalog(FormId::E4, rel);
    QSeries e6 = catalog(FormId::E6, rel);
    QSeries delta = catalog(FormId::Delta, rel);

    // Lemma's compatibility relation for the seed pair.
    QSeries lhs = rc_bracket(Fk, k, e4, Weight(4));
    QSeries rhs = scale(make_rational(2, 3) * (k.value() + 1) * mu0, mul(delta, Fkm6));
    QSeries d = sub(lhs, rhs);
    if (!d.is_zero())
        throw SeedInconsistent("[F_k, E4] != (2/3)(k+1) mu_0 Delta F_{k-6}; first mismatch at q^" +
                               to_string(d.lead_exponent()));

    LadderState st{k, {}, {}};
    st.rungs.emplace_back(Weight::from_twice(k.twice() - 12), Fkm6);
    st.rungs.emplace_back(k, Fk);
    QSeries prev = Fkm6, cur = Fk;
    for (long i = 0; i < steps; ++i) {
        Rational mu = (i == 0) ? mu0 : mu_coeff(k, i);
        QSeries next = add(mul(e6, cur), scale(mu, mul(delta, prev)));
        st.rungs.emplace_back(Weight::from_twice(k.twice() + 12 * (i + 1)), next);
        st.mus.push_back(mu);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return st;
}

LadderSeed ladder_seed(const Weight& k, SolutionKind kind, long order_q) {
    LadderSeed seed;
    seed.Fk = solve(k, kind, order_q);
    if (kind == SolutionKind::Quasi && k == Weight(5)) {
        seed.Fkm6 = QSeries::constant(1, order_q);
        seed.mu0_override = Rational(-1);
    } else if (kind == SolutionKind::Normalized && (k == Weight(0) || k == Weight(4))) {
        seed.Fkm6 = QSeries::zero(1, order_q);
    } else {
        seed.Fkm6 = descend(seed.Fk, k);
    }
    return seed;
}

QSeries frobenius_solve(const Weight& k, FrobeniusBranch branch, long order_q) {
    if (k.negative()) throw NegativeWeight("weight " + k.str() + " is negative");
    Rational kv = k.value();
    Rational s = kv + 1;
    if (is_zero(s)) throw IndicialDegenerate("both indicial roots coincide at k = -1");
    Rational rho = (branch == FrobeniusBranch::Zero) ? Rational(0) : s / 6;
    if (branch == FrobeniusBranch::Zero) {
        Rational diff = s / 6;
        if (is_integral(diff) && sgn(diff) > 0)
            throw Resonant("exponent difference (k+1)/6 = " + to_string(diff) +
                           " is a positive integer; the q^0 branch is obstructed at k = " + k.str());
    }

    long M = order_q;
    std::vector<long long> sig(static_cast<std::size_t>(M + 1));
    for (long j = 1; j <= M; ++j)
        sig[static_cast<std::size_t>(j)] = to_long(divisor_sum(j, DivisorSumKind::Sigma).get_num());

    std::vector<Rational> c(static_cast<std::size_t>(M));
    c[0] = 1;
    for (long m = 1; m < M; ++m) {
        Rational e = rho + m;
        Rational den = e * e - s / 6 * e;
        Rational acc(0);
        for (long j = 1; j <= m; ++j) {
            if (!sig[static_cast<std::size_t>(j)]) continue;
            Rational w = 4 * s * (rho + m - j) - 2 * kv * s * j;
            if (is_zero(w)) continue;
            acc += c[static_cast<std::size_t>(m - j)] * Rational(static_cast<long>(sig[static_cast<std::size_t>(j)])) * w;
        }
        c[static_cast<std::size_t>(m)] = -acc / den;
    }
    long N = to_long(rho.get_den());
    long lead = to_long(rho.get_num()) * 1; // numerator on grid N
    return QSeries(N, lead, N, lead + M * N, std::move(c));
}

bool verify_delta_twist(const Weight& k, const Rational& beta, long order_q) {
    if (k.negative()) throw NegativeWeight("weight " + k.str() + " is negative");
    Rational e24 = 24 * beta;
    if (!is_integral(e24))
        throw UnsupportedBeta("Delta^beta leaves the exponent grid: 24*beta = " + to_string(e24) +
                              " is not an integer");
    long e = to_long(e24);
    Weight kp = Weight::from_twice(k.twice() + e); // k' = k + 12 beta
    ResidueClass cls = classify_weight(kp);
    long margin = std::abs(e) / 24 + 4;
    QSeries g;
    if (cls == ResidueClass::Quasi)
        g = quasimodular_solution((kp.as_long() - 5) / 6, order_q + margin);
    else if (cls == ResidueClass::NoneKnown)
        throw_unsupported(kp, cls, "twist target");
    else
        g = solve_normalized(kp, order_q + margin);

    // f = g * Delta^{-beta} = g * eta^{-24 beta} solves the alpha-twisted
    // equation with alpha from the indicial relation.
    QSeries f = mul(g, eta_expand(EtaSpec{{{1, -e}}}, order_q + margin));
    Rational alpha = -beta * beta - (k.value() + 1) * beta / 6;
    long rel = rel_order_q(f);
    QSeries r = add(kz_apply(f, k).series, scale(alpha, mul(catalog(FormId::E4, rel), f)));
    if (r.order_q() < order_q)
        throw InsufficientPrecision("twist residual only exact below q^" +
                                    std::to_string(r.order_q()));
    return r.is_zero() || r.lead_exponent() >= Rational(order_q);
}

std::string SolutionReport::str() const {
    std::ostringstream os;
    os << "weight " << weight.str() << ", family " << qmod::to_string(kind) << "\n";
    os << "  leading term: " << to_string(leading_coeff) << " * q^" << to_string(leading_exponent)
       << "  (" << normalization << ")\n";
    os << "  residual vanishes below q^" << to_string(residual_vanish_exponent) << " (checked through q^"
       << checked_order << ")\n";
    os << "  verified: " << (verified ? "yes" : "NO");
    return os.str();
}

SolutionReport verify_solution(const Weight& k, SolutionKind kind, long order_q) {
    QSeries f = solve(k, kind, order_q + 2);
    OperatorResidual res = kz_apply(f, k);
    SolutionReport rep{k,
                       kind,
                       f.lead_exponent(),
                       f.lead_coeff(),
                       res.vanish_exponent(),
                       order_q,
                       false,
                       ""};
    rep.verified = res.vanish_exponent() >= Rational(order_q);
    if (kind == SolutionKind::Normalized)
        rep.normalization = "1+O(q)";
    else if (kind == SolutionKind::Cuspidal)
        rep.normalization = "q^((k+1)/6)+O(q^((k+7)/6))";
    else
        rep.normalization = "quasimodular of weight k+1, leading exponent (k+1)/6";
    return rep;
}

} // namespace qmod
