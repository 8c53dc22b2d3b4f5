#include "qmod/analysis.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "qmod/errors.hpp"
#include "qmod/forms.hpp"
#include "qmod/operators.hpp"
#include "qmod/solutions.hpp"

namespace qmod {

const char* to_string(PositivityStatus s) {
    switch (s) {
        case PositivityStatus::AllPositive: return "AllPositive";
        case PositivityStatus::Violation: return "Violation";
        case PositivityStatus::NonNegativeWithZeros: return "NonNegativeWithZeros";
    }
    return "?";
}

std::string PositivityReport::str() const {
    std::ostringstream os;
    os << to_string(status) << " (" << scanned << " lattice coefficients scanned)";
    if (has_finding)
        os << "; first nonpositive at q^" << to_string(exponent) << " with value "
           << to_string(value);
    return os.str();
}

PositivityReport check_positivity(const QSeries& f, long through_q) {
    if (f.order_q() < through_q)
        throw InsufficientPrecision("series exact only below q^" + std::to_string(f.order_q()) +
                                    ", positivity scan requested through q^" +
                                    std::to_string(through_q));
    PositivityReport rep;
    bool any_zero = false, any_neg = false;
    long bound_num = through_q * f.exp_den(); // inclusive
    // Scan the leading coset at whole-q Fourier steps (finer only when the
    // support itself is finer); compressed storage gaps count as zeros.
    long g = std::gcd(f.step(), f.exp_den());
    for (long m = 0;; ++m) {
        long e = f.lead_exp() + m * g;
        if (e > bound_num || e >= f.trunc()) break;
        long off = e - f.lead_exp();
        Rational v(0);
        if (off % f.step() == 0) {
            std::size_t idx = static_cast<std::size_t>(off / f.step());
            if (idx < f.size()) v = f.coeffs()[idx];
        }
        ++rep.scanned;
        int s = sgn(v);
        if (s < 0 && !any_neg) {
            any_neg = true;
            rep.has_finding = true;
            rep.exponent = make_rational(e, f.exp_den());
            rep.value = v;
        } else if (s == 0 && !any_neg && !any_zero) {
            any_zero = true;
            rep.has_finding = true;
            rep.exponent = make_rational(e, f.exp_den());
            rep.value = v;
        }
    }
    if (any_neg)
        rep.status = PositivityStatus::Violation;
    else if (any_zero || rep.scanned == 0)
        rep.status = PositivityStatus::NonNegativeWithZeros;
    else
        rep.status = PositivityStatus::AllPositive;
    return rep;
}

std::pair<Rational, Rational> char3_case_check(long p, long e) {
    if (p < 2) throw BadInput("char3_case_check: p must be prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw BadInput("char3_case_check: p = " + std::to_string(p) + " is not prime");
    if (e < 0) throw BadInput("char3_case_check: e must be >= 0");

    // brute force over divisors p^i
    Rational un(0), wt(0);
    Int pi(1);
    for (long i = 0; i <= e; ++i) {
        int chi = legendre3(to_long(Int(pi % 3)));
        Int cof(1);
        for (long t = 0; t < e - i; ++t) cof *= p;
        un += chi;
        wt += Rational(chi) * Rational(cof) * Rational(cof);
        pi *= p;
    }

    // closed forms, by prime case
    Rational un_cf, wt_cf;
    Int p2e(1);
    for (long t = 0; t < 2 * e; ++t) p2e *= p;
    Int p2e2 = p2e * p * p;
    if (p == 3) {
        un_cf = 1;
        wt_cf = Rational(p2e);
    } else if (legendre3(p) == 1) {
        un_cf = e + 1;
        wt_cf = Rational(Int(p2e2 - 1)) / Rational(Int(p * p - 1));
    } else if (e % 2 == 0) {
        un_cf = 1;
        wt_cf = Rational(Int(p2e2 + 1)) / Rational(Int(p * p + 1));
    } else {
        un_cf = 0;
        wt_cf = Rational(Int(p2e2 - 1)) / Rational(Int(p * p + 1));
    }
    if (un != un_cf || wt != wt_cf)
        throw Error("Char3CaseMismatch", "brute force (" + to_string(un) + ", " + to_string(wt) +
                                             ") vs closed form (" + to_string(un_cf) + ", " +
                                             to_string(wt_cf) + ") at p=" + std::to_string(p) +
                                             ", e=" + std::to_string(e));
    return {un, wt};
}

PositivityReport alpha_bound_check(const Rational& alpha, long through_q) {
    if (sgn(alpha) < 0) throw BadInput("alpha_bound_check: alpha must be >= 0");
    QSeries f = sub(catalog(FormId::E2_4, through_q + 1),
                    scale(alpha, catalog(FormId::Delta2_4, through_q + 1)));
    return check_positivity(f, through_q);
}

Rational sigma_gap_identity(long n) {
    if (n < 1) throw BadInput("sigma_gap_identity: n must be >= 1");
    auto sig = [](long v) { return divisor_sum(v, DivisorSumKind::Sigma, 1); };
    Rational lhs = sig(4 * n) - 4 * sig(n);
    long m = n;
    while (m % 2 == 0) m /= 2;
    if (lhs != 3 * sig(m))
        throw Error("SigmaGapMismatch", "sigma(4n)-4sigma(n) != 3 sigma(m) at n=" + std::to_string(n));
    return lhs;
}

bool halfint_sign_window(long n) {
    if (n < 0) throw BadInput("halfint_sign_window: n must be >= 0");
    Rational thr = make_rational(2 * n + 3, 4);
    std::vector<Rational> a(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i)
        a[static_cast<std::size_t>(i)] =
            pochhammer(Rational(-n), i) * pochhammer(-make_rational(2 * n - 1, 4), i) /
            (pochhammer(make_rational(2 * n + 5, 4), i) * pochhammer(Rational(1), i));

    long first_nonpos = -1;
    for (long i = 0; i <= n; ++i) {
        if (Rational(i) < thr) {
            if (sgn(a[static_cast<std::size_t>(i)]) <= 0) return false; // must be positive
        } else if (first_nonpos < 0 && sgn(a[static_cast<std::size_t>(i)]) < 0) {
            first_nonpos = i;
        }
    }
    if (first_nonpos >= 0) {
        for (long i = first_nonpos; i < n; ++i)
            if (sgn(a[static_cast<std::size_t>(i)]) * sgn(a[static_cast<std::size_t>(i + 1)]) >= 0)
                return false; // strict alternation beyond the first sign change
    }
    // window inequality 0 <= -16 (i-n)(i-(2n-1)/4) / ((i+(2n+5)/4)(i+1)) < 8
    for (long i = 0; i <= n; ++i) {
        if (Rational(i) <= thr) continue;
        Rational r = -16 * (Rational(i) - n) * (Rational(i) - make_rational(2 * n - 1, 4)) /
                     ((Rational(i) + make_rational(2 * n + 5, 4)) * Rational(i + 1));
        if (sgn(r) < 0 || r >= 8) return false;
    }
    return true;
}

InvJExpansion expand_in_inv_j(const QSeries& f, long depth) {
    if (depth < 1) throw BadInput("expand_in_inv_j: depth must be >= 1");
    if (f.lead_exp() < 0) throw BadInput("expand_in_inv_j: series must be bounded at the cusp");
    if (f.order_q() < depth + 1)
        throw InsufficientPrecision("series exact only below q^" + std::to_string(f.order_q()) +
                                    ", depth " + std::to_string(depth) + " needs q^" +
                                    std::to_string(depth + 1));
    long T = depth + 2;
    QSeries u = mul(catalog(FormId::Delta, T + 2), pow_int(inv(catalog(FormId::E4, T + 2)), 3));
    InvJExpansion out;
    out.c0 = f.lead_exp() == 0 ? f.lead_coeff() : Rational(0);
    QSeries r = sub(f, QSeries::constant(out.c0, T));
    QSeries upow = QSeries::constant(1, T + 1);
    for (long i = 1; i <= depth; ++i) {
        upow = mul(upow, u);
        Rational ci = r.coeff_q(i);
        out.coeffs.push_back(ci);
        r = sub(r, scale(ci, upow));
    }
    return out;
}

std::vector<std::pair<long, long>> modular_basis(long w) {
    if (w < 0 || w % 2 != 0) throw OddWeight("modular_basis needs an even nonnegative weight, got " +
                                             std::to_string(w));
    std::vector<std::pair<long, long>> out;
    for (long b = 0; 6 * b <= w; ++b) {
        long rem = w - 6 * b;
        if (rem % 4 == 0) out.emplace_back(rem / 4, b);
    }
    return out;
}

std::string QuasiDecomposition::str() const {
    std::ostringstream os;
    os << "weight " << weight << " quasimodular decomposition:";
    for (const auto& c : components) {
        os << "\n  E2^" << c.e2_power << " * (";
        bool first = true;
        for (const auto& [a, b, co] : c.monomials) {
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(co) << ")";
            if (a) os << "*E4^" << a;
            if (b) os << "*E6^" << b;
        }
        if (first) os << "0";
        os << ")";
    }
    return os.str();
}

QuasiDecomposition decompose_quasimodular(const QSeries& F, long w) {
    if (w < 0 || w % 2 != 0) throw OddWeight("quasimodular weight must be even and nonnegative");
    if (F.exp_den() != 1 && !F.is_zero())
        throw NotQuasimodular("series has fractional exponents");

    struct BasisElem {
        long i, a, b;
    };
    std::vector<BasisElem> basis;
    for (long i = 0; 2 * i <= w; ++i)
        for (auto [a, b] : modular_basis(w - 2 * i)) basis.push_back({i, a, b});
    const long D = static_cast<long>(basis.size());
    if (D == 0) {
        if (!F.is_zero()) throw NotQuasimodular("no monomials exist in weight " + std::to_string(w));
        return QuasiDecomposition{w, {}};
    }
    if (F.order_q() < D + 1)
        throw InsufficientPrecision("decomposition in weight " + std::to_string(w) + " needs " +
                                    std::to_string(D + 1) + " exact coefficients, series has " +
                                    std::to_string(F.order_q()));
    const long R = std::min(F.order_q(), D + 6); // rows

    // power tables at order R
    long maxi = w / 2, maxa = w / 4, maxb = w / 6;
    auto pows = [&](FormId id, long top) {
        std::vector<QSeries> p(static_cast<std::size_t>(top + 1));
        p[0] = QSeries::constant(1, R + 1);
        QSeries base = catalog(id, R + 1);
        for (long t = 1; t <= top; ++t) p[static_cast<std::size_t>(t)] = mul(p[static_cast<std::size_t>(t - 1)], base);
        return p;
    };
    auto e2p = pows(FormId::E2, maxi), e4p = pows(FormId::E4, maxa), e6p = pows(FormId::E6, maxb);

    // exact dense linear system: columns are monomial q-expansions
    std::vector<std::vector<Rational>> M(static_cast<std::size_t>(R),
                                         std::vector<Rational>(static_cast<std::size_t>(D + 1)));
    for (long col = 0; col < D; ++col) {
        const auto& be = basis[static_cast<std::size_t>(col)];
        QSeries mono = mul(e2p[static_cast<std::size_t>(be.i)],
                           mul(e4p[static_cast<std::size_t>(be.a)], e6p[static_cast<std::size_t>(be.b)]));
        for (long r = 0; r < R; ++r)
            M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = mono.coeff_q(r);
    }
    for (long r = 0; r < R; ++r)
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(D)] = F.coeff_q(r);

    // exact Gaussian elimination
    std::vector<long> pivot_of_col(static_cast<std::size_t>(D), -1);
    long row = 0;
    for (long col = 0; col < D && row < R; ++col) {
        long p = -1;
        for (long r = row; r < R; ++r)
            if (!is_zero(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)])) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(M[static_cast<std::size_t>(p)], M[static_cast<std::size_t>(row)]);
        Rational inv_piv = 1 / M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (long c = col; c <= D; ++c) M[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] *= inv_piv;
        for (long r = 0; r < R; ++r) {
            if (r == row) continue;
            Rational& f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (is_zero(f)) continue;
            Rational factor = f;
            for (long c = col; c <= D; ++c)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    factor * M[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
        }
        pivot_of_col[static_cast<std::size_t>(col)] = row;
        ++row;
    }
    for (long c = 0; c < D; ++c)
        if (pivot_of_col[static_cast<std::size_t>(c)] < 0)
            throw InsufficientPrecision("linear system underdetermined; raise the series order");
    for (long r = row; r < R; ++r)
        if (!is_zero(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(D)]))
            throw NotQuasimodular("q-expansion is inconsistent with weight-" + std::to_string(w) +
                                  " quasimodular forms");

    std::vector<Rational> x(static_cast<std::size_t>(D));
    for (long c = 0; c < D; ++c)
        x[static_cast<std::size_t>(c)] =
            M[static_cast<std::size_t>(pivot_of_col[static_cast<std::size_t>(c)])][static_cast<std::size_t>(D)];

    QuasiDecomposition dec;
    dec.weight = w;
    QSeries recomb = QSeries::zero(1, R);
    for (long i = 0; 2 * i <= w; ++i) {
        QuasiDecomposition::Component comp;
        comp.e2_power = i;
        comp.modular_part = QSeries::zero(1, R + 1);
        bool any = false;
        for (long col = 0; col < D; ++col) {
            const auto& be = basis[static_cast<std::size_t>(col)];
            if (be.i != i || is_zero(x[static_cast<std::size_t>(col)])) continue;
            comp.monomials.emplace_back(be.a, be.b, x[static_cast<std::size_t>(col)]);
            comp.modular_part = add(comp.modular_part,
                                    scale(x[static_cast<std::size_t>(col)],
                                          mul(e4p[static_cast<std::size_t>(be.a)],
                                              e6p[static_cast<std::size_t>(be.b)])));
            any = true;
        }
        if (any) {
            recomb = add(recomb, mul(e2p[static_cast<std::size_t>(i)], comp.modular_part));
            dec.components.push_back(std::move(comp));
        }
    }
    if (!agree_through_q(recomb, truncate_q(F, R), R))
        throw NotQuasimodular("recombination check failed");
    return dec;
}

namespace {

struct Id {
    std::string name;
    std::function<QSeries(long)> lhs;
    std::function<QSeries(long)> rhs;
};

QSeries theta2_8tau(long order_q) {
    // sum over n>=0 of 2 q^{(2n+1)^2}
    std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, order_q)));
    for (long n = 0; (2 * n + 1) * (2 * n + 1) < order_q; ++n)
        c[static_cast<std::size_t>((2 * n + 1) * (2 * n + 1))] = 2;
    return QSeries::from_dense(1, 0, order_q, std::move(c));
}

} // namespace

std::vector<IdentityResult> identity_suite(long order_q) {
    const long T = order_q + 4;
    auto C = [&](FormId id) { return catalog(id, T); };
    auto A = [&] { return C(FormId::Delta4_2); };
    auto B = [&] { return C(FormId::E2_2); };

    std::vector<Id> ids;
    ids.push_back({"E4 = 192*Delta4_2 + E2_2^2", [&](long) { return C(FormId::E4); },
                   [&](long) { return add(scale(Rational(192), A()), pow_int(B(), 2)); }});
    ids.push_back({"serre(Delta4_2, 4) = (2/3)*Delta4_2*E2_2",
                   [&](long) { return serre(A(), Weight(4)); },
                   [&](long) { return scale(make_rational(2, 3), mul(A(), B())); }});
    ids.push_back({"serre(E2_2, 2) = 32*Delta4_2 - E2_2^2/6",
                   [&](long) { return serre(B(), Weight(2)); },
                   [&](long) {
                       return sub(scale(Rational(32), A()),
                                  scale(make_rational(1, 6), pow_int(B(), 2)));
                   }});
    ids.push_back({"E6 = E2_2^3 - 576*Delta4_2*E2_2", [&](long) { return C(FormId::E6); },
                   [&](long) { return sub(pow_int(B(), 3), scale(Rational(576), mul(A(), B()))); }});
    ids.push_back({"Delta = Delta4_2*E2_2^4 - 128*Delta4_2^2*E2_2^2 + 4096*Delta4_2^3",
                   [&](long) { return C(FormId::Delta); },
                   [&](long) {
                       QSeries t = mul(A(), pow_int(B(), 4));
                       t = sub(t, scale(Rational(128), mul(pow_int(A(), 2), pow_int(B(), 2))));
                       return add(t, scale(Rational(4096), pow_int(A(), 3)));
                   }});
    ids.push_back({"sqrtDelta4_2^2 = Delta4_2",
                   [&](long) { return pow_int(C(FormId::sqrtDelta4_2), 2); },
                   [&](long) { return A(); }});
    ids.push_back({"cbrtDelta3_3^3 = Delta3_3",
                   [&](long) { return pow_int(C(FormId::cbrtDelta3_3), 3); },
                   [&](long) { return C(FormId::Delta3_3); }});
    ids.push_back({"theta3_2tau^4 = E2_4", [&](long) { return pow_int(C(FormId::theta3_2tau), 4); },
                   [&](long) { return C(FormId::E2_4); }});
    ids.push_back({"halftheta2_2tau^4 = Delta2_4",
                   [&](long) { return pow_int(C(FormId::halftheta2_2tau), 4); },
                   [&](long) { return C(FormId::Delta2_4); }});
    ids.push_back({"theta2(8tau) = theta3(2tau) - theta3(8tau)",
                   [&](long) { return theta2_8tau(T); },
                   [&](long) {
                       return sub(C(FormId::theta3_2tau),
                                  truncate_q(dilate(C(FormId::theta3_2tau), 4), T));
                   }});
    ids.push_back({"E2' = (E2^2 - E4)/12", [&](long) { return theta_deriv(C(FormId::E2)); },
                   [&](long) {
                       return scale(make_rational(1, 12), sub(pow_int(C(FormId::E2), 2), C(FormId::E4)));
                   }});
    ids.push_back({"E4' = (E2*E4 - E6)/3", [&](long) { return theta_deriv(C(FormId::E4)); },
                   [&](long) {
                       return scale(make_rational(1, 3), sub(mul(C(FormId::E2), C(FormId::E4)), C(FormId::E6)));
                   }});
    ids.push_back({"serre(E4, 4) = -E6/3", [&](long) { return serre(C(FormId::E4), Weight(4)); },
                   [&](long) { return scale(make_rational(-1, 3), C(FormId::E6)); }});
    ids.push_back({"serre(E6, 6) = -E4^2/2", [&](long) { return serre(C(FormId::E6), Weight(6)); },
                   [&](long) { return scale(make_rational(-1, 2), pow_int(C(FormId::E4), 2)); }});
    ids.push_back({"serre(Delta, 12) = 0", [&](long) { return serre(C(FormId::Delta), Weight(12)); },
                   [&](long) { return QSeries::zero(1, T); }});
    ids.push_back({"Delta' = E2*Delta", [&](long) { return theta_deriv(C(FormId::Delta)); },
                   [&](long) { return mul(C(FormId::E2), C(FormId::Delta)); }});
    ids.push_back({"Delta = eta^24", [&](long) { return C(FormId::Delta); },
                   [&](long) { return eta_expand(EtaSpec{{{1, 24}}}, T); }});
    ids.push_back({"Delta4_2 = eta(2t)^16/eta(t)^8 (divisor recipe vs eta recipe)",
                   [&](long) { return A(); },
                   [&](long) { return eta_expand(EtaSpec{{{2, 16}, {1, -8}}}, T); }});
    ids.push_back({"Delta3_3 = eta(3t)^9/eta(t)^3 (divisor recipe vs eta recipe)",
                   [&](long) { return C(FormId::Delta3_3); },
                   [&](long) { return eta_expand(EtaSpec{{{3, 9}, {1, -3}}}, T); }});
    ids.push_back({"Delta2_4 = eta(4t)^8/eta(2t)^4 (divisor recipe vs eta recipe)",
                   [&](long) { return C(FormId::Delta2_4); },
                   [&](long) { return eta_expand(EtaSpec{{{4, 8}, {2, -4}}}, T); }});
    ids.push_back({"sqrtDelta4_2 = eta(2t)^8/eta(t)^4",
                   [&](long) { return C(FormId::sqrtDelta4_2); },
                   [&](long) { return eta_expand(EtaSpec{{{2, 8}, {1, -4}}}, T); }});
    ids.push_back({"cbrtDelta3_3 = eta(3t)^3/eta(t)",
                   [&](long) { return C(FormId::cbrtDelta3_3); },
                   [&](long) { return eta_expand(EtaSpec{{{3, 3}, {1, -1}}}, T); }});
    ids.push_back({"halftheta2_2tau = eta(4t)^2/eta(2t)",
                   [&](long) { return C(FormId::halftheta2_2tau); },
                   [&](long) { return eta_expand(EtaSpec{{{4, 2}, {2, -1}}}, T); }});
    ids.push_back({"E2_2 = 2*E2(2t) - E2(t)", [&](long) { return B(); },
                   [&](long) {
                       return sub(scale(Rational(2), truncate_q(dilate(C(FormId::E2), 2), T)),
                                  C(FormId::E2));
                   }});
    ids.push_back({"E2_4 = (4*E2(4t) - E2(t))/3", [&](long) { return C(FormId::E2_4); },
                   [&](long) {
                       return scale(make_rational(1, 3),
                                    sub(scale(Rational(4), truncate_q(dilate(C(FormId::E2), 4), T)),
                                        C(FormId::E2)));
                   }});
    ids.push_back({"j*Delta = E4^3", [&](long) { return mul(C(FormId::j), C(FormId::Delta)); },
                   [&](long) { return pow_int(C(FormId::E4), 3); }});
    ids.push_back({"j_2*Delta4_2 = E2_2^2", [&](long) { return mul(C(FormId::j_2), A()); },
                   [&](long) { return pow_int(B(), 2); }});
    ids.push_back({"j_3*Delta3_3 = E1_3^3",
                   [&](long) { return mul(C(FormId::j_3), C(FormId::Delta3_3)); },
                   [&](long) { return pow_int(C(FormId::E1_3), 3); }});
    ids.push_back({"j_4*Delta2_4 = E2_4",
                   [&](long) { return mul(C(FormId::j_4), C(FormId::Delta2_4)); },
                   [&](long) { return C(FormId::E2_4); }});

    std::vector<IdentityResult> results;
    results.reserve(ids.size());
    for (auto& id : ids) {
        IdentityResult r{id.name, false, ""};
        try {
            QSeries d = sub(id.lhs(order_q), id.rhs(order_q));
            if (d.order_q() < order_q) {
                r.detail = "insufficient precision: exact below q^" + std::to_string(d.order_q());
            } else if (d.is_zero() || d.lead_exponent() >= Rational(order_q)) {
                r.pass = true;
            } else {
                r.detail = "first mismatch at q^" + to_string(d.lead_exponent());
            }
        } catch (const Error& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace qmod
