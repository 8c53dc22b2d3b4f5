#include "qmod/forms.hpp"

#include <mutex>
#include <utility>

#include "qmod/errors.hpp"

namespace qmod {

namespace {

const std::vector<FormInfo> kCatalogInfo = {
    {FormId::E2, "E2", make_rational(2), "SL2(Z)", "quasimodular"},
    {FormId::E4, "E4", make_rational(4), "SL2(Z)", "trivial"},
    {FormId::E6, "E6", make_rational(6), "SL2(Z)", "trivial"},
    {FormId::Delta, "Delta", make_rational(12), "SL2(Z)", "trivial"},
    {FormId::j, "j", make_rational(0), "SL2(Z)", "trivial"},
    {FormId::eta, "eta", make_rational(1, 2), "SL2(Z)", "eta multiplier"},
    {FormId::E2_2, "E2_2", make_rational(2), "Gamma0(2)", "trivial"},
    {FormId::Delta4_2, "Delta4_2", make_rational(4), "Gamma0(2)", "trivial"},
    {FormId::j_2, "j_2", make_rational(0), "Gamma0(2)", "trivial"},
    {FormId::sqrtDelta4_2, "sqrtDelta4_2", make_rational(2), "Gamma(2)", "trivial"},
    {FormId::E1_3, "E1_3", make_rational(1), "Gamma0(3)", "(d/3)"},
    {FormId::Delta3_3, "Delta3_3", make_rational(3), "Gamma0(3)", "(d/3)"},
    {FormId::j_3, "j_3", make_rational(0), "Gamma0(3)", "trivial"},
    {FormId::cbrtDelta3_3, "cbrtDelta3_3", make_rational(1), "Gamma0^0(3)", "(d/3)"},
    {FormId::E2_4, "E2_4", make_rational(2), "Gamma0(4)", "trivial"},
    {FormId::Delta2_4, "Delta2_4", make_rational(2), "Gamma0(4)", "trivial"},
    {FormId::j_4, "j_4", make_rational(0), "Gamma0(4)", "trivial"},
    {FormId::theta3_2tau, "theta3_2tau", make_rational(1, 2), "Gamma0(4)", "theta multiplier"},
    {FormId::halftheta2_2tau, "halftheta2_2tau", make_rational(1, 2), "Gamma0^0(4)", "theta multiplier"},
};

long long isigma(long n, int r) {
    long long s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        long long dr = 1, er = 1;
        long e = n / d;
        for (int i = 0; i < r; ++i) { dr *= d; er *= e; }
        s += dr;
        if (d != e) s += er;
    }
    return s;
}

long long isigma_odd(long n, int r) {
    long long s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d || d % 2 == 0) continue;
        long long dr = 1;
        for (int i = 0; i < r; ++i) dr *= d;
        s += dr;
    }
    return s;
}

long long ichar3(long n) {
    long long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += legendre3(d);
    return s;
}

long long ichar3_weighted(long n) {
    long long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += static_cast<long long>(legendre3(d)) * (n / d) * (n / d);
    return s;
}

// sum over odd divisors d of (n/d)^3; the Delta4_2 coefficient
long long iodd_cofactor_cubes(long n) {
    long long s = 0;
    for (long d = 1; d <= n; d += 2)
        if (n % d == 0) {
            long long e = n / d;
            s += e * e * e;
        }
    return s;
}

} // namespace

const std::vector<FormInfo>& form_catalog_info() { return kCatalogInfo; }

const FormInfo& form_info(FormId id) {
    for (const auto& fi : kCatalogInfo)
        if (fi.id == id) return fi;
    throw BadInput("unknown form id");
}

FormId form_id_from_string(std::string_view name) {
    for (const auto& fi : kCatalogInfo)
        if (name == fi.name) return fi.id;
    throw BadInput("unknown form '" + std::string(name) + "'");
}

const char* to_string(FormId id) { return form_info(id).name; }

int legendre3(long d) {
    long m = d % 3;
    if (m < 0) m += 3;
    return m == 0 ? 0 : (m == 1 ? 1 : -1);
}

Rational divisor_sum(long n, DivisorSumKind kind, int r) {
    if (n < 1) throw BadInput("divisor_sum: n must be >= 1");
    switch (kind) {
        case DivisorSumKind::Sigma: return Rational(static_cast<long>(isigma(n, r)));
        case DivisorSumKind::OddSigma: return Rational(static_cast<long>(isigma_odd(n, r)));
        case DivisorSumKind::Char3: return Rational(static_cast<long>(ichar3(n)));
        case DivisorSumKind::Char3Weighted: return Rational(static_cast<long>(ichar3_weighted(n)));
    }
    throw BadInput("divisor_sum: unknown kind");
}

Rational EtaSpec::leading_exponent() const {
    long num = 0;
    for (auto [m, e] : factors) num += m * e;
    return make_rational(num, 24);
}

QSeries euler_product(long order_q) {
    // prod (1 - q^n) = sum_j (-1)^j q^{j(3j-1)/2} over all integers j
    std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, order_q)));
    c[0] = 1;
    for (long j = 1;; ++j) {
        long p1 = j * (3 * j - 1) / 2;
        long p2 = j * (3 * j + 1) / 2;
        if (p1 >= order_q && p2 >= order_q) break;
        Rational s(j % 2 ? -1 : 1);
        if (p1 < order_q) c[static_cast<std::size_t>(p1)] += s;
        if (p2 < order_q) c[static_cast<std::size_t>(p2)] += s;
    }
    return QSeries::from_dense(1, 0, order_q, std::move(c));
}

QSeries eta_expand(const EtaSpec& spec, long order_q) {
    long pref = 0;
    for (auto [m, e] : spec.factors) {
        if (m < 1) throw BadInput("eta multiplier must be positive");
        pref += m * e;
    }
    // prefactor q^{pref/24}; unit part needs relative order beyond it
    long pad = std::abs(pref) / 24 + 2;
    long rel = order_q + pad;
    QSeries unit = QSeries::constant(1, rel);
    for (auto [m, e] : spec.factors) {
        if (e == 0) continue;
        QSeries phi = dilate(euler_product(rel / m + 2), m);
        unit = mul(unit, pow_int(truncate_q(phi, rel), e));
    }
    QSeries mono = QSeries::monomial(1, pref, 24, pref + 24 * rel);
    return mul(mono, unit);
}

QSeries theta_series(ThetaKind kind, long order_q) {
    if (kind == ThetaKind::theta3_2tau) {
        std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, order_q)));
        c[0] = 1;
        for (long n = 1; n * n < order_q; ++n) c[static_cast<std::size_t>(n * n)] = 2;
        return QSeries::from_dense(1, 0, order_q, std::move(c));
    }
    // sum_{n>=0} q^{(2n+1)^2/4}
    long tn = 4 * order_q;
    std::vector<Rational> c;
    c.resize(static_cast<std::size_t>(std::max(0L, (tn - 1 + 7) / 8)));
    for (long n = 0;; ++n) {
        long num = (2 * n + 1) * (2 * n + 1);
        if (num >= tn) break;
        c[static_cast<std::size_t>((num - 1) / 8)] = 1;
    }
    return QSeries(4, 1, 8, tn, std::move(c));
}

namespace {

QSeries build_form(FormId id, long order_q);

std::mutex g_cat_mutex;
std::map<std::pair<int, long>, QSeries>& cat_cache() {
    static std::map<std::pair<int, long>, QSeries> cache;
    return cache;
}

QSeries eisenstein_like(long order_q, long c0, int r, long factor, bool odd_only) {
    std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, order_q)));
    c[0] = c0;
    for (long n = 1; n < order_q; ++n)
        c[static_cast<std::size_t>(n)] =
            Rational(factor) * Rational(static_cast<long>(odd_only ? isigma_odd(n, r) : isigma(n, r)));
    return QSeries::from_dense(1, 0, order_q, std::move(c));
}

QSeries build_form(FormId id, long order_q) {
    const long T = order_q;
    switch (id) {
        case FormId::E2: return eisenstein_like(T, 1, 1, -24, false);
        case FormId::E4: return eisenstein_like(T, 1, 3, 240, false);
        case FormId::E6: return eisenstein_like(T, 1, 5, -504, false);
        case FormId::Delta: {
            QSeries e4 = catalog(FormId::E4, T);
            QSeries e6 = catalog(FormId::E6, T);
            return scale(make_rational(1, 1728), sub(pow_int(e4, 3), pow_int(e6, 2)));
        }
        case FormId::j: {
            QSeries e4 = catalog(FormId::E4, T + 2);
            QSeries d = catalog(FormId::Delta, T + 2);
            return mul(pow_int(e4, 3), inv(d));
        }
        case FormId::eta: return eta_expand(EtaSpec{{{1, 1}}}, T);
        case FormId::E2_2: return eisenstein_like(T, 1, 1, 24, true);
        case FormId::Delta4_2: {
            std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, T)));
            for (long n = 1; n < T; ++n)
                c[static_cast<std::size_t>(n)] = Rational(static_cast<long>(iodd_cofactor_cubes(n)));
            return QSeries::from_dense(1, 0, T, std::move(c));
        }
        case FormId::j_2: {
            QSeries b = catalog(FormId::E2_2, T + 2);
            QSeries a = catalog(FormId::Delta4_2, T + 2);
            return mul(pow_int(b, 2), inv(a));
        }
        case FormId::sqrtDelta4_2: {
            std::vector<Rational> c;
            for (long n = 1; n < 2 * T; n += 2) c.push_back(Rational(static_cast<long>(isigma(n, 1))));
            return QSeries(2, 1, 2, 2 * T, std::move(c));
        }
        case FormId::E1_3: {
            std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, T)));
            c[0] = 1;
            for (long n = 1; n < T; ++n)
                c[static_cast<std::size_t>(n)] = Rational(6 * static_cast<long>(ichar3(n)));
            return QSeries::from_dense(1, 0, T, std::move(c));
        }
        case FormId::Delta3_3: {
            std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, T)));
            for (long n = 1; n < T; ++n)
                c[static_cast<std::size_t>(n)] = Rational(static_cast<long>(ichar3_weighted(n)));
            return QSeries::from_dense(1, 0, T, std::move(c));
        }
        case FormId::j_3: {
            QSeries e = catalog(FormId::E1_3, T + 2);
            QSeries d = catalog(FormId::Delta3_3, T + 2);
            return mul(pow_int(e, 3), inv(d));
        }
        case FormId::cbrtDelta3_3: {
            // sum over n not divisible by 3 of (sum_{d|n} (d/3)) q^{n/3}
            std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, 3 * T - 1)));
            for (long n = 1; n < 3 * T; ++n)
                if (n % 3 != 0) c[static_cast<std::size_t>(n - 1)] = Rational(static_cast<long>(ichar3(n)));
            return QSeries(3, 1, 1, 3 * T, std::move(c));
        }
        case FormId::E2_4: {
            std::vector<Rational> c(static_cast<std::size_t>(std::max(1L, T)));
            c[0] = 1;
            for (long n = 1; n < T; ++n) {
                long long v = 8 * isigma(n, 1);
                if (n % 4 == 0) v -= 32 * isigma(n / 4, 1);
                c[static_cast<std::size_t>(n)] = Rational(static_cast<long>(v));
            }
            return QSeries::from_dense(1, 0, T, std::move(c));
        }
        case FormId::Delta2_4: {
            std::vector<Rational> c;
            for (long n = 1; n < T; n += 2) c.push_back(Rational(static_cast<long>(isigma(n, 1))));
            return QSeries(1, 1, 2, T, std::move(c));
        }
        case FormId::j_4: {
            QSeries e = catalog(FormId::E2_4, T + 2);
            QSeries d = catalog(FormId::Delta2_4, T + 2);
            return mul(e, inv(d));
        }
        case FormId::theta3_2tau: return theta_series(ThetaKind::theta3_2tau, T);
        case FormId::halftheta2_2tau: return theta_series(ThetaKind::halftheta2_2tau, T);
    }
    throw BadInput("unknown form id");
}

} // namespace

QSeries catalog(FormId id, long order_q) {
    if (order_q < 1) throw BadInput("catalog: order must be >= 1");
    std::pair<int, long> key{static_cast<int>(id), order_q};
    {
        std::lock_guard<std::mutex> lock(g_cat_mutex);
        auto it = cat_cache().find(key);
        if (it != cat_cache().end()) return it->second;
    }
    QSeries s = build_form(id, order_q);
    std::lock_guard<std::mutex> lock(g_cat_mutex);
    auto [it, inserted] = cat_cache().emplace(key, std::move(s));
    return it->second;
}

} // namespace qmod
