#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qmod/analysis.hpp"
#include "qmod/errors.hpp"
#include "qmod/forms.hpp"
#include "qmod/solutions.hpp"

using namespace qmod;

namespace {
Rational R(long n, long d = 1) { return make_rational(n, d); }
} // namespace

TEST_CASE("positivity scans") {
    PositivityReport ok = check_positivity(solve_cuspidal(Weight(14), 121), 120);
    CHECK(ok.status == PositivityStatus::AllPositive);
    CHECK(ok.scanned > 100);

    PositivityReport bad = check_positivity(catalog(FormId::E6, 40), 30);
    CHECK(bad.status == PositivityStatus::Violation);
    CHECK(bad.exponent == R(1));
    CHECK(bad.value == -504);

    PositivityReport zz = check_positivity(catalog(FormId::E1_3, 40), 30);
    CHECK(zz.status == PositivityStatus::NonNegativeWithZeros);
    CHECK(zz.exponent == R(2));
    CHECK(zz.value == 0);

    CHECK_THROWS_AS((void)check_positivity(catalog(FormId::E4, 10), 50), InsufficientPrecision);
}

TEST_CASE("char3 prime power cases") {
    CHECK(char3_case_check(3, 2) == std::pair<Rational, Rational>(R(1), R(81)));
    CHECK(char3_case_check(7, 1) == std::pair<Rational, Rational>(R(2), R(50)));
    CHECK(char3_case_check(2, 1) == std::pair<Rational, Rational>(R(0), R(3)));
    CHECK(char3_case_check(5, 2) == std::pair<Rational, Rational>(R(1), R(601)));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        for (long e = 0; e <= 4; ++e) (void)char3_case_check(p, e); // asserts internally
    CHECK_THROWS_AS((void)char3_case_check(6, 1), BadInput);
}

TEST_CASE("alpha bound") {
    CHECK(alpha_bound_check(R(0), 80).status == PositivityStatus::AllPositive);
    CHECK(alpha_bound_check(R(4), 80).status == PositivityStatus::AllPositive);
    CHECK(alpha_bound_check(R(799, 100), 80).status == PositivityStatus::AllPositive);
    PositivityReport sharp = alpha_bound_check(R(8), 80);
    CHECK(sharp.status == PositivityStatus::NonNegativeWithZeros);
    CHECK(sharp.exponent == R(1));
    CHECK(sharp.value == 0);
    CHECK_THROWS_AS((void)alpha_bound_check(R(-1), 10), BadInput);
}

TEST_CASE("sigma gap identity") {
    CHECK(sigma_gap_identity(1) == 3);
    CHECK(sigma_gap_identity(2) == 3);
    CHECK(sigma_gap_identity(6) == 12);
    for (long n = 1; n <= 200; ++n) (void)sigma_gap_identity(n); // asserts internally
}

TEST_CASE("half-integral sign window") {
    CHECK(halfint_sign_window(0));
    CHECK(halfint_sign_window(2));
    CHECK(halfint_sign_window(10));
    for (long n = 0; n <= 24; ++n) CHECK(halfint_sign_window(n));
}

TEST_CASE("expansion in powers of 1/j") {
    const long T = 10;
    QSeries u = mul(catalog(FormId::Delta, T + 4), pow_int(inv(catalog(FormId::E4, T + 4)), 3));
    InvJExpansion triv = expand_in_inv_j(u, 3);
    CHECK(triv.c0 == 0);
    CHECK(triv.coeffs == std::vector<Rational>{R(1), R(0), R(0)});

    QSeries t1 = mul(scale(R(1, 240), theta_deriv(catalog(FormId::E4, T + 4))),
                     inv(catalog(FormId::E6, T + 4)));
    InvJExpansion e1 = expand_in_inv_j(t1, 3);
    CHECK(e1.coeffs == std::vector<Rational>{R(1), R(1266), R(1806960)});

    QSeries t2 = mul(mul(catalog(FormId::E2, T + 6), catalog(FormId::E4, T + 6)),
                     inv(mul(catalog(FormId::E6, T + 6), catalog(FormId::j, T + 6))));
    InvJExpansion e2 = expand_in_inv_j(t2, 3);
    CHECK(e2.coeffs == std::vector<Rational>{R(1), R(720), R(911520)});

    // exact invertibility: subtracting the reconstruction kills q^1..q^depth
    QSeries recon = QSeries::constant(e1.c0, T + 2);
    QSeries upow = QSeries::constant(R(1), T + 2);
    for (std::size_t i = 0; i < e1.coeffs.size(); ++i) {
        upow = mul(upow, u);
        recon = add(recon, scale(e1.coeffs[i], upow));
    }
    QSeries rem = sub(t1, recon);
    CHECK((rem.is_zero() || rem.lead_exponent() >= R(4)));

    CHECK_THROWS_AS((void)expand_in_inv_j(catalog(FormId::j, 10), 3), BadInput);
    CHECK_THROWS_AS((void)expand_in_inv_j(catalog(FormId::E4, 3), 5), InsufficientPrecision);
}

TEST_CASE("modular basis") {
    CHECK(modular_basis(0) == std::vector<std::pair<long, long>>{{0, 0}});
    CHECK(modular_basis(12) == std::vector<std::pair<long, long>>{{3, 0}, {0, 2}});
    CHECK(modular_basis(2).empty());
    CHECK(modular_basis(10) == std::vector<std::pair<long, long>>{{1, 1}});
    CHECK_THROWS_AS((void)modular_basis(7), OddWeight);
    CHECK_THROWS_AS((void)modular_basis(-2), OddWeight);
}

TEST_CASE("quasimodular decomposition") {
    // F = E2
    QuasiDecomposition d1 = decompose_quasimodular(catalog(FormId::E2, 12), 2);
    REQUIRE(d1.components.size() == 1);
    CHECK(d1.components[0].e2_power == 1);
    REQUIRE(d1.components[0].monomials.size() == 1);
    CHECK(std::get<2>(d1.components[0].monomials[0]) == 1);

    // F = E4'/240 = E2 E4/720 - E6/720
    QSeries f5 = scale(R(1, 240), theta_deriv(catalog(FormId::E4, 14)));
    QuasiDecomposition d2 = decompose_quasimodular(f5, 6);
    REQUIRE(d2.components.size() == 2);
    CHECK(d2.components[0].e2_power == 0);
    REQUIRE(d2.components[0].monomials.size() == 1);
    CHECK(std::get<0>(d2.components[0].monomials[0]) == 0);
    CHECK(std::get<1>(d2.components[0].monomials[0]) == 1);
    CHECK(std::get<2>(d2.components[0].monomials[0]) == R(-1, 720));
    CHECK(d2.components[1].e2_power == 1);
    CHECK(std::get<2>(d2.components[1].monomials[0]) == R(1, 720));

    // F = Delta' = E2 * Delta
    QSeries dp = theta_deriv(catalog(FormId::Delta, 16));
    QuasiDecomposition d3 = decompose_quasimodular(dp, 14);
    bool found_delta = false;
    for (const auto& c : d3.components)
        if (c.e2_power == 1) {
            found_delta = agree_through_q(c.modular_part, catalog(FormId::Delta, 8), 8);
        } else {
            CHECK(c.monomials.empty());
        }
    CHECK(found_delta);

    // random elements of the graded ring round-trip
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> cpick(-20, 20);
    for (long w : {8L, 14L, 18L, 26L, 30L}) {
        std::vector<std::tuple<long, long, long, Rational>> target; // (i,a,b,coeff)
        QSeries f = QSeries::zero(1, 40);
        for (long i = 0; 2 * i <= w; ++i)
            for (auto [a, b] : modular_basis(w - 2 * i)) {
                Rational c = R(cpick(rng), 1 + (cpick(rng) & 3L));
                if (is_zero(c)) continue;
                target.emplace_back(i, a, b, c);
                QSeries mono = mul(pow_int(catalog(FormId::E2, 40), i),
                                   mul(pow_int(catalog(FormId::E4, 40), a),
                                       pow_int(catalog(FormId::E6, 40), b)));
                f = add(f, scale(c, mono));
            }
        QuasiDecomposition dec = decompose_quasimodular(f, w);
        std::size_t found = 0;
        for (const auto& comp : dec.components)
            for (const auto& [a, b, c] : comp.monomials) {
                bool hit = false;
                for (const auto& [ti, ta, tb, tc] : target)
                    if (ti == comp.e2_power && ta == a && tb == b && tc == c) hit = true;
                CHECK(hit);
                ++found;
            }
        CHECK(found == target.size());
    }

    // a level-2 form is not in the level-1 quasimodular ring
    CHECK_THROWS_AS((void)decompose_quasimodular(catalog(FormId::Delta4_2, 30), 4), NotQuasimodular);
    // fractional exponents cannot be quasimodular
    CHECK_THROWS_AS((void)decompose_quasimodular(catalog(FormId::eta, 30), 0), NotQuasimodular);
    // too few exact coefficients
    CHECK_THROWS_AS((void)decompose_quasimodular(catalog(FormId::E2, 3), 14), InsufficientPrecision);
}

TEST_CASE("identity suite") {
    auto results = identity_suite(60);
    for (const auto& r : results) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
    CHECK(results.size() >= 25);
}
