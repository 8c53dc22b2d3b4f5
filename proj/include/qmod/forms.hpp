#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qmod/qseries.hpp"
#include "qmod/rational.hpp"

namespace qmod {

// Catalog of the named level-1/2/3/4 forms. Every id expands to a
// deterministic QSeries for a given order.
enum class FormId {
    E2,
    E4,
    E6,
    Delta,
    j,
    eta,
    E2_2,
    Delta4_2,
    j_2,
    sqrtDelta4_2,
    E1_3,
    Delta3_3,
    j_3,
    cbrtDelta3_3,
    E2_4,
    Delta2_4,
    j_4,
    theta3_2tau,
    halftheta2_2tau,
};

struct FormInfo {
    FormId id;
    const char* name;    // CLI-facing id string
    Rational weight;
    const char* group;   // descriptive label only, not verified
    const char* character;
};

const std::vector<FormInfo>& form_catalog_info();
const FormInfo& form_info(FormId id);
FormId form_id_from_string(std::string_view name); // throws BadInput
const char* to_string(FormId id);

// Legendre character mod 3: 0, 1, -1 according to d mod 3.
int legendre3(long d);

enum class DivisorSumKind { Sigma, OddSigma, Char3, Char3Weighted };

// Exact divisor sums: sigma_r(n), its odd-divisor restriction,
// sum (d/3), or sum (d/3)(n/d)^2.
Rational divisor_sum(long n, DivisorSumKind kind, int r = 1);

// Formal eta quotient  prod_m eta(m*tau)^{e_m}.
struct EtaSpec {
    std::map<long, long> factors; // multiplier -> exponent

    // Leading exponent (sum m*e_m)/24 as a rational.
    Rational leading_exponent() const;
};

// Exact expansion on the q^{1/24} grid; all exponents < order_q are exact.
QSeries eta_expand(const EtaSpec& spec, long order_q);

enum class ThetaKind { theta3_2tau, halftheta2_2tau };
QSeries theta_series(ThetaKind kind, long order_q);

// Memoized builder. The result is exact for every exponent < order_q.
QSeries catalog(FormId id, long order_q);

// Euler product prod (1 - q^n) via the pentagonal number recurrence.
QSeries euler_product(long order_q);

} // namespace qmod
