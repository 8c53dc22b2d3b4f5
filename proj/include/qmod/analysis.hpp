#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qmod/qseries.hpp"
#include "qmod/rational.hpp"

namespace qmod {

enum class PositivityStatus { AllPositive, Violation, NonNegativeWithZeros };
const char* to_string(PositivityStatus s);

struct PositivityReport {
    PositivityStatus status = PositivityStatus::AllPositive;
    bool has_finding = false; // first nonpositive entry, when any
    Rational exponent;        // exponent of the finding
    Rational value;           // exact offending coefficient
    long scanned = 0;

    std::string str() const;
};

// Scans every lattice exponent of f from the leading one (inclusive)
// up to q^through_q. Throws InsufficientPrecision when f is not exact
// that far.
PositivityReport check_positivity(const QSeries& f, long through_q);

// Brute-force pair (sum (d/3), sum (d/3)(n/d)^2) over divisors of p^e,
// asserted against the prime-power case formulas.
std::pair<Rational, Rational> char3_case_check(long p, long e);

// Positivity scan of E2_4 - alpha * Delta2_4.
PositivityReport alpha_bound_check(const Rational& alpha, long through_q);

// Returns sigma(4n) - 4 sigma(n), asserted equal to 3 sigma(odd part of n).
Rational sigma_gap_identity(long n);

// Sign pattern and window inequality for the half-integral coefficients
// a_i = (-n)_i (-(2n-1)/4)_i / ((2n+5)/4)_i / i!.
bool halfint_sign_window(long n);

struct InvJExpansion {
    Rational c0;                 // constant term removed before peeling
    std::vector<Rational> coeffs; // c_1 .. c_depth of 1/j, 1/j^2, ...
};

// Greedy peeling of f against powers of 1/j = Delta / E4^3.
InvJExpansion expand_in_inv_j(const QSeries& f, long depth);

// All (a, b) with 4a + 6b = w, b ascending. Throws OddWeight.
std::vector<std::pair<long, long>> modular_basis(long w);

struct QuasiDecomposition {
    long weight = 0;
    struct Component {
        long e2_power = 0;
        QSeries modular_part;
        std::vector<std::tuple<long, long, Rational>> monomials; // (a, b, coeff) of E4^a E6^b
    };
    std::vector<Component> components;

    std::string str() const;
};

// Unique coordinates of F in the basis {E2^i E4^a E6^b : 2i+4a+6b = w},
// by exact linear solve against q-expansion columns. The recombination
// is re-checked before returning.
QuasiDecomposition decompose_quasimodular(const QSeries& F, long w);

struct IdentityResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Coefficientwise verification of the registered catalog identities.
std::vector<IdentityResult> identity_suite(long order_q = 200);

} // namespace qmod
