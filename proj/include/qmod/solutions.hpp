#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmod/operators.hpp"
#include "qmod/polyq.hpp"
#include "qmod/qseries.hpp"
#include "qmod/weight.hpp"

namespace qmod {

// Residue classes of the weight k that decide which solution family of
// the second-order equation
//     f'' - ((k+1)/6) E2 f' + (k(k+1)/12) E2' f = 0
// exists: level-1 forms for k = 0,4 mod 6, level-2 for k = 2 mod 6,
// level-3 for odd k = 1,3 mod 6, quasimodular weight-(k+1) forms for
// k = 5 mod 6, level-4 theta-type forms for half-integral k = 1/2 mod 3,
// and nothing known for the remaining half-integral classes.
enum class ResidueClass { Lvl1, Lvl2, Lvl3, Quasi, Lvl4, NoneKnown };

const char* to_string(ResidueClass c);

// Total on nonnegative integral and half-integral weights.
// Throws NegativeWeight otherwise.
ResidueClass classify_weight(const Weight& k);

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
Rational pochhammer(const Rational& a, long n);

enum class SolutionKind { Normalized, Cuspidal, Quasi };
const char* to_string(SolutionKind k);

// Finite-sum solution with expansion 1 + O(q).
// Throws UnsupportedClass for Quasi/NoneKnown weights.
QSeries solve_normalized(const Weight& k, long order_q);

// Finite-sum solution with expansion q^{(k+1)/6} + O(q^{(k+7)/6}).
// Defined for Lvl2/Lvl3/Lvl4 weights only.
QSeries solve_cuspidal(const Weight& k, long order_q);

// lambda_n = 12 (6n+1)(6n+5) / (n(n+1)), n >= 1.
Rational lambda_coeff(long n);

// (P_n, Q_n) by the shared three-term recursion
//   R_{n+1} = x R_n + lambda_n R_{n-1},  P: (1, x),  Q: (0, 1).
std::pair<PolyQ, PolyQ> pq_polynomials(long n);

// The quasimodular solution for k = 6n+5, evaluated through the parity
// split so that no square root of Delta is ever materialized.
QSeries quasimodular_solution(long n, long order_q);

// Dispatch on kind; Quasi requires k = 5 mod 6.
QSeries solve(const Weight& k, SolutionKind kind, long order_q);

// F_{k-6} = (k-5)/(288 k (k-4)) [F_k, E4] / Delta.
// Throws ForbiddenWeight for k in {0,4,5}, NotDivisible when the bracket
// has a term below q^1.
QSeries descend(const QSeries& F, const Weight& k);

// mu_i^{(k)} = 432 (k+6i)(k+6i-4) / ((k+6i+1)(k+6i-5)).
// Throws MuUndefined when the denominator vanishes.
Rational mu_coeff(const Weight& k, long i);

struct LadderState {
    Weight base;
    std::vector<std::pair<Weight, QSeries>> rungs; // from weight base-6 upward
    std::vector<Rational> mus;                     // constants used per step

    const QSeries& rung(long weight_offset_steps) const;
};

// Seed pair (F_k, F_{k-6}) must satisfy [F_k, E4] = (2/3)(k+1) mu_0 Delta F_{k-6};
// otherwise SeedInconsistent. mu0_override supplies the i=0 constant when
// the closed formula degenerates (the k=5 seed with F_{-1}=1 uses -1).
LadderState ascend_ladder(const Weight& k, const QSeries& Fk, const QSeries& Fkm6, long steps,
                          std::optional<Rational> mu0_override = std::nullopt);

struct LadderSeed {
    QSeries Fk;
    QSeries Fkm6;
    std::optional<Rational> mu0_override;
};

// Canonical seed pair for a family: F_{k-6} comes from descend, except
// k in {0,4} (zero) and the k=5 quasi seed (F_{-1}=1, mu_0=-1).
LadderSeed ladder_seed(const Weight& k, SolutionKind kind, long order_q);

enum class FrobeniusBranch { Zero, Cusp };

// Power-series solution by the coefficient recurrence of the equation,
// normalized to leading coefficient 1 at q^0 (Zero) or q^{(k+1)/6} (Cusp).
// The Zero branch is refused (Resonant) when (k+1)/6 is a positive integer.
QSeries frobenius_solve(const Weight& k, FrobeniusBranch branch, long order_q);

// Checks that g Delta^{-beta}, with g the known solution at k' = k + 12 beta,
// solves the alpha-twisted equation with alpha = -beta^2 - (k+1) beta / 6.
// Throws UnsupportedBeta when 24 beta is not an integer.
bool verify_delta_twist(const Weight& k, const Rational& beta, long order_q);

struct SolutionReport {
    Weight weight;
    SolutionKind kind;
    Rational leading_exponent;
    Rational leading_coeff;
    Rational residual_vanish_exponent;
    long checked_order = 0;
    bool verified = false; // residual vanishes for every exponent < checked_order
    std::string normalization;

    std::string str() const;
};

SolutionReport verify_solution(const Weight& k, SolutionKind kind, long order_q);

} // namespace qmod
