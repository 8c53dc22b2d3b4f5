#pragma once

#include <string>

#include "qmod/qseries.hpp"

namespace qmod {

// Interchange schema:
//   { "exp_den": N, "lead_exp": L, "trunc": T, "coeffs": [[num, den], ...] }
// coeffs[i] is the coefficient of q^{(lead_exp+i)/exp_den}, numerator and
// denominator as decimal strings (arbitrary precision).
//
// exp_den_override (0 = natural grid) re-emits on a coarser-denominated
// view; it must be a positive multiple of the series' own exp_den.
std::string to_json(const QSeries& s, bool pretty = false, long exp_den_override = 0);
QSeries qseries_from_json(const std::string& text);

// CSV rows exp_num,exp_den,coeff_num,coeff_den -- one row per stored
// lattice entry, header included.
std::string to_csv(const QSeries& s, long exp_den_override = 0);

} // namespace qmod
