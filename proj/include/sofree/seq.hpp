#pragma once

// Moment-cumulant transforms for a single self-adjoint variable, done on
// sequences instead of words. Entry 0 of a moment sequence is 1; entry 0 of
// a cumulant sequence is ignored. Grids are indexed [p][q] with row and
// column 0 unused.

#include <vector>

#include "sofree/rational.hpp"

namespace sofree::seq {

using Seq = std::vector<Rational>;
using Grid = std::vector<std::vector<Rational>>;

Grid make_grid(int p, int q);

// m_n = sum over NC(n) of kappa_pi, for n < kappa.size().
Seq moments_from_cumulants(const Seq& kappa);
Seq cumulants_from_moments(const Seq& moments);

// phi2(p,q) = sum over S_NC(p,q) of kappa_pi + sum over PS_NC(p,q)' of
// kappa_(U,pi). `kappa` and `moments` must reach index P+Q, or max_total
// when it is given; entries with p + q > max_total are then left at zero.
Grid phi2_from_kappa2(const Seq& kappa, const Seq& moments, const Grid& kappa2, int max_total = -1);
Grid kappa2_from_phi2(const Seq& kappa, const Seq& moments, const Grid& phi2, int max_total = -1);

}  // namespace sofree::seq
