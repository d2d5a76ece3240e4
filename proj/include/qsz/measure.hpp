#pragma once

#include "qsz/quadic.hpp"

#include <optional>
#include <vector>

namespace qsz {

/// The Riesz-type product measure mu = weak* lim v_n dx for gamma in [0,1).
///
/// On a 4-adic cell of level L the measure has the closed form
///     mu(I_{L,j}) = 4^{-L} * prod_{k: 2k-1 <= L} (1 + gamma rho_{2k-1}(I)),
/// because every later factor of the product integrates to its mean 1 over
/// cells on which the earlier factors are constant. Everything here is exact.
struct RieszMeasure {
    Gamma gamma;

    RieszMeasure() = default;
    explicit RieszMeasure(Gamma g) : gamma(g) {}

    /// Integer weight mu(I_{level,j}) * 4^level * q^K with K = ceil(level/2).
    BigInt cell_weight(int level, const BigInt& j) const;

    BigRat mu_cell(int level, const BigInt& j) const;
    BigRat mu_quadic(const QuadicInterval& I) const { return mu_cell(I.level, I.index); }

    /// mu([a,b)) by decomposition into maximal 4-adic cells. Requires a <= b.
    BigRat mu_ab(const QuadicRational& a, const QuadicRational& b) const;

    /// mu([-t,t]) / mu([-1,1]), the normalization used by the growth audit.
    BigRat mu_symmetric_normalized(const QuadicRational& t) const;
};

struct DoublingAudit {
    BigRat delta_hat;          // max mu(I)/mu(J) - 1 over the scanned pairs
    QuadicRational i_lo, i_hi; // witness interval I = [i_lo, i_hi)
    QuadicRational j_lo, j_hi; // adjacent equal-length witness J
};

/// Exact maximum of mu(I)/mu(J) - 1 over all adjacent equal-length pairs with
/// endpoints on the level-`depth` grid inside [window_lo, window_hi].
/// A certified lower bound for the true doubling constant.
DoublingAudit doubling_audit(const RieszMeasure& meas, int depth,
                             const QuadicRational& window_lo = QuadicRational(-1),
                             const QuadicRational& window_hi = QuadicRational(2));

struct GrowthRow {
    QuadicRational t;
    double mu_hat; // normalized mu([-t,t])
    double lower, upper, slack;
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    bool ok = true;
    double min_slack = 0;
    std::optional<QuadicRational> worst_t; // minimal-slack witness (violating t if ok == false)
};

/// Checks (1-g')t·min(t,1/t)^{g'} <= mu([-t,t]) <= (1+g')t·max(t,1/t)^{g'}
/// for each t in the grid, after normalizing mu([-1,1]) = 1.
GrowthReport growth_envelope_check(const RieszMeasure& meas, double gamma_prime,
                                   const std::vector<QuadicRational>& t_grid);

} // namespace qsz
