#ifndef VARPI_WEIGHT_HPP
#define VARPI_WEIGHT_HPP

#include "varpi/tower.hpp"

namespace varpi {

/// A locally analytic character [t]^i <t>^s of O_P^*, with its declared
/// accessibility index r.
struct Character {
    Element s;
    long long i = 0;
    int r = 1;
};

/// The disk B_r of the weight-space covering, held as a valuation threshold
/// m_r (dual to the radius t_r): the disk is val(x - 1) >= m_r, and the
/// defining implication val(x-1) >= m_r => val(log x) > e/(p-1) + 1 - r
/// holds strictly inside. `strict` records that the threshold itself is the
/// infimum of the admissible set, never probed exactly.
struct WeightDiskConfig {
    int r = 1;
    Rational m_r;
    bool strict = true;
    long long p = 0;
    int e = 1, f = 1;
};

/// Supremum of admissible growth parameters w for a character, with the
/// inclusivity of the bound (only the dlog threshold 1/q is inclusive).
struct GrowthBound {
    Rational bound;
    bool inclusive = false;
};

/// Minimal admissible accessibility index for the ground (1 unless the
/// ground is deeply ramified: e > p-1 requires r >= e/(p-1)).
int min_accessibility_index(long long p, int e);

/// val(s) > e/(p-1) - r, as exact rationals. Throws if r is below the
/// ground's minimal index.
bool is_r_accessible(const Rational& val_s, int r, long long p, int e);
bool is_accessible(const Character& chi);

/// chi(t) = [t]^i exp(s log(<t>)) for a unit t of the O_P level.
Element char_eval(const Character& chi, const Element& t);

/// The valuation threshold m_r of the disk B_r.
WeightDiskConfig disk_threshold(int r, long long p, int e, int f);

/// min of the four published admissibility bounds on w.
GrowthBound max_growth_w(const Rational& val_s, int r, long long p, int e, int f);

/// Connected component of the weight space: i mod (q-1).
long long component_index(const Character& chi, long long q);

/// The integer weight k as a character: s = k, i = k mod (q-1), with the
/// smallest admissible r.
Character integer_weight(const Tower& tower, long long k);

} // namespace varpi

#endif
