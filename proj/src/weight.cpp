#include "varpi/weight.hpp"

namespace varpi {

int min_accessibility_index(long long p, int e) {
    if (e <= p - 1) return 1;
    return (int)(Rational(e, p - 1).ceil()); // deeply ramified: r >= e/(p-1)
}

bool is_r_accessible(const Rational& val_s, int r, long long p, int e) {
    if (r < min_accessibility_index(p, e))
        throw domain_error("accessibility: r below the ground's minimal index");
    return val_s > Rational(e, p - 1) - Rational(r);
}

bool is_accessible(const Character& chi) {
    const Tower* tw = chi.s.tower();
    if (!tw) throw domain_error("character: empty parameter");
    auto v = chi.s.val();
    Rational vs = v.v.is_infinite() ? Rational::infinity() : v.v;
    if (!v.v.is_infinite() && !v.certified)
        throw precision_error("character: parameter valuation not certified");
    return is_r_accessible(vs, chi.r, tw->p(), tw->e());
}

Element char_eval(const Character& chi, const Element& t) {
    const Tower* tw = t.tower();
    if (!tw || chi.s.tower() != tw) throw domain_error("char_eval: mixed towers");
    auto vt = t.val();
    if (vt.v.is_infinite() || !vt.certified || !(vt.v == Rational(0)))
        throw domain_error("char_eval: t must be a unit (val(t) = 0)");
    if (!is_accessible(chi)) throw domain_error("char_eval: character is not r-accessible");

    const GF& gf = tw->residue_field();
    GFElem tbar = tw->residue(t);
    // t must reduce into kappa = F_q
    if (!(gf.pow(tbar, tw->q()) == tbar))
        throw domain_error("char_eval: t does not reduce into the O_P residue field");
    Element teich = tw->teichmuller_of(tbar, tw->q());
    long long i = ((chi.i % (tw->q() - 1)) + (tw->q() - 1)) % (tw->q() - 1);
    Element head = teich.pow(i);
    Element angle = t * teich.inverse(); // <t>, congruent to 1
    Element lg = plog(angle);
    if (lg.is_zero_to_precision()) return head; // <t> = 1 to precision
    Element arg = chi.s * lg;
    auto va = arg.val();
    if (!va.v.is_infinite() &&
        !(va.v > Rational(tw->e(), tw->p() - 1)))
        throw domain_error("char_eval: t is outside the locally analytic radius for this r");
    return head * pexp(arg);
}

WeightDiskConfig disk_threshold(int r, long long p, int e, int f) {
    if (r < 1) throw domain_error("disk_threshold: r must be >= 1");
    // m_r = sup_j (T + j e) / p^j with T = e/(p-1) + 1 - r; the sup is over
    // finitely many j since the terms tend to 0 from below eventually
    Rational T = Rational(e, p - 1) + Rational(1) - Rational(r);
    Rational best = T; // j = 0
    long long pj = 1;
    for (int j = 1; j <= 60; ++j) {
        if (pj > ((long long)1 << 50) / p) break;
        pj *= p;
        Rational term = (T + Rational((long long)j * e)) / Rational(pj);
        best = max(best, term);
    }
    WeightDiskConfig cfg;
    cfg.r = r;
    cfg.m_r = best;
    cfg.strict = true;
    cfg.p = p;
    cfg.e = e;
    cfg.f = f;
    return cfg;
}

GrowthBound max_growth_w(const Rational& val_s, int r, long long p, int e, int f) {
    if (!is_r_accessible(val_s, r, p, e))
        throw domain_error("max_growth_w: character is not r-accessible");
    long long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    Rational t1 = val_s.is_infinite()
                      ? Rational::infinity()
                      : Rational(q - 1) * (val_s + Rational(1) - Rational(e, p - 1));
    Rational t2(q, q + 1);
    Rational t3 = t2; // r = 1: 1/(q^{-1}(q+1)) = q/(q+1)
    if (r >= 2) {
        long long qr = 1;
        for (int i = 0; i < r - 2; ++i) qr *= q;
        t3 = Rational(1, qr * (q + 1));
    }
    Rational t4(1, q); // the dlog threshold, inclusive
    Rational excl = min(t1, min(t2, t3));
    GrowthBound gb;
    if (t4 < excl) {
        gb.bound = t4;
        gb.inclusive = true;
    } else {
        gb.bound = excl;
        gb.inclusive = false;
    }
    return gb;
}

long long component_index(const Character& chi, long long q) {
    return ((chi.i % (q - 1)) + (q - 1)) % (q - 1);
}

Character integer_weight(const Tower& tower, long long k) {
    Character chi;
    chi.s = tower.from_int(k);
    chi.i = ((k % (tower.q() - 1)) + (tower.q() - 1)) % (tower.q() - 1);
    auto v = chi.s.val();
    Rational vs = v.v.is_infinite() ? Rational::infinity() : v.v;
    int r = min_accessibility_index(tower.p(), tower.e());
    while (!is_r_accessible(vs, r, tower.p(), tower.e())) ++r;
    chi.r = r;
    return chi;
}

} // namespace varpi
