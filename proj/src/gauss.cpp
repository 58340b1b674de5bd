#include "varpi/gauss.hpp"

namespace varpi {

int digit_sum(long long i, long long p, long long q) {
    if (i < 1 || i > q - 1) throw domain_error("digit_sum: index out of 1..q-1");
    int s = 0;
    while (i > 0) {
        s += (int)(i % p);
        i /= p;
    }
    return s;
}

int h_index(long long i, long long p, int f, long long q) {
    if (i < 1 || i > q - 1) throw domain_error("h_index: index out of 1..q-1");
    for (int h = 1; h <= f; ++h) {
        long long pw = 1;
        for (int k = 0; k < f - h; ++k) pw *= p;
        if (i % pw == 0) return h;
    }
    throw domain_error("h_index: unreachable"); // h = f always divides (p^0 = 1)
}

GaussTable::GaussTable(const Tower& tower) : tw_(&tower), q_(tower.q()) {
    if (!tower.zeta_p())
        throw domain_error("gauss sums: tower has no zeta_p (missing cyclotomic data)");
    const GF& gf = tower.residue_field();
    const long long p = tower.p();

    // multiplicative generator g0 of kappa^*
    long long g0_index = 0;
    for (long long idx = 1; idx < q_ && g0_index == 0; ++idx) {
        GFElem z = tower.kappa_embed(idx);
        long long ord = 1;
        GFElem acc = z;
        while (!(acc == gf.one()) && ord <= q_) {
            acc = gf.mul(acc, z);
            ++ord;
        }
        if (ord == q_ - 1) g0_index = idx;
    }
    if (g0_index == 0) throw domain_error("gauss sums: no kappa generator found");

    GFElem g0 = tower.kappa_embed(g0_index);
    Element T = tower.teichmuller_of(g0, q_);
    teich_pow_.assign(q_ - 1, tower.one());
    for (long long m = 1; m < q_ - 1; ++m) teich_pow_[m] = teich_pow_[m - 1] * T;

    trace_.assign(q_ - 1, 0);
    GFElem zj = gf.one();
    for (long long j = 0; j < q_ - 1; ++j) {
        trace_[j] = tower.kappa_trace(zj);
        zj = gf.mul(zj, g0);
    }

    zeta_pow_.assign(p, tower.one());
    for (long long r = 1; r < p; ++r) zeta_pow_[r] = zeta_pow_[r - 1] * (*tower.zeta_p());

    gauss_.clear();
    for (long long i = 1; i <= q_ - 1; ++i) {
        Element g = gauss_sum_plain(i);
        if (i == q_ - 1) g = g - tower.from_int(q_ - 1); // group-algebra slot: -q
        gauss_.push_back(std::move(g));
    }

    // w_i by equation (g); all units
    w_.clear();
    const Element& g1 = gauss_[0];
    for (long long i = 1; i <= q_ - 1; ++i) {
        int s = digit_sum(i, p, q_);
        long long den = 1;
        for (int k = 0; k < s - 1; ++k) den *= (q_ - 1);
        Element wi = g1.pow(s).div_int(den) * gauss_[i - 1].inverse();
        w_.push_back(std::move(wi));
    }

    long long denw = 1;
    for (long long k = 0; k < p - 1; ++k) denw *= (q_ - 1);
    w_total_ = g1.pow(p - 1).div_int(denw);
    u_ = w_total_ * tower.varpi()->pow(tower.e()).inverse();
}

void GaussTable::check_index(long long i) const {
    if (i < 1 || i > q_ - 1) throw domain_error("gauss sums: index out of 1..q-1");
}

Element GaussTable::gauss_sum_plain(long long i) const {
    check_index(i);
    Element acc = tw_->zero();
    for (long long j = 0; j < q_ - 1; ++j) {
        long long m = ((-i * j) % (q_ - 1) + (q_ - 1)) % (q_ - 1);
        acc = acc + teich_pow_[m] * zeta_pow_[trace_[j]];
    }
    return acc;
}

Element GaussTable::gauss_sum_conjugate(long long i) const {
    check_index(i);
    const long long p = tw_->p();
    Element acc = tw_->zero();
    for (long long j = 0; j < q_ - 1; ++j) {
        long long m = ((i * j) % (q_ - 1) + (q_ - 1)) % (q_ - 1);
        long long tr_neg = (p - trace_[j] % p) % p; // tr(-z) = -tr(z)
        acc = acc + teich_pow_[m] * zeta_pow_[tr_neg];
    }
    return acc;
}

const Element& GaussTable::gauss_sum(long long i) const {
    check_index(i);
    return gauss_[i - 1];
}

const Element& GaussTable::raynaud_w(long long i) const {
    check_index(i);
    return w_[i - 1];
}

const Element& GaussTable::raynaud_w_total() const { return w_total_; }
const Element& GaussTable::unit_u() const { return u_; }

} // namespace varpi
